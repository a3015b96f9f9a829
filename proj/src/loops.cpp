#include "loopfinder/loops.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace lf {

bool certificate_valid(const LoopCertificate& cert) {
  size_t n = cert.clauses.size();
  if (n == 0 || cert.maps.size() != n) return false;
  for (size_t i = 0; i < n; ++i) {
    std::vector<BinClause> suffix(cert.clauses.begin() + i,
                                  cert.clauses.end());
    if (!is_neutral_for(suffix, cert.maps[i])) return false;
  }
  for (size_t i = 0; i + 1 < n; ++i) {
    if (!neutral_more_general(cert.clauses[i].body, cert.clauses[i + 1].head,
                              cert.maps[i + 1])) {
      return false;
    }
  }
  const BinClause& last = cert.clauses[n - 1];
  return neutral_more_general(last.body, last.head, cert.maps[n - 1])
      .has_value();
}

std::vector<LoopCertificate> build_dictionary(const UnfoldPool& pool,
                                              const Signature& sig,
                                              const LoopOptions& opts) {
  NeutralMap top = top_neutral_map(sig);
  std::vector<LoopCertificate> dict;
  // Every candidate built below is a distinct certificate: pool entries are
  // unique by canonical text, each entry yields at most one unit certificate,
  // and two extensions differ in either the front clause or the retained
  // suffix.  Entries therefore go into the dictionary without a dedup check.
  // Later passes revisit every (clause, entry) combination; combinations
  // already evaluated once cannot produce anything new, so they are skipped
  // before the subsumption check and the filter inference run again.
  std::set<std::pair<size_t, size_t>> attempted;
  constexpr size_t kUnitSlot = static_cast<size_t>(-1);
  for (int pass = 0; pass < opts.max_passes; ++pass) {
    bool grew = false;
    for (size_t ei = 0; ei < pool.items.size(); ++ei) {
      const StampedClause& e = pool.items[ei];
      if (e.clause.is_fact()) continue;
      std::vector<LoopCertificate> found;
      if (attempted.insert({ei, kUnitSlot}).second) {
        NeutralMap unit = infer_neutral_map({e.clause}, top);
        if (neutral_more_general(e.clause.body, e.clause.head, unit)) {
          found.push_back(
              LoopCertificate{{e.clause}, {std::move(unit)}, {e.stamp}});
        }
      }
      size_t snapshot = dict.size();
      for (size_t pi = 0; pi < snapshot; ++pi) {
        if (!attempted.insert({ei, pi}).second) continue;
        const LoopCertificate& base = dict[pi];
        if (base.clauses.size() + 1 > opts.max_pair_len) continue;
        if (!neutral_more_general(e.clause.body, base.clauses.front().head,
                                  base.maps.front())) {
          continue;
        }
        LoopCertificate ext;
        ext.clauses.reserve(base.clauses.size() + 1);
        ext.clauses.push_back(e.clause);
        ext.clauses.insert(ext.clauses.end(), base.clauses.begin(),
                           base.clauses.end());
        ext.maps.reserve(base.maps.size() + 1);
        // The filter conditions hold clause by clause, so a front map that
        // already covers the new clause covers the whole extended sequence
        // and inference would hand it back unchanged.
        if (is_neutral_for({e.clause}, base.maps.front())) {
          ext.maps.push_back(base.maps.front());
        } else {
          ext.maps.push_back(infer_neutral_map(ext.clauses, base.maps.front()));
        }
        ext.maps.insert(ext.maps.end(), base.maps.begin(), base.maps.end());
        ext.stamps.reserve(base.stamps.size() + 1);
        ext.stamps.push_back(e.stamp);
        ext.stamps.insert(ext.stamps.end(), base.stamps.begin(),
                          base.stamps.end());
        found.push_back(std::move(ext));
      }
      for (LoopCertificate& f : found) {
        dict.push_back(std::move(f));
        grew = true;
      }
    }
    if (!grew) break;
  }
  return dict;
}

std::vector<LoopingCondition>
conditions_from_dictionary(const std::vector<LoopCertificate>& dict) {
  std::vector<LoopingCondition> out;
  std::set<std::string> seen;
  for (const LoopCertificate& cert : dict) {
    Atom atom = canonical_form(cert.clauses.front().head);
    const NeutralMap& nmap = cert.maps.front();
    std::string key =
        render(atom) + " | " + render_neutral_map(nmap, atom.pred);
    if (!seen.insert(key).second) continue;
    out.push_back(LoopingCondition{std::move(atom), nmap, cert});
  }
  std::sort(out.begin(), out.end(),
            [](const LoopingCondition& a, const LoopingCondition& b) {
              auto ka = std::make_tuple(a.atom.pred, render(a.atom),
                                        render_neutral_map(a.nmap, a.atom.pred));
              auto kb = std::make_tuple(b.atom.pred, render(b.atom),
                                        render_neutral_map(b.nmap, b.atom.pred));
              return ka < kb;
            });
  return out;
}

bool condition_accepts(const LoopingCondition& cond, const Atom& query) {
  if (query.pred != cond.atom.pred) return false;
  if (query.args.size() != cond.atom.args.size()) return false;
  if (canonical_text(query) == canonical_text(cond.atom)) return true;
  return neutral_more_general(query, cond.atom, cond.nmap).has_value();
}

AnalysisResult analyze_program(const Program& p, int max_iterations,
                               const UnfoldOptions& uopts,
                               const LoopOptions& lopts) {
  AnalysisResult r;
  r.pool = unfold_upto(p, max_iterations, uopts);
  r.dictionary = build_dictionary(r.pool, p.signature(), lopts);
  r.conditions = conditions_from_dictionary(r.dictionary);
  return r;
}

}  // namespace lf
