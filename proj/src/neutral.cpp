#include "loopfinder/neutral.hpp"

#include <algorithm>
#include <sstream>

namespace lf {

namespace {

const PatternMap kEmptyPatterns;

const PatternMap& patterns_for(const NeutralMap& nm, const std::string& pred) {
  auto it = nm.find(pred);
  return it == nm.end() ? kEmptyPatterns : it->second;
}

void drop_empty(NeutralMap& nm) {
  for (auto it = nm.begin(); it != nm.end();) {
    if (it->second.empty()) {
      it = nm.erase(it);
    } else {
      ++it;
    }
  }
}

// Variables of every head argument except the one at `skip` (1-based).
VarSet other_arg_vars(const Atom& a, int skip) {
  VarSet out;
  for (size_t j = 0; j < a.args.size(); ++j) {
    if (static_cast<int>(j + 1) == skip) continue;
    collect_vars(a.args[j], out);
  }
  return out;
}

bool intersects(const VarSet& a, const VarSet& b) {
  if (a.size() > b.size()) return intersects(b, a);
  for (int64_t v : a) {
    if (b.count(v)) return true;
  }
  return false;
}

} // namespace

NeutralMap top_neutral_map(const Signature& sig) {
  NeutralMap nm;
  for (const auto& [name, arity] : sig) {
    PatternMap pm;
    for (size_t i = 1; i <= arity; ++i) {
      pm[static_cast<int>(i)] = fresh_var();
    }
    if (!pm.empty()) nm[name] = std::move(pm);
  }
  return nm;
}

std::vector<int> neutral_positions(const NeutralMap& nm,
                                   const std::string& pred) {
  std::vector<int> out;
  for (const auto& [pos, pat] : patterns_for(nm, pred)) {
    (void)pat;
    out.push_back(pos);
  }
  return out;
}

bool refines(const NeutralMap& a, const NeutralMap& b) {
  for (const auto& [pred, pa] : a) {
    const PatternMap& pb = patterns_for(b, pred);
    for (const auto& [pos, pat] : pa) {
      auto it = pb.find(pos);
      if (it == pb.end()) return false;
      if (!is_more_general(it->second, pat)) return false;
    }
  }
  return true;
}

bool neutral_maps_equal(const NeutralMap& a, const NeutralMap& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [pred, pa] : a) {
    auto it = b.find(pred);
    if (it == b.end()) return false;
    const PatternMap& pb = it->second;
    if (pa.size() != pb.size()) return false;
    for (const auto& [pos, pat] : pa) {
      auto jt = pb.find(pos);
      if (jt == pb.end()) return false;
      if (!is_variant(pat, jt->second)) return false;
    }
  }
  return true;
}

std::optional<Subst> neutral_more_general(const Atom& general,
                                          const Atom& specific,
                                          const NeutralMap& nm) {
  if (general.pred != specific.pred) return std::nullopt;
  if (general.args.size() != specific.args.size()) return std::nullopt;
  const PatternMap& pm = patterns_for(nm, general.pred);
  std::vector<TermPtr> gen_rest, spec_rest;
  for (size_t j = 0; j < general.args.size(); ++j) {
    auto it = pm.find(static_cast<int>(j + 1));
    if (it != pm.end()) {
      if (!is_instance_of(general.args[j], it->second)) return std::nullopt;
    } else {
      gen_rest.push_back(general.args[j]);
      spec_rest.push_back(specific.args[j]);
    }
  }
  return match_tuple(gen_rest, spec_rest);
}

std::optional<NeutralViolation>
find_neutral_violation(const std::vector<BinClause>& clauses,
                       const NeutralMap& nm) {
  for (size_t ci = 0; ci < clauses.size(); ++ci) {
    const BinClause& c = clauses[ci];
    const PatternMap& head_pm = patterns_for(nm, c.head.pred);
    for (const auto& [pos, pat] : head_pm) {
      (void)pat;
      if (pos < 1 || static_cast<size_t>(pos) > c.head.args.size()) continue;
      VarSet mine = vars_of(c.head.args[pos - 1]);
      if (intersects(mine, other_arg_vars(c.head, pos))) {
        return NeutralViolation{1, ci, pos};
      }
    }
    for (const auto& [pos, pat] : head_pm) {
      if (pos < 1 || static_cast<size_t>(pos) > c.head.args.size()) continue;
      if (!is_more_general(c.head.args[pos - 1], pat)) {
        return NeutralViolation{2, ci, pos};
      }
    }
    if (c.is_fact()) continue;
    const PatternMap& body_pm = patterns_for(nm, c.body.pred);
    for (const auto& [pos, pat] : body_pm) {
      if (pos < 1 || static_cast<size_t>(pos) > c.body.args.size()) continue;
      if (!is_instance_of(c.body.args[pos - 1], pat)) {
        return NeutralViolation{3, ci, pos};
      }
    }
    VarSet escape;
    for (size_t j = 0; j < c.body.args.size(); ++j) {
      if (body_pm.count(static_cast<int>(j + 1))) continue;
      collect_vars(c.body.args[j], escape);
    }
    for (const auto& [pos, pat] : head_pm) {
      (void)pat;
      if (pos < 1 || static_cast<size_t>(pos) > c.head.args.size()) continue;
      if (intersects(vars_of(c.head.args[pos - 1]), escape)) {
        return NeutralViolation{4, ci, pos};
      }
    }
  }
  return std::nullopt;
}

bool is_neutral_for(const std::vector<BinClause>& clauses,
                    const NeutralMap& nm) {
  return !find_neutral_violation(clauses, nm).has_value();
}

NeutralMap enforce_head_disjoint(const std::vector<BinClause>& clauses,
                                 const NeutralMap& nm) {
  NeutralMap out = nm;
  for (const BinClause& c : clauses) {
    auto it = out.find(c.head.pred);
    if (it == out.end()) continue;
    for (int pos : neutral_positions(out, c.head.pred)) {
      if (pos < 1 || static_cast<size_t>(pos) > c.head.args.size()) {
        it->second.erase(pos);
        continue;
      }
      VarSet mine = vars_of(c.head.args[pos - 1]);
      if (intersects(mine, other_arg_vars(c.head, pos))) {
        it->second.erase(pos);
      }
    }
  }
  drop_empty(out);
  return out;
}

NeutralMap enforce_head_patterns(const std::vector<BinClause>& clauses,
                                 const NeutralMap& nm) {
  NeutralMap out = nm;
  for (const BinClause& c : clauses) {
    auto it = out.find(c.head.pred);
    if (it == out.end()) continue;
    for (int pos : neutral_positions(out, c.head.pred)) {
      if (pos < 1 || static_cast<size_t>(pos) > c.head.args.size()) {
        it->second.erase(pos);
        continue;
      }
      std::optional<TermPtr> u =
          less_general(c.head.args[pos - 1], it->second.at(pos));
      if (!u || is_ground(*u)) {
        it->second.erase(pos);
      } else {
        it->second[pos] = rename_apart(*u);
      }
    }
  }
  drop_empty(out);
  return out;
}

NeutralMap enforce_body_instances(const std::vector<BinClause>& clauses,
                                  const NeutralMap& nm) {
  NeutralMap out = nm;
  for (const BinClause& c : clauses) {
    if (c.is_fact()) continue;
    auto it = out.find(c.body.pred);
    if (it == out.end()) continue;
    for (int pos : neutral_positions(out, c.body.pred)) {
      if (pos < 1 || static_cast<size_t>(pos) > c.body.args.size()) {
        it->second.erase(pos);
        continue;
      }
      if (!is_instance_of(c.body.args[pos - 1], it->second.at(pos))) {
        it->second.erase(pos);
      }
    }
  }
  drop_empty(out);
  return out;
}

NeutralMap enforce_no_escape(const std::vector<BinClause>& clauses,
                             const NeutralMap& nm) {
  NeutralMap out = nm;
  for (const BinClause& c : clauses) {
    if (c.is_fact()) continue;
    auto it = out.find(c.head.pred);
    if (it == out.end()) continue;
    const PatternMap& body_pm = patterns_for(out, c.body.pred);
    VarSet escape;
    for (size_t j = 0; j < c.body.args.size(); ++j) {
      if (body_pm.count(static_cast<int>(j + 1))) continue;
      collect_vars(c.body.args[j], escape);
    }
    for (int pos : neutral_positions(out, c.head.pred)) {
      if (pos < 1 || static_cast<size_t>(pos) > c.head.args.size()) {
        it->second.erase(pos);
        continue;
      }
      if (intersects(vars_of(c.head.args[pos - 1]), escape)) {
        it->second.erase(pos);
      }
    }
  }
  drop_empty(out);
  return out;
}

namespace {

bool same_domains(const NeutralMap& a, const NeutralMap& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [pred, pa] : a) {
    auto it = b.find(pred);
    if (it == b.end() || pa.size() != it->second.size()) return false;
    for (const auto& [pos, pat] : pa) {
      (void)pat;
      if (!it->second.count(pos)) return false;
    }
  }
  return true;
}

} // namespace

NeutralMap infer_neutral_map(const std::vector<BinClause>& clauses,
                             const NeutralMap& start) {
  NeutralMap m = enforce_head_disjoint(clauses, start);
  m = enforce_head_patterns(clauses, m);
  m = enforce_body_instances(clauses, m);
  for (;;) {
    NeutralMap next = enforce_no_escape(clauses, m);
    if (same_domains(next, m)) return next;
    m = std::move(next);
  }
}

namespace {

std::string pattern_text(const TermPtr& pat) {
  if (pat->is_var()) return "_";
  return render(canonical_form(pat));
}

void render_one(std::ostringstream& os, const std::string& pred,
                const PatternMap& pm) {
  os << pred << ": {";
  bool first = true;
  for (const auto& [pos, pat] : pm) {
    if (!first) os << ", ";
    first = false;
    os << pos << " -> " << pattern_text(pat);
  }
  os << "}";
}

} // namespace

std::string render_neutral_map(const NeutralMap& nm) {
  if (nm.empty()) return "{}";
  std::ostringstream os;
  bool first = true;
  for (const auto& [pred, pm] : nm) {
    if (!first) os << "; ";
    first = false;
    render_one(os, pred, pm);
  }
  return os.str();
}

std::string render_neutral_map(const NeutralMap& nm, const std::string& pred) {
  auto it = nm.find(pred);
  if (it == nm.end() || it->second.empty()) return "{}";
  std::ostringstream os;
  render_one(os, pred, it->second);
  return os.str();
}

} // namespace lf
