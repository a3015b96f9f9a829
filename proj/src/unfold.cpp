#include "loopfinder/unfold.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "loopfinder/errors.hpp"
#include "loopfinder/unify.hpp"

namespace lf {

namespace {

// Enumerates every instantiation of `rule` over the premise pool. For body
// length m and a chosen position i, the atoms left of i are resolved against
// success patterns from the pool, and position i takes either a pool clause
// or the identity, which keeps the body atom itself. A pool premise with body
// `true` is only admissible at the last position. Each instantiation is
// reported together with the largest premise stamp involved; the identity
// and the empty premise set of a fact count as stamp 0.
void enumerate_rule(const Clause& rule, const std::vector<StampedClause>& pool,
                    const std::function<void(const BinClause&, int)>& out) {
  const size_t m = rule.body.size();
  if (m == 0) {
    out(BinClause{rule.head, Atom::truth()}, 0);
    return;
  }
  for (size_t i = 1; i <= m; ++i) {
    // go(jj, theta, maxstamp): positions before jj are resolved, theta is the
    // accumulated unifier over the rule's variables.
    std::function<void(size_t, const Subst&, int)> go =
        [&](size_t jj, const Subst& theta, int maxstamp) {
          if (jj + 1 == i) {
            const Atom goal = apply(theta, rule.body[jj]);
            {
              BinClause res;
              res.head = apply(theta, rule.head);
              res.body = goal;
              out(res, maxstamp);
            }
            for (const auto& entry : pool) {
              if (entry.clause.head.pred != goal.pred ||
                  entry.clause.head.arity() != goal.arity()) {
                continue;
              }
              if (i < m && entry.clause.is_fact()) continue;
              BinClause prem = rename_apart(entry.clause);
              auto theta2 = mgu(goal, prem.head);
              if (!theta2) continue;
              BinClause res;
              res.head = apply(*theta2, apply(theta, rule.head));
              res.body = apply(*theta2, prem.body);
              out(res, std::max(maxstamp, entry.stamp));
            }
            return;
          }
          const Atom goal = apply(theta, rule.body[jj]);
          for (const auto& entry : pool) {
            if (!entry.clause.is_fact()) continue;
            if (entry.clause.head.pred != goal.pred ||
                entry.clause.head.arity() != goal.arity()) {
              continue;
            }
            Atom prem = rename_apart(entry.clause.head);
            auto theta2 = mgu(goal, prem);
            if (!theta2) continue;
            go(jj + 1, compose(theta, *theta2),
               std::max(maxstamp, entry.stamp));
          }
        };
    go(0, Subst{}, 0);
  }
}

std::vector<StampedClause> to_stamped(const std::vector<BinClause>& x) {
  std::vector<StampedClause> out;
  out.reserve(x.size());
  for (const auto& c : x) out.push_back({c, 0, {}});
  return out;
}

}  // namespace

std::vector<BinClause> unfold_step(const Program& p,
                                   const std::vector<BinClause>& x) {
  std::vector<StampedClause> pool = to_stamped(x);
  std::set<std::string> seen;
  std::vector<BinClause> result;
  for (const auto& rule : p.clauses) {
    enumerate_rule(rule, pool, [&](const BinClause& c, int) {
      BinClause canon = canonical_form(c);
      std::string text = render(canon);
      if (!seen.insert(std::move(text)).second) return;
      result.push_back(std::move(canon));
    });
  }
  std::sort(result.begin(), result.end(),
            [](const BinClause& a, const BinClause& b) {
              return render(a) < render(b);
            });
  return result;
}

UnfoldPool unfold_upto(const Program& p, int max_iterations,
                       const UnfoldOptions& opts) {
  UnfoldPool pool;
  std::set<std::string> seen;
  for (int k = 1; k <= max_iterations; ++k) {
    std::vector<StampedClause> delta;
    for (const auto& rule : p.clauses) {
      enumerate_rule(rule, pool.items, [&](const BinClause& c, int maxstamp) {
        // Semi-naive step: keep exactly the instantiations whose newest
        // premise comes from the previous iteration. Anything older was
        // already produced then.
        if (maxstamp != k - 1) return;
        BinClause canon = canonical_form(c);
        std::string text = render(canon);
        if (!seen.insert(text).second) return;
        if (pool.items.size() + delta.size() + 1 > opts.pool_cap) {
          throw ResourceError("binary clause pool exceeded cap of " +
                              std::to_string(opts.pool_cap));
        }
        delta.push_back({std::move(canon), k, std::move(text)});
      });
    }
    pool.max_iteration = k;
    if (delta.empty()) {
      pool.fixpoint_at = k - 1;
      break;
    }
    std::sort(delta.begin(), delta.end(),
              [](const StampedClause& a, const StampedClause& b) {
                return a.text < b.text;
              });
    pool.items.insert(pool.items.end(),
                      std::make_move_iterator(delta.begin()),
                      std::make_move_iterator(delta.end()));
  }
  return pool;
}

std::string UnfoldPool::dump() const {
  std::ostringstream os;
  for (const auto& it : items) os << it.stamp << "  " << it.text << "\n";
  return os.str();
}

}  // namespace lf
