#pragma once

// Shared helpers for the test suite: fixture loading and seeded random
// generation of terms, atoms and binary programs.

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "loopfinder/neutral.hpp"
#include "loopfinder/parser.hpp"
#include "loopfinder/term.hpp"
#include "loopfinder/unify.hpp"

namespace testsup {

inline std::string fixture_path(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline lf::Program load_fixture(const std::string& name) {
  return lf::parse_program(slurp(fixture_path(name)));
}

struct Rng {
  std::mt19937_64 eng;

  explicit Rng(uint64_t seed) : eng(seed) {}

  size_t pick(size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(eng);
  }

  bool coin() { return pick(2) == 0; }
};

// Function symbols used by the random generators. Arity 0 entries are
// constants.
struct FuncSym {
  const char* name;
  size_t arity;
};

inline const std::vector<FuncSym>& func_pool() {
  static const std::vector<FuncSym> pool = {
      {"a", 0}, {"b", 0}, {"c", 0}, {"f", 1}, {"s", 1}, {"g", 2},
  };
  return pool;
}

// Random term over a fixed variable pool. Depth 0 forces a leaf.
inline lf::TermPtr random_term(Rng& rng, const std::vector<lf::TermPtr>& vars,
                               size_t depth) {
  size_t leaf_cut = vars.empty() ? 3 : 6;
  if (depth == 0 || rng.pick(10) < leaf_cut) {
    if (!vars.empty() && rng.coin()) return vars[rng.pick(vars.size())];
    const FuncSym& c = func_pool()[rng.pick(3)];
    return lf::mkconst(c.name);
  }
  const FuncSym& f = func_pool()[3 + rng.pick(3)];
  std::vector<lf::TermPtr> args;
  for (size_t i = 0; i < f.arity; ++i) {
    args.push_back(random_term(rng, vars, depth - 1));
  }
  return lf::mkfun(f.name, std::move(args));
}

inline std::vector<lf::TermPtr> fresh_var_pool(size_t n) {
  std::vector<lf::TermPtr> vars;
  for (size_t i = 0; i < n; ++i) vars.push_back(lf::fresh_var());
  return vars;
}

inline lf::Atom random_atom(Rng& rng, const std::string& pred, size_t arity,
                            const std::vector<lf::TermPtr>& vars,
                            size_t depth) {
  lf::Atom a;
  a.pred = pred;
  for (size_t i = 0; i < arity; ++i) {
    a.args.push_back(random_term(rng, vars, depth));
  }
  return a;
}

// Random binary program over predicates p, q, r with arities from 1 to
// max_arity. Each clause has its own variable pool so clauses are variable
// disjoint.
inline std::vector<lf::BinClause> random_binary_program(Rng& rng,
                                                        size_t max_clauses,
                                                        size_t max_arity,
                                                        size_t depth) {
  static const char* preds[] = {"p", "q", "r"};
  std::vector<size_t> arities = {1 + rng.pick(max_arity),
                                 1 + rng.pick(max_arity),
                                 1 + rng.pick(max_arity)};
  std::vector<lf::BinClause> prog;
  size_t n = 1 + rng.pick(max_clauses);
  for (size_t i = 0; i < n; ++i) {
    std::vector<lf::TermPtr> vars = fresh_var_pool(2 + rng.pick(3));
    size_t hp = rng.pick(3);
    lf::BinClause cl;
    cl.head = random_atom(rng, preds[hp], arities[hp], vars, depth);
    if (rng.pick(10) < 8) {
      size_t bp = rng.pick(3);
      cl.body = random_atom(rng, preds[bp], arities[bp], vars, depth);
    } else {
      cl.body = lf::Atom::truth();
    }
    prog.push_back(std::move(cl));
  }
  return prog;
}

// Views a parsed clause with at most one body atom as a binary clause.
inline lf::BinClause bin_of(const lf::Clause& cl) {
  lf::BinClause bc;
  bc.head = cl.head;
  bc.body = cl.body.empty() ? lf::Atom::truth() : cl.body[0];
  return bc;
}

inline std::vector<lf::BinClause> bins_of(const lf::Program& prog) {
  std::vector<lf::BinClause> out;
  for (const lf::Clause& cl : prog.clauses) out.push_back(bin_of(cl));
  return out;
}

inline lf::Signature signature_of(const std::vector<lf::BinClause>& prog) {
  lf::Signature sig;
  for (const lf::BinClause& cl : prog) {
    sig[cl.head.pred] = cl.head.args.size();
    if (!cl.is_fact()) sig[cl.body.pred] = cl.body.args.size();
  }
  return sig;
}

// Random instance of a pattern: every variable of the pattern is replaced by
// a random term.
inline lf::TermPtr random_instance(Rng& rng, const lf::TermPtr& pattern,
                                   size_t depth) {
  lf::TermPtr renamed = lf::rename_apart(pattern);
  lf::VarSet vs;
  lf::collect_vars(renamed, vs);
  lf::Subst s;
  std::vector<lf::TermPtr> pool = fresh_var_pool(2);
  for (int64_t v : vs) s.set(v, random_term(rng, pool, depth));
  return lf::apply(s, renamed);
}

namespace detail {

// Replaces some subterm occurrences with distinct fresh variables. Because
// each introduced variable is distinct, mapping them back to the replaced
// subterms is a consistent substitution, so the result is more general than
// the input.
inline lf::TermPtr generalize_term(Rng& rng, const lf::TermPtr& t) {
  if (rng.pick(10) < 3) return lf::fresh_var();
  if (t->is_var() || t->args.empty()) return t;
  std::vector<lf::TermPtr> args;
  for (const lf::TermPtr& a : t->args) args.push_back(generalize_term(rng, a));
  return lf::mkfun(t->name, std::move(args));
}

}  // namespace detail

// Builds an atom that is more general than `a` (plain generalization: fresh
// distinct variables replace some subterms).
inline lf::Atom generalize_atom(Rng& rng, const lf::Atom& a) {
  lf::Atom out;
  out.pred = a.pred;
  for (const lf::TermPtr& t : a.args) {
    out.args.push_back(detail::generalize_term(rng, t));
  }
  return out;
}

// Builds an atom related to `a` through the filter described by `nm`:
// distinguished positions receive arbitrary instances of their patterns,
// the remaining positions are generalized consistently.
inline lf::Atom neutral_generalize(Rng& rng, const lf::Atom& a,
                                   const lf::NeutralMap& nm) {
  lf::Atom out;
  out.pred = a.pred;
  auto it = nm.find(a.pred);
  for (size_t j = 0; j < a.args.size(); ++j) {
    const lf::TermPtr* pat = nullptr;
    if (it != nm.end()) {
      auto pit = it->second.find(static_cast<int>(j) + 1);
      if (pit != it->second.end()) pat = &pit->second;
    }
    if (pat) {
      out.args.push_back(random_instance(rng, *pat, 1));
    } else {
      out.args.push_back(detail::generalize_term(rng, a.args[j]));
    }
  }
  return out;
}

}  // namespace testsup
