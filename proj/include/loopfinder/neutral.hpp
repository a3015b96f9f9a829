#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopfinder/term.hpp"
#include "loopfinder/unify.hpp"

namespace lf {

// Pattern map for one predicate: 1-based argument position -> pattern term.
// A position present in the map is "neutral": the subsumption test at this
// position only requires the general atom's argument to be an instance of the
// pattern. Patterns live in their own variable namespace.
using PatternMap = std::map<int, TermPtr>;

// Predicate name -> pattern map. Predicates with an empty pattern map are
// never stored; absence means the empty set of neutral positions.
using NeutralMap = std::map<std::string, PatternMap>;

// Every argument position of every signature predicate mapped to a distinct
// fresh variable.
NeutralMap top_neutral_map(const Signature& sig);

// Neutral positions of pred, ascending. Empty when pred is absent.
std::vector<int> neutral_positions(const NeutralMap& nm, const std::string& pred);

// True when every position constrained by a is also constrained by b and b's
// pattern at that position is at least as general as a's.
bool refines(const NeutralMap& a, const NeutralMap& b);

// Domains equal and patterns pairwise variants.
bool neutral_maps_equal(const NeutralMap& a, const NeutralMap& b);

// Subsumption modulo neutral arguments. `general` subsumes `specific` iff
//   - predicates and arities agree,
//   - at each neutral position, general's argument is an instance of the
//     pattern (specific's argument is unconstrained),
//   - one substitution eta maps the tuple of general's remaining arguments
//     syntactically onto specific's.
// Returns eta on success.
std::optional<Subst> neutral_more_general(const Atom& general,
                                          const Atom& specific,
                                          const NeutralMap& nm);

struct NeutralViolation {
  int condition = 0;       // 1..4, see find_neutral_violation
  size_t clause_index = 0; // index into the checked clause vector
  int position = 0;        // 1-based argument position
};

// Checks that nm is derivation neutral for the given binary clauses. For each
// clause p(s1..sn) <- q(t1..tk) and each neutral position i of p:
//   1. Var(si) is disjoint from the variables of every other head argument.
//   2. si is at least as general as the pattern at i.
//   3. for each neutral position j of q, tj is an instance of the pattern
//      at j (skipped for facts).
//   4. Var(si) is disjoint from Var(tj) for every non-neutral position j of q
//      (skipped for facts).
// Violations are reported per clause in condition order, positions ascending.
std::optional<NeutralViolation>
find_neutral_violation(const std::vector<BinClause>& clauses,
                       const NeutralMap& nm);

bool is_neutral_for(const std::vector<BinClause>& clauses,
                    const NeutralMap& nm);

// The four narrowing stages used by infer_neutral_map. Each returns a map
// whose domains are subsets of the input's.
NeutralMap enforce_head_disjoint(const std::vector<BinClause>& clauses,
                                 const NeutralMap& nm);
NeutralMap enforce_head_patterns(const std::vector<BinClause>& clauses,
                                 const NeutralMap& nm);
NeutralMap enforce_body_instances(const std::vector<BinClause>& clauses,
                                  const NeutralMap& nm);
NeutralMap enforce_no_escape(const std::vector<BinClause>& clauses,
                             const NeutralMap& nm);

// Largest-effort narrowing of `start` into a map that is derivation neutral
// for the clauses: head disjointness, then pattern narrowing, then body
// instance checks, then escape checks iterated to a fixpoint. The result
// refines start.
NeutralMap infer_neutral_map(const std::vector<BinClause>& clauses,
                             const NeutralMap& start);

// "p: {1 -> _, 2 -> [A|B]}; q: {1 -> _}". Patterns are shown with canonical
// variable names, a lone variable as "_". Empty map renders as "{}".
std::string render_neutral_map(const NeutralMap& nm);

// Same, restricted to one predicate. "{}" when pred is absent.
std::string render_neutral_map(const NeutralMap& nm, const std::string& pred);

}  // namespace lf
