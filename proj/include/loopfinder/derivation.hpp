#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopfinder/term.hpp"
#include "loopfinder/unify.hpp"

namespace lf {

// One resolution step: the clause is renamed apart, its head unified with the
// leftmost atom of the query, and the resolvent is the renamed body followed
// by the remaining query atoms, all under the unifier. Empty optional when the
// query is empty or the head does not unify.
std::optional<std::vector<Atom>> left_step(const std::vector<Atom>& query,
                                           const Clause& clause);

struct SearchLimits {
  size_t node_budget = 1'000'000;  // resolution attempts across one search
};

struct DerivationStep {
  size_t clause_index = 0;      // index into the program's clause list
  std::vector<Atom> resolvent;  // query after the step
};

struct DerivationTrace {
  std::vector<Atom> start;
  std::vector<DerivationStep> steps;

  std::string dump() const;
};

// Result of searching for a long derivation. found: some derivation from the
// query reaches the requested number of steps, and trace holds it.
// budget_exhausted: the search stopped after limits.node_budget resolution
// attempts without an answer either way.
struct LoopSearch {
  bool found = false;
  bool budget_exhausted = false;
  DerivationTrace trace;
};

// Depth-first search over clause choices in program order, leftmost atom
// selected at every step.
LoopSearch loops_to_depth(const Program& p, const Atom& query, size_t depth,
                          const SearchLimits& limits = {});

enum class RunOutcome { success, failure, depth_exceeded };

// Leftmost-selection depth-first search for a refutation. success: some
// branch derives the empty query. failure: the whole search tree is finite
// and was exhausted without success. depth_exceeded: no success, but some
// branch was cut at max_depth or the node budget ran out.
RunOutcome run_query(const Program& p, const Atom& query, size_t max_depth,
                     const SearchLimits& limits = {});

}  // namespace lf
