#pragma once

#include <optional>

#include "loopfinder/term.hpp"

namespace lf {

struct UnfoldOptions {
  // Hard cap on the number of binary clauses kept across all iterations.
  size_t pool_cap = 100000;
};

// A derived binary clause, stored in canonical form. The stamp is the first
// iteration (1-based) at which the clause appears; `text` renders the
// canonical form and doubles as the dedup key.
struct StampedClause {
  BinClause clause;
  int stamp;
  std::string text;
};

struct UnfoldPool {
  // Sorted by stamp, then text.
  std::vector<StampedClause> items;
  // Highest iteration whose delta was computed.
  int max_iteration = 0;
  // Set when some iterate added nothing new; its value is the iteration the
  // pool was already complete at.
  std::optional<int> fixpoint_at;

  std::string dump() const;
};

// One application of the binary unfolding operator to an explicit set of
// binary clauses. Output is canonicalized, deduplicated, and sorted by text.
std::vector<BinClause> unfold_step(const Program& p,
                                   const std::vector<BinClause>& x);

// Iterates the operator from the empty set up to `max_iterations`, keeping
// every clause with the iteration it first appeared at. Stops early at a
// fixpoint. Throws ResourceError when the pool cap would be exceeded.
UnfoldPool unfold_upto(const Program& p, int max_iterations,
                       const UnfoldOptions& opts = {});

}  // namespace lf
