#include "loopfinder/derivation.hpp"

#include <sstream>

namespace lf {

std::optional<std::vector<Atom>> left_step(const std::vector<Atom>& query,
                                           const Clause& clause) {
  if (query.empty()) return std::nullopt;
  if (clause.head.pred != query.front().pred ||
      clause.head.args.size() != query.front().args.size()) {
    return std::nullopt;
  }
  Clause rc = rename_apart(clause);
  std::optional<Subst> theta = mgu(rc.head, query.front());
  if (!theta) return std::nullopt;
  std::vector<Atom> out;
  out.reserve(rc.body.size() + query.size() - 1);
  for (const Atom& b : rc.body) out.push_back(apply(*theta, b));
  for (size_t i = 1; i < query.size(); ++i) {
    out.push_back(apply(*theta, query[i]));
  }
  return out;
}

namespace {

std::string render_query(const std::vector<Atom>& q) {
  if (q.empty()) return "true";
  std::ostringstream os;
  for (size_t i = 0; i < q.size(); ++i) {
    if (i) os << ", ";
    os << render(q[i]);
  }
  return os.str();
}

// Depth equals stack.size() - 1; path holds the clause index of every edge
// on the current branch, so path.size() tracks the same quantity.
struct LoopFrame {
  std::vector<Atom> query;
  size_t ci = 0;
};

struct RunFrame {
  std::vector<Atom> query;
  size_t ci = 0;
  bool cut = false;
};

}  // namespace

std::string DerivationTrace::dump() const {
  std::ostringstream os;
  os << "start: " << render_query(start) << "\n";
  for (size_t i = 0; i < steps.size(); ++i) {
    os << i + 1 << ". via clause " << steps[i].clause_index + 1 << ": "
       << render_query(steps[i].resolvent) << "\n";
  }
  return os.str();
}

LoopSearch loops_to_depth(const Program& p, const Atom& query, size_t depth,
                          const SearchLimits& limits) {
  size_t budget = limits.node_budget;
  std::vector<Atom> start{query};
  LoopSearch out;
  out.trace.start = start;
  std::vector<LoopFrame> stack;
  std::vector<size_t> path;
  stack.push_back(LoopFrame{start, 0});
  while (!stack.empty()) {
    if (stack.size() - 1 == depth) {
      out.found = true;
      break;
    }
    LoopFrame& f = stack.back();
    if (f.query.empty() || f.ci == p.clauses.size()) {
      stack.pop_back();
      if (!stack.empty()) path.pop_back();
      continue;
    }
    if (budget == 0) {
      out.budget_exhausted = true;
      break;
    }
    --budget;
    size_t ci = f.ci++;
    std::optional<std::vector<Atom>> next = left_step(f.query, p.clauses[ci]);
    if (next) {
      path.push_back(ci);
      stack.push_back(LoopFrame{std::move(*next), 0});
    }
  }
  if (out.found) {
    // The live stack holds every resolvent along the found branch, with
    // path[i] naming the clause behind edge i.
    out.trace.steps.reserve(path.size());
    for (size_t i = 0; i < path.size(); ++i) {
      out.trace.steps.push_back(DerivationStep{path[i], stack[i + 1].query});
    }
  }
  return out;
}

RunOutcome run_query(const Program& p, const Atom& query, size_t max_depth,
                     const SearchLimits& limits) {
  size_t budget = limits.node_budget;
  std::vector<RunFrame> stack;
  stack.push_back(RunFrame{std::vector<Atom>{query}, 0, false});
  while (!stack.empty()) {
    RunFrame& f = stack.back();
    if (f.query.empty()) return RunOutcome::success;
    bool at_depth = stack.size() - 1 == max_depth;
    if (at_depth || f.ci == p.clauses.size()) {
      RunOutcome r = at_depth || f.cut ? RunOutcome::depth_exceeded
                                       : RunOutcome::failure;
      stack.pop_back();
      if (stack.empty()) return r;
      if (r == RunOutcome::depth_exceeded) stack.back().cut = true;
      continue;
    }
    if (budget == 0) return RunOutcome::depth_exceeded;
    --budget;
    size_t ci = f.ci++;
    std::optional<std::vector<Atom>> next = left_step(f.query, p.clauses[ci]);
    if (next) stack.push_back(RunFrame{std::move(*next), 0, false});
  }
  return RunOutcome::failure;
}

}  // namespace lf
