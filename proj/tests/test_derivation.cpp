#include <doctest.h>

#include <string>
#include <vector>

#include "loopfinder/derivation.hpp"
#include "loopfinder/parser.hpp"
#include "loopfinder/term.hpp"
#include "loopfinder/unify.hpp"
#include "support.hpp"

using namespace lf;

TEST_CASE("a resolution step renames the clause apart") {
  Clause cl = parse_program("p(X) :- q(X, Y).").clauses[0];
  std::vector<Atom> query = {parse_atom_text("p(f(X))")};
  auto next = left_step(query, cl);
  REQUIRE(next.has_value());
  REQUIRE(next->size() == 1);
  CHECK((*next)[0].pred == "q");
  CHECK(term_eq((*next)[0].args[0], query[0].args[0]));
  for (int64_t v : vars_of(query[0])) {
    CHECK(vars_of((*next)[0]).count(v) <= 1);
  }
}

TEST_CASE("resolution acts on the leftmost atom only") {
  Clause cl = parse_program("p(a) :- r(a).").clauses[0];
  std::vector<Atom> query = parse_program("g(X) :- p(X), s(X).").clauses[0].body;
  auto next = left_step(query, cl);
  REQUIRE(next.has_value());
  REQUIRE(next->size() == 2);
  CHECK((*next)[0].pred == "r");
  CHECK((*next)[1].pred == "s");
  CHECK((*next)[1].args[0]->name == "a");
}

TEST_CASE("a failed unification yields no step") {
  Clause cl = parse_program("p(a) :- q(a).").clauses[0];
  std::vector<Atom> query = {parse_atom_text("p(b)")};
  CHECK_FALSE(left_step(query, cl).has_value());
}

TEST_CASE("facts shorten the query") {
  Clause cl = parse_program("q(a).").clauses[0];
  std::vector<Atom> query = parse_program("g(X) :- q(X), r(X).").clauses[0].body;
  auto next = left_step(query, cl);
  REQUIRE(next.has_value());
  REQUIRE(next->size() == 1);
  CHECK((*next)[0].args[0]->name == "a");
}

TEST_CASE("run_query reports success failure and depth") {
  Program app = testsup::load_fixture("append.pl");
  CHECK(run_query(app, parse_query("append([a, b], [c], X)"), 50) ==
        RunOutcome::success);
  CHECK(run_query(app, parse_query("append([a], [], [b])"), 50) ==
        RunOutcome::failure);
  Program loop = parse_program("p(X) :- p(X).");
  CHECK(run_query(loop, parse_query("p(a)"), 30) ==
        RunOutcome::depth_exceeded);
}

TEST_CASE("loops_to_depth finds the infinite branch") {
  Program loop = parse_program("p(X) :- p(f(X)).");
  LoopSearch r = loops_to_depth(loop, parse_query("p(Y)"), 200);
  CHECK(r.found);
  CHECK_FALSE(r.budget_exhausted);
  CHECK(r.trace.steps.size() == 200);
}

TEST_CASE("derivations through facts alone terminate") {
  Program facts = parse_program("p(a). p(b).");
  LoopSearch r = loops_to_depth(facts, parse_query("p(X)"), 10);
  CHECK_FALSE(r.found);
  CHECK_FALSE(r.budget_exhausted);
}

TEST_CASE("the recursion depth bound is the derivation length") {
  Program app = testsup::load_fixture("append.pl");
  LoopSearch r = loops_to_depth(app, parse_query("append(X, [], Y)"), 500);
  CHECK(r.found);
}

TEST_CASE("a finite search space is exhausted without finding a loop") {
  Program prog = testsup::load_fixture("p1231.pl");
  LoopSearch r = loops_to_depth(prog, parse_query("p(X, Y)"), 100);
  CHECK_FALSE(r.found);
  CHECK_FALSE(r.budget_exhausted);
}

TEST_CASE("the node budget cuts the search off") {
  Program loop = parse_program("p(X) :- p(f(X)).");
  SearchLimits limits;
  limits.node_budget = 50;
  LoopSearch r = loops_to_depth(loop, parse_query("p(Y)"), 200, limits);
  CHECK_FALSE(r.found);
  CHECK(r.budget_exhausted);
}

TEST_CASE("traces replay the visited resolvents") {
  Program loop = parse_program("p(X) :- p(f(X)).");
  LoopSearch r = loops_to_depth(loop, parse_query("p(Y)"), 3);
  REQUIRE(r.found);
  std::string d = r.trace.dump();
  CHECK(d.find("start: p(Y)") != std::string::npos);
  CHECK(d.find("via clause 1") != std::string::npos);
}

TEST_CASE("left recursion loops even with a matching fact present") {
  Program prog = testsup::load_fixture("ex22.pl");
  LoopSearch r = loops_to_depth(prog, parse_query("p(a, a)"), 100);
  CHECK(r.found);
}
