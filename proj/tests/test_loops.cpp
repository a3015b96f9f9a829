#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "loopfinder/derivation.hpp"
#include "loopfinder/loops.hpp"
#include "loopfinder/neutral.hpp"
#include "loopfinder/parser.hpp"
#include "loopfinder/term.hpp"
#include "loopfinder/unify.hpp"
#include "support.hpp"

using namespace lf;

namespace {

std::string condition_key(const LoopingCondition& c) {
  return render(c.atom) + " | " + render_neutral_map(c.nmap, c.atom.pred);
}

std::set<std::string> condition_keys(const std::vector<LoopingCondition>& cs) {
  std::set<std::string> out;
  for (const LoopingCondition& c : cs) out.insert(condition_key(c));
  return out;
}

const LoopingCondition* find_condition(const std::vector<LoopingCondition>& cs,
                                       const std::string& pred,
                                       const std::vector<int>& positions) {
  for (const LoopingCondition& c : cs) {
    if (c.atom.pred == pred &&
        neutral_positions(c.nmap, pred) == positions) {
      return &c;
    }
  }
  return nullptr;
}

// Hand built three clause chain with one structured pattern and one ground
// pattern.
LoopCertificate chain_certificate() {
  Program prog = parse_program(
      "r(X) :- q(X, f(f(X))).\n"
      "q(X, f(Y)) :- p(f(X), a).\n"
      "p(f(g(X)), a) :- p(X, a).\n");
  std::vector<BinClause> bins = testsup::bins_of(prog);
  NeutralMap tau1;
  tau1["p"][2] = parse_term_text("a");
  tau1["q"][2] = parse_term_text("f(X)");
  NeutralMap tau3;
  tau3["p"][2] = parse_term_text("a");
  LoopCertificate cert;
  cert.clauses = bins;
  cert.maps = {tau1, tau1, tau3};
  cert.stamps = {1, 1, 1};
  return cert;
}

}  // namespace

TEST_CASE("a hand built chain certificate validates") {
  LoopCertificate cert = chain_certificate();
  CHECK(certificate_valid(cert));

  LoopCertificate tail = cert;
  tail.clauses = {cert.clauses[2]};
  tail.maps = {cert.maps[2]};
  tail.stamps = {1};
  CHECK(certificate_valid(tail));

  LoopCertificate mid = cert;
  mid.clauses = {cert.clauses[1], cert.clauses[2]};
  mid.maps = {cert.maps[1], cert.maps[2]};
  mid.stamps = {1, 1};
  CHECK(certificate_valid(mid));
}

TEST_CASE("tampered certificates are rejected") {
  LoopCertificate cert = chain_certificate();

  LoopCertificate reordered = cert;
  std::swap(reordered.clauses[0], reordered.clauses[1]);
  CHECK_FALSE(certificate_valid(reordered));

  LoopCertificate bad_map = cert;
  bad_map.maps[2]["p"][2] = parse_term_text("b");
  CHECK_FALSE(certificate_valid(bad_map));

  LoopCertificate truncated = cert;
  truncated.maps.pop_back();
  CHECK_FALSE(certificate_valid(truncated));

  LoopCertificate empty;
  CHECK_FALSE(certificate_valid(empty));
}

TEST_CASE("a fact cannot certify a loop") {
  LoopCertificate cert;
  cert.clauses = testsup::bins_of(parse_program("p(a)."));
  cert.maps = {NeutralMap{}};
  cert.stamps = {1};
  CHECK_FALSE(certificate_valid(cert));
}

TEST_CASE("a unit certificate needs the body to subsume the head") {
  Program prog = testsup::load_fixture("append.pl");
  BinClause rec = testsup::bin_of(prog.clauses[1]);
  NeutralMap nm = infer_neutral_map({rec}, top_neutral_map(prog.signature()));
  LoopCertificate cert;
  cert.clauses = {rec};
  cert.maps = {nm};
  cert.stamps = {1};
  CHECK(certificate_valid(cert));

  Program rprog = testsup::load_fixture("reverse.pl");
  BinClause rrec = testsup::bin_of(rprog.clauses[2]);
  NeutralMap rnm = infer_neutral_map({rrec}, top_neutral_map(rprog.signature()));
  LoopCertificate acc;
  acc.clauses = {rrec};
  acc.maps = {rnm};
  acc.stamps = {1};
  CHECK(certificate_valid(acc));

  LoopCertificate weak = acc;
  weak.maps = {NeutralMap{}};
  CHECK_FALSE(certificate_valid(weak));
}

TEST_CASE("every certificate the analysis builds validates") {
  for (const char* name :
       {"append.pl", "append3.pl", "permute.pl", "reverse.pl", "merge.pl",
        "mult.pl", "ex22.pl"}) {
    AnalysisResult res = analyze_program(testsup::load_fixture(name), 2);
    CHECK(!res.dictionary.empty());
    for (const LoopCertificate& cert : res.dictionary) {
      CHECK(certificate_valid(cert));
    }
  }
}

TEST_CASE("the list recursion yields exactly one condition at depth one") {
  AnalysisResult res = analyze_program(testsup::load_fixture("append.pl"), 1);
  REQUIRE(res.conditions.size() == 1);
  const LoopingCondition& c = res.conditions[0];
  CHECK(canonical_text(c.atom) ==
        canonical_text(parse_atom_text("append([A|B], C, [A|D])")));
  CHECK(neutral_positions(c.nmap, "append") == std::vector<int>{2});
  REQUIRE(c.origin.clauses.size() == 1);
  CHECK(c.origin.stamps == std::vector<int>{1});
}

TEST_CASE("the two level program carries its conditions across predicates") {
  AnalysisResult res = analyze_program(testsup::load_fixture("append3.pl"), 2);
  const LoopingCondition* unit = find_condition(res.conditions, "append", {2});
  REQUIRE(unit != nullptr);

  const LoopingCondition* wide =
      find_condition(res.conditions, "append3", {2, 3, 4});
  REQUIRE(wide != nullptr);
  CHECK(canonical_text(wide->atom) ==
        canonical_text(parse_atom_text("append3(A, B, C, D)")));
  CHECK(wide->origin.clauses.size() == 2);

  const LoopingCondition* narrow =
      find_condition(res.conditions, "append3", {3});
  REQUIRE(narrow != nullptr);
  CHECK(canonical_text(narrow->atom) ==
        canonical_text(parse_atom_text("append3([], A, B, C)")));
}

TEST_CASE("conditions accept the queries they describe") {
  AnalysisResult app = analyze_program(testsup::load_fixture("append.pl"), 1);
  REQUIRE(app.conditions.size() == 1);
  CHECK(condition_accepts(app.conditions[0], parse_query("append(X, [], Y)")));
  CHECK(condition_accepts(app.conditions[0],
                          parse_query("append(X, f(g(a)), Y)")));
  CHECK_FALSE(
      condition_accepts(app.conditions[0], parse_query("append([a], [b], [c])")));
  CHECK_FALSE(
      condition_accepts(app.conditions[0], parse_query("append(a, b, c)")));
  CHECK_FALSE(
      condition_accepts(app.conditions[0], parse_query("other(X, Y, Z)")));
}

TEST_CASE("each condition accepts its own atom and variants of it") {
  for (const char* name : {"append3.pl", "permute.pl", "merge.pl", "mult.pl"}) {
    AnalysisResult res = analyze_program(testsup::load_fixture(name), 2);
    for (const LoopingCondition& c : res.conditions) {
      CHECK(condition_accepts(c, c.atom));
      CHECK(condition_accepts(c, rename_apart(c.atom)));
    }
  }
}

TEST_CASE("the accumulator program accepts the flat call") {
  AnalysisResult res = analyze_program(testsup::load_fixture("reverse.pl"), 1);
  Atom q = parse_query("reverse(As, [])");
  bool accepted = false;
  for (const LoopingCondition& c : res.conditions) {
    accepted = accepted || condition_accepts(c, q);
  }
  CHECK(accepted);
}

TEST_CASE("the interleaving program accepts both directed calls") {
  AnalysisResult res = analyze_program(testsup::load_fixture("merge.pl"), 1);
  for (const char* text : {"merge(As, [0], Bs)", "merge([0], As, Bs)"}) {
    Atom q = parse_query(text);
    bool accepted = false;
    for (const LoopingCondition& c : res.conditions) {
      accepted = accepted || condition_accepts(c, q);
    }
    CHECK(accepted);
  }
}

TEST_CASE("the arithmetic program accepts the doubly nested call") {
  AnalysisResult res = analyze_program(testsup::load_fixture("mult.pl"), 4);
  Atom q = parse_query("mult(s(s(0)), A, B)");
  bool accepted = false;
  for (const LoopingCondition& c : res.conditions) {
    accepted = accepted || condition_accepts(c, q);
  }
  CHECK(accepted);
}

TEST_CASE("ground flow and finite unfoldings produce no conditions") {
  CHECK(analyze_program(testsup::load_fixture("fold_ground.pl"), 2)
            .conditions.empty());
  AnalysisResult res = analyze_program(testsup::load_fixture("p1231.pl"), 4);
  CHECK(res.conditions.empty());
  REQUIRE(res.pool.fixpoint_at.has_value());
  CHECK(*res.pool.fixpoint_at == 2);
}

TEST_CASE("self application with twin arguments stays out of reach") {
  Program prog = parse_program("p(X, X) :- p(f(X), f(X)).");
  AnalysisResult res = analyze_program(prog, 3);
  CHECK(res.conditions.empty());
}

TEST_CASE("conditions never repeat a key") {
  for (const char* name : {"append3.pl", "mult.pl", "ex22.pl"}) {
    AnalysisResult res = analyze_program(testsup::load_fixture(name), 3);
    CHECK(condition_keys(res.conditions).size() == res.conditions.size());
  }
}

TEST_CASE("a deeper unfolding only adds conditions") {
  for (const char* name : {"append3.pl", "mult.pl", "ex22.pl"}) {
    Program prog = testsup::load_fixture(name);
    std::set<std::string> shallow =
        condition_keys(analyze_program(prog, 1).conditions);
    std::set<std::string> deep =
        condition_keys(analyze_program(prog, 2).conditions);
    for (const std::string& k : shallow) CHECK(deep.count(k) == 1);
  }
}

TEST_CASE("every condition has a certificate in the dictionary") {
  AnalysisResult res = analyze_program(testsup::load_fixture("append3.pl"), 2);
  CHECK(res.conditions.size() <= res.dictionary.size());
  for (const LoopingCondition& c : res.conditions) {
    CHECK(certificate_valid(c.origin));
    CHECK(canonical_text(c.atom) ==
          canonical_text(c.origin.clauses.front().head));
  }
}

TEST_CASE("the pair length cap limits certificates") {
  LoopOptions opts;
  opts.max_pair_len = 1;
  AnalysisResult res = analyze_program(testsup::load_fixture("append3.pl"), 2,
                                       UnfoldOptions{}, opts);
  CHECK(!res.conditions.empty());
  for (const LoopCertificate& cert : res.dictionary) {
    CHECK(cert.clauses.size() == 1);
  }
}

TEST_CASE("extra passes only grow the dictionary") {
  LoopOptions one;
  one.max_passes = 1;
  Program prog = testsup::load_fixture("append3.pl");
  std::set<std::string> first =
      condition_keys(analyze_program(prog, 2, UnfoldOptions{}, one).conditions);
  std::set<std::string> full =
      condition_keys(analyze_program(prog, 2).conditions);
  for (const std::string& k : first) CHECK(full.count(k) == 1);
}

TEST_CASE("analysis output is deterministic") {
  Program prog = testsup::load_fixture("mult.pl");
  AnalysisResult a = analyze_program(prog, 3);
  AnalysisResult b = analyze_program(prog, 3);
  REQUIRE(a.conditions.size() == b.conditions.size());
  for (size_t i = 0; i < a.conditions.size(); ++i) {
    CHECK(condition_key(a.conditions[i]) == condition_key(b.conditions[i]));
  }
}

TEST_CASE("accepted queries really loop") {
  AnalysisResult res = analyze_program(testsup::load_fixture("append3.pl"), 2);
  for (const LoopingCondition& c : res.conditions) {
    Program origin;
    origin.clauses = to_clauses(c.origin.clauses);
    LoopSearch r = loops_to_depth(origin, c.atom, 300);
    CHECK(r.found);
  }
}
