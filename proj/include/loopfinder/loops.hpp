#pragma once

#include <string>
#include <vector>

#include "loopfinder/neutral.hpp"
#include "loopfinder/unfold.hpp"

namespace lf {

// Witness that the head of clauses[0] starts an infinite left derivation in
// the binary program {clauses[0..n-1]}. maps[i] must be derivation neutral
// for the suffix starting at clause i, each body must subsume the next head
// modulo maps[i+1], and the last body must subsume its own head modulo the
// last map.
struct LoopCertificate {
  std::vector<BinClause> clauses;
  std::vector<NeutralMap> maps;
  std::vector<int> stamps;  // unfolding iteration each clause appeared at
};

bool certificate_valid(const LoopCertificate& cert);

struct LoopingCondition {
  Atom atom;        // canonical form of the first certificate head
  NeutralMap nmap;  // certificate map for the full clause list
  LoopCertificate origin;
};

struct LoopOptions {
  size_t max_pair_len = 8;  // certificates longer than this are not built
  int max_passes = 3;       // sweeps over the pool while the dictionary grows
};

// Certificates found by sweeping the pool: unit certificates from single
// clauses whose body subsumes their own head modulo an inferred map, plus
// extensions of known certificates by one clause prepended. Pool entries are
// visited ascending by (stamp, text); results are deduplicated; passes repeat
// until nothing new appears or the pass limit is reached.
std::vector<LoopCertificate> build_dictionary(const UnfoldPool& pool,
                                              const Signature& sig,
                                              const LoopOptions& opts = {});

// One condition per distinct (canonical atom, atom-predicate map) over the
// dictionary, first certificate wins, sorted by predicate, then atom text,
// then map text.
std::vector<LoopingCondition>
conditions_from_dictionary(const std::vector<LoopCertificate>& dict);

// True when the query is a variant of the condition atom or subsumes it
// modulo the condition's map. Accepted queries start an infinite left
// derivation in any program containing the certificate clauses' origin.
bool condition_accepts(const LoopingCondition& cond, const Atom& query);

struct AnalysisResult {
  UnfoldPool pool;
  std::vector<LoopCertificate> dictionary;
  std::vector<LoopingCondition> conditions;
};

AnalysisResult analyze_program(const Program& p, int max_iterations,
                               const UnfoldOptions& uopts = {},
                               const LoopOptions& lopts = {});

}  // namespace lf
