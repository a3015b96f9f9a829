#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "loopfinder/loops.hpp"
#include "loopfinder/term.hpp"

namespace lf {

// A mode is the set of argument positions required to be ground at call time.
using Mode = std::set<int>;
using ModeSet = std::set<Mode>;

// Mode sets are enumerated exhaustively (2^arity members), so arities above
// this bound are refused.
inline constexpr size_t kMaxModeArity = 16;

// All 2^arity modes of pred. Throws ResourceError above kMaxModeArity; pred
// only names the culprit in the message.
ModeSet all_modes(const std::string& pred, size_t arity);

// Positions of the condition atom that are neutral under the condition's map
// or carry a ground argument. Queries ground at exactly these positions can
// still be accepted by the condition, so the mode admits looping queries.
Mode looping_mode(const LoopingCondition& cond);

// Union of looping_mode per predicate indicator ("name/arity").
std::map<std::string, ModeSet>
looping_modes(const std::vector<LoopingCondition>& conds);

// Modes that ground at least as many positions as some member: supersets.
ModeSet less_general_modes(const ModeSet& ms, const std::string& pred,
                           size_t arity);

// Modes that ground at most as many positions as some member: subsets.
ModeSet more_general_modes(const ModeSet& ms, const std::string& pred,
                           size_t arity);

struct ModeClassification {
  size_t arity = 0;
  ModeSet looping;      // modes of inferred conditions, as computed
  ModeSet terminating;  // modes supplied as terminating, as given
  ModeSet undecided;    // everything not covered by the two closures
};

// For every program predicate: undecided = all modes, minus supersets of
// terminating members, minus subsets of looping members. Predicates missing
// from tm contribute no terminating modes. Keys are predicate indicators.
std::map<std::string, ModeClassification>
classify_modes(const Program& p, const std::vector<LoopingCondition>& conds,
               const std::map<std::string, ModeSet>& tm);

// Every predicate's undecided set is empty.
bool all_decided(const std::map<std::string, ModeClassification>& cls);

// Input shape: {"name/arity": [[position, ...], ...], ...}. Every key must
// name a signature predicate out of sig, and every position must lie in
// 1..arity. Throws ParseError on malformed JSON or schema violations.
std::map<std::string, ModeSet> parse_modes_json(const std::string& text,
                                                const Signature& sig);

std::string render_mode(const Mode& m);         // "{1,3}", "{}"
std::string render_mode_set(const ModeSet& s);  // "{{}, {1}, {1,2}}"

}  // namespace lf
