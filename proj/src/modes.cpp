#include "loopfinder/modes.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "loopfinder/errors.hpp"
#include "loopfinder/parser.hpp"

namespace lf {

ModeSet all_modes(const std::string& pred, size_t arity) {
  if (arity > kMaxModeArity) {
    throw ResourceError("mode enumeration for '" +
                        pred_indicator(pred, arity) +
                        "' exceeds the arity bound of " +
                        std::to_string(kMaxModeArity));
  }
  ModeSet out;
  for (size_t mask = 0; mask < (size_t{1} << arity); ++mask) {
    Mode m;
    for (size_t i = 0; i < arity; ++i) {
      if (mask & (size_t{1} << i)) m.insert(static_cast<int>(i + 1));
    }
    out.insert(std::move(m));
  }
  return out;
}

Mode looping_mode(const LoopingCondition& cond) {
  Mode m;
  for (int pos : neutral_positions(cond.nmap, cond.atom.pred)) {
    if (pos >= 1 && static_cast<size_t>(pos) <= cond.atom.args.size()) {
      m.insert(pos);
    }
  }
  for (size_t i = 0; i < cond.atom.args.size(); ++i) {
    if (is_ground(cond.atom.args[i])) m.insert(static_cast<int>(i + 1));
  }
  return m;
}

std::map<std::string, ModeSet>
looping_modes(const std::vector<LoopingCondition>& conds) {
  std::map<std::string, ModeSet> out;
  for (const LoopingCondition& c : conds) {
    out[pred_indicator(c.atom.pred, c.atom.args.size())].insert(
        looping_mode(c));
  }
  return out;
}

ModeSet less_general_modes(const ModeSet& ms, const std::string& pred,
                           size_t arity) {
  ModeSet out;
  for (const Mode& cand : all_modes(pred, arity)) {
    for (const Mode& m : ms) {
      if (std::includes(cand.begin(), cand.end(), m.begin(), m.end())) {
        out.insert(cand);
        break;
      }
    }
  }
  return out;
}

ModeSet more_general_modes(const ModeSet& ms, const std::string& pred,
                           size_t arity) {
  ModeSet out;
  for (const Mode& cand : all_modes(pred, arity)) {
    for (const Mode& m : ms) {
      if (std::includes(m.begin(), m.end(), cand.begin(), cand.end())) {
        out.insert(cand);
        break;
      }
    }
  }
  return out;
}

std::map<std::string, ModeClassification>
classify_modes(const Program& p, const std::vector<LoopingCondition>& conds,
               const std::map<std::string, ModeSet>& tm) {
  std::map<std::string, ModeSet> lm = looping_modes(conds);
  std::map<std::string, ModeClassification> out;
  for (const auto& [name, arity] : p.signature()) {
    std::string ind = pred_indicator(name, arity);
    ModeClassification mc;
    mc.arity = arity;
    if (auto it = lm.find(ind); it != lm.end()) mc.looping = it->second;
    if (auto it = tm.find(ind); it != tm.end()) mc.terminating = it->second;
    ModeSet lg = less_general_modes(mc.terminating, name, arity);
    ModeSet mg = more_general_modes(mc.looping, name, arity);
    for (const Mode& m : all_modes(name, arity)) {
      if (!lg.count(m) && !mg.count(m)) mc.undecided.insert(m);
    }
    out[ind] = std::move(mc);
  }
  return out;
}

bool all_decided(const std::map<std::string, ModeClassification>& cls) {
  for (const auto& [ind, mc] : cls) {
    (void)ind;
    if (!mc.undecided.empty()) return false;
  }
  return true;
}

std::map<std::string, ModeSet> parse_modes_json(const std::string& text,
                                                const Signature& sig) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("modes file is not valid JSON: ") + e.what(),
                     0, 0);
  }
  if (!doc.is_object()) {
    throw ParseError("modes file must be a JSON object", 0, 0);
  }
  std::map<std::string, ModeSet> out;
  for (const auto& [key, value] : doc.items()) {
    size_t slash = key.rfind('/');
    if (slash == std::string::npos || slash == 0 ||
        slash + 1 == key.size()) {
      throw ParseError("modes key '" + key +
                           "' is not of the form name/arity",
                       0, 0);
    }
    std::string name = key.substr(0, slash);
    size_t arity = 0;
    try {
      size_t used = 0;
      arity = std::stoul(key.substr(slash + 1), &used);
      if (used != key.size() - slash - 1) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ParseError("modes key '" + key +
                           "' is not of the form name/arity",
                       0, 0);
    }
    auto sit = sig.find(name);
    if (sit == sig.end() || sit->second != arity) {
      throw ParseError("modes key '" + key +
                           "' does not name a program relation",
                       0, 0);
    }
    if (!value.is_array()) {
      throw ParseError("modes for '" + key + "' must be an array of arrays",
                       0, 0);
    }
    ModeSet ms;
    for (const auto& entry : value) {
      if (!entry.is_array()) {
        throw ParseError("modes for '" + key + "' must be an array of arrays",
                         0, 0);
      }
      Mode m;
      for (const auto& pos : entry) {
        if (!pos.is_number_integer()) {
          throw ParseError("mode positions for '" + key +
                               "' must be integers",
                           0, 0);
        }
        int64_t v = pos.get<int64_t>();
        if (v < 1 || static_cast<size_t>(v) > arity) {
          throw ParseError("mode position " + std::to_string(v) + " for '" +
                               key + "' is out of range",
                           0, 0);
        }
        m.insert(static_cast<int>(v));
      }
      ms.insert(std::move(m));
    }
    out[key] = std::move(ms);
  }
  return out;
}

std::string render_mode(const Mode& m) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int p : m) {
    if (!first) os << ",";
    first = false;
    os << p;
  }
  os << "}";
  return os.str();
}

std::string render_mode_set(const ModeSet& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const Mode& m : s) {
    if (!first) os << ", ";
    first = false;
    os << render_mode(m);
  }
  os << "}";
  return os.str();
}

}  // namespace lf
