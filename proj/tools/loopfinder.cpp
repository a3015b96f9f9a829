#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "loopfinder/derivation.hpp"
#include "loopfinder/errors.hpp"
#include "loopfinder/loops.hpp"
#include "loopfinder/modes.hpp"
#include "loopfinder/neutral.hpp"
#include "loopfinder/parser.hpp"
#include "loopfinder/term.hpp"
#include "loopfinder/unfold.hpp"

namespace {

using nlohmann::ordered_json;

struct Config {
  std::string program_path;
  int max = 2;
  std::string format = "text";
  int oracle_depth = 1000;
  bool no_oracle = false;
  size_t pool_cap = 100000;
  size_t pair_cap = 8;
  int passes = 3;
  std::string modes_path;
};

void add_common(CLI::App* cmd, Config& cfg) {
  cmd->add_option("program", cfg.program_path, "logic program file")
      ->required();
  cmd->add_option("--max", cfg.max, "unfolding iterations")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--oracle-depth", cfg.oracle_depth,
                  "derivation depth for confirmation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--no-oracle", cfg.no_oracle,
                "skip derivation confirmation of conditions");
  cmd->add_option("--pool-cap", cfg.pool_cap,
                  "largest allowed binary clause pool")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--pair-cap", cfg.pair_cap,
                  "longest clause sequence kept in the dictionary")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--passes", cfg.passes,
                  "sweeps over the pool while the dictionary grows")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--modes", cfg.modes_path,
                  "JSON file of terminating modes per predicate");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw lf::ParseError("cannot read file '" + path + "'", 0, 0);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string pattern_text(const lf::TermPtr& pat) {
  if (pat->is_var()) return "_";
  return lf::render(lf::canonical_form(pat));
}

ordered_json fixpoint_json(const lf::UnfoldPool& pool) {
  if (pool.fixpoint_at) return ordered_json(*pool.fixpoint_at);
  return ordered_json(false);
}

std::string fixpoint_text(const lf::UnfoldPool& pool, int max) {
  if (pool.fixpoint_at) {
    return "fixpoint at iteration " + std::to_string(*pool.fixpoint_at);
  }
  return "no fixpoint within " + std::to_string(max) + " iterations";
}

ordered_json mode_set_json(const lf::ModeSet& s) {
  ordered_json arr = ordered_json::array();
  for (const lf::Mode& m : s) {
    arr.push_back(std::vector<int>(m.begin(), m.end()));
  }
  return arr;
}

ordered_json condition_json(const lf::LoopingCondition& cond,
                            std::optional<bool> confirmed) {
  ordered_json rec;
  rec["predicate"] =
      lf::pred_indicator(cond.atom.pred, cond.atom.args.size());
  rec["atom"] = lf::render(cond.atom);
  ordered_json neutral = ordered_json::array();
  auto it = cond.nmap.find(cond.atom.pred);
  if (it != cond.nmap.end()) {
    for (const auto& [pos, pat] : it->second) {
      ordered_json entry;
      entry["position"] = pos;
      entry["term"] = pattern_text(pat);
      neutral.push_back(std::move(entry));
    }
  }
  rec["neutral"] = std::move(neutral);
  ordered_json prov = ordered_json::array();
  for (size_t i = 0; i < cond.origin.clauses.size(); ++i) {
    ordered_json entry;
    entry["stamp"] = cond.origin.stamps[i];
    entry["clause"] = lf::render(lf::canonical_form(cond.origin.clauses[i]));
    prov.push_back(std::move(entry));
  }
  rec["provenance"] = std::move(prov);
  if (confirmed) rec["confirmed"] = *confirmed;
  return rec;
}

std::string condition_text(const lf::LoopingCondition& cond,
                           std::optional<bool> confirmed) {
  std::ostringstream os;
  os << "  " << lf::render(cond.atom) << " | "
     << lf::render_neutral_map(cond.nmap, cond.atom.pred);
  if (confirmed) os << " | " << (*confirmed ? "confirmed" : "UNCONFIRMED");
  os << "\n";
  for (size_t i = 0; i < cond.origin.clauses.size(); ++i) {
    os << "    stamp " << cond.origin.stamps[i] << ": "
       << lf::render(lf::canonical_form(cond.origin.clauses[i])) << "\n";
  }
  return os.str();
}

// Confirmation replays the condition against the binary program it was
// inferred from: an accepted atom must sustain a derivation of the requested
// depth there.
bool confirm(const lf::LoopingCondition& cond, int depth) {
  lf::Program prog;
  prog.clauses = lf::to_clauses(cond.origin.clauses);
  lf::LoopSearch r =
      lf::loops_to_depth(prog, cond.atom, static_cast<size_t>(depth));
  return r.found;
}

int cmd_unfold(const Config& cfg) {
  lf::Program prog = lf::parse_program(read_file(cfg.program_path));
  lf::UnfoldOptions uopts;
  uopts.pool_cap = cfg.pool_cap;
  lf::UnfoldPool pool = lf::unfold_upto(prog, cfg.max, uopts);
  if (cfg.format == "json") {
    ordered_json doc;
    doc["program"] = cfg.program_path;
    doc["max"] = cfg.max;
    ordered_json items = ordered_json::array();
    for (const lf::StampedClause& e : pool.items) {
      ordered_json entry;
      entry["stamp"] = e.stamp;
      entry["clause"] = e.text;
      items.push_back(std::move(entry));
    }
    doc["pool"] = std::move(items);
    doc["fixpoint"] = fixpoint_json(pool);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << pool.dump();
    std::cout << fixpoint_text(pool, cfg.max) << "\n";
  }
  return 0;
}

lf::AnalysisResult run_analysis(const Config& cfg, const lf::Program& prog) {
  lf::UnfoldOptions uopts;
  uopts.pool_cap = cfg.pool_cap;
  lf::LoopOptions lopts;
  lopts.max_pair_len = cfg.pair_cap;
  lopts.max_passes = cfg.passes;
  return lf::analyze_program(prog, cfg.max, uopts, lopts);
}

int cmd_analyze(const Config& cfg) {
  lf::Program prog = lf::parse_program(read_file(cfg.program_path));
  lf::AnalysisResult res = run_analysis(cfg, prog);
  std::vector<std::optional<bool>> confirmed(res.conditions.size(),
                                             std::nullopt);
  bool all_ok = true;
  if (!cfg.no_oracle) {
    for (size_t i = 0; i < res.conditions.size(); ++i) {
      bool ok = confirm(res.conditions[i], cfg.oracle_depth);
      confirmed[i] = ok;
      all_ok = all_ok && ok;
    }
  }
  std::map<std::string, lf::ModeSet> lm = lf::looping_modes(res.conditions);
  if (cfg.format == "json") {
    ordered_json doc;
    doc["program"] = cfg.program_path;
    doc["max"] = cfg.max;
    ordered_json conds = ordered_json::array();
    for (size_t i = 0; i < res.conditions.size(); ++i) {
      conds.push_back(condition_json(res.conditions[i], confirmed[i]));
    }
    doc["conditions"] = std::move(conds);
    ordered_json modes;
    for (const auto& [ind, ms] : lm) {
      ordered_json entry;
      entry["looping"] = mode_set_json(ms);
      modes[ind] = std::move(entry);
    }
    doc["modes"] = std::move(modes);
    doc["fixpoint"] = fixpoint_json(res.pool);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "conditions (" << res.conditions.size() << "):\n";
    for (size_t i = 0; i < res.conditions.size(); ++i) {
      std::cout << condition_text(res.conditions[i], confirmed[i]);
    }
    std::cout << "looping modes:\n";
    for (const auto& [ind, ms] : lm) {
      std::cout << "  " << ind << ": " << lf::render_mode_set(ms) << "\n";
    }
    std::cout << fixpoint_text(res.pool, cfg.max) << "\n";
  }
  return all_ok ? 0 : 4;
}

int cmd_optimal(const Config& cfg) {
  lf::Program prog = lf::parse_program(read_file(cfg.program_path));
  std::map<std::string, lf::ModeSet> tm;
  if (!cfg.modes_path.empty()) {
    tm = lf::parse_modes_json(read_file(cfg.modes_path), prog.signature());
  }
  lf::AnalysisResult res = run_analysis(cfg, prog);
  std::map<std::string, lf::ModeClassification> cls =
      lf::classify_modes(prog, res.conditions, tm);
  bool optimal = lf::all_decided(cls);
  if (cfg.format == "json") {
    ordered_json doc;
    doc["program"] = cfg.program_path;
    doc["max"] = cfg.max;
    ordered_json conds = ordered_json::array();
    for (const lf::LoopingCondition& c : res.conditions) {
      conds.push_back(condition_json(c, std::nullopt));
    }
    doc["conditions"] = std::move(conds);
    ordered_json modes;
    for (const auto& [ind, mc] : cls) {
      ordered_json entry;
      entry["looping"] = mode_set_json(mc.looping);
      entry["terminating"] = mode_set_json(mc.terminating);
      entry["undecided"] = mode_set_json(mc.undecided);
      modes[ind] = std::move(entry);
    }
    doc["modes"] = std::move(modes);
    doc["result"] = optimal ? "optimal" : "not optimal";
    doc["fixpoint"] = fixpoint_json(res.pool);
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& [ind, mc] : cls) {
      std::cout << ind << ":\n"
                << "  terminating: " << lf::render_mode_set(mc.terminating)
                << "\n"
                << "  looping: " << lf::render_mode_set(mc.looping) << "\n"
                << "  undecided: " << lf::render_mode_set(mc.undecided)
                << "\n";
    }
    std::cout << "result: " << (optimal ? "optimal" : "not optimal") << "\n";
  }
  return optimal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"left-loop inference for pure logic programs"};
  app.require_subcommand(1);
  Config cfg;
  CLI::App* unfold =
      app.add_subcommand("unfold", "print the stamped binary clause pool");
  add_common(unfold, cfg);
  CLI::App* analyze =
      app.add_subcommand("analyze", "infer looping conditions and modes");
  add_common(analyze, cfg);
  CLI::App* optimal = app.add_subcommand(
      "optimal", "check a terminating-modes file for optimality");
  add_common(optimal, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (unfold->parsed()) return cmd_unfold(cfg);
    if (analyze->parsed()) return cmd_analyze(cfg);
    return cmd_optimal(cfg);
  } catch (const lf::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lf::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
