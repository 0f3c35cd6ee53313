#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "stackamb/example_games.hpp"
#include "stackamb/gaps.hpp"
#include "stackamb/hardness.hpp"
#include "stackamb/io.hpp"
#include "stackamb/solvers.hpp"

namespace stackamb::cli {

enum class Format { Table, Json, Csv };

struct RunConfig {
  std::string game_path;
  std::string graph_path;
  std::string mode = "ambiguous-2xm";
  Rat epsilon = Rat(1, 100);
  Rat step = Rat(1, 100);
  TieBreak tiebreak = TieBreak::LeaderFavorable;
  Format format = Format::Table;
  std::string out_path;
  long budget = kDefaultBudget;
  long seed = 0;  // reserved for sampling-based diagnostics
  std::string variant = "full";
  bool solve_reduction = false;
  bool per_components = false;
  std::string example_name;
  std::vector<std::string> params;
};

namespace detail {

inline std::string human(const Rat& r) {
  std::string s = to_fraction_string(r);
  if (rat_den(r) != 1) s += " (~" + to_decimal_string(r) + ")";
  return s;
}

inline nlohmann::json strategy_json(const MixedStrategy& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < s.size(); ++i) arr.push_back(to_fraction_string(s[i]));
  return arr;
}

inline nlohmann::json commitment_json(const CommitmentSet& c) {
  nlohmann::json out;
  out["kind"] = to_string(c.kind());
  if (c.is_interval()) {
    out["lower"] = to_fraction_string(c.interval_lo());
    out["upper"] = to_fraction_string(c.interval_hi());
  }
  if (!c.pure_actions().empty()) out["actions"] = c.pure_actions();
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : c.extreme_points()) pts.push_back(strategy_json(p));
  out["extreme_points"] = std::move(pts);
  return out;
}

inline nlohmann::json report_json(const CoupledGame& game, const SolveReport& r,
                                  TieBreak t) {
  nlohmann::json out;
  out["mode"] = r.mode;
  out["tiebreak"] = to_string(t);
  out["value"] = to_fraction_string(r.value);
  out["commitment"] = commitment_json(r.commitment);
  out["candidates_examined"] = r.candidates_examined;
  if (r.epsilon_used) out["epsilon_used"] = to_fraction_string(*r.epsilon_used);
  nlohmann::json fs = nlohmann::json::array();
  for (std::size_t i = 0; i < r.per_follower.size(); ++i) {
    const auto& resp = r.per_follower[i];
    nlohmann::json fj;
    fj["name"] = game.followers[i].name;
    fj["maxmin_value"] = to_fraction_string(resp.maxmin_value);
    fj["representative"] = strategy_json(resp.representative);
    fj["support"] = resp.support();
    fj["active_extremes"] = resp.active_leader_extremes;
    fs.push_back(std::move(fj));
  }
  out["followers"] = std::move(fs);
  return out;
}

// Flattens a json object into deterministic key,value rows.
inline void emit_csv(const nlohmann::json& j, std::ostream& os, const std::string& prefix) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      emit_csv(it.value(), os, prefix.empty() ? it.key() : prefix + "." + it.key());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      emit_csv(j[i], os, prefix + "[" + std::to_string(i) + "]");
  } else if (j.is_string()) {
    os << prefix << "," << j.get<std::string>() << "\n";
  } else {
    os << prefix << "," << j.dump() << "\n";
  }
}

inline void emit_table(const nlohmann::json& j, std::ostream& os, int indent = 0) {
  const std::string pad(indent, ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object()) {
      os << pad << it.key() << ":\n";
      emit_table(v, os, indent + 2);
    } else if (v.is_array() && !v.empty() && v[0].is_object()) {
      os << pad << it.key() << ":\n";
      for (const auto& item : v) {
        os << pad << "  -\n";
        emit_table(item, os, indent + 4);
      }
    } else if (v.is_string()) {
      // Rational strings gain a decimal approximation for reading.
      std::string s = v.get<std::string>();
      std::string extra;
      try {
        Rat r = parse_rational(s);
        if (rat_den(r) != 1) extra = " (~" + to_decimal_string(r) + ")";
      } catch (...) {
      }
      os << pad << it.key() << ": " << s << extra << "\n";
    } else {
      os << pad << it.key() << ": " << v.dump() << "\n";
    }
  }
}

inline void emit(const nlohmann::json& j, Format f, std::ostream& os) {
  switch (f) {
    case Format::Json:
      os << j.dump(2) << "\n";
      break;
    case Format::Csv:
      emit_csv(j, os, "");
      break;
    default:
      emit_table(j, os, 0);
      break;
  }
}

// Stale-value guard: every printed report value is recomputed through
// evaluate_commitment immediately before emission.
inline void verify_report(const CoupledGame& game, const SolveReport& r, TieBreak t) {
  Evaluation ev = evaluate_commitment(game, r.commitment, t);
  if (ev.worst_case != r.value)
    throw InternalError("report value went stale before emission");
}

inline std::map<std::string, Rat> parse_params(const std::vector<std::string>& params) {
  std::map<std::string, Rat> out;
  for (const auto& p : params) {
    auto eq = p.find('=');
    if (eq == std::string::npos)
      throw SyntaxError("parameter '" + p + "' is not of the form NAME=VALUE");
    out[p.substr(0, eq)] = parse_rational(p.substr(eq + 1));
  }
  return out;
}

}  // namespace detail

inline int cmd_solve(const RunConfig& cfg, std::ostream& os) {
  CoupledGame game = load_game_file(cfg.game_path);
  nlohmann::json out;
  if (cfg.mode == "classical") {
    ClassicalResult r = classical_coupled(game, cfg.budget);
    Evaluation check = evaluate_commitment(game, CommitmentSet::singleton(r.strategy),
                                           TieBreak::LeaderFavorable);
    if (check.worst_case != r.value)
      throw InternalError("classical value went stale before emission");
    out["mode"] = "classical";
    out["value"] = to_fraction_string(r.value);
    out["strategy"] = detail::strategy_json(r.strategy);
    out["patterns_examined"] = r.patterns_examined;
  } else if (cfg.mode == "decoupled") {
    DecoupledResult r = decoupled_isv(game, cfg.budget);
    out["mode"] = "decoupled";
    out["isv"] = to_fraction_string(r.isv);
    nlohmann::json per = nlohmann::json::array();
    for (std::size_t i = 0; i < game.k(); ++i) {
      nlohmann::json fj;
      fj["name"] = game.followers[i].name;
      fj["value"] = to_fraction_string(r.per_follower[i]);
      per.push_back(std::move(fj));
    }
    out["per_follower"] = std::move(per);
  } else {
    SolveReport r = cfg.mode == "ambiguous-2xm"
                        ? algorithm1(game, cfg.epsilon, cfg.tiebreak)
                    : cfg.mode == "pure-subset"
                        ? pure_subset_bruteforce(game, cfg.tiebreak, cfg.budget)
                    : cfg.mode == "grid-oracle"
                        ? grid_oracle(game, cfg.step, cfg.tiebreak)
                        : throw SyntaxError("unknown mode '" + cfg.mode + "'");
    detail::verify_report(game, r, cfg.tiebreak);
    out = detail::report_json(game, r, cfg.tiebreak);
    if (r.commitment.is_interval())
      out["consistent"] = consistency_check(game, r.commitment, cfg.tiebreak);
  }
  detail::emit(out, cfg.format, os);
  return 0;
}

inline int cmd_gaps(const RunConfig& cfg, std::ostream& os) {
  CoupledGame game = load_game_file(cfg.game_path);
  GapReport r = gap_report(game, cfg.tiebreak, cfg.epsilon, cfg.budget);
  Evaluation check = evaluate_commitment(game, r.w_star_commitment, cfg.tiebreak);
  if (check.worst_case != r.w_star)
    throw InternalError("gap report value went stale before emission");
  nlohmann::json out;
  out["W_star"] = to_fraction_string(r.w_star);
  out["W_star_mode"] = r.w_star_mode;
  out["W_star_commitment"] = detail::commitment_json(r.w_star_commitment);
  out["V_star"] = to_fraction_string(r.v_star);
  out["ISV"] = to_fraction_string(r.isv);
  nlohmann::json per = nlohmann::json::array();
  for (const Rat& v : r.isv_per_follower) per.push_back(to_fraction_string(v));
  out["ISV_per_follower"] = std::move(per);
  out["ambiguity_gap"] = r.ambiguity ? nlohmann::json(to_fraction_string(*r.ambiguity))
                                     : nlohmann::json("undefined");
  out["coupling_gap"] = r.coupling ? nlohmann::json(to_fraction_string(*r.coupling))
                                   : nlohmann::json("undefined");
  out["ambiguity_advantage"] = r.ambiguity_advantage;
  out["coupling_advantage"] = r.coupling_advantage;
  out["common_decoupled_optimum"] = r.common_optimum_found;
  detail::emit(out, cfg.format, os);
  return 0;
}

inline int cmd_example(const RunConfig& cfg, std::ostream& os) {
  CoupledGame game = make_example(cfg.example_name, detail::parse_params(cfg.params));
  std::string text = serialize_game(game);
  if (!cfg.out_path.empty()) {
    write_file(cfg.out_path, text);
    os << "wrote " << cfg.out_path << "\n";
  } else {
    os << text;
  }
  return 0;
}

inline int cmd_reduce_vc(const RunConfig& cfg, std::ostream& os) {
  std::ifstream in(cfg.graph_path);
  if (!in) throw Error("cannot open graph file '" + cfg.graph_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Graph graph = parse_graph(buf.str());
  ReductionVariant variant =
      cfg.variant == "pure" ? ReductionVariant::Pure : ReductionVariant::Full;

  if (!cfg.solve_reduction) {
    CoupledGame game = reduce_to_game(graph, variant);
    std::string text = serialize_game(game);
    if (!cfg.out_path.empty()) {
      write_file(cfg.out_path, text);
      os << "wrote " << cfg.out_path << " (" << game.k() << " followers)\n";
    } else {
      os << text;
    }
    return 0;
  }

  nlohmann::json out;
  out["variant"] = cfg.variant;
  if (cfg.per_components && !graph.connected()) {
    nlohmann::json comps = nlohmann::json::array();
    std::vector<std::size_t> all;
    for (const auto& comp : graph.components()) {
      nlohmann::json cj;
      if (comp.graph.edges.empty()) {
        cj["cover"] = nlohmann::json::array();
        comps.push_back(std::move(cj));
        continue;
      }
      VertexCoverSolution sol = solve_vc_via_game(comp.graph, variant, cfg.budget);
      std::vector<std::size_t> mapped;
      for (std::size_t v : sol.cover) mapped.push_back(comp.original_vertex[v - 1]);
      cj["cover"] = mapped;
      cj["value"] = to_fraction_string(sol.leader_value);
      for (std::size_t v : mapped) all.push_back(v);
      comps.push_back(std::move(cj));
    }
    out["components"] = std::move(comps);
    std::sort(all.begin(), all.end());
    out["cover"] = all;
  } else {
    VertexCoverSolution sol = solve_vc_via_game(graph, variant, cfg.budget);
    out["cover"] = sol.cover;
    out["value"] = to_fraction_string(sol.leader_value);
    out["cover_size"] = sol.cover.size();
  }
  detail::emit(out, cfg.format, os);
  return 0;
}

// Builds the CLI, runs one command, and maps failures onto exit codes:
// 0 success, 2 input error, 3 budget exceeded, 4 internal invariant failure.
inline int run(const std::vector<std::string>& args, std::ostream& os,
               std::ostream& err) {
  CLI::App app{"Exact solver for coupled Stackelberg games with ambiguous commitments"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string epsilon_text = "1/100", step_text = "1/100", tiebreak_text = "leader",
              format_text = "table";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tiebreak", tiebreak_text, "leader|lex|adversarial")
        ->check(CLI::IsMember({"leader", "lex", "adversarial"}));
    cmd->add_option("--format", format_text, "table|json|csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    cmd->add_option("--budget", cfg.budget, "candidate/pattern budget");
    cmd->add_option("--seed", cfg.seed, "seed (reserved for sampling diagnostics)");
    cmd->add_option("--out", cfg.out_path, "output file path");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve a game file");
  solve->add_option("--game", cfg.game_path, "game file (JSON)")->required();
  solve->add_option("--mode", cfg.mode,
                    "classical|ambiguous-2xm|pure-subset|decoupled|grid-oracle")
      ->check(CLI::IsMember(
          {"classical", "ambiguous-2xm", "pure-subset", "decoupled", "grid-oracle"}));
  solve->add_option("--epsilon", epsilon_text, "approximation parameter (rational)");
  solve->add_option("--step", step_text, "grid step (rational)");
  add_common(solve);

  CLI::App* gaps = app.add_subcommand("gaps", "ambiguity and coupling gap report");
  gaps->add_option("--game", cfg.game_path, "game file (JSON)")->required();
  gaps->add_option("--epsilon", epsilon_text, "approximation parameter (rational)");
  add_common(gaps);

  CLI::App* example = app.add_subcommand("example", "write a named example game");
  example->add_option("--name", cfg.example_name,
                      "zs-gap|coupling-gap|pure-unbounded|frac-opt")
      ->required();
  example->add_option("--param", cfg.params, "named parameter NAME=VALUE");
  add_common(example);

  CLI::App* reduce = app.add_subcommand("reduce-vc", "vertex-cover reduction games");
  reduce->add_option("--graph", cfg.graph_path, "graph file (edge list)")->required();
  reduce->add_option("--variant", cfg.variant, "full|pure")
      ->check(CLI::IsMember({"full", "pure"}));
  reduce->add_flag("--solve", cfg.solve_reduction, "solve for a minimum vertex cover");
  reduce->add_flag("--components", cfg.per_components,
                   "solve disconnected graphs per component");
  add_common(reduce);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    os << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    cfg.epsilon = parse_rational(epsilon_text);
    cfg.step = parse_rational(step_text);
    cfg.tiebreak = tiebreak_text == "lex"          ? TieBreak::LexicographicFirst
                   : tiebreak_text == "adversarial" ? TieBreak::Adversarial
                                                    : TieBreak::LeaderFavorable;
    cfg.format = format_text == "json" ? Format::Json
                 : format_text == "csv" ? Format::Csv
                                        : Format::Table;
    if (cfg.epsilon <= 0 || cfg.step <= 0)
      throw PreconditionViolated("epsilon and step must be positive");
    if (cfg.budget <= 0) throw PreconditionViolated("budget must be positive");

    if (solve->parsed()) return cmd_solve(cfg, os);
    if (gaps->parsed()) return cmd_gaps(cfg, os);
    if (example->parsed()) return cmd_example(cfg, os);
    if (reduce->parsed()) return cmd_reduce_vc(cfg, os);
    err << "error: no subcommand\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace stackamb::cli
