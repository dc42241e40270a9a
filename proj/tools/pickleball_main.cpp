// Command-line front end: exact chain analytics, closed-form cross-checks,
// figure-table emission and Monte Carlo simulation for the three pickleball
// scoring systems. All probabilities are exact rationals; decimal inputs
// like 0.44 are exact shorthand (44/100), never binary floats.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pickleball/analytics.hpp"
#include "pickleball/oracle.hpp"
#include "pickleball/sampling.hpp"
#include "pickleball/simulator.hpp"
#include "pickleball/solver.hpp"

using json = nlohmann::ordered_json;
using namespace pickleball;

namespace {

constexpr const char* kToolName = "pickleball";
constexpr const char* kToolVersion = "0.1.0";

#ifndef PICKLEBALL_DATA_DIR
#define PICKLEBALL_DATA_DIR "data"
#endif

json tool_meta() { return json{{"name", kToolName}, {"version", kToolVersion}}; }

SystemKind system_from_name(const std::string& name) {
  if (name == "side-out") return SystemKind::SideOut;
  if (name == "modified-rally") return SystemKind::ModifiedRally;
  if (name == "hybrid") return SystemKind::HybridRally;
  throw CLI::ValidationError("--system", "unknown system '" + name + "'");
}

std::string system_name(SystemKind kind) {
  switch (kind) {
    case SystemKind::SideOut: return "side-out";
    case SystemKind::ModifiedRally: return "modified-rally";
    case SystemKind::HybridRally: return "hybrid";
  }
  return "unknown";
}

json exact_and_decimal(const Rational& v, int digits) {
  return json{{"exact", to_fraction_string(v)}, {"decimal", to_decimal_string(v, digits)}};
}

json advantage_value(const Rational& v, int digits) {
  return json{{"exact", to_fraction_string(v)},
              {"decimal", to_decimal_string(v, digits)},
              {"scientific", to_scientific_string(v, 6)},
              {"sign", sign_of(v)}};
}

void emit(const json& doc, bool csv, const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows) {
  if (!csv) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::string line;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) line += ',';
    line += header[i];
  }
  std::cout << line << '\n';
  for (const auto& row : rows) {
    line.clear();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += ',';
      line += row[i];
    }
    std::cout << line << '\n';
  }
}

std::string double_repr(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string log10_abs_repr(const Rational& v) {
  if (v == 0) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", std::log10(std::fabs(to_double(v))));
  return buf;
}

// Evenly spaced rational grid with `points` samples of [lo, hi].
std::vector<Rational> rational_grid(const Rational& lo, const Rational& hi, int points) {
  std::vector<Rational> out;
  out.reserve(points);
  if (points == 1) {
    out.push_back(lo);
    return out;
  }
  Rational span = hi - lo;
  for (int k = 0; k < points; ++k) out.push_back(lo + span * k / (points - 1));
  return out;
}

struct CommonArgs {
  std::string system = "side-out";
  int n = 11;
  std::string pa = "0.44";
  std::string pb = "0.44";
};

void add_point_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--system", args.system, "Scoring system: side-out, modified-rally, hybrid")
      ->required();
  cmd->add_option("--n", args.n, "Target score (n >= 4)")->required();
  cmd->add_option("--pa", args.pa, "P(Team A wins a rally on serve), decimal or p/q")->required();
  cmd->add_option("--pb", args.pb, "P(Team B wins a rally on serve), decimal or p/q")->required();
}

// ---------------------------------------------------------------------------

int run_summary(const CommonArgs& args, const std::string& first, int digits, bool csv) {
  ScoringSystem system = make_system(system_from_name(args.system), args.n);
  RallyParams params(parse_rational(args.pa), parse_rational(args.pb));
  json doc;
  doc["command"] = "summary";
  doc["tool"] = tool_meta();
  doc["system"] = args.system;
  doc["n"] = args.n;
  doc["pa"] = to_fraction_string(params.p_a);
  doc["pb"] = to_fraction_string(params.p_b);
  doc["first"] = first;

  std::vector<std::string> header, row;
  if (first == "coin") {
    ComparisonRow cmp = comparison_row(system, params);
    doc["win_prob_a"] = exact_and_decimal(cmp.win_prob_a, digits);
    doc["mean_duration"] = exact_and_decimal(cmp.mean_duration, digits);
    doc["duration_variance"] = exact_and_decimal(cmp.duration_variance, digits);
    doc["sd_duration"] = cmp.sd_duration_decimal(digits);
    header = {"system", "n", "pa", "pb", "first", "win_prob_a", "mean_duration",
              "duration_variance", "sd_duration"};
    row = {args.system, std::to_string(args.n), to_fraction_string(params.p_a),
           to_fraction_string(params.p_b), first, to_decimal_string(cmp.win_prob_a, digits),
           to_decimal_string(cmp.mean_duration, digits),
           to_decimal_string(cmp.duration_variance, digits), cmp.sd_duration_decimal(digits)};
  } else {
    Team team = first == "A" ? Team::A : Team::B;
    TransitionModel model = build_transition_model(system, params);
    ChainSummary s = chain_summary(model, initial_state(system, team));
    doc["start_state"] = state_label(s.start);
    doc["win_prob_a"] = exact_and_decimal(s.absorb_prob_a, digits);
    doc["win_prob_b"] = exact_and_decimal(s.absorb_prob_b, digits);
    doc["mean_duration"] = exact_and_decimal(s.mean_duration, digits);
    doc["duration_variance"] = exact_and_decimal(s.duration_variance, digits);
    doc["sd_duration"] = sqrt_decimal_string(s.duration_variance, digits);
    header = {"system", "n", "pa", "pb", "first", "start_state", "win_prob_a", "win_prob_b",
              "mean_duration", "duration_variance", "sd_duration"};
    row = {args.system, std::to_string(args.n), to_fraction_string(params.p_a),
           to_fraction_string(params.p_b), first, state_label(s.start),
           to_decimal_string(s.absorb_prob_a, digits), to_decimal_string(s.absorb_prob_b, digits),
           to_decimal_string(s.mean_duration, digits),
           to_decimal_string(s.duration_variance, digits),
           sqrt_decimal_string(s.duration_variance, digits)};
  }
  emit(doc, csv, header, {row});
  return 0;
}

int run_advantage(const CommonArgs& args, int digits, bool csv) {
  ScoringSystem system = make_system(system_from_name(args.system), args.n);
  RallyParams params(parse_rational(args.pa), parse_rational(args.pb));
  AdvantageResult adv = first_server_advantage(system, params);
  json doc;
  doc["command"] = "advantage";
  doc["tool"] = tool_meta();
  doc["system"] = args.system;
  doc["n"] = args.n;
  doc["pa"] = to_fraction_string(params.p_a);
  doc["pb"] = to_fraction_string(params.p_b);
  doc["value"] = advantage_value(adv.value, digits);
  emit(doc, csv,
       {"system", "n", "pa", "pb", "value_exact", "value_decimal", "value_scientific", "sign"},
       {{args.system, std::to_string(args.n), to_fraction_string(params.p_a),
         to_fraction_string(params.p_b), to_fraction_string(adv.value),
         to_decimal_string(adv.value, digits), to_scientific_string(adv.value, 6),
         std::to_string(adv.sign)}});
  return 0;
}

int run_zeros(const std::string& system_name_arg, int n, const std::string& tol,
              const std::string& step, int digits, bool csv) {
  ScoringSystem system = make_system(system_from_name(system_name_arg), n);
  ZeroSet zeros = find_diagonal_zeros(system, parse_rational(tol), parse_rational(step));
  json doc;
  doc["command"] = "zeros";
  doc["tool"] = tool_meta();
  doc["system"] = system_name_arg;
  doc["n"] = n;
  doc["tolerance"] = to_fraction_string(parse_rational(tol));
  doc["scan_step"] = to_fraction_string(zeros.scan_step);
  doc["count"] = zeros.roots.size();
  std::vector<std::vector<std::string>> rows;
  json roots = json::array();
  int index = 1;
  for (const auto& r : zeros.roots) {
    std::string mid = to_decimal_string(r.midpoint(), digits);
    roots.push_back(json{{"index", index},
                         {"lo", to_fraction_string(r.lo)},
                         {"hi", to_fraction_string(r.hi)},
                         {"midpoint_decimal", mid},
                         {"sign_lo", r.sign_lo},
                         {"sign_hi", r.sign_hi}});
    rows.push_back({std::to_string(index), to_fraction_string(r.lo), to_fraction_string(r.hi), mid,
                    std::to_string(r.sign_lo), std::to_string(r.sign_hi)});
    ++index;
  }
  doc["roots"] = roots;
  emit(doc, csv, {"index", "lo", "hi", "midpoint", "sign_lo", "sign_hi"}, rows);
  return 0;
}

int run_extremum(const std::string& system_name_arg, int n, const std::string& region_text,
                 const std::string& mode_text, const std::string& value_tol,
                 const std::string& point_tol, int digits, bool csv) {
  ScoringSystem system = make_system(system_from_name(system_name_arg), n);
  std::vector<Rational> bounds;
  std::string token;
  std::istringstream stream(region_text);
  while (std::getline(stream, token, ',')) bounds.push_back(parse_rational(token));
  if (bounds.size() != 6)
    throw CLI::ValidationError("--region", "expected six comma-separated bounds xlo,xhi,ylo,yhi,slo,shi");
  SearchRegion region{bounds[0], bounds[1], bounds[2], bounds[3], bounds[4], bounds[5]};
  ExtremumMode mode = mode_text == "min" ? ExtremumMode::Minimize : ExtremumMode::Maximize;
  ExtremumResult result =
      find_extremum(system, region, mode, parse_rational(value_tol), parse_rational(point_tol));
  json doc;
  doc["command"] = "extremum";
  doc["tool"] = tool_meta();
  doc["system"] = system_name_arg;
  doc["n"] = n;
  doc["mode"] = mode_text;
  doc["region"] = region_text;
  doc["x"] = exact_and_decimal(result.x, digits);
  doc["y"] = exact_and_decimal(result.y, digits);
  doc["value"] = advantage_value(result.value, digits);
  doc["evaluations"] = result.evaluations;
  emit(doc, csv, {"system", "n", "mode", "x", "y", "value_scientific"},
       {{system_name_arg, std::to_string(n), mode_text, to_decimal_string(result.x, digits),
         to_decimal_string(result.y, digits), to_scientific_string(result.value, 6)}});
  return 0;
}

int run_figure(int id, int grid, int digits, bool csv) {
  json doc;
  doc["command"] = "figure";
  doc["tool"] = tool_meta();
  doc["id"] = id;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  json jrows = json::array();

  if (id == 3 || id == 4) {
    // Sign of the first-server advantage over the parameter square.
    ScoringSystem system = make_system(SystemKind::SideOut, id == 3 ? 11 : 15);
    header = {"pa", "pb", "sign", "value_scientific"};
    auto axis = rational_grid(Rational(0), Rational(1), grid);
    for (const auto& pa : axis)
      for (const auto& pb : axis) {
        if (pa == 0 && pb == 0) continue;
        AdvantageResult adv = first_server_advantage(system, RallyParams(pa, pb));
        rows.push_back({to_decimal_string(pa, 6), to_decimal_string(pb, 6),
                        std::to_string(adv.sign), to_scientific_string(adv.value, 6)});
        jrows.push_back(json{{"pa", to_fraction_string(pa)},
                             {"pb", to_fraction_string(pb)},
                             {"sign", adv.sign},
                             {"value_scientific", to_scientific_string(adv.value, 6)}});
      }
  } else if (id == 5) {
    // Diagonal advantage curves for all four analyzed systems; log10 of the
    // magnitude is what the comparison plots show.
    struct Curve {
      const char* label;
      ScoringSystem system;
    };
    const Curve curves[] = {
        {"side_out_11", make_system(SystemKind::SideOut, 11)},
        {"side_out_15", make_system(SystemKind::SideOut, 15)},
        {"modified_rally_21", make_system(SystemKind::ModifiedRally, 21)},
        {"hybrid_21", make_system(SystemKind::HybridRally, 21)},
    };
    header = {"x"};
    for (const auto& c : curves) {
      header.push_back(std::string(c.label) + "_value");
      header.push_back(std::string(c.label) + "_log10_abs");
      header.push_back(std::string(c.label) + "_sign");
    }
    auto axis = rational_grid(Rational(0), Rational(1), grid);
    for (const auto& x : axis) {
      if (x == 0) continue;
      std::vector<std::string> row{to_decimal_string(x, 6)};
      json jrow{{"x", to_fraction_string(x)}};
      for (const auto& c : curves) {
        Rational v = diagonal_advantage(c.system, x);
        row.push_back(to_scientific_string(v, 6));
        row.push_back(log10_abs_repr(v));
        row.push_back(std::to_string(sign_of(v)));
        jrow[std::string(c.label) + "_value"] = to_scientific_string(v, 6);
        jrow[std::string(c.label) + "_log10_abs"] = log10_abs_repr(v);
        jrow[std::string(c.label) + "_sign"] = sign_of(v);
      }
      rows.push_back(std::move(row));
      jrows.push_back(std::move(jrow));
    }
  } else {
    // Cross-sections comparing side-out to 11 with modified rally to 21,
    // fair-coin first server: win probability (6), expected duration (7),
    // duration standard deviation (8).
    std::vector<ScoringSystem> systems = {make_system(SystemKind::SideOut, 11),
                                          make_system(SystemKind::ModifiedRally, 21)};
    std::vector<Rational> pb_values, pa_grid;
    if (id == 6) {
      for (int m = 1; m <= 9; ++m) pb_values.push_back(make_rational(m, 10));
      pa_grid = rational_grid(Rational(0), Rational(1), grid);
    } else {
      for (int m = 0; m <= 9; ++m) pb_values.push_back(make_rational(36 + 2 * m, 100));
      pa_grid = rational_grid(make_rational(35, 100), make_rational(55, 100), grid);
    }
    auto table = cross_section_table(systems, pb_values, pa_grid);
    if (id == 6)
      header = {"system", "n", "pb", "pa", "win_prob_a", "win_prob_a_decimal"};
    else if (id == 7)
      header = {"system", "n", "pb", "pa", "mean_duration", "mean_duration_decimal"};
    else
      header = {"system", "n", "pb", "pa", "duration_variance", "sd_duration_decimal"};
    for (const auto& r : table) {
      std::vector<std::string> row{system_name(r.system.kind), std::to_string(r.system.target),
                                   to_decimal_string(r.p_b, 6), to_decimal_string(r.p_a, 6)};
      json jrow{{"system", system_name(r.system.kind)},
                {"n", r.system.target},
                {"pb", to_fraction_string(r.p_b)},
                {"pa", to_fraction_string(r.p_a)}};
      if (id == 6) {
        row.push_back(to_fraction_string(r.win_prob_a));
        row.push_back(to_decimal_string(r.win_prob_a, digits));
        jrow["win_prob_a"] = exact_and_decimal(r.win_prob_a, digits);
      } else if (id == 7) {
        row.push_back(to_fraction_string(r.mean_duration));
        row.push_back(to_decimal_string(r.mean_duration, digits));
        jrow["mean_duration"] = exact_and_decimal(r.mean_duration, digits);
      } else {
        row.push_back(to_fraction_string(r.duration_variance));
        row.push_back(r.sd_duration_decimal(digits));
        jrow["duration_variance"] = exact_and_decimal(r.duration_variance, digits);
        jrow["sd_duration"] = r.sd_duration_decimal(digits);
      }
      rows.push_back(std::move(row));
      jrows.push_back(std::move(jrow));
    }
  }
  doc["rows"] = jrows;
  emit(doc, csv, header, rows);
  return 0;
}

int run_simulate(const CommonArgs& args, const std::string& first, std::uint64_t games,
                 std::uint64_t seed, int workers, bool csv) {
  ScoringSystem system = make_system(system_from_name(args.system), args.n);
  RallyParams params(parse_rational(args.pa), parse_rational(args.pb));
  const double pa = to_double(params.p_a);
  const double pb = to_double(params.p_b);
  json doc;
  doc["command"] = "simulate";
  doc["tool"] = tool_meta();
  doc["system"] = args.system;
  doc["n"] = args.n;
  doc["pa"] = to_fraction_string(params.p_a);
  doc["pb"] = to_fraction_string(params.p_b);
  doc["first"] = first;
  doc["games"] = games;
  doc["seed"] = seed;
  doc["workers"] = workers;

  auto estimate_json = [](const SimEstimate& e) {
    return json{{"games", e.games},
                {"win_freq_a", e.win_freq_a},
                {"mean_duration", e.mean_duration},
                {"sd_duration", e.sd_duration},
                {"standard_error_win", e.standard_error_win}};
  };

  if (first == "both") {
    auto [estimate, se] = simulate_advantage(system, pa, pb, games, seed, workers);
    doc["advantage_estimate"] = estimate;
    doc["standard_error"] = se;
    emit(doc, csv, {"system", "n", "pa", "pb", "games", "seed", "advantage_estimate", "standard_error"},
         {{args.system, std::to_string(args.n), to_fraction_string(params.p_a),
           to_fraction_string(params.p_b), std::to_string(games), std::to_string(seed),
           double_repr(estimate), double_repr(se)}});
    return 0;
  }

  FirstServer fs = first == "A" ? FirstServer::TeamA
                   : first == "B" ? FirstServer::TeamB
                                  : FirstServer::FairCoin;
  SimEstimate est = simulate(SimConfig{system, pa, pb, fs, games, seed}, workers);
  doc["estimate"] = estimate_json(est);
  emit(doc, csv,
       {"system", "n", "pa", "pb", "first", "games", "seed", "win_freq_a", "mean_duration",
        "sd_duration", "standard_error_win"},
       {{args.system, std::to_string(args.n), to_fraction_string(params.p_a),
         to_fraction_string(params.p_b), first, std::to_string(games), std::to_string(seed),
         double_repr(est.win_freq_a), double_repr(est.mean_duration), double_repr(est.sd_duration),
         double_repr(est.standard_error_win)}});
  return 0;
}

int run_oracle_check(const std::string& form_name, int points, std::uint64_t seed,
                     const std::string& data_dir, bool csv) {
  auto id = closed_form_from_name(form_name);
  if (!id)
    throw CLI::ValidationError("--form",
                               "unknown form '" + form_name +
                                   "'; expected side-out-11, side-out-15, "
                                   "modified-rally-21-diag or hybrid-21-diag");
  ClosedForm form = load_closed_form(*id, data_dir);
  RationalSampler sampler(seed);

  int mismatches = 0;
  json examples = json::array();
  for (int k = 0; k < points; ++k) {
    Rational x = sampler.next_open_unit(1000);
    Rational chain, oracle;
    std::optional<Rational> y;
    switch (*id) {
      case ClosedFormId::SideOut11:
      case ClosedFormId::SideOut15: {
        y = sampler.next_open_unit(1000);
        ScoringSystem system =
            make_system(SystemKind::SideOut, *id == ClosedFormId::SideOut11 ? 11 : 15);
        chain = first_server_advantage(system, RallyParams(x, *y)).value;
        break;
      }
      case ClosedFormId::ModifiedRally21Diag:
        chain = diagonal_advantage(make_system(SystemKind::ModifiedRally, 21), x);
        break;
      case ClosedFormId::Hybrid21Diag:
        chain = diagonal_advantage(make_system(SystemKind::HybridRally, 21), x);
        break;
    }
    oracle = evaluate_closed_form(form, x, y);
    if (chain != oracle) {
      ++mismatches;
      if (examples.size() < 3)
        examples.push_back(json{{"x", to_fraction_string(x)},
                                {"y", y ? to_fraction_string(*y) : ""},
                                {"chain", to_fraction_string(chain)},
                                {"closed_form", to_fraction_string(oracle)}});
    }
  }
  json doc;
  doc["command"] = "oracle-check";
  doc["tool"] = tool_meta();
  doc["form"] = form_name;
  doc["points"] = points;
  doc["seed"] = seed;
  doc["mismatches"] = mismatches;
  doc["pass"] = mismatches == 0;
  if (!examples.empty()) doc["examples"] = examples;
  emit(doc, csv, {"form", "points", "seed", "mismatches", "pass"},
       {{form_name, std::to_string(points), std::to_string(seed), std::to_string(mismatches),
         mismatches == 0 ? "true" : "false"}});
  return mismatches == 0 ? 0 : 1;
}

int run_dump_model(const CommonArgs& args) {
  ScoringSystem system = make_system(system_from_name(args.system), args.n);
  RallyParams params(parse_rational(args.pa), parse_rational(args.pb));
  TransitionModel model = build_transition_model(system, params);
  dump_model(model, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analyzer for pickleball doubles scoring systems"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  app.add_option("--format", format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CommonArgs summary_args;
  std::string summary_first = "coin";
  int summary_digits = 12;
  auto* cmd_summary = app.add_subcommand(
      "summary", "Win probability and duration statistics from the initial state");
  add_point_flags(cmd_summary, summary_args);
  cmd_summary->add_option("--first", summary_first, "First server: A, B or coin")
      ->check(CLI::IsMember({"A", "B", "coin"}));
  cmd_summary->add_option("--digits", summary_digits, "Decimal digits in renderings");

  CommonArgs adv_args;
  int adv_digits = 12;
  auto* cmd_advantage =
      app.add_subcommand("advantage", "First-server advantage at one parameter point");
  add_point_flags(cmd_advantage, adv_args);
  cmd_advantage->add_option("--digits", adv_digits, "Decimal digits in renderings");

  std::string zeros_system = "side-out";
  int zeros_n = 11;
  std::string zeros_tol = "1/10000000";
  std::string zeros_step = "1/1024";
  int zeros_digits = 6;
  auto* cmd_zeros =
      app.add_subcommand("zeros", "Isolate the zeros of the diagonal advantage on (0,1)");
  cmd_zeros->add_option("--system", zeros_system, "Scoring system")->required();
  cmd_zeros->add_option("--n", zeros_n, "Target score")->required();
  cmd_zeros->add_option("--tol", zeros_tol, "Maximum width of each root interval");
  cmd_zeros->add_option("--step", zeros_step, "Initial sign-change scan step");
  cmd_zeros->add_option("--digits", zeros_digits, "Decimal digits for root midpoints");

  std::string ext_system = "side-out";
  int ext_n = 11;
  std::string ext_region, ext_mode = "min";
  std::string ext_value_tol = "1/1000000000000000";  // 1e-15
  std::string ext_point_tol = "1/1000000";           // 1e-6
  int ext_digits = 12;
  auto* cmd_extremum =
      app.add_subcommand("extremum", "Extremum of the advantage over a constrained region");
  cmd_extremum->add_option("--system", ext_system, "Scoring system")->required();
  cmd_extremum->add_option("--n", ext_n, "Target score")->required();
  cmd_extremum->add_option("--region", ext_region, "Bounds xlo,xhi,ylo,yhi,slo,shi")->required();
  cmd_extremum->add_option("--mode", ext_mode, "min or max")->check(CLI::IsMember({"min", "max"}));
  cmd_extremum->add_option("--value-tol", ext_value_tol, "Value stability tolerance");
  cmd_extremum->add_option("--point-tol", ext_point_tol, "Final search step bound");
  cmd_extremum->add_option("--digits", ext_digits, "Decimal digits in renderings");

  int fig_id = 6;
  int fig_grid = 0;  // 0 = per-figure default
  int fig_digits = 12;
  auto* cmd_figure = app.add_subcommand("figure", "Emit the data table backing one figure");
  cmd_figure->add_option("--id", fig_id, "Figure id: 3-8")->required()->check(CLI::Range(3, 8));
  cmd_figure->add_option("--grid", fig_grid, "Grid points per axis (default 101 for 3-4, else 201)");
  cmd_figure->add_option("--digits", fig_digits, "Decimal digits in renderings");

  CommonArgs sim_args;
  std::string sim_first = "coin";
  std::uint64_t sim_games = 10000, sim_seed = 1;
  int sim_workers = 1;
  auto* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo playout of full games");
  add_point_flags(cmd_simulate, sim_args);
  cmd_simulate->add_option("--games", sim_games, "Number of games (per condition for --first both)");
  cmd_simulate->add_option("--seed", sim_seed, "Run seed");
  cmd_simulate->add_option("--first", sim_first, "First server: A, B, coin, or both")
      ->check(CLI::IsMember({"A", "B", "coin", "both"}));
  cmd_simulate->add_option("--workers", sim_workers, "Worker threads (result is identical)");

  std::string oc_form = "side-out-11";
  int oc_points = 100;
  std::uint64_t oc_seed = 1;
  std::string oc_data_dir = PICKLEBALL_DATA_DIR;
  auto* cmd_oracle = app.add_subcommand(
      "oracle-check", "Exact equality of the chain pipeline against a published closed form");
  cmd_oracle->add_option("--form", oc_form, "Closed form name")->required();
  cmd_oracle->add_option("--points", oc_points, "Number of random rational points");
  cmd_oracle->add_option("--seed", oc_seed, "Sampling seed");
  cmd_oracle->add_option("--data-dir", oc_data_dir, "Directory with the coefficient tables");

  CommonArgs dump_args;
  auto* cmd_dump = app.add_subcommand("dump-model", "Dump the (Q,S) blocks as a text triple list");
  add_point_flags(cmd_dump, dump_args);

  try {
    app.parse(argc, argv);
    const bool csv = format == "csv";
    if (*cmd_summary) return run_summary(summary_args, summary_first, summary_digits, csv);
    if (*cmd_advantage) return run_advantage(adv_args, adv_digits, csv);
    if (*cmd_zeros) return run_zeros(zeros_system, zeros_n, zeros_tol, zeros_step, zeros_digits, csv);
    if (*cmd_extremum)
      return run_extremum(ext_system, ext_n, ext_region, ext_mode, ext_value_tol, ext_point_tol,
                          ext_digits, csv);
    if (*cmd_figure) {
      if (fig_grid == 0) fig_grid = fig_id <= 4 ? 101 : 201;
      if (fig_grid < 2) throw CLI::ValidationError("--grid", "need at least two grid points");
      return run_figure(fig_id, fig_grid, fig_digits, csv);
    }
    if (*cmd_simulate) return run_simulate(sim_args, sim_first, sim_games, sim_seed, sim_workers, csv);
    if (*cmd_oracle) return run_oracle_check(oc_form, oc_points, oc_seed, oc_data_dir, csv);
    if (*cmd_dump) return run_dump_model(dump_args);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err{{"error", {{"type", "usage"}, {"message", e.what()}}}};
    std::cerr << err.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    json err{{"error", {{"type", "domain"}, {"message", e.what()}}}};
    std::cerr << err.dump() << '\n';
    return 1;
  }
}
