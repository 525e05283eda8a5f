// Experiment harness for the weighted HotStuff latency-prediction models.
//
// Subcommands: simulate, sweep, optimize, campaign, report.
// Exit codes: 0 success, 2 invalid spec, 3 quorum unreachable, 4 I/O failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "whs/report.hpp"
#include "whs/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidSpec = 2;
constexpr int kExitQuorumUnreachable = 3;
constexpr int kExitIoFailure = 4;

struct Options {
  std::string topology;
  int random_n = 0;
  double max_latency = 0.0;
  int f = 1;
  int delta = 1;
  std::string views = "10";  // single count or "from..to"
  std::string variant = "weighted";
  bool chained = false;
  bool faulty = false;
  bool static_network = false;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  std::string config;
  std::string id = "scenario";
  int topologies = 200;
  std::string in;  // report input CSV

  std::map<std::string, CLI::Option*> flags;
  bool given(const std::string& name) const {
    auto it = flags.find(name);
    return it != flags.end() && it->second->count() > 0;
  }
};

void add_scenario_options(CLI::App* cmd, Options& o) {
  auto& f = o.flags;
  f["topology"] = cmd->add_option("--topology", o.topology,
                                  "Latency matrix file (.csv or .json)");
  f["random-n"] = cmd->add_option("--random-n", o.random_n,
                                  "Generate a random topology with n replicas");
  f["max-latency"] = cmd->add_option("--max-latency", o.max_latency,
                                     "Random topology link latency bound (ms)");
  f["f"] = cmd->add_option("--f", o.f, "Tolerated Byzantine faults");
  f["delta"] = cmd->add_option("--delta", o.delta, "Additional replicas");
  f["views"] = cmd->add_option("--views", o.views,
                               "View count, or a range like 5..20 for sweep");
  f["variant"] = cmd->add_option(
      "--variant", o.variant,
      "basic-baseline | weighted | best-assigned | optimal-leader | combined "
      "| continuous");
  f["chained"] = cmd->add_flag("--chained", o.chained,
                               "Use the pipelined chained model");
  f["faulty"] = cmd->add_flag(
      "--faulty", o.faulty,
      "Make the f highest-weight replicas idle in the final prediction");
  f["static"] = cmd->add_flag("--static", o.static_network,
                              "Disable per-message payload offsets");
  f["seed"] = cmd->add_option("--seed", o.seed, "Experiment seed");
  f["out"] = cmd->add_option("--out", o.out, "Output file (default stdout)");
  f["format"] = cmd->add_option("--format", o.format, "csv | table");
  f["config"] = cmd->add_option("--config", o.config,
                                "JSON scenario manifest; flags override it");
  f["id"] = cmd->add_option("--id", o.id, "Scenario identifier for the output");
}

std::pair<int, int> parse_views_range(const std::string& views) {
  const auto dots = views.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(views);
      return {v, v};
    }
    return {std::stoi(views.substr(0, dots)), std::stoi(views.substr(dots + 2))};
  } catch (const std::exception&) {
    throw whs::InvalidParameter("unparseable views value: " + views);
  }
}

// Config file values fill in every field the command line did not set.
void apply_config_file(const Options& o, whs::ScenarioSpec& spec,
                       std::pair<int, int>& views_range) {
  std::ifstream in(o.config);
  if (!in) throw whs::IoFailure("cannot open config file: " + o.config);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw whs::MalformedInput(std::string("invalid config JSON: ") + e.what());
  }

  auto set_if = [&](const char* key, const char* flag, auto&& apply) {
    if (j.contains(key) && !o.given(flag)) apply(j.at(key));
  };
  set_if("scenario_id", "id",
         [&](const auto& v) { spec.scenario_id = v.template get<std::string>(); });
  set_if("variant", "variant", [&](const auto& v) {
    spec.variant = whs::variant_from_string(v.template get<std::string>());
  });
  set_if("chained", "chained",
         [&](const auto& v) { spec.chained = v.template get<bool>(); });
  set_if("f", "f", [&](const auto& v) { spec.f = v.template get<int>(); });
  set_if("delta", "delta",
         [&](const auto& v) { spec.delta = v.template get<int>(); });
  set_if("views", "views", [&](const auto& v) {
    if (v.is_number_integer()) {
      views_range = {v.template get<int>(), v.template get<int>()};
    } else {
      views_range = parse_views_range(v.template get<std::string>());
    }
    spec.views = views_range.first;
  });
  set_if("topology", "topology", [&](const auto& v) {
    spec.topology_path = v.template get<std::string>();
  });
  set_if("random_n", "random-n",
         [&](const auto& v) { spec.random_n = v.template get<int>(); });
  set_if("max_latency", "max-latency", [&](const auto& v) {
    spec.random_max_latency = v.template get<double>();
  });
  set_if("faulty", "faulty",
         [&](const auto& v) { spec.faulty = v.template get<bool>(); });
  set_if("static", "static", [&](const auto& v) {
    spec.static_network = v.template get<bool>();
  });
  set_if("seed", "seed", [&](const auto& v) {
    spec.seed = v.template get<std::uint64_t>();
  });
  if (j.contains("anneal")) {
    const auto& a = j.at("anneal");
    if (a.contains("initial_temperature"))
      spec.anneal.initial_temperature = a.at("initial_temperature").get<double>();
    if (a.contains("cooling_rate"))
      spec.anneal.cooling_rate = a.at("cooling_rate").get<double>();
    if (a.contains("min_temperature"))
      spec.anneal.min_temperature = a.at("min_temperature").get<double>();
    if (a.contains("max_evaluations"))
      spec.anneal.max_evaluations = a.at("max_evaluations").get<int>();
  }
}

whs::ScenarioSpec build_spec(const Options& o, std::pair<int, int>& views_range) {
  whs::ScenarioSpec spec;
  spec.scenario_id = o.id;
  spec.variant = whs::variant_from_string(o.variant);
  spec.chained = o.chained;
  spec.f = o.f;
  spec.delta = o.delta;
  views_range = parse_views_range(o.views);
  spec.views = views_range.first;
  spec.topology_path = o.topology;
  spec.random_n = o.random_n;
  spec.random_max_latency = o.max_latency;
  spec.faulty = o.faulty;
  spec.static_network = o.static_network;
  spec.seed = o.seed;
  if (!o.config.empty()) apply_config_file(o, spec, views_range);
  return spec;
}

whs::ReportFormat parse_format(const std::string& format) {
  if (format == "csv") return whs::ReportFormat::Csv;
  if (format == "table") return whs::ReportFormat::Table;
  throw whs::InvalidParameter("unknown format: " + format);
}

void emit(const std::vector<whs::ResultRow>& rows, const Options& o) {
  if (o.out.empty()) {
    whs::emit_results(rows, std::cout, parse_format(o.format));
  } else {
    whs::emit_results_file(rows, o.out, parse_format(o.format));
  }
}

int exit_code_for(const std::vector<whs::ResultRow>& rows) {
  for (const auto& r : rows) {
    if (r.status != "ok") return kExitQuorumUnreachable;
  }
  return kExitOk;
}

std::string weights_to_string(const whs::WeightAssignment& w) {
  std::string s = "[";
  char buf[32];
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", w.weights[i]);
    s += buf;
    if (i + 1 < w.weights.size()) s += ", ";
  }
  return s + "]";
}

std::string schedule_to_string(const whs::LeaderSchedule& schedule) {
  std::string s = "[";
  for (std::size_t i = 0; i < schedule.leaders.size(); ++i) {
    s += std::to_string(schedule.leaders[i]);
    if (i + 1 < schedule.leaders.size()) s += ", ";
  }
  return s + "]";
}

int run_simulate(const Options& o) {
  std::pair<int, int> range;
  whs::ScenarioSpec spec = build_spec(o, range);
  if (range.first != range.second) {
    throw whs::InvalidParameter("simulate takes a single view count");
  }
  const whs::ScenarioOutcome out = whs::run_scenario(spec);
  std::vector<whs::ResultRow> rows{whs::to_result_row(spec, out)};
  emit(rows, o);
  return exit_code_for(rows);
}

int run_sweep_cmd(const Options& o) {
  std::pair<int, int> range;
  whs::ScenarioSpec spec = build_spec(o, range);
  const auto rows = whs::run_sweep(spec, range.first, range.second);
  emit(rows, o);
  return exit_code_for(rows);
}

int run_optimize(const Options& o) {
  std::pair<int, int> range;
  whs::ScenarioSpec spec = build_spec(o, range);
  if (range.first != range.second) {
    throw whs::InvalidParameter("optimize takes a single view count");
  }
  switch (spec.variant) {
    case whs::Variant::BestAssigned:
    case whs::Variant::OptimalLeader:
    case whs::Variant::Combined:
    case whs::Variant::Continuous:
      break;
    default:
      throw whs::InvalidParameter(
          "optimize needs an annealing variant (best-assigned, "
          "optimal-leader, combined or continuous)");
  }
  const whs::ScenarioOutcome out = whs::run_scenario(spec);
  std::cout << "variant:   " << to_string(spec.variant) << '\n'
            << "weights:   " << weights_to_string(out.final_weights) << '\n'
            << "schedule:  " << schedule_to_string(out.final_schedule) << '\n'
            << "threshold: " << out.quorum_threshold << '\n'
            << "status:    " << out.status << '\n';
  if (out.status == "ok") {
    std::printf("total_latency_ms: %.6f\navg_per_view_ms:  %.6f\n",
                out.result.total_latency_ms, out.result.average_per_view_ms);
  }
  std::vector<whs::ResultRow> rows{whs::to_result_row(spec, out)};
  if (!o.out.empty()) emit(rows, o);
  return exit_code_for(rows);
}

int run_campaign(const Options& o) {
  std::pair<int, int> range;
  whs::ScenarioSpec spec = build_spec(o, range);
  if (range.first != range.second) {
    throw whs::InvalidParameter("campaign takes a single view count");
  }
  const whs::CampaignSummary summary =
      whs::run_comparison_campaign(spec, o.topologies);
  if (o.out.empty()) {
    whs::emit_campaign(summary, std::cout, parse_format(o.format));
  } else {
    whs::emit_campaign_file(summary, o.out, parse_format(o.format));
    std::printf("better_or_equal: %.2f%% of %d topologies\n",
                summary.better_or_equal_fraction() * 100.0,
                static_cast<int>(summary.rows.size()));
  }
  return kExitOk;
}

int run_report(const Options& o) {
  std::ifstream in(o.in);
  if (!in) throw whs::IoFailure("cannot open results CSV: " + o.in);
  const auto rows = whs::parse_results_csv(in);
  if (o.out.empty()) {
    whs::emit_results(rows, std::cout, parse_format(o.format));
  } else {
    whs::emit_results_file(rows, o.out, parse_format(o.format));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latency-prediction laboratory for weighted-voting HotStuff"};
  app.require_subcommand(1);

  Options sim_o, sweep_o, opt_o, camp_o, rep_o;

  CLI::App* simulate = app.add_subcommand("simulate", "Run one scenario");
  add_scenario_options(simulate, sim_o);

  CLI::App* sweep =
      app.add_subcommand("sweep", "Run a scenario over a range of view counts");
  add_scenario_options(sweep, sweep_o);

  CLI::App* optimize = app.add_subcommand(
      "optimize", "Run an annealing variant and print the best configuration");
  add_scenario_options(optimize, opt_o);

  CLI::App* campaign = app.add_subcommand(
      "campaign",
      "Best-assigned vs continuous over random faulty topologies");
  add_scenario_options(campaign, camp_o);
  camp_o.flags["topologies"] = campaign->add_option(
      "--topologies", camp_o.topologies, "Number of random topologies");

  CLI::App* report =
      app.add_subcommand("report", "Re-emit a summary from a results CSV");
  rep_o.flags["in"] =
      report->add_option("--in", rep_o.in, "Results CSV path")->required();
  rep_o.flags["out"] = report->add_option("--out", rep_o.out, "Output file");
  rep_o.flags["format"] =
      report->add_option("--format", rep_o.format, "csv | table");
  rep_o.format = "table";

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidSpec;
  }

  try {
    if (app.got_subcommand(simulate)) return run_simulate(sim_o);
    if (app.got_subcommand(sweep)) return run_sweep_cmd(sweep_o);
    if (app.got_subcommand(optimize)) return run_optimize(opt_o);
    if (app.got_subcommand(campaign)) return run_campaign(camp_o);
    if (app.got_subcommand(report)) return run_report(rep_o);
  } catch (const whs::QuorumUnreachable& e) {
    std::cerr << "error: quorum unreachable: " << e.what() << '\n';
    return kExitQuorumUnreachable;
  } catch (const whs::IoFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIoFailure;
  } catch (const whs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidSpec;
  }
  return kExitInvalidSpec;
}
