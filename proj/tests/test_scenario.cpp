#include <doctest.h>

#include <cmath>
#include <sstream>

#include "whs/report.hpp"
#include "whs/scenario.hpp"

using namespace whs;

namespace {

ScenarioSpec fixture_spec(Variant v) {
  ScenarioSpec spec;
  spec.scenario_id = "t";
  spec.variant = v;
  spec.topology_path = WHS_FIXTURE_CSV;
  spec.seed = 42;
  return spec;
}

}  // namespace

TEST_CASE("variant names round-trip") {
  for (Variant v : {Variant::Baseline, Variant::Weighted, Variant::BestAssigned,
                    Variant::OptimalLeader, Variant::Combined, Variant::Continuous}) {
    CHECK(variant_from_string(to_string(v)) == v);
  }
  CHECK(variant_from_string("baseline") == Variant::Baseline);
  CHECK_THROWS_AS(variant_from_string("nope"), InvalidParameter);
}

TEST_CASE("tailored assignment boosts the best and worst connected replicas") {
  // row sums: replica 0 has the shortest rows, replica 3 the longest
  std::vector<std::vector<double>> rows{
      {0, 1, 1, 1, 1},
      {10, 0, 10, 10, 10},
      {20, 20, 0, 20, 20},
      {90, 90, 90, 0, 90},
      {30, 30, 30, 30, 0},
  };
  const LatencyMatrix m(rows);
  const ProtocolConfig config = make_config(1, 1);
  const WeightAssignment w = tailored_weighted_assignment(config, m);
  CHECK(w.weights == std::vector<double>{2, 1, 1, 2, 1});
  CHECK(w.total() == doctest::Approx(7.0));
}

TEST_CASE("resolve_topology") {
  SUBCASE("file beats random parameters") {
    const ScenarioSpec spec = fixture_spec(Variant::Weighted);
    CHECK(resolve_topology(spec).n() == 5);
  }
  SUBCASE("random topology is seed-stable") {
    ScenarioSpec spec;
    spec.random_n = 6;
    spec.random_max_latency = 300.0;
    spec.seed = 9;
    CHECK(resolve_topology(spec) == resolve_topology(spec));
    spec.seed = 10;
    const LatencyMatrix other = resolve_topology(spec);
    ScenarioSpec nine;
    nine.random_n = 6;
    nine.random_max_latency = 300.0;
    nine.seed = 9;
    CHECK_FALSE(other == resolve_topology(nine));
  }
  SUBCASE("no source is an error") {
    ScenarioSpec spec;
    CHECK_THROWS_AS(resolve_topology(spec), InvalidParameter);
  }
}

TEST_CASE("spec validation") {
  ScenarioSpec spec = fixture_spec(Variant::Continuous);
  SUBCASE("continuous weighting has no chained model") {
    spec.chained = true;
    CHECK_THROWS_AS(run_scenario(spec), InvalidParameter);
  }
  SUBCASE("views bounds") {
    spec.views = 0;
    CHECK_THROWS_AS(run_scenario(spec), InvalidParameter);
    spec.views = 10001;
    CHECK_THROWS_AS(run_scenario(spec), InvalidParameter);
  }
  SUBCASE("f must be positive") {
    spec.f = 0;
    CHECK_THROWS_AS(run_scenario(spec), InvalidParameter);
  }
}

TEST_CASE("run_scenario orderings on the fixture") {
  const double baseline =
      run_scenario(fixture_spec(Variant::Baseline)).result.total_latency_ms;
  const double weighted =
      run_scenario(fixture_spec(Variant::Weighted)).result.total_latency_ms;
  const ScenarioOutcome best = run_scenario(fixture_spec(Variant::BestAssigned));

  CHECK(weighted < baseline);
  // annealing starts from the tailored assignment and keeps the best state
  CHECK(best.result.total_latency_ms <= weighted);
  CHECK(best.annealed);
  CHECK(best.status == "ok");
  CHECK(best.quorum_threshold == doctest::Approx(5.0));
}

TEST_CASE("run_scenario is reproducible") {
  const ScenarioSpec spec = fixture_spec(Variant::Combined);
  const ScenarioOutcome a = run_scenario(spec);
  const ScenarioOutcome b = run_scenario(spec);
  CHECK(a.result.total_latency_ms == b.result.total_latency_ms);
  CHECK(a.final_weights.weights == b.final_weights.weights);
  CHECK(a.final_schedule.leaders == b.final_schedule.leaders);
}

TEST_CASE("faulty baseline reports an unreachable quorum instead of throwing") {
  ScenarioSpec spec = fixture_spec(Variant::Baseline);
  spec.faulty = true;
  const ScenarioOutcome out = run_scenario(spec);
  CHECK(out.status == "quorum_unreachable@view0");
  CHECK(out.failed_view == 0);

  ScenarioSpec weighted = fixture_spec(Variant::Weighted);
  weighted.faulty = true;
  CHECK(run_scenario(weighted).status == "ok");
}

TEST_CASE("continuous variant keeps weights safe and within the cap") {
  const ScenarioOutcome out = run_scenario(fixture_spec(Variant::Continuous));
  REQUIRE(out.status == "ok");
  CHECK(out.final_weights.scheme == WeightScheme::Continuous);
  for (double w : out.final_weights.weights) {
    CHECK(w >= 0.0);
    CHECK(w <= 2.0);
  }
  CHECK(check_continuous_safety(out.final_weights, 1).valid);
  CHECK(out.quorum_threshold ==
        doctest::Approx(continuous_quorum_threshold(out.final_weights, 1)));
}

TEST_CASE("run_sweep produces one row per view count") {
  ScenarioSpec spec = fixture_spec(Variant::Weighted);
  const std::vector<ResultRow> rows = run_sweep(spec, 5, 20);
  REQUIRE(rows.size() == 16);
  for (int i = 0; i < 16; ++i) {
    CHECK(rows[i].views == 5 + i);
    CHECK(rows[i].scenario_id == "t-views" + std::to_string(5 + i));
    CHECK(rows[i].status == "ok");
  }
  // more views never means less total latency under the same seed stream
  CHECK(rows.back().total_latency_ms > rows.front().total_latency_ms);
}

TEST_CASE("csv report format") {
  ScenarioSpec spec = fixture_spec(Variant::Baseline);
  std::vector<ResultRow> rows{to_result_row(spec, run_scenario(spec))};
  spec.variant = Variant::Weighted;
  rows.push_back(to_result_row(spec, run_scenario(spec)));

  std::ostringstream csv;
  emit_results(rows, csv, ReportFormat::Csv);
  const std::string text = csv.str();
  CHECK(text.rfind("scenario_id,variant,chained,f,delta,views,faulty,seed,"
                   "total_latency_ms,avg_per_view_ms,status\n",
                   0) == 0);
  CHECK(text.find("basic-baseline") != std::string::npos);

  SUBCASE("round-trips through the parser") {
    std::istringstream in(text);
    const std::vector<ResultRow> back = parse_results_csv(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0].variant == "basic-baseline");
    CHECK(back[1].total_latency_ms ==
          doctest::Approx(rows[1].total_latency_ms).epsilon(1e-9));
    CHECK(back[0].seed == 42);
  }
  SUBCASE("reruns are byte-identical") {
    std::ostringstream again;
    emit_results(rows, again, ReportFormat::Csv);
    CHECK(again.str() == text);
  }
  SUBCASE("table mode reports percent versus the matching baseline") {
    std::ostringstream table;
    emit_results(rows, table, ReportFormat::Table);
    CHECK(table.str().find("pct_vs_baseline") != std::string::npos);
    CHECK(table.str().find("0.00") != std::string::npos);
  }
  SUBCASE("empty input is rejected") {
    std::ostringstream out;
    CHECK_THROWS_AS(emit_results({}, out, ReportFormat::Csv), InvalidParameter);
  }
}

TEST_CASE("comparison campaign") {
  ScenarioSpec base;
  base.random_n = 5;
  base.random_max_latency = 400.0;
  base.seed = 1;
  base.views = 5;
  const CampaignSummary summary = run_comparison_campaign(base, 20);
  REQUIRE(summary.rows.size() == 20);
  CHECK(summary.wins + summary.ties + summary.losses == 20);
  for (const CampaignRow& row : summary.rows) {
    CHECK(row.difference_ms ==
          doctest::Approx(row.best_assigned_ms - row.continuous_ms));
    if (row.outcome == "tie") CHECK(std::abs(row.difference_ms) <= 1e-6);
    if (row.outcome == "win") CHECK(row.difference_ms > 1e-6);
    if (row.outcome == "loss") CHECK(row.difference_ms < -1e-6);
  }
  CHECK(summary.better_or_equal_fraction() ==
        doctest::Approx((summary.wins + summary.ties) / 20.0));

  SUBCASE("campaign report carries a summary line in table mode") {
    std::ostringstream out;
    emit_campaign(summary, out, ReportFormat::Table);
    CHECK(out.str().find("better_or_equal=") != std::string::npos);
    std::ostringstream csv;
    emit_campaign(summary, csv, ReportFormat::Csv);
    CHECK(csv.str().find("topology_index") != std::string::npos);
  }
}
