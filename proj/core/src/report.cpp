#include "whs/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "whs/errors.hpp"

namespace whs {

namespace {

const char* kCsvHeader =
    "scenario_id,variant,chained,f,delta,views,faulty,seed,total_latency_ms,"
    "avg_per_view_ms,status";

std::string fmt_ms(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt_pct(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

/// The basic-baseline row this row compares against, if any.
const ResultRow* find_baseline(const std::vector<ResultRow>& rows,
                               const ResultRow& row) {
  for (const ResultRow& b : rows) {
    if (b.variant == "basic-baseline" && b.chained == row.chained &&
        b.views == row.views && b.faulty == row.faulty && b.status == "ok") {
      return &b;
    }
  }
  return nullptr;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  return cells;
}

bool parse_bool(const std::string& s) { return s == "true" || s == "1"; }

}  // namespace

void emit_results(const std::vector<ResultRow>& rows, std::ostream& out,
                  ReportFormat format) {
  if (rows.empty()) throw InvalidParameter("no results to emit");

  if (format == ReportFormat::Csv) {
    out << kCsvHeader << '\n';
    for (const ResultRow& r : rows) {
      out << r.scenario_id << ',' << r.variant << ',' << bool_str(r.chained)
          << ',' << r.f << ',' << r.delta << ',' << r.views << ','
          << bool_str(r.faulty) << ',' << r.seed << ','
          << fmt_ms(r.total_latency_ms) << ',' << fmt_ms(r.avg_per_view_ms)
          << ',' << r.status << '\n';
    }
    return;
  }

  out << std::left << std::setw(28) << "scenario_id" << std::setw(16)
      << "variant" << std::setw(9) << "chained" << std::setw(4) << "f"
      << std::setw(7) << "delta" << std::setw(7) << "views" << std::setw(8)
      << "faulty" << std::setw(16) << "avg_per_view_ms" << std::setw(18)
      << "total_latency_ms" << std::setw(17) << "pct_vs_baseline"
      << "status" << '\n';
  for (const ResultRow& r : rows) {
    std::string pct = "n/a";
    if (r.status == "ok") {
      const ResultRow* baseline = find_baseline(rows, r);
      if (baseline != nullptr && baseline->avg_per_view_ms > 0.0) {
        pct = fmt_pct((r.avg_per_view_ms - baseline->avg_per_view_ms) /
                      baseline->avg_per_view_ms * 100.0);
      }
    }
    out << std::left << std::setw(28) << r.scenario_id << std::setw(16)
        << r.variant << std::setw(9) << bool_str(r.chained) << std::setw(4)
        << r.f << std::setw(7) << r.delta << std::setw(7) << r.views
        << std::setw(8) << bool_str(r.faulty) << std::setw(16)
        << fmt_ms(r.avg_per_view_ms) << std::setw(18)
        << fmt_ms(r.total_latency_ms) << std::setw(17) << pct << r.status
        << '\n';
  }
}

void emit_results_file(const std::vector<ResultRow>& rows,
                       const std::string& path, ReportFormat format) {
  if (rows.empty()) throw InvalidParameter("no results to emit");
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open output file: " + path);
  emit_results(rows, out, format);
  if (!out) throw IoFailure("failed writing output file: " + path);
}

std::vector<ResultRow> parse_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split_line(line) != split_line(kCsvHeader)) {
    throw MalformedInput("results CSV is missing the expected header");
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != 11) {
      throw MalformedInput("results CSV row has " +
                           std::to_string(cells.size()) + " cells");
    }
    ResultRow r;
    try {
      r.scenario_id = cells[0];
      r.variant = cells[1];
      r.chained = parse_bool(cells[2]);
      r.f = std::stoi(cells[3]);
      r.delta = std::stoi(cells[4]);
      r.views = std::stoi(cells[5]);
      r.faulty = parse_bool(cells[6]);
      r.seed = std::stoull(cells[7]);
      r.total_latency_ms = std::stod(cells[8]);
      r.avg_per_view_ms = std::stod(cells[9]);
      r.status = cells[10];
    } catch (const std::exception&) {
      throw MalformedInput("unparseable results CSV row: " + line);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_campaign(const CampaignSummary& summary, std::ostream& out,
                   ReportFormat format) {
  if (summary.rows.empty()) throw InvalidParameter("no campaign rows to emit");
  if (format == ReportFormat::Csv) {
    out << "topology_index,best_assigned_ms,continuous_ms,difference_ms,"
           "outcome\n";
    for (const CampaignRow& r : summary.rows) {
      out << r.topology_index << ',' << fmt_ms(r.best_assigned_ms) << ','
          << fmt_ms(r.continuous_ms) << ',' << fmt_ms(r.difference_ms) << ','
          << r.outcome << '\n';
    }
    return;
  }
  out << std::left << std::setw(16) << "topology" << std::setw(20)
      << "best_assigned_ms" << std::setw(16) << "continuous_ms"
      << std::setw(16) << "difference_ms" << "outcome" << '\n';
  for (const CampaignRow& r : summary.rows) {
    out << std::left << std::setw(16) << r.topology_index << std::setw(20)
        << fmt_ms(r.best_assigned_ms) << std::setw(16)
        << fmt_ms(r.continuous_ms) << std::setw(16) << fmt_ms(r.difference_ms)
        << r.outcome << '\n';
  }
  const auto n = summary.rows.size();
  out << "wins=" << summary.wins << " ties=" << summary.ties
      << " losses=" << summary.losses << " better_or_equal="
      << fmt_pct(summary.better_or_equal_fraction() * 100.0) << "% of " << n
      << " topologies\n";
}

void emit_campaign_file(const CampaignSummary& summary,
                        const std::string& path, ReportFormat format) {
  if (summary.rows.empty()) throw InvalidParameter("no campaign rows to emit");
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open output file: " + path);
  emit_campaign(summary, out, format);
  if (!out) throw IoFailure("failed writing output file: " + path);
}

}  // namespace whs
