#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "whs/scenario.hpp"

namespace whs {

enum class ReportFormat { Csv, Table };

/// CSV columns, in order: scenario_id, variant, chained, f, delta, views,
/// faulty, seed, total_latency_ms, avg_per_view_ms, status. The table format
/// adds pct_vs_baseline = (variant - baseline) / baseline * 100, matched
/// against the basic-baseline row with the same (chained, views, faulty).
/// Output carries no timestamp, so reruns are byte-identical.
/// Throws InvalidParameter on empty results.
void emit_results(const std::vector<ResultRow>& rows, std::ostream& out,
                  ReportFormat format);

void emit_results_file(const std::vector<ResultRow>& rows,
                       const std::string& path, ReportFormat format);

std::vector<ResultRow> parse_results_csv(std::istream& in);

void emit_campaign(const CampaignSummary& summary, std::ostream& out,
                   ReportFormat format);

void emit_campaign_file(const CampaignSummary& summary,
                        const std::string& path, ReportFormat format);

}  // namespace whs
