#pragma once

#include <string>
#include <vector>

#include "wmsd/core.hpp"
#include "wmsd/ranking.hpp"

namespace wmsd {

enum class ReportFormat { table, csv, jsonl };

/// Accepts "table", "csv" or "jsonl".
ReportFormat parse_report_format(const std::string& text);

/// Fixed-point text rounded half away from zero; never prints a negative zero.
std::string format_fixed(double x, int decimals);

/// "(0.95, -0.09)": components after the first carry an explicit sign unless they round to zero.
std::string format_tuple(const LexTuple& t, int decimals = 2);

struct ReportOptions {
    int score_decimals = 3;
    int tuple_decimals = 2;
    int wmsd_decimals = 4;
};

/// One row per alternative in rank order: id, WM, WSD, score, position. `wmsd` is indexed by
/// the input order recorded in the ranked entries. The jsonl form carries unrounded numbers.
std::string emit_ranking_report(const RankedList& ranked, const std::vector<WmsdPoint>& wmsd, ReportFormat format,
                                const ReportOptions& options = {});

/// Per-alternative WM/WSD listing in input order.
std::string emit_wmsd_report(const std::vector<std::string>& ids, const std::vector<WmsdPoint>& wmsd,
                             ReportFormat format, int decimals = 4);

struct ComparisonColumn {
    std::string label;
    RankedList ranked;
};

/// Side-by-side "value(position)" table with one row per alternative in input order.
std::string emit_comparison(const std::vector<std::string>& ids, const std::vector<ComparisonColumn>& columns,
                            ReportFormat format, const ReportOptions& options = {});

}  // namespace wmsd
