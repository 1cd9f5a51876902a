#pragma once

// Dataset + config -> utilities, WMSD points and rankings; shared by the CLI and the service.

#include <string>
#include <string_view>
#include <vector>

#include "wmsd/config.hpp"
#include "wmsd/core.hpp"
#include "wmsd/ranking.hpp"

namespace wmsd {

/// Ranking tolerance used in two-decimal mode when the config asks for less.
inline constexpr double kReproductionTolerance = 1e-4;
/// Decimals kept for scores in two-decimal mode (the printed table precision).
inline constexpr int kReproductionScoreDecimals = 3;

struct Analysis {
    std::vector<std::string> ids;
    UtilityMatrix utilities;
    std::vector<WeightedUtilityVector> weighted;
    /// Exact WMSD coordinates.
    std::vector<WmsdPoint> wmsd;
    /// Coordinates fed to aggregations: rounded to 2 decimals in two-decimal mode.
    std::vector<WmsdPoint> points;
    std::vector<std::string> warnings;
};

/// Parses a dataset against the config criteria. A config without criteria takes the header
/// names as gain criteria with data-driven ranges.
DecisionMatrix load_dataset(std::string_view csv, const ProjectConfig& config);

Analysis analyze(const DecisionMatrix& dm, const ProjectConfig& config);

/// Scores of every alternative under `spec`, in input order. The spec is validated against
/// the config weights; config.force_epsilon forces it.
std::vector<Score> score_alternatives(const Analysis& analysis, const AnySpec& spec, const ProjectConfig& config);

double ranking_tolerance(const ProjectConfig& config) noexcept;

RankedList rank_alternatives(const Analysis& analysis, const AnySpec& spec, const ProjectConfig& config);

}  // namespace wmsd
