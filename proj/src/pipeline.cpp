#include "wmsd/pipeline.hpp"

#include <algorithm>

#include "wmsd/dataset.hpp"

namespace wmsd {

DecisionMatrix load_dataset(std::string_view csv, const ProjectConfig& config) {
    if (!config.criteria.empty()) return parse_dataset(csv, config.criteria);
    std::vector<CriterionSpec> criteria;
    for (auto& name : dataset_header(csv)) criteria.push_back({std::move(name), Direction::gain, std::nullopt});
    if (criteria.size() != config.weights.size()) {
        throw HeaderMismatch("dataset has " + std::to_string(criteria.size()) + " criterion columns, config has " +
                             std::to_string(config.weights.size()) + " weights");
    }
    return parse_dataset(csv, criteria);
}

Analysis analyze(const DecisionMatrix& dm, const ProjectConfig& config) {
    if (!config.criteria.empty() && dm.criteria() != config.criteria) {
        throw DimensionMismatch("dataset criteria differ from the config criteria");
    }
    std::vector<std::string> warnings;
    UtilityOptions options;
    options.degenerate_substitute = config.degenerate_substitute;
    options.on_warning = [&warnings](const std::string& msg) { warnings.push_back(msg); };
    UtilityMatrix u = to_utility_space(dm, options);
    auto weighted = apply_weights(u, config.weights);

    std::vector<WmsdPoint> wmsd;
    std::vector<WmsdPoint> points;
    wmsd.reserve(weighted.size());
    for (const auto& v : weighted) {
        wmsd.push_back(wmsd_of(v, config.weights));
        points.push_back(config.rounding == RoundingMode::two_decimal_wmsd ? round_wmsd(wmsd.back(), 2)
                                                                           : wmsd.back());
    }
    return {dm.alternatives(), std::move(u), std::move(weighted), std::move(wmsd), std::move(points),
            std::move(warnings)};
}

std::vector<Score> score_alternatives(const Analysis& analysis, const AnySpec& spec, const ProjectConfig& config) {
    const AnySpec forced = with_force(spec, config.force_epsilon);
    validate(forced, config.weights);
    const bool reproduce = config.rounding == RoundingMode::two_decimal_wmsd;
    const auto round_score = [reproduce](double x) {
        return reproduce ? round_half_away(x, kReproductionScoreDecimals) : x;
    };

    std::vector<Score> out;
    out.reserve(analysis.points.size());
    if (const auto* agg = std::get_if<AggregationSpec>(&forced)) {
        const Aggregator g(*agg, config.weights);
        for (const auto& p : analysis.points) out.emplace_back(round_score(g(p)));
        return out;
    }
    const auto& lex = std::get<LexSpec>(forced);
    const double midpoint_tol = std::max(1e-9, config.tolerance);
    for (std::size_t i = 0; i < analysis.points.size(); ++i) {
        LexTuple t = lex_tuple(lex, analysis.points[i], analysis.weighted[i].values(), config.weights, midpoint_tol);
        for (double& c : t.components) c = round_score(c);
        out.emplace_back(std::move(t));
    }
    return out;
}

double ranking_tolerance(const ProjectConfig& config) noexcept {
    if (config.rounding == RoundingMode::two_decimal_wmsd) return std::max(config.tolerance, kReproductionTolerance);
    return config.tolerance;
}

RankedList rank_alternatives(const Analysis& analysis, const AnySpec& spec, const ProjectConfig& config) {
    auto scores = score_alternatives(analysis, spec, config);
    std::vector<std::pair<std::string, Score>> named;
    named.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) named.emplace_back(analysis.ids[i], std::move(scores[i]));
    return rank(named, ranking_tolerance(config));
}

}  // namespace wmsd
