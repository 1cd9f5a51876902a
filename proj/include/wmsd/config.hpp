#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wmsd/aggregations.hpp"
#include "wmsd/core.hpp"
#include "wmsd/error.hpp"
#include "wmsd/lexicographic.hpp"

namespace wmsd {

/// A configuration document is well-formed JSON but does not follow the schema.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& message) : Error("SchemaError", message, ErrorCategory::parse) {}
};

using AnySpec = std::variant<AggregationSpec, LexSpec>;

std::string spec_label(const AnySpec& spec);
bool spec_forced(const AnySpec& spec);
AnySpec with_force(AnySpec spec, bool force);
/// Dispatches to the scalar or lexicographic validation.
void validate(const AnySpec& spec, const WeightVector& w);
/// True when the spec only passes validation because it is forced.
bool violates_limit(const AnySpec& spec, const WeightVector& w);

enum class RoundingMode { full_precision, two_decimal_wmsd };

struct ProjectConfig {
    std::vector<CriterionSpec> criteria;
    WeightVector weights{std::vector<double>{1.0}};
    AnySpec aggregation = AggregationSpec::classic(AggregationKind::R);
    bool force_epsilon = false;
    /// Indifference tolerance of the ranking.
    double tolerance = 0.0;
    RoundingMode rounding = RoundingMode::full_precision;
    std::optional<double> degenerate_substitute;
};

/// Parses and validates a config document. Throws ParseError for malformed JSON, SchemaError
/// for schema violations and the engine's validation errors otherwise.
ProjectConfig parse_config(std::string_view json_text);
ProjectConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ProjectConfig& config);

/// Parses JSON text into a document, mapping syntax errors to ParseError with line/column.
nlohmann::json parse_json(std::string_view text);

/// {"family": "classic|elliptic|M|lex", "kind": "I|A|R", "epsilon": r, "theta": t,
///  "lex": "IL|AL|RL|RLpm|XLpm|RL3", "p": -1|1, "force": bool}. Throws InvalidArgument for a bad spec.
AnySpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const AnySpec& spec);

/// Compact command-line form: "R", "R@0.8", "I@inf", "M", "IL", "RLpm:-1", "XLpm:+1@0.8".
AnySpec parse_spec_token(const std::string& token);

}  // namespace wmsd
