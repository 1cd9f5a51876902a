#include "wmsd/config.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace wmsd {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string type_name(const json& j) { return j.type_name(); }

double spec_number(const json& j, const char* key) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "infinity" || s == "Infinity") return kInf;
    }
    throw InvalidArgument(std::string("spec field '") + key + "' must be a number, got " + type_name(j));
}

std::string spec_string(const json& j, const char* key) {
    if (!j.contains(key)) throw InvalidArgument(std::string("spec needs field '") + key + "'");
    if (!j.at(key).is_string()) throw InvalidArgument(std::string("spec field '") + key + "' must be a string");
    return j.at(key).get<std::string>();
}

std::optional<double> spec_epsilon(const json& j) {
    const bool has_eps = j.contains("epsilon") && !j.at("epsilon").is_null();
    const bool has_theta = j.contains("theta") && !j.at("theta").is_null();
    if (has_eps && has_theta) throw InvalidArgument("spec accepts either 'epsilon' or 'theta', not both");
    if (has_eps) return spec_number(j.at("epsilon"), "epsilon");
    if (has_theta) return theta_to_epsilon(spec_number(j.at("theta"), "theta"));
    return std::nullopt;
}

json epsilon_json(double eps) { return std::isinf(eps) ? json("inf") : json(eps); }

const json& require(const json& j, const char* key) {
    if (!j.contains(key)) throw SchemaError(std::string("config is missing '") + key + "'");
    return j.at(key);
}

double schema_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw SchemaError(where + " must be a number, got " + type_name(j));
    return j.get<double>();
}

CriterionSpec criterion_from_json(const json& j, std::size_t index) {
    const std::string where = "criteria[" + std::to_string(index) + "]";
    if (!j.is_object()) throw SchemaError(where + " must be an object");
    CriterionSpec c;
    const json& name = require(j, "name");
    if (!name.is_string()) throw SchemaError(where + ".name must be a string");
    c.name = name.get<std::string>();
    const json& dir = require(j, "direction");
    if (dir == "gain") {
        c.direction = Direction::gain;
    } else if (dir == "cost") {
        c.direction = Direction::cost;
    } else {
        throw SchemaError(where + ".direction must be \"gain\" or \"cost\"");
    }
    if (j.contains("range") && !j.at("range").is_null()) {
        const json& r = j.at("range");
        if (r.is_array() && r.size() == 2) {
            c.range = ValueRange{schema_number(r[0], where + ".range[0]"), schema_number(r[1], where + ".range[1]")};
        } else if (r.is_object()) {
            c.range = ValueRange{schema_number(require(r, "lo"), where + ".range.lo"),
                                 schema_number(require(r, "hi"), where + ".range.hi")};
        } else {
            throw SchemaError(where + ".range must be [lo, hi] or {\"lo\": .., \"hi\": ..}");
        }
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "name" && key != "direction" && key != "range") throw SchemaError(where + " has unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

}  // namespace

std::string spec_label(const AnySpec& spec) {
    return std::visit([](const auto& s) { return s.label(); }, spec);
}

bool spec_forced(const AnySpec& spec) {
    return std::visit([](const auto& s) { return s.force; }, spec);
}

AnySpec with_force(AnySpec spec, bool force) {
    std::visit([force](auto& s) { s.force = s.force || force; }, spec);
    return spec;
}

void validate(const AnySpec& spec, const WeightVector& w) {
    std::visit([&w](const auto& s) { validate(s, w); }, spec);
}

bool violates_limit(const AnySpec& spec, const WeightVector& w) {
    if (const auto* a = std::get_if<AggregationSpec>(&spec)) return violates_limit(*a, w);
    const auto& lex = std::get<LexSpec>(spec);
    if (lex.variant != LexVariant::XLpm) return false;
    return violates_limit(AggregationSpec::elliptic(AggregationKind::I, lex.epsilon, true), w);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string reason = e.what();
        if (const auto pos = reason.find("syntax error"); pos != std::string::npos) reason = reason.substr(pos);
        throw ParseError(line, column, reason);
    }
}

AnySpec spec_from_json(const json& j) {
    if (!j.is_object()) throw InvalidArgument("spec must be a JSON object");
    static const std::set<std::string> known = {"family", "kind", "epsilon", "theta", "lex", "p", "force"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw InvalidArgument("spec has unknown field '" + key + "'");
    }
    bool force = false;
    if (j.contains("force")) {
        if (!j.at("force").is_boolean()) throw InvalidArgument("spec field 'force' must be a boolean");
        force = j.at("force").get<bool>();
    }
    const std::string family = spec_string(j, "family");
    if (family == "M") return AggregationSpec{WmOnlyAggregation{}, force};
    if (family == "classic") {
        if (spec_epsilon(j)) throw InvalidArgument("classic aggregations take no epsilon; use family 'elliptic'");
        return AggregationSpec{ClassicAggregation{parse_kind(spec_string(j, "kind"))}, force};
    }
    if (family == "elliptic") {
        const auto kind = parse_kind(spec_string(j, "kind"));
        const auto eps = spec_epsilon(j);
        if (!eps) throw InvalidArgument("elliptic spec needs 'epsilon' or 'theta'");
        return AggregationSpec::elliptic(kind, *eps, force);
    }
    if (family == "lex") {
        LexSpec lex;
        lex.variant = parse_lex_variant(spec_string(j, "lex"));
        lex.force = force;
        if (j.contains("p")) {
            if (!j.at("p").is_number_integer()) throw InvalidArgument("spec field 'p' must be -1 or 1");
            lex.p = j.at("p").get<int>();
        }
        if (lex.p != 1 && lex.p != -1) throw InvalidArgument("spec field 'p' must be -1 or 1");
        const auto eps = spec_epsilon(j);
        if (eps && lex.variant != LexVariant::XLpm) throw InvalidArgument("only XLpm takes an epsilon");
        if (eps) lex.epsilon = *eps;
        return lex;
    }
    throw InvalidArgument("unknown spec family '" + family + "' (expected classic, elliptic, M or lex)");
}

json spec_to_json(const AnySpec& spec) {
    json j;
    if (const auto* a = std::get_if<AggregationSpec>(&spec)) {
        if (std::holds_alternative<WmOnlyAggregation>(a->variant)) {
            j["family"] = "M";
        } else if (const auto* c = std::get_if<ClassicAggregation>(&a->variant)) {
            j["family"] = "classic";
            j["kind"] = std::string(1, kind_char(c->kind));
        } else {
            const auto& e = std::get<EllipticAggregation>(a->variant);
            j["family"] = "elliptic";
            j["kind"] = std::string(1, kind_char(e.kind));
            j["epsilon"] = epsilon_json(e.epsilon);
        }
        j["force"] = a->force;
        return j;
    }
    const auto& lex = std::get<LexSpec>(spec);
    j["family"] = "lex";
    j["lex"] = lex_variant_name(lex.variant);
    if (lex.variant == LexVariant::RLpm || lex.variant == LexVariant::XLpm) j["p"] = lex.p;
    if (lex.variant == LexVariant::XLpm) j["epsilon"] = epsilon_json(lex.epsilon);
    j["force"] = lex.force;
    return j;
}

AnySpec parse_spec_token(const std::string& token) {
    std::string head = token;
    std::optional<double> eps;
    if (const auto at = token.find('@'); at != std::string::npos) {
        head = token.substr(0, at);
        const std::string e = token.substr(at + 1);
        if (e == "inf" || e == "infinity") {
            eps = kInf;
        } else {
            try {
                std::size_t used = 0;
                eps = std::stod(e, &used);
                if (used != e.size()) throw std::invalid_argument(e);
            } catch (const std::exception&) {
                throw InvalidArgument("bad epsilon in spec token '" + token + "'");
            }
        }
    }
    int p = 1;
    if (const auto colon = head.find(':'); colon != std::string::npos) {
        const std::string ps = head.substr(colon + 1);
        head = head.substr(0, colon);
        if (ps == "+1" || ps == "1") {
            p = 1;
        } else if (ps == "-1") {
            p = -1;
        } else {
            throw InvalidArgument("bad sign parameter in spec token '" + token + "'");
        }
    }
    if (head == "M") {
        if (eps) throw InvalidArgument("M takes no epsilon");
        return AggregationSpec::wm_only();
    }
    if (head == "I" || head == "A" || head == "R") {
        const auto kind = parse_kind(head);
        return eps ? AggregationSpec::elliptic(kind, *eps) : AggregationSpec::classic(kind);
    }
    LexSpec lex;
    lex.variant = parse_lex_variant(head);
    lex.p = p;
    if (eps) {
        if (lex.variant != LexVariant::XLpm) throw InvalidArgument("only XLpm takes an epsilon");
        lex.epsilon = *eps;
    }
    return lex;
}

ProjectConfig config_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("config must be a JSON object");
    static const std::set<std::string> known = {"description", "criteria",  "weights",  "aggregation",
                                                "force_epsilon", "tolerance", "rounding", "degenerate_substitute"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw SchemaError("config has unknown key '" + key + "'");
    }

    ProjectConfig cfg;
    if (j.contains("criteria")) {
        const json& cs = j.at("criteria");
        if (!cs.is_array() || cs.empty()) throw SchemaError("criteria must be a non-empty array");
        for (std::size_t i = 0; i < cs.size(); ++i) cfg.criteria.push_back(criterion_from_json(cs[i], i));
    }
    if (j.contains("weights")) {
        const json& ws = j.at("weights");
        if (!ws.is_array() || ws.empty()) throw SchemaError("weights must be a non-empty array");
        std::vector<double> w;
        for (std::size_t i = 0; i < ws.size(); ++i) w.push_back(schema_number(ws[i], "weights[" + std::to_string(i) + "]"));
        cfg.weights = WeightVector(std::move(w));
        if (!cfg.criteria.empty() && cfg.criteria.size() != cfg.weights.size()) {
            throw DimensionMismatch("config has " + std::to_string(cfg.criteria.size()) + " criteria but " +
                                    std::to_string(cfg.weights.size()) + " weights");
        }
    } else if (!cfg.criteria.empty()) {
        cfg.weights = WeightVector::uniform(cfg.criteria.size());
    } else {
        throw SchemaError("config needs 'criteria' or 'weights'");
    }

    if (j.contains("force_epsilon")) {
        if (!j.at("force_epsilon").is_boolean()) throw SchemaError("force_epsilon must be a boolean");
        cfg.force_epsilon = j.at("force_epsilon").get<bool>();
    }
    if (j.contains("tolerance")) {
        cfg.tolerance = schema_number(j.at("tolerance"), "tolerance");
        if (!(cfg.tolerance >= 0.0)) throw InvalidArgument("tolerance must be non-negative");
    }
    if (j.contains("rounding")) {
        const json& r = j.at("rounding");
        if (r == "full-precision") {
            cfg.rounding = RoundingMode::full_precision;
        } else if (r == "two-decimal-wmsd") {
            cfg.rounding = RoundingMode::two_decimal_wmsd;
        } else {
            throw SchemaError("rounding must be \"full-precision\" or \"two-decimal-wmsd\"");
        }
    }
    if (j.contains("degenerate_substitute")) {
        const json& d = j.at("degenerate_substitute");
        if (d.is_boolean()) {
            if (d.get<bool>()) cfg.degenerate_substitute = 0.5;
        } else if (d.is_number()) {
            const double s = d.get<double>();
            if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("degenerate_substitute must lie in [0, 1]");
            cfg.degenerate_substitute = s;
        } else if (!d.is_null()) {
            throw SchemaError("degenerate_substitute must be a boolean, a number or null");
        }
    }
    if (j.contains("aggregation")) cfg.aggregation = spec_from_json(j.at("aggregation"));
    cfg.aggregation = with_force(cfg.aggregation, cfg.force_epsilon);
    validate(cfg.aggregation, cfg.weights);
    return cfg;
}

ProjectConfig parse_config(std::string_view json_text) { return config_from_json(parse_json(json_text)); }

json config_to_json(const ProjectConfig& config) {
    json j;
    if (!config.criteria.empty()) {
        json cs = json::array();
        for (const auto& c : config.criteria) {
            json cj{{"name", c.name}, {"direction", c.direction == Direction::gain ? "gain" : "cost"}};
            if (c.range) cj["range"] = {c.range->lo, c.range->hi};
            cs.push_back(std::move(cj));
        }
        j["criteria"] = std::move(cs);
    }
    j["weights"] = std::vector<double>(config.weights.values().begin(), config.weights.values().end());
    j["aggregation"] = spec_to_json(config.aggregation);
    j["force_epsilon"] = config.force_epsilon;
    j["tolerance"] = config.tolerance;
    j["rounding"] = config.rounding == RoundingMode::two_decimal_wmsd ? "two-decimal-wmsd" : "full-precision";
    j["degenerate_substitute"] = config.degenerate_substitute ? json(*config.degenerate_substitute) : json(nullptr);
    return j;
}

}  // namespace wmsd
