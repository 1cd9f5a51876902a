#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wmsd/aggregations.hpp"
#include "wmsd/config.hpp"
#include "wmsd/dataset.hpp"
#include "wmsd/geometry.hpp"
#include "wmsd/pipeline.hpp"
#include "wmsd/report.hpp"
#include "wmsd/service_http.hpp"
#include "wmsd/svg.hpp"

namespace {

using namespace wmsd;

constexpr int kExitValidation = 2;
constexpr int kExitParse = 3;

struct SpecArgs {
    std::string agg;
    std::optional<double> epsilon;
    std::optional<double> theta;
    int p = 1;
    bool force = false;
};

void add_spec_options(CLI::App* cmd, SpecArgs& a, bool with_lex = true) {
    const std::string kinds = with_lex ? "I|A|R|M|IL|AL|RL|RLpm|XLpm|RL3" : "I|A|R";
    cmd->add_option("--agg", a.agg, "Aggregation: " + kinds);
    auto* eps = cmd->add_option("--epsilon", a.epsilon, "Elliptic parameter (inf for M)");
    auto* theta = cmd->add_option("--theta", a.theta, "Alternative parameter in (0, 1]; epsilon = theta / (1 - theta)");
    eps->excludes(theta);
    if (with_lex) cmd->add_option("--p", a.p, "Sign parameter of RLpm / XLpm")->check(CLI::IsMember({-1, 1}));
    cmd->add_flag("--force-epsilon", a.force, "Accept epsilon at or below the operational limit of I/A");
}

std::optional<double> resolved_epsilon(const SpecArgs& a) {
    if (a.theta) return theta_to_epsilon(*a.theta);
    return a.epsilon;
}

AnySpec build_spec(const SpecArgs& a, const ProjectConfig& config) {
    const auto eps = resolved_epsilon(a);
    AnySpec spec;
    if (a.agg.empty()) {
        if (eps) throw InvalidArgument("--epsilon/--theta need --agg");
        spec = config.aggregation;
    } else if (a.agg == "M") {
        if (eps) throw InvalidArgument("M takes no epsilon");
        spec = AggregationSpec::wm_only();
    } else if (a.agg == "I" || a.agg == "A" || a.agg == "R") {
        const auto kind = parse_kind(a.agg);
        spec = eps ? AggregationSpec::elliptic(kind, *eps) : AggregationSpec::classic(kind);
    } else {
        LexSpec lex;
        lex.variant = parse_lex_variant(a.agg);
        lex.p = a.p;
        if (eps) {
            if (lex.variant != LexVariant::XLpm) throw InvalidArgument("only XLpm takes an epsilon");
            lex.epsilon = *eps;
        }
        spec = lex;
    }
    spec = with_force(spec, a.force || config.force_epsilon);
    validate(spec, config.weights);
    return spec;
}

ProjectConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

void print_warnings(const Analysis& analysis) {
    for (const auto& w : analysis.warnings) std::cerr << "warning: " << w << '\n';
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
}

std::pair<std::size_t, std::size_t> parse_resolution(const std::string& text) {
    const auto x = text.find_first_of("xX");
    try {
        std::size_t used = 0;
        if (x == std::string::npos) {
            const auto n = std::stoul(text, &used);
            if (used == text.size()) return {n, n};
        } else {
            const auto nx = std::stoul(text.substr(0, x), &used);
            if (used == x) {
                const std::string rest = text.substr(x + 1);
                const auto ny = std::stoul(rest, &used);
                if (used == rest.size()) return {nx, ny};
            }
        }
    } catch (const std::exception&) {
    }
    throw InvalidArgument("resolution must look like 256x128");
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidArgument("bad isoline value '" + item + "'");
        }
    }
    if (out.empty()) throw InvalidArgument("--values needs at least one value");
    return out;
}

std::vector<std::string> split_specs(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty()) throw InvalidArgument("--specs needs at least one spec");
    return out;
}

std::function<double(const WmsdPoint&)> field_function(const AnySpec& spec, const WeightVector& w,
                                                       std::size_t component) {
    if (const auto* agg = std::get_if<AggregationSpec>(&spec)) {
        return [g = Aggregator(*agg, w)](const WmsdPoint& p) { return g(p); };
    }
    const auto& lex = std::get<LexSpec>(spec);
    if (lex.variant == LexVariant::RL3) throw InvalidArgument("RL3 has no WMSD field");
    if (component >= lex.dimension()) throw InvalidArgument("--component out of range");
    return [lex, w, component](const WmsdPoint& p) { return lex_tuple(lex, p, {}, w)[component]; };
}

// Colour range: WM-valued outputs span [0, mean(w)], aggregation values [0, 1].
std::pair<double, double> value_range(const AnySpec& spec, const WeightVector& w, std::size_t component) {
    if (const auto* agg = std::get_if<AggregationSpec>(&spec)) {
        if (agg->is_wm_only()) return {0.0, w.mean()};
        return {0.0, 1.0};
    }
    const auto& lex = std::get<LexSpec>(spec);
    if (lex.variant == LexVariant::XLpm) return {0.0, 1.0};
    if (component == 0) return {0.0, w.mean()};
    return {-0.5 * w.mean(), 0.5 * w.mean()};
}

std::vector<LabeledPoint> labeled_points(const std::string& data_path, const ProjectConfig& config) {
    std::vector<LabeledPoint> out;
    if (data_path.empty()) return out;
    const auto analysis = analyze(load_dataset(read_text_file(data_path), config), config);
    print_warnings(analysis);
    for (std::size_t i = 0; i < analysis.ids.size(); ++i) out.push_back({analysis.ids[i], analysis.wmsd[i]});
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Ranking engine built on the weight-scaled mean / standard deviation (WMSD) view of TOPSIS"};
    app.require_subcommand(1);

    std::string data_path;
    std::string config_path;
    std::string format = "table";
    std::string out_path;
    SpecArgs spec_args;

    auto* rank_cmd = app.add_subcommand("rank", "Rank the alternatives of a dataset");
    rank_cmd->add_option("--data", data_path, "Dataset CSV")->required();
    rank_cmd->add_option("--config", config_path, "Project config JSON")->required();
    add_spec_options(rank_cmd, spec_args);
    rank_cmd->add_option("--format", format, "table|csv|jsonl")->check(CLI::IsMember({"table", "csv", "jsonl"}));

    int decimals = 4;
    auto* wmsd_cmd = app.add_subcommand("wmsd", "Print the WM/WSD coordinates of every alternative");
    wmsd_cmd->add_option("--data", data_path, "Dataset CSV")->required();
    wmsd_cmd->add_option("--config", config_path, "Project config JSON")->required();
    wmsd_cmd->add_option("--format", format, "table|csv|jsonl")->check(CLI::IsMember({"table", "csv", "jsonl"}));
    wmsd_cmd->add_option("--decimals", decimals, "Decimals in table/csv output")->check(CLI::Range(0, 12));

    std::string limit_kind;
    auto* limit_cmd = app.add_subcommand("epsilon-limit", "Print the lower operational limit of epsilon");
    limit_cmd->add_option("--config", config_path, "Project config JSON")->required();
    limit_cmd->add_option("--agg", limit_kind, "I|A|R")->required()->check(CLI::IsMember({"I", "A", "R"}));

    std::string values_text;
    auto* iso_cmd = app.add_subcommand("isolines", "Draw isolines of an aggregation over the WMSD-space");
    iso_cmd->add_option("--config", config_path, "Project config JSON")->required();
    add_spec_options(iso_cmd, spec_args, false);
    iso_cmd->add_option("--values", values_text, "Comma-separated isoline values in (0, 1)")->required();
    iso_cmd->add_option("--out", out_path, "Output SVG file")->required();
    iso_cmd->add_option("--data", data_path, "Optional dataset CSV whose alternatives are plotted");

    std::string res_text = "256x128";
    bool unclipped = false;
    std::size_t component = 0;
    auto* field_cmd = app.add_subcommand("field", "Render an aggregation field over the WMSD-space");
    field_cmd->add_option("--config", config_path, "Project config JSON")->required();
    add_spec_options(field_cmd, spec_args);
    field_cmd->add_option("--res", res_text, "Raster resolution NxM");
    field_cmd->add_option("--out", out_path, "Output SVG file")->required();
    field_cmd->add_flag("--unclipped", unclipped, "Also colour cells outside the WMSD-space");
    field_cmd->add_option("--component", component, "Tuple component drawn for lexicographic aggregations");
    field_cmd->add_option("--data", data_path, "Optional dataset CSV whose alternatives are plotted");

    std::size_t property_res = 256;
    auto* prop_cmd = app.add_subcommand("check-property", "Check the maximality/minimality property");
    prop_cmd->add_option("--config", config_path, "Project config JSON")->required();
    add_spec_options(prop_cmd, spec_args, false);
    prop_cmd->add_option("--res", property_res, "Grid resolution (at least 32)");

    std::string specs_text;
    auto* cmp_cmd = app.add_subcommand("compare", "Rank under several aggregations side by side");
    cmp_cmd->add_option("--data", data_path, "Dataset CSV")->required();
    cmp_cmd->add_option("--config", config_path, "Project config JSON")->required();
    cmp_cmd->add_option("--specs", specs_text, "Comma-separated specs, e.g. R,R@0.8,R@2.3,M")->required();
    cmp_cmd->add_option("--format", format, "table|csv|jsonl")->check(CLI::IsMember({"table", "csv", "jsonl"}));
    cmp_cmd->add_flag("--force-epsilon", spec_args.force, "Accept epsilon at or below the operational limit of I/A");

    int port = 8080;
    std::string host = "127.0.0.1";
    std::size_t capacity = kDefaultSessionCapacity;
    auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP service");
    serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--host", host, "Bind address");
    serve_cmd->add_option("--sessions", capacity, "Maximum number of sessions kept")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    if (*rank_cmd) {
        const auto config = load_config(config_path);
        const auto analysis = analyze(load_dataset(read_text_file(data_path), config), config);
        print_warnings(analysis);
        const auto spec = build_spec(spec_args, config);
        if (violates_limit(spec, config.weights)) {
            std::cerr << "warning: forced epsilon violates the maximality/minimality property\n";
        }
        const auto ranked = rank_alternatives(analysis, spec, config);
        ReportOptions options;
        if (const auto* lex = std::get_if<LexSpec>(&spec); lex && lex->variant == LexVariant::XLpm) {
            options.tuple_decimals = 3;
        }
        std::cout << emit_ranking_report(ranked, analysis.points, parse_report_format(format), options);
        return 0;
    }
    if (*wmsd_cmd) {
        const auto config = load_config(config_path);
        const auto analysis = analyze(load_dataset(read_text_file(data_path), config), config);
        print_warnings(analysis);
        std::cout << emit_wmsd_report(analysis.ids, analysis.wmsd, parse_report_format(format), decimals);
        return 0;
    }
    if (*limit_cmd) {
        const auto config = load_config(config_path);
        const auto limit = epsilon_limit(parse_kind(limit_kind), config.weights);
        if (limit) {
            std::printf("%.6f\n", *limit);
        } else {
            std::printf("unbounded\n");
        }
        return 0;
    }
    if (*iso_cmd) {
        const auto config = load_config(config_path);
        if (spec_args.agg.empty()) throw InvalidArgument("isolines need --agg I|A|R");
        const auto kind = parse_kind(spec_args.agg);
        const double eps = resolved_epsilon(spec_args).value_or(1.0);
        const AnySpec spec = build_spec(spec_args, config);
        const SpaceModel model(config.weights);
        const Window window = default_window(config.weights);
        const auto field = scalar_field(field_function(spec, config.weights, 0), model, window, 256, 128);
        std::vector<Polyline> lines;
        for (double v : parse_values(values_text)) lines.push_back(isoline(kind, eps, v, config.weights));
        SvgOptions options;
        options.palette = default_palette(spec);
        options.title = spec_label(spec) + " isolines";
        write_output(out_path, emit_svg(field, model.boundary(), labeled_points(data_path, config), lines, options));
        return 0;
    }
    if (*field_cmd) {
        const auto config = load_config(config_path);
        const AnySpec spec = build_spec(spec_args, config);
        const auto [nx, ny] = parse_resolution(res_text);
        const SpaceModel model(config.weights);
        const auto field =
            scalar_field(field_function(spec, config.weights, component), model, default_window(config.weights), nx, ny);
        SvgOptions options;
        options.palette = default_palette(spec);
        std::tie(options.value_lo, options.value_hi) = value_range(spec, config.weights, component);
        options.clip = !unclipped;
        options.title = spec_label(spec);
        write_output(out_path, emit_svg(field, model.boundary(), labeled_points(data_path, config), {}, options));
        return 0;
    }
    if (*prop_cmd) {
        const auto config = load_config(config_path);
        if (spec_args.agg.empty()) throw InvalidArgument("check-property needs --agg I|A|R");
        const auto kind = parse_kind(spec_args.agg);
        const auto eps = resolved_epsilon(spec_args);
        const auto spec = eps ? AggregationSpec::elliptic(kind, *eps, true) : AggregationSpec::classic(kind);
        const auto report = check_minmax_property(spec, config.weights, property_res);
        std::printf("%s: %s\n", spec.label().c_str(), report.satisfied ? "satisfied" : "violated");
        std::printf("min %.6f at", report.min);
        for (std::size_t i = 0; i < std::min<std::size_t>(report.argmin.size(), 4); ++i) {
            std::printf(" (%.4f, %.4f)", report.argmin[i].wm, report.argmin[i].wsd);
        }
        std::printf("\nmax %.6f at", report.max);
        for (std::size_t i = 0; i < std::min<std::size_t>(report.argmax.size(), 4); ++i) {
            std::printf(" (%.4f, %.4f)", report.argmax[i].wm, report.argmax[i].wsd);
        }
        std::printf("\nevaluated %zu points\n", report.evaluated);
        return 0;
    }
    if (*cmp_cmd) {
        const auto config = load_config(config_path);
        const auto analysis = analyze(load_dataset(read_text_file(data_path), config), config);
        print_warnings(analysis);
        std::vector<ComparisonColumn> columns;
        for (const auto& token : split_specs(specs_text)) {
            AnySpec spec = with_force(parse_spec_token(token), spec_args.force || config.force_epsilon);
            validate(spec, config.weights);
            columns.push_back({token, rank_alternatives(analysis, spec, config)});
        }
        std::cout << emit_comparison(analysis.ids, columns, parse_report_format(format));
        return 0;
    }
    if (*serve_cmd) {
        ServiceCore core(capacity);
        return run_server(host, port, core);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const wmsd::Error& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
        return e.category() == wmsd::ErrorCategory::parse ? kExitParse : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
