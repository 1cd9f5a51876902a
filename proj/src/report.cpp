#include "wmsd/report.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "wmsd/error.hpp"

namespace wmsd {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string format_score(const Score& s, const ReportOptions& options) {
    if (const auto* x = std::get_if<double>(&s)) return format_fixed(*x, options.score_decimals);
    return format_tuple(std::get<LexTuple>(s), options.tuple_decimals);
}

nlohmann::json score_json(const Score& s) {
    if (const auto* x = std::get_if<double>(&s)) return *x;
    return std::get<LexTuple>(s).components;
}

// Left-aligned first column, right-aligned others.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) line += "  ";
            const std::string pad(width[c] - row[c].size(), ' ');
            line += c == 0 ? row[c] + pad : pad + row[c];
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + '\n';
    }
    return out;
}

std::string join_csv(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c > 0) line += ',';
        line += csv_escape(cells[c]);
    }
    return line + '\n';
}

}  // namespace

ReportFormat parse_report_format(const std::string& text) {
    if (text == "table") return ReportFormat::table;
    if (text == "csv") return ReportFormat::csv;
    if (text == "jsonl") return ReportFormat::jsonl;
    throw InvalidArgument("unknown report format '" + text + "' (expected table, csv or jsonl)");
}

std::string format_fixed(double x, int decimals) {
    double r = round_half_away(x, decimals);
    if (r == 0.0) r = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, r);
    return buf;
}

std::string format_tuple(const LexTuple& t, int decimals) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0) out += ", ";
        std::string s = format_fixed(t[i], decimals);
        if (i > 0 && s[0] != '-' && round_half_away(t[i], decimals) != 0.0) s = "+" + s;
        out += s;
    }
    return out + ")";
}

std::string emit_ranking_report(const RankedList& ranked, const std::vector<WmsdPoint>& wmsd, ReportFormat format,
                                const ReportOptions& options) {
    for (const auto& e : ranked.entries) {
        if (e.index >= wmsd.size()) throw DimensionMismatch("ranking and WMSD lists are not aligned");
    }
    if (format == ReportFormat::jsonl) {
        std::string out;
        for (const auto& e : ranked.entries) {
            const auto& p = wmsd[e.index];
            nlohmann::json j{{"id", e.id}, {"wm", p.wm}, {"wsd", p.wsd}, {"score", score_json(e.score)},
                             {"position", e.position}};
            out += j.dump() + '\n';
        }
        return out;
    }
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"id", "WM", "WSD", "score", "position"});
    for (const auto& e : ranked.entries) {
        const auto& p = wmsd[e.index];
        rows.push_back({e.id, format_fixed(p.wm, options.wmsd_decimals), format_fixed(p.wsd, options.wmsd_decimals),
                        format_score(e.score, options), std::to_string(e.position)});
    }
    if (format == ReportFormat::table) return render_table(rows);
    std::string out;
    for (const auto& row : rows) out += join_csv(row);
    return out;
}

std::string emit_wmsd_report(const std::vector<std::string>& ids, const std::vector<WmsdPoint>& wmsd,
                             ReportFormat format, int decimals) {
    if (ids.size() != wmsd.size()) throw DimensionMismatch("ids and WMSD lists differ in length");
    if (format == ReportFormat::jsonl) {
        std::string out;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            out += nlohmann::json{{"id", ids[i]}, {"wm", wmsd[i].wm}, {"wsd", wmsd[i].wsd}}.dump() + '\n';
        }
        return out;
    }
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"id", "WM", "WSD"});
    for (std::size_t i = 0; i < ids.size(); ++i) {
        rows.push_back({ids[i], format_fixed(wmsd[i].wm, decimals), format_fixed(wmsd[i].wsd, decimals)});
    }
    if (format == ReportFormat::table) return render_table(rows);
    std::string out;
    for (const auto& row : rows) out += join_csv(row);
    return out;
}

std::string emit_comparison(const std::vector<std::string>& ids, const std::vector<ComparisonColumn>& columns,
                            ReportFormat format, const ReportOptions& options) {
    std::vector<std::vector<const RankedEntry*>> by_input(columns.size(),
                                                          std::vector<const RankedEntry*>(ids.size(), nullptr));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].ranked.size() != ids.size()) throw DimensionMismatch("comparison column size differs from ids");
        for (const auto& e : columns[c].ranked.entries) by_input[c][e.index] = &e;
    }
    if (format == ReportFormat::jsonl) {
        std::string out;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            nlohmann::json j{{"id", ids[i]}};
            for (std::size_t c = 0; c < columns.size(); ++c) {
                j[columns[c].label] = {{"score", score_json(by_input[c][i]->score)},
                                       {"position", by_input[c][i]->position}};
            }
            out += j.dump() + '\n';
        }
        return out;
    }
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"id"};
    for (const auto& col : columns) {
        header.push_back(col.label);
        if (format == ReportFormat::csv) header.push_back(col.label + " position");
    }
    rows.push_back(std::move(header));
    for (std::size_t i = 0; i < ids.size(); ++i) {
        std::vector<std::string> row{ids[i]};
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const auto* e = by_input[c][i];
            const std::string score = format_score(e->score, options);
            if (format == ReportFormat::csv) {
                row.push_back(score);
                row.push_back(std::to_string(e->position));
            } else {
                row.push_back(score + "(" + std::to_string(e->position) + ")");
            }
        }
        rows.push_back(std::move(row));
    }
    if (format == ReportFormat::table) return render_table(rows);
    std::string out;
    for (const auto& row : rows) out += join_csv(row);
    return out;
}

}  // namespace wmsd
