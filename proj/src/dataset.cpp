#include "wmsd/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wmsd/error.hpp"

namespace wmsd {

namespace {

struct Cell {
    std::string text;
    std::size_t column;  // 1-based character column of the cell start
};

struct Row {
    std::vector<Cell> cells;
    std::size_t line;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

// Splits one physical line. Quoted cells may contain commas and doubled quotes.
std::vector<Cell> split_line(std::string_view line, std::size_t line_no) {
    std::vector<Cell> cells;
    std::size_t i = 0;
    while (true) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        Cell cell{{}, i + 1};
        if (i < line.size() && line[i] == '"') {
            ++i;
            bool closed = false;
            while (i < line.size()) {
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        cell.text += '"';
                        i += 2;
                        continue;
                    }
                    closed = true;
                    ++i;
                    break;
                }
                cell.text += line[i++];
            }
            if (!closed) throw ParseError(line_no, cell.column, "unterminated quoted field");
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            if (i < line.size() && line[i] != ',') throw ParseError(line_no, i + 1, "unexpected text after quoted field");
        } else {
            const auto end = line.find(',', i);
            const auto raw = line.substr(i, end == std::string_view::npos ? std::string_view::npos : end - i);
            cell.text = std::string(trim(raw));
            i = end == std::string_view::npos ? line.size() : end;
        }
        cells.push_back(std::move(cell));
        if (i >= line.size()) break;
        ++i;  // skip the comma
    }
    return cells;
}

std::vector<Row> split_rows(std::string_view csv) {
    std::vector<Row> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    if (csv.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;
    while (pos <= csv.size()) {
        auto end = csv.find('\n', pos);
        if (end == std::string_view::npos) end = csv.size();
        auto line = csv.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (!trim(line).empty()) rows.push_back({split_line(line, line_no), line_no});
        if (end == csv.size()) break;
        pos = end + 1;
    }
    return rows;
}

double parse_number(const Cell& cell, std::size_t line) {
    const std::string& s = cell.text;
    if (s.empty()) throw ParseError(line, cell.column, "empty numeric cell");
    const char* first = s.data();
    if (*first == '+') ++first;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(line, cell.column, "'" + s + "' is not a number");
    }
    if (!std::isfinite(value)) throw ParseError(line, cell.column, "'" + s + "' is not a finite number");
    return value;
}

}  // namespace

std::vector<std::string> dataset_header(std::string_view csv) {
    const auto rows = split_rows(csv);
    if (rows.empty()) throw ParseError(1, 1, "missing header row");
    if (rows.front().cells.size() < 2) {
        throw ParseError(rows.front().line, 1, "header needs an id column and at least one criterion");
    }
    std::vector<std::string> names;
    for (std::size_t j = 1; j < rows.front().cells.size(); ++j) names.push_back(rows.front().cells[j].text);
    return names;
}

DecisionMatrix parse_dataset(std::string_view csv, const std::vector<CriterionSpec>& criteria) {
    const auto rows = split_rows(csv);
    if (rows.empty()) throw ParseError(1, 1, "missing header row");
    const auto names = dataset_header(csv);
    if (names.size() != criteria.size()) {
        throw HeaderMismatch("dataset has " + std::to_string(names.size()) + " criterion columns, config declares " +
                             std::to_string(criteria.size()));
    }
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] != criteria[j].name) {
            throw HeaderMismatch("column " + std::to_string(j + 2) + " is '" + names[j] + "', config expects '" +
                                 criteria[j].name + "'");
        }
    }
    if (rows.size() < 2) throw ParseError(rows.front().line + 1, 1, "dataset has no data rows");

    const std::size_t n = criteria.size();
    std::vector<std::string> ids;
    std::vector<double> values;
    values.reserve((rows.size() - 1) * n);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const Row& row = rows[r];
        if (row.cells.size() != n + 1) {
            throw ParseError(row.line, row.cells.back().column,
                             "expected " + std::to_string(n + 1) + " cells, found " + std::to_string(row.cells.size()));
        }
        if (row.cells[0].text.empty()) throw ParseError(row.line, 1, "empty alternative id");
        ids.push_back(row.cells[0].text);
        for (std::size_t j = 1; j <= n; ++j) values.push_back(parse_number(row.cells[j], row.line));
    }
    return DecisionMatrix(std::move(ids), criteria, std::move(values));
}

namespace {

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos && trim(s) == s) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

std::string emit_dataset_csv(const DecisionMatrix& dm, const std::string& id_column) {
    std::string out = quote_if_needed(id_column);
    for (const auto& c : dm.criteria()) out += "," + quote_if_needed(c.name);
    out += '\n';
    char buf[64];
    for (std::size_t i = 0; i < dm.rows(); ++i) {
        out += quote_if_needed(dm.alternatives()[i]);
        for (std::size_t j = 0; j < dm.cols(); ++j) {
            const auto res = std::to_chars(buf, buf + sizeof buf, dm.at(i, j));
            out += ',';
            out.append(buf, res.ptr);
        }
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace wmsd
