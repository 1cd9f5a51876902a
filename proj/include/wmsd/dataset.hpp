#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wmsd/core.hpp"

namespace wmsd {

/// Parses comma-separated text whose header is `<id column>,<criterion names...>` and whose
/// first column holds alternative ids. Header names must equal the configured criteria in order.
/// Throws ParseError (1-based line/column) or HeaderMismatch.
DecisionMatrix parse_dataset(std::string_view csv, const std::vector<CriterionSpec>& criteria);

/// Reads the header only and returns the criterion names (all columns after the first).
std::vector<std::string> dataset_header(std::string_view csv);

/// Emits the matrix in the dialect accepted by parse_dataset; numbers use the shortest
/// representation that parses back to the same double.
std::string emit_dataset_csv(const DecisionMatrix& dm, const std::string& id_column = "id");

/// Reads a whole file; throws IoError when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace wmsd
