#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wmsd/lexicographic.hpp"

namespace wmsd {

using Score = std::variant<double, LexTuple>;

struct RankedEntry {
    std::string id;
    Score score;
    /// Dense position, starting at 1.
    std::size_t position = 0;
    /// Index of the alternative in the input list.
    std::size_t index = 0;
};

struct RankedList {
    std::vector<RankedEntry> entries;

    std::size_t size() const noexcept { return entries.size(); }
    std::size_t max_position() const noexcept { return entries.empty() ? 0 : entries.back().position; }
    /// Positions in input order.
    std::vector<std::size_t> positions_by_input() const;
};

/// Sorts by descending score (lexicographically for tuples) keeping input order among ties,
/// and assigns dense positions. Scores within `tolerance` of the preceding one share its position.
/// Throws MixedScoreKinds when scalars and tuples are mixed.
RankedList rank(const std::vector<std::pair<std::string, Score>>& scores, double tolerance = 0.0);

}  // namespace wmsd
