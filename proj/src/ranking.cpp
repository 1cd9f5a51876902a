#include "wmsd/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wmsd/error.hpp"

namespace wmsd {

namespace {

std::weak_ordering compare_scores(const Score& a, const Score& b, double tol) {
    if (const auto* x = std::get_if<double>(&a)) {
        const double y = std::get<double>(b);
        if (std::abs(*x - y) <= tol) return std::weak_ordering::equivalent;
        return *x < y ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    return lex_compare(std::get<LexTuple>(a), std::get<LexTuple>(b), tol);
}

void check_score(const Score& s) {
    const auto finite = [](double x) { return std::isfinite(x); };
    if (const auto* x = std::get_if<double>(&s)) {
        if (!finite(*x)) throw InvalidArgument("scores must be finite");
    } else {
        const auto& t = std::get<LexTuple>(s).components;
        if (t.empty() || !std::all_of(t.begin(), t.end(), finite)) {
            throw InvalidArgument("tuple scores must be non-empty and finite");
        }
    }
}

}  // namespace

std::vector<std::size_t> RankedList::positions_by_input() const {
    std::vector<std::size_t> out(entries.size());
    for (const auto& e : entries) out[e.index] = e.position;
    return out;
}

RankedList rank(const std::vector<std::pair<std::string, Score>>& scores, double tolerance) {
    if (!(tolerance >= 0.0)) throw InvalidArgument("ranking tolerance must be non-negative");
    RankedList out;
    if (scores.empty()) return out;

    const std::size_t kind = scores.front().second.index();
    for (const auto& [id, s] : scores) {
        if (s.index() != kind) throw MixedScoreKinds("cannot rank scalar scores together with tuples");
        check_score(s);
    }
    if (kind == 1) {
        const std::size_t len = std::get<LexTuple>(scores.front().second).size();
        for (const auto& [id, s] : scores) {
            if (std::get<LexTuple>(s).size() != len) throw LengthMismatch("tuple scores differ in length");
        }
    }

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return compare_scores(scores[a].second, scores[b].second, tolerance) == std::weak_ordering::greater;
    });

    out.entries.reserve(scores.size());
    std::size_t position = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t i = order[k];
        if (k == 0 || compare_scores(scores[order[k - 1]].second, scores[i].second, tolerance) != 0) ++position;
        out.entries.push_back({scores[i].first, scores[i].second, position, i});
    }
    return out;
}

}  // namespace wmsd
