#pragma once

#include <array>
#include <random>

#include "cycles/core.hpp"

namespace cycles::testing {

inline constexpr std::array<BoundaryKind, 3> kAllBoundaries{BoundaryKind::Open, BoundaryKind::In, BoundaryKind::Out};
inline constexpr std::array<RuleSet, 2> kAllRules{RuleSet::Standard, RuleSet::SourcesAllowed};

// A position reached by random legal play from an unmarked segment.
inline LineState random_line_state(std::mt19937& rng, std::size_t max_edges, RuleSet rules) {
    std::uniform_int_distribution<std::size_t> length(1, max_edges);
    std::uniform_int_distribution<std::size_t> kind(0, 2);
    LineState state = LineState::unmarked({kAllBoundaries[kind(rng)], kAllBoundaries[kind(rng)], length(rng)});
    const std::size_t plies = std::uniform_int_distribution<std::size_t>(0, state.size())(rng);
    for (std::size_t i = 0; i < plies; ++i) {
        const auto moves = legal_moves(state, rules);
        if (moves.empty()) break;
        state = apply_move(state, moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)], rules);
    }
    return state;
}

}  // namespace cycles::testing
