// Sprague-Grundy evaluation: nimber algebra, the boundary-typed segment
// table, line/cycle sums, optimal-move extraction and an exhaustive
// game-tree oracle that shares none of the decomposition machinery.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include "cycles/core.hpp"

namespace cycles {

class Nimber {
public:
    constexpr Nimber() noexcept = default;
    constexpr explicit Nimber(std::uint32_t value) noexcept : value_(value) {}

    constexpr std::uint32_t value() const noexcept { return value_; }
    constexpr bool is_zero() const noexcept { return value_ == 0; }

    constexpr Nimber& operator^=(Nimber other) noexcept {
        value_ ^= other.value_;
        return *this;
    }
    friend constexpr Nimber operator^(Nimber a, Nimber b) noexcept { return a ^= b; }
    friend constexpr auto operator<=>(Nimber, Nimber) noexcept = default;

private:
    std::uint32_t value_ = 0;
};

std::ostream& operator<<(std::ostream& os, Nimber n);

/// Minimum excludant of a multiset.
Nimber mex(std::span<const Nimber> values);

struct TableOptions {
    /// Also evaluate each mirrored key from its own move set and throw
    /// std::logic_error if it differs from the canonical entry.
    bool verify_mirror = false;
};

/// Memoised nimbers of all boundary-typed segments under one rule set,
/// filled iteratively by increasing length. Keys are stored once per
/// mirror pair. Lookups beyond the filled length extend the table under an
/// exclusive lock; concurrent readers of filled entries share the lock.
class SegmentTable {
public:
    explicit SegmentTable(RuleSet rules, TableOptions options = {});

    SegmentTable(const SegmentTable&) = delete;
    SegmentTable& operator=(const SegmentTable&) = delete;

    RuleSet rules() const noexcept { return rules_; }
    Nimber value(SegmentGame seg);
    void fill_to(std::size_t length);
    std::size_t filled_length() const;

private:
    static constexpr std::size_t kSlots = 6;

    Nimber lookup(SegmentGame seg) const noexcept;
    Nimber evaluate(BoundaryKind left, BoundaryKind right, std::size_t length, std::vector<Nimber>& scratch) const;
    void extend_to(std::size_t length);

    RuleSet rules_;
    TableOptions options_;
    // end_ok_[boundary][arrow is toward the end vertex]
    std::array<std::array<bool, 2>, 3> end_ok_{};
    mutable std::shared_mutex mutex_;
    std::array<std::vector<Nimber>, kSlots> values_;
};

struct EngineOptions {
    TableOptions table;
};

/// Segment tables for both rule sets plus the sums built from them.
class GrundyEngine {
public:
    explicit GrundyEngine(EngineOptions options = {});

    SegmentTable& table(RuleSet rules) noexcept;

    Nimber segment(SegmentGame seg, RuleSet rules);
    Nimber line(const LineState& state, RuleSet rules);
    /// Untouched cycle of n >= 2 edges; n < 2 is an InputError.
    Nimber cycle(std::size_t n, RuleSet rules);
    Nimber cycle(const CycleState& state, RuleSet rules);

    std::vector<Move> best_moves(const LineState& state, RuleSet rules);
    std::vector<Move> best_moves(const CycleState& state, RuleSet rules);

private:
    SegmentTable standard_;
    SegmentTable sources_allowed_;
};

/// Process-wide engine used by the free functions below.
GrundyEngine& default_engine();

Nimber grundy_segment(SegmentGame seg, RuleSet rules, GrundyEngine& engine = default_engine());
Nimber grundy_line(const LineState& state, RuleSet rules, GrundyEngine& engine = default_engine());
Nimber grundy_cycle(std::size_t n, RuleSet rules, GrundyEngine& engine = default_engine());

/// Legal moves whose successor has nimber 0; empty iff the position is a
/// P-position.
std::vector<Move> best_moves(const LineState& state, RuleSet rules, GrundyEngine& engine = default_engine());
std::vector<Move> best_moves(const CycleState& state, RuleSet rules, GrundyEngine& engine = default_engine());

// --------------------------------------------------------------- oracle

class OracleBoundExceeded : public std::runtime_error {
public:
    OracleBoundExceeded(std::size_t unmarked, std::size_t bound);
    std::size_t bound() const noexcept { return bound_; }

private:
    std::size_t bound_;
};

struct OracleOptions {
    std::size_t max_unmarked = 14;
    /// Fold rotations/reflections into the memo key for bare paths and cycles.
    bool use_symmetry = true;
};

/// Exhaustive memoised game-tree search over whole-graph states. No
/// decomposition into sums is used; terminal states have nimber 0.
Nimber grundy_oracle(const GraphState& state, RuleSet rules, OracleOptions options = {});

/// best_moves via the oracle.
std::vector<Move> best_moves(const GraphState& state, RuleSet rules, OracleOptions options = {});

}  // namespace cycles
