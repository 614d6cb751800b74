// Eventual periodicity of nimber sequences for families of split games.
//
// A family is k segment types g_1..g_k. Marking an edge of g_i(n) at offset a
// splits it into g_p(a) and g_q(b), a + b + 1 = n, where (p, q) depends only
// on i and the arrow direction. Some moves are invalid; the family declares
// them as patterns that fix the length of one side. If every pattern fixes a
// side shorter than s - T, the declared patterns describe the engine's move
// sets exactly, and Nim(g_i(n)) = Nim(g_i(n - T)) holds for n in
// [s + 1, 2s + 1], then the same identity holds for every n > s.
//
// The checker cannot quantify over all n. A pattern fixes one side length
// and matches every n; agreement with the engine is checked
// up to a finite bound and the certificate records that bound.

#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cycles/core.hpp"
#include "cycles/engine.hpp"

namespace cycles {

struct BoundaryPair {
    BoundaryKind left = BoundaryKind::Open;
    BoundaryKind right = BoundaryKind::Open;

    friend bool operator==(const BoundaryPair&, const BoundaryPair&) = default;
};

/// 1-based type indices of the two parts produced by a split.
struct SplitPair {
    std::size_t p = 0;
    std::size_t q = 0;

    friend bool operator==(const SplitPair&, const SplitPair&) = default;
};

enum class Side : std::uint8_t { Left, Right };

/// Move (p, q, a, b) on g_type(n) is invalid for every n whenever the named
/// side (a for Left, b for Right) has length fixed_length.
struct InvalidPattern {
    std::size_t type = 0;
    SplitPair split;
    Side side = Side::Left;
    std::size_t fixed_length = 0;

    friend bool operator==(const InvalidPattern&, const InvalidPattern&) = default;
};

enum class FamilyKind : std::uint8_t {
    Segments,       // split family checked directly
    CycleOverType,  // untouched cycle of n edges = mex{ Nim(base type at n - 1) }
};

struct FamilySpec {
    std::string id;
    RuleSet rules = RuleSet::Standard;
    FamilyKind kind = FamilyKind::Segments;
    std::vector<BoundaryPair> types;
    /// splits[i][0] for a Forward mark on g_{i+1}, splits[i][1] for Backward.
    std::vector<std::array<SplitPair, 2>> splits;
    std::vector<InvalidPattern> invalid_patterns;
    std::size_t period = 1;  // T
    std::size_t window = 1;  // s

    /// CycleOverType only.
    std::shared_ptr<const FamilySpec> base;
    std::size_t base_type = 0;

    std::size_t type_count() const noexcept { return types.size(); }
    /// Smallest n at which the family's games exist (2 for cycles).
    std::size_t first_length() const noexcept { return kind == FamilyKind::CycleOverType ? 2 : 1; }
};

/// Engine values of one family type for n in [first, last].
std::vector<Nimber> family_sequence(const FamilySpec& spec, std::size_t type, std::size_t first, std::size_t last,
                                    GrundyEngine& engine);

struct Counterexample {
    std::size_t type = 0;
    std::size_t length = 0;
    Move move;
    bool engine_legal = false;
    bool spec_legal = false;
};

struct Verdict {
    bool pass = false;
    std::string detail;
    std::optional<Counterexample> counterexample;
};

Verdict check_well_formed(const FamilySpec& spec);

/// Every pattern fixes a side shorter than s - T.
Verdict check_condition1(const FamilySpec& spec);

/// For every type and n <= n_max, the engine's legal moves on g_i(n) are
/// exactly the declared splits minus the pattern-matched moves, and each
/// split produces the declared part types. Requires n_max >= 2s + 1.
Verdict check_pattern_faithfulness(const FamilySpec& spec, GrundyEngine& engine, std::size_t n_max);

/// Nim(g_i(n)) == Nim(g_i(n - T)) for all i and n in [s + 1, 2s + 1].
Verdict check_base_window(const FamilySpec& spec, GrundyEngine& engine);

struct CertifiedSequence {
    std::size_t type = 0;
    std::size_t first_length = 1;
    std::vector<Nimber> values;  // n = first_length .. 2s + 1
};

struct PeriodicityCertificate {
    std::string family;
    RuleSet rules = RuleSet::Standard;
    std::size_t period = 0;
    std::size_t window = 0;
    std::size_t checked_up_to = 0;
    std::vector<CertifiedSequence> sequences;
    Verdict well_formed;
    Verdict condition1;
    Verdict condition2;  // short left part
    Verdict condition3;  // short right part
    Verdict base_window;
    std::optional<Verdict> derivation;  // CycleOverType only
    std::string residual_trust;
    bool pass = false;
};

/// Default empirical bound for the faithfulness scan.
constexpr std::size_t default_faithfulness_bound(const FamilySpec& spec) noexcept { return 2 * spec.window + 34; }

PeriodicityCertificate certify(const FamilySpec& spec, GrundyEngine& engine, std::optional<std::size_t> n_max = {});

/// Value of g_type(n) from a passed certificate; no engine needed.
Nimber nimber_at(const PeriodicityCertificate& cert, std::size_t type, std::size_t n);

struct PeriodGuess {
    std::size_t period = 0;
    std::size_t window = 0;
};

/// Heuristic only: smallest T (then smallest s >= T) such that every type's
/// engine sequence satisfies Nim(n) = Nim(n - T) for all n in (s, n_max] with
/// 2s + 1 <= n_max. Proves nothing; feed the guess to certify.
std::optional<PeriodGuess> suggest_period(const FamilySpec& spec, GrundyEngine& engine, std::size_t n_max,
                                          std::size_t max_period = 64);

}  // namespace cycles
