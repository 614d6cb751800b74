// Built-in game families and the reference nimber tables they are checked
// against.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cycles/engine.hpp"
#include "cycles/periodicity.hpp"

namespace cycles {

/// "standard-line", "variant-line", "standard-cycle", "variant-cycle".
const std::vector<std::string>& builtin_names();

/// Throws InputError listing the valid names for anything else.
FamilySpec builtin(std::string_view name);

struct FixtureSeries {
    std::size_t type = 0;
    std::size_t first_length = 1;
    std::vector<Nimber> values;
    std::string caveat;
};

struct FixtureTable {
    std::string family;
    RuleSet rules = RuleSet::Standard;
    std::string note;
    std::vector<FixtureSeries> series;

    const FixtureSeries* find(std::size_t type) const;
};

/// Reference table shipped for a built-in family.
FixtureTable fixtures(std::string_view name);

struct Divergence {
    std::size_t n = 0;
    Nimber engine;
    Nimber fixture;
};

/// The fixture equals the engine sequence with `skipped` consecutive engine
/// entries removed starting at length `at`.
struct Alignment {
    std::size_t at = 0;
    std::size_t skipped = 0;
};

struct SeriesComparison {
    std::size_t type = 0;
    std::size_t first_length = 1;
    std::size_t compared = 0;
    std::vector<Divergence> divergences;
    std::optional<Alignment> alignment;
    std::string caveat;

    bool exact() const noexcept { return divergences.empty(); }
};

struct ComparisonReport {
    std::string family;
    RuleSet rules = RuleSet::Standard;
    std::vector<SeriesComparison> series;

    bool all_exact() const noexcept;
};

/// Engine recomputation of every fixture series; each differing index is
/// listed with both values.
ComparisonReport compare_fixtures(const FixtureTable& table, GrundyEngine& engine);

}  // namespace cycles
