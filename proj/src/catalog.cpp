#include "cycles/catalog.hpp"

#include <algorithm>
#include <memory>

#include "cycles/dataio.hpp"

namespace cycles {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_fixture_texts();
}

namespace {

using BK = BoundaryKind;

constexpr std::size_t kMaxAlignmentGap = 4;

// Line segment types, numbered as in the reference tables:
// 1 open/open, 2 in/open, 3 out/open, 4 in/out, 5 in/in, 6 out/out.
std::vector<BoundaryPair> line_types() {
    return {{BK::Open, BK::Open}, {BK::In, BK::Open}, {BK::Out, BK::Open},
            {BK::In, BK::Out},    {BK::In, BK::In},   {BK::Out, BK::Out}};
}

// {forward, backward} splits for each line type.
std::vector<std::array<SplitPair, 2>> line_splits() {
    return {{{{3, 2}, {2, 3}}}, {{{4, 2}, {5, 3}}}, {{{6, 2}, {4, 3}}},
            {{{4, 4}, {5, 6}}}, {{{4, 5}, {5, 4}}}, {{{6, 4}, {4, 6}}}};
}

InvalidPattern left_end(std::size_t type, SplitPair split) { return {type, split, Side::Left, 0}; }
InvalidPattern right_end(std::size_t type, SplitPair split) { return {type, split, Side::Right, 0}; }

FamilySpec variant_line() {
    FamilySpec spec;
    spec.id = "variant-line";
    spec.rules = RuleSet::SourcesAllowed;
    spec.types = line_types();
    spec.splits = line_splits();
    spec.invalid_patterns = {
        // Arrow into an In end, or into an open leaf, makes a sink.
        left_end(2, {5, 3}),
        left_end(4, {5, 6}),
        left_end(5, {5, 4}),
        right_end(5, {4, 5}),
        left_end(1, {2, 3}),
        right_end(1, {3, 2}),
        right_end(2, {4, 2}),
        right_end(3, {6, 2}),
    };
    spec.period = 17;
    spec.window = 43;
    return spec;
}

FamilySpec standard_line() {
    FamilySpec spec;
    spec.id = "standard-line";
    spec.rules = RuleSet::Standard;
    spec.types = line_types();
    spec.splits = line_splits();
    spec.invalid_patterns = {
        left_end(1, {2, 3}),  left_end(1, {3, 2}),  right_end(1, {2, 3}), right_end(1, {3, 2}),
        left_end(2, {5, 3}),  right_end(2, {4, 2}), right_end(2, {5, 3}),
        left_end(3, {6, 2}),  right_end(3, {6, 2}), right_end(3, {4, 3}),
        left_end(4, {5, 6}),  right_end(4, {5, 6}),
        left_end(5, {5, 4}),  right_end(5, {4, 5}),
        left_end(6, {6, 4}),  right_end(6, {4, 6}),
    };
    spec.period = 2;
    spec.window = 2;
    return spec;
}

FamilySpec standard_cycle() {
    FamilySpec spec;
    spec.id = "standard-cycle";
    spec.rules = RuleSet::Standard;
    // 1 in/out, 2 in/in, 3 out/out: what remains of a cycle after its first move.
    spec.types = {{BK::In, BK::Out}, {BK::In, BK::In}, {BK::Out, BK::Out}};
    spec.splits = {{{{1, 1}, {2, 3}}}, {{{1, 2}, {2, 1}}}, {{{3, 1}, {1, 3}}}};
    spec.invalid_patterns = {
        left_end(1, {2, 3}), right_end(1, {2, 3}),
        left_end(2, {2, 1}), right_end(2, {1, 2}),
        left_end(3, {3, 1}), right_end(3, {1, 3}),
    };
    spec.period = 2;
    spec.window = 3;
    return spec;
}

FamilySpec variant_cycle() {
    FamilySpec spec;
    spec.id = "variant-cycle";
    spec.rules = RuleSet::SourcesAllowed;
    spec.kind = FamilyKind::CycleOverType;
    spec.types = {{BK::In, BK::Out}};
    spec.base = std::make_shared<const FamilySpec>(variant_line());
    spec.base_type = 4;
    spec.period = 17;
    spec.window = 44;
    return spec;
}

std::string valid_names() {
    std::string out;
    for (const auto& name : builtin_names()) out += (out.empty() ? "" : ", ") + name;
    return out;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {"standard-line", "variant-line", "standard-cycle",
                                                   "variant-cycle"};
    return names;
}

FamilySpec builtin(std::string_view name) {
    if (name == "standard-line") return standard_line();
    if (name == "variant-line") return variant_line();
    if (name == "standard-cycle") return standard_cycle();
    if (name == "variant-cycle") return variant_cycle();
    throw InputError("unknown family '" + std::string(name) + "' (valid: " + valid_names() + ")");
}

const FixtureSeries* FixtureTable::find(std::size_t type) const {
    auto it = std::find_if(series.begin(), series.end(), [&](const FixtureSeries& s) { return s.type == type; });
    return it == series.end() ? nullptr : &*it;
}

FixtureTable fixtures(std::string_view name) {
    for (const auto& [file, text] : detail::embedded_fixture_texts()) {
        if (file == name) return parse_fixture_table(text);
    }
    throw InputError("no fixture table for '" + std::string(name) + "' (valid: " + valid_names() + ")");
}

bool ComparisonReport::all_exact() const noexcept {
    return std::all_of(series.begin(), series.end(), [](const SeriesComparison& s) { return s.exact(); });
}

ComparisonReport compare_fixtures(const FixtureTable& table, GrundyEngine& engine) {
    const FamilySpec spec = builtin(table.family);
    if (spec.rules != table.rules)
        throw InputError("fixture rule set " + std::string(to_string(table.rules)) + " does not match family " +
                         spec.id);
    ComparisonReport report{table.family, table.rules, {}};
    for (const auto& fixture : table.series) {
        SeriesComparison cmp;
        cmp.type = fixture.type;
        cmp.first_length = fixture.first_length;
        cmp.compared = fixture.values.size();
        cmp.caveat = fixture.caveat;
        const std::size_t count = fixture.values.size();
        const auto computed = family_sequence(spec, fixture.type, fixture.first_length,
                                              fixture.first_length + count + kMaxAlignmentGap - 1, engine);
        for (std::size_t j = 0; j < count; ++j) {
            if (computed[j] != fixture.values[j])
                cmp.divergences.push_back({fixture.first_length + j, computed[j], fixture.values[j]});
        }
        if (cmp.divergences.size() > 1) {
            const std::size_t p = cmp.divergences.front().n - fixture.first_length;
            for (std::size_t gap = 1; gap <= kMaxAlignmentGap && !cmp.alignment; ++gap) {
                bool fits = true;
                for (std::size_t j = p; j < count && fits; ++j) fits = fixture.values[j] == computed[j + gap];
                if (fits) cmp.alignment = Alignment{fixture.first_length + p, gap};
            }
        }
        report.series.push_back(std::move(cmp));
    }
    return report;
}

}  // namespace cycles
