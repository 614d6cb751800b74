#include <gtest/gtest.h>

#include <algorithm>

#include "cycles/catalog.hpp"

using namespace cycles;

namespace {

std::vector<std::uint32_t> raw(const std::vector<Nimber>& xs, std::size_t from = 0, std::size_t count = SIZE_MAX) {
    std::vector<std::uint32_t> out;
    for (std::size_t i = from; i < xs.size() && out.size() < count; ++i) out.push_back(xs[i].value());
    return out;
}

bool has_pattern(const FamilySpec& spec, std::size_t type, SplitPair split, Side side) {
    return std::any_of(spec.invalid_patterns.begin(), spec.invalid_patterns.end(), [&](const InvalidPattern& p) {
        return p.type == type && p.split.p == split.p && p.split.q == split.q && p.side == side;
    });
}

}  // namespace

TEST(Builtin, Names) {
    EXPECT_EQ(builtin_names().size(), 4u);
    for (const auto& name : builtin_names()) EXPECT_EQ(builtin(name).id, name);
}

TEST(Builtin, UnknownNameListsValidOnes) {
    try {
        builtin("octal-line");
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("variant-line"), std::string::npos);
    }
}

TEST(Builtin, VariantLinePatterns) {
    const auto spec = builtin("variant-line");
    EXPECT_EQ(spec.period, 17u);
    EXPECT_EQ(spec.window, 43u);
    EXPECT_EQ(spec.invalid_patterns.size(), 8u);
    for (const auto& p : spec.invalid_patterns) EXPECT_EQ(p.fixed_length, 0u);
    EXPECT_TRUE(has_pattern(spec, 2, {5, 3}, Side::Left));
    EXPECT_TRUE(has_pattern(spec, 4, {5, 6}, Side::Left));
    EXPECT_TRUE(has_pattern(spec, 5, {5, 4}, Side::Left));
    EXPECT_TRUE(has_pattern(spec, 5, {4, 5}, Side::Right));
}

TEST(Builtin, StandardCyclePatterns) {
    const auto spec = builtin("standard-cycle");
    EXPECT_EQ(spec.invalid_patterns.size(), 6u);
    EXPECT_EQ(spec.period, 2u);
    EXPECT_EQ(spec.window, 3u);
}

TEST(Builtin, StandardLinePeriod) { EXPECT_EQ(builtin("standard-line").period, 2u); }

TEST(Builtin, VariantCycleIsDerived) {
    const auto spec = builtin("variant-cycle");
    EXPECT_EQ(spec.kind, FamilyKind::CycleOverType);
    ASSERT_TRUE(spec.base);
    EXPECT_EQ(spec.base->id, "variant-line");
    EXPECT_EQ(spec.base_type, 4u);
}

TEST(Fixtures, VariantLinePrefixAndBlock) {
    const auto table = fixtures("variant-line");
    EXPECT_EQ(table.rules, RuleSet::SourcesAllowed);
    const auto* g1 = table.find(1);
    ASSERT_NE(g1, nullptr);
    EXPECT_EQ(g1->values.size(), 87u);
    EXPECT_EQ(raw(g1->values, 0, 18), (std::vector<std::uint32_t>{0, 1, 0, 1, 0, 3, 2, 0, 2, 3, 0, 1, 0, 1, 0, 5, 7, 0}));
    EXPECT_EQ(raw(g1->values, 18, 17),
              (std::vector<std::uint32_t>{1, 0, 1, 0, 3, 2, 4, 5, 3, 0, 1, 0, 1, 0, 5, 7, 8}));
}

TEST(Fixtures, StandardCycleTypeOne) {
    const auto table = fixtures("standard-cycle");
    const auto* s = table.find(1);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(raw(s->values), (std::vector<std::uint32_t>{1, 0, 1, 0, 1, 0, 1}));
}

TEST(Fixtures, EveryBuiltinHasATable) {
    for (const auto& name : builtin_names()) {
        const auto table = fixtures(name);
        EXPECT_EQ(table.family, name);
        EXPECT_EQ(table.rules, builtin(name).rules);
        EXPECT_FALSE(table.series.empty());
    }
}

TEST(Compare, VariantLine) {
    GrundyEngine engine;
    const auto report = compare_fixtures(fixtures("variant-line"), engine);
    ASSERT_EQ(report.series.size(), 6u);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_TRUE(report.series[i].exact()) << "g" << i + 1;
    const auto& g6 = report.series[5];
    EXPECT_FALSE(g6.exact());
    for (const auto& d : g6.divergences) EXPECT_NE(d.engine, d.fixture);
    ASSERT_TRUE(g6.alignment.has_value());
    EXPECT_EQ(g6.alignment->at, 3u);
    EXPECT_EQ(g6.alignment->skipped, 2u);
    EXPECT_FALSE(report.all_exact());
}

TEST(Compare, StandardCycleExact) {
    GrundyEngine engine;
    EXPECT_TRUE(compare_fixtures(fixtures("standard-cycle"), engine).all_exact());
}

TEST(Compare, VariantCycleExact) {
    GrundyEngine engine;
    EXPECT_TRUE(compare_fixtures(fixtures("variant-cycle"), engine).all_exact());
}

TEST(Compare, StandardLineDiffersOnlyAtSingleEdge) {
    GrundyEngine engine;
    const auto report = compare_fixtures(fixtures("standard-line"), engine);
    for (const auto& s : report.series) {
        if (s.type != 1) {
            EXPECT_TRUE(s.exact()) << s.type;
            continue;
        }
        ASSERT_EQ(s.divergences.size(), 1u);
        EXPECT_EQ(s.divergences[0].n, 1u);
        EXPECT_EQ(s.divergences[0].engine, Nimber(0));
        EXPECT_FALSE(s.alignment.has_value());
    }
}

TEST(Compare, RuleMismatchRejected) {
    GrundyEngine engine;
    auto table = fixtures("variant-line");
    table.rules = RuleSet::Standard;
    EXPECT_THROW(compare_fixtures(table, engine), InputError);
}
