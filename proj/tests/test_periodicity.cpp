#include <gtest/gtest.h>

#include <algorithm>

#include "cycles/catalog.hpp"
#include "cycles/dataio.hpp"
#include "cycles/periodicity.hpp"

using namespace cycles;

namespace {

FamilySpec without_pattern(FamilySpec spec, std::size_t type, SplitPair split, Side side) {
    auto& p = spec.invalid_patterns;
    p.erase(std::remove_if(p.begin(), p.end(),
                           [&](const InvalidPattern& x) {
                               return x.type == type && x.split.p == split.p && x.split.q == split.q && x.side == side;
                           }),
            p.end());
    return spec;
}

}  // namespace

TEST(Condition1, VariantLinePasses) { EXPECT_TRUE(check_condition1(builtin("variant-line")).pass); }

TEST(Condition1, PatternAtBoundFails) {
    auto spec = builtin("variant-line");
    spec.invalid_patterns[0].fixed_length = spec.window - spec.period;
    EXPECT_FALSE(check_condition1(spec).pass);
    spec.invalid_patterns[0].fixed_length = spec.window - spec.period - 1;
    EXPECT_TRUE(check_condition1(spec).pass);
}

TEST(Condition1, NoPatternsIsVacuous) {
    auto spec = builtin("variant-line");
    spec.invalid_patterns.clear();
    EXPECT_TRUE(check_condition1(spec).pass);
}

TEST(Faithfulness, StandardCycleSmallBound) {
    GrundyEngine engine;
    EXPECT_TRUE(check_pattern_faithfulness(builtin("standard-cycle"), engine, 8).pass);
}

TEST(Faithfulness, OmittedPatternIsCaught) {
    GrundyEngine engine;
    const auto spec = without_pattern(builtin("variant-line"), 2, {5, 3}, Side::Left);
    const auto v = check_pattern_faithfulness(spec, engine, 87);
    ASSERT_FALSE(v.pass);
    ASSERT_TRUE(v.counterexample.has_value());
    EXPECT_EQ(v.counterexample->type, 2u);
    EXPECT_EQ(v.counterexample->length, 1u);
    EXPECT_EQ(v.counterexample->move, (Move{0, Direction::Backward}));
    EXPECT_FALSE(v.counterexample->engine_legal);
    EXPECT_TRUE(v.counterexample->spec_legal);
}

TEST(Faithfulness, WrongSplitTableFails) {
    GrundyEngine engine;
    auto spec = builtin("standard-line");
    std::swap(spec.splits[0][0], spec.splits[0][1]);
    EXPECT_FALSE(check_pattern_faithfulness(spec, engine, 40).pass);
}

TEST(Faithfulness, SingleOpenTypeCannotCloseTheTable) {
    GrundyEngine engine;
    FamilySpec spec;
    spec.id = "no-moves";
    spec.rules = RuleSet::SourcesAllowed;
    spec.types = {{BoundaryKind::Open, BoundaryKind::Open}};
    spec.splits = {{{{1, 1}, {1, 1}}}};
    spec.period = 1;
    spec.window = 1;
    EXPECT_FALSE(check_pattern_faithfulness(spec, engine, 10).pass);
}

TEST(Faithfulness, BoundBelowWindowRejected) {
    GrundyEngine engine;
    EXPECT_THROW(check_pattern_faithfulness(builtin("variant-line"), engine, 86), InputError);
}

TEST(Faithfulness, MonotoneInBound) {
    GrundyEngine engine;
    const auto spec = builtin("variant-line");
    for (std::size_t n_max = 87; n_max <= 121; n_max += 17) EXPECT_TRUE(check_pattern_faithfulness(spec, engine, n_max).pass);
}

TEST(Window, BuiltinsPass) {
    GrundyEngine engine;
    EXPECT_TRUE(check_base_window(builtin("variant-line"), engine).pass);
    EXPECT_TRUE(check_base_window(builtin("standard-cycle"), engine).pass);
}

TEST(Window, WrongPeriodFails) {
    GrundyEngine engine;
    auto spec = builtin("variant-line");
    spec.period = 16;
    EXPECT_FALSE(check_base_window(spec, engine).pass);
}

TEST(WellFormed, RejectsBadSpecs) {
    auto spec = builtin("variant-line");
    spec.period = 0;
    EXPECT_FALSE(check_well_formed(spec).pass);
    spec = builtin("variant-line");
    spec.splits[0][0] = {7, 1};
    EXPECT_FALSE(check_well_formed(spec).pass);
    spec = builtin("variant-line");
    spec.window = spec.period - 1;
    EXPECT_FALSE(check_well_formed(spec).pass);
}

TEST(Certify, IllFormedIsNotEvaluated) {
    GrundyEngine engine;
    auto spec = builtin("standard-cycle");
    spec.period = 0;
    const auto cert = certify(spec, engine);
    EXPECT_FALSE(cert.pass);
    EXPECT_FALSE(cert.condition1.pass);
}

TEST(Certify, PassingBuiltins) {
    GrundyEngine engine;
    for (const char* name : {"variant-line", "standard-cycle", "variant-cycle"}) {
        const auto cert = certify(builtin(name), engine);
        EXPECT_TRUE(cert.pass) << name << ": " << render_certificate(cert);
    }
}

TEST(Certify, StandardLineWindowTooShort) {
    // g2 and g3 grow as n - 1 and s - T = 0 leaves no room for length-0 patterns.
    GrundyEngine engine;
    const auto cert = certify(builtin("standard-line"), engine);
    EXPECT_FALSE(cert.pass);
    EXPECT_FALSE(cert.condition1.pass);
    EXPECT_FALSE(cert.base_window.pass);
}

TEST(Certify, FailingConditionFailsCertificate) {
    GrundyEngine engine;
    auto spec = builtin("variant-line");
    spec.invalid_patterns[0].fixed_length = 30;
    EXPECT_FALSE(certify(spec, engine).pass);
}

TEST(Certify, Deterministic) {
    GrundyEngine a;
    GrundyEngine b;
    for (const auto& name : builtin_names())
        EXPECT_EQ(render_certificate(certify(builtin(name), a)), render_certificate(certify(builtin(name), b)));
}

TEST(NimberAt, VariantLineTail) {
    GrundyEngine engine;
    const auto cert = certify(builtin("variant-line"), engine);
    ASSERT_TRUE(cert.pass);
    EXPECT_EQ(nimber_at(cert, 1, 19), Nimber(1));
    EXPECT_EQ(nimber_at(cert, 1, 35), Nimber(8));
    EXPECT_EQ(nimber_at(cert, 1, 19 + 17 * 1000000), Nimber(1));
}

TEST(NimberAt, AgreesWithEngineAndRepeats) {
    GrundyEngine engine;
    for (const char* name : {"variant-line", "standard-cycle", "variant-cycle"}) {
        const auto spec = builtin(name);
        const auto cert = certify(spec, engine);
        ASSERT_TRUE(cert.pass) << name;
        const std::size_t first = spec.first_length();
        for (std::size_t i = 1; i <= spec.type_count(); ++i) {
            const auto direct = family_sequence(spec, i, first, 4 * spec.window, engine);
            for (std::size_t n = first; n <= 4 * spec.window; ++n)
                EXPECT_EQ(nimber_at(cert, i, n), direct[n - first]) << name << " g" << i << "(" << n << ")";
            for (std::size_t n = spec.window + 1; n <= 6 * spec.window; ++n)
                EXPECT_EQ(nimber_at(cert, i, n), nimber_at(cert, i, n + spec.period));
        }
    }
}

TEST(NimberAt, Errors) {
    GrundyEngine engine;
    const auto cert = certify(builtin("variant-line"), engine);
    EXPECT_THROW(nimber_at(cert, 0, 5), InputError);
    EXPECT_THROW(nimber_at(cert, 7, 5), InputError);
    EXPECT_THROW(nimber_at(cert, 1, 0), InputError);
    EXPECT_THROW(nimber_at(certify(builtin("standard-line"), engine), 1, 5), InputError);
}

TEST(NimberAt, VariantCycleAlwaysZero) {
    GrundyEngine engine;
    const auto cert = certify(builtin("variant-cycle"), engine);
    ASSERT_TRUE(cert.pass);
    for (std::size_t n = 2; n <= 2000; ++n) EXPECT_TRUE(nimber_at(cert, 1, n).is_zero()) << n;
}

TEST(SuggestPeriod, VariantLine) {
    GrundyEngine engine;
    const auto guess = suggest_period(builtin("variant-line"), engine, 300);
    ASSERT_TRUE(guess.has_value());
    EXPECT_EQ(guess->period, 17u);
    EXPECT_EQ(guess->window, 43u);
}
