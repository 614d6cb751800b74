#include <gtest/gtest.h>

#include <thread>

#include "cycles/engine.hpp"
#include "support.hpp"

using namespace cycles;
using cycles::testing::kAllBoundaries;
using cycles::testing::kAllRules;
using cycles::testing::random_line_state;

namespace {

using BK = BoundaryKind;
constexpr auto SA = RuleSet::SourcesAllowed;
constexpr auto STD = RuleSet::Standard;

std::vector<Nimber> nims(std::initializer_list<std::uint32_t> xs) {
    std::vector<Nimber> out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

std::uint32_t seg(BK l, BK r, std::size_t n, RuleSet rules) { return grundy_segment({l, r, n}, rules).value(); }

}  // namespace

TEST(Mex, Examples) {
    EXPECT_EQ(mex({}), Nimber(0));
    EXPECT_EQ(mex(nims({0, 1, 3})), Nimber(2));
    EXPECT_EQ(mex(nims({1, 1, 1, 1})), Nimber(0));
}

TEST(Mex, ExcludesAndIsMinimal) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Nimber> set;
        const int size = std::uniform_int_distribution<int>(0, 12)(rng);
        for (int i = 0; i < size; ++i) set.emplace_back(std::uniform_int_distribution<std::uint32_t>(0, 9)(rng));
        const Nimber m = mex(set);
        EXPECT_EQ(std::count(set.begin(), set.end(), m), 0);
        for (std::uint32_t v = 0; v < m.value(); ++v) EXPECT_NE(std::count(set.begin(), set.end(), Nimber(v)), 0);
    }
}

TEST(Nimber, XorAndOrder) {
    EXPECT_EQ(Nimber(5) ^ Nimber(3), Nimber(6));
    EXPECT_TRUE(Nimber(0).is_zero());
    EXPECT_LT(Nimber(2), Nimber(7));
}

TEST(Segment, StandardClosedForms) {
    for (std::size_t n = 1; n <= 200; ++n) {
        const std::uint32_t odd = n % 2;
        if (n >= 2) {
            EXPECT_EQ(seg(BK::Open, BK::Open, n, STD), odd) << n;
        }
        EXPECT_EQ(seg(BK::In, BK::Open, n, STD), n - 1) << n;
        EXPECT_EQ(seg(BK::Out, BK::Open, n, STD), n - 1) << n;
        EXPECT_EQ(seg(BK::In, BK::Out, n, STD), odd) << n;
        EXPECT_EQ(seg(BK::In, BK::In, n, STD), 1 - odd) << n;
        EXPECT_EQ(seg(BK::Out, BK::Out, n, STD), 1 - odd) << n;
    }
}

TEST(Segment, SingleOpenEdgeHasNoMove) {
    // Either direction sinks one of the two leaves.
    EXPECT_EQ(seg(BK::Open, BK::Open, 1, STD), 0u);
    EXPECT_EQ(seg(BK::Open, BK::Open, 1, SA), 0u);
}

TEST(Segment, VariantExamples) {
    EXPECT_EQ(seg(BK::Open, BK::Open, 16, SA), 5u);
    EXPECT_EQ(seg(BK::Out, BK::Out, 1, SA), 1u);
    EXPECT_EQ(seg(BK::Open, BK::Open, 17, SA), 7u);
}

TEST(Segment, VariantOutOutPrefix) {
    const std::vector<std::uint32_t> expected{1, 0, 1, 0, 3, 2, 0, 2, 3, 0, 1, 0, 1, 0, 5, 7, 0, 1, 0, 1};
    for (std::size_t n = 1; n <= expected.size(); ++n) EXPECT_EQ(seg(BK::Out, BK::Out, n, SA), expected[n - 1]) << n;
}

TEST(Segment, VariantInOutNeverZero) {
    for (std::size_t m = 1; m <= 499; ++m) EXPECT_NE(seg(BK::In, BK::Out, m, SA), 0u) << m;
}

TEST(Segment, MirrorInvariance) {
    for (RuleSet rules : kAllRules)
        for (BK l : kAllBoundaries)
            for (BK r : kAllBoundaries)
                for (std::size_t n = 1; n <= 150; ++n)
                    EXPECT_EQ(grundy_segment({l, r, n}, rules), grundy_segment(mirror(SegmentGame{l, r, n}), rules));
}

TEST(Segment, VerifyMirrorOptionRecomputesBothKeys) {
    GrundyEngine checked(EngineOptions{TableOptions{true}});
    for (RuleSet rules : kAllRules) {
        EXPECT_NO_THROW(checked.table(rules).fill_to(300));
        EXPECT_GE(checked.table(rules).filled_length(), 300u);
        for (BK l : kAllBoundaries)
            for (BK r : kAllBoundaries)
                for (std::size_t n = 1; n <= 300; n += 7)
                    EXPECT_EQ(checked.segment({l, r, n}, rules), grundy_segment({l, r, n}, rules));
    }
}

TEST(Segment, EmptySegmentIsZero) { EXPECT_EQ(seg(BK::In, BK::Out, 0, SA), 0u); }

TEST(Segment, ConcurrentReadersAgree) {
    GrundyEngine shared;
    std::vector<std::vector<Nimber>> results(4);
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < results.size(); ++t) {
        threads.emplace_back([&, t] {
            for (std::size_t n = 1; n <= 400; ++n) results[t].push_back(shared.segment({BK::Open, BK::Open, n}, SA));
        });
    }
    for (auto& th : threads) th.join();
    for (const auto& r : results) EXPECT_EQ(r, results.front());
}

TEST(Line, UnmarkedMatchesSegment) {
    EXPECT_EQ(grundy_line(LineState::unmarked({BK::Open, BK::Open, 6}), SA), Nimber(3));
}

TEST(Line, FullyMarkedIsZero) {
    EXPECT_EQ(grundy_line(LineState({EdgeMark::Forward, EdgeMark::Backward}, BK::Open, BK::Open), SA), Nimber(0));
}

TEST(Line, SplitIntoEqualHalvesXorsToZero) {
    const auto s = LineState::unmarked({BK::Open, BK::Open, 7}).with_mark(3, EdgeMark::Forward);
    EXPECT_EQ(seg(BK::Open, BK::Out, 3, STD), 2u);
    EXPECT_EQ(seg(BK::In, BK::Open, 3, STD), 2u);
    EXPECT_EQ(grundy_line(s, STD), Nimber(0));
}

TEST(Cycle, Values) {
    for (std::size_t n = 2; n <= 300; ++n) {
        EXPECT_EQ(grundy_cycle(n, STD), Nimber(n % 2)) << n;
        EXPECT_EQ(grundy_cycle(n, SA), Nimber(0)) << n;
    }
    EXPECT_EQ(grundy_cycle(5, STD), mex(std::vector<Nimber>{grundy_segment({BK::In, BK::Out, 4}, STD)}));
    EXPECT_THROW(grundy_cycle(1, STD), InputError);
}

TEST(Cycle, MarkedStateIsSumOfRuns) {
    const auto s = CycleState::unmarked(6).with_mark(0, EdgeMark::Forward);
    EXPECT_EQ(default_engine().cycle(s, STD), grundy_segment({BK::In, BK::Out, 5}, STD));
}

TEST(BestMoves, VariantCycleHasNone) {
    for (std::size_t n = 2; n <= 12; ++n) EXPECT_TRUE(best_moves(CycleState::unmarked(n), SA).empty()) << n;
}

TEST(BestMoves, InOutSingleEdgeWinsAtOnce) {
    const auto moves = best_moves(LineState::unmarked({BK::In, BK::Out, 1}), STD);
    ASSERT_EQ(moves.size(), 1u);
    EXPECT_EQ(moves[0], (Move{0, Direction::Forward}));
}

TEST(BestMoves, SuccessorsAreZero) {
    const auto start = LineState::unmarked({BK::Open, BK::Open, 6});
    const auto moves = best_moves(start, SA);
    ASSERT_FALSE(moves.empty());
    for (const Move& m : moves) EXPECT_TRUE(grundy_line(apply_move(start, m, SA), SA).is_zero()) << describe(m);
}

TEST(BestMoves, EvenStandardPathHasNone) {
    EXPECT_TRUE(best_moves(LineState::unmarked({BK::Open, BK::Open, 2}), STD).empty());
}

// Every mark configuration of every boundary pair up to ten edges.
TEST(Soundness, ExhaustiveSmallLines) {
    for (RuleSet rules : kAllRules) {
        for (BK l : kAllBoundaries) {
            for (BK r : kAllBoundaries) {
                for (std::size_t n = 1; n <= 10; ++n) {
                    std::size_t configs = 1;
                    for (std::size_t i = 0; i < n; ++i) configs *= 3;
                    for (std::size_t code = 0; code < configs; ++code) {
                        std::vector<EdgeMark> marks(n);
                        std::size_t c = code;
                        for (auto& m : marks) {
                            m = static_cast<EdgeMark>(c % 3);
                            c /= 3;
                        }
                        const LineState state(marks, l, r);
                        const Nimber v = grundy_line(state, rules);
                        std::vector<bool> reached(v.value(), false);
                        for (const Move& m : legal_moves(state, rules)) {
                            const Nimber u = grundy_line(apply_move(state, m, rules), rules);
                            ASSERT_NE(u, v);
                            if (u < v) reached[u.value()] = true;
                        }
                        ASSERT_TRUE(std::all_of(reached.begin(), reached.end(), [](bool b) { return b; }));
                    }
                }
            }
        }
    }
}

TEST(Soundness, RandomMidGameBestMoves) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        const RuleSet rules = trial % 2 ? SA : STD;
        const auto state = random_line_state(rng, 14, rules);
        const auto best = best_moves(state, rules);
        EXPECT_EQ(best.empty(), grundy_line(state, rules).is_zero());
        for (const Move& m : best) EXPECT_TRUE(grundy_line(apply_move(state, m, rules), rules).is_zero());
    }
}
