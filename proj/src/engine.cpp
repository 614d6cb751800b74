#include "cycles/engine.hpp"

#include <cassert>
#include <mutex>
#include <ostream>
#include <string>

namespace cycles {

namespace {

constexpr std::size_t kind_index(BoundaryKind kind) noexcept { return static_cast<std::size_t>(kind); }

// Mirror pairs share a slot: (open,in)~(in,open), (open,out)~(out,open), (in,out)~(out,in).
constexpr std::array<std::array<std::size_t, 3>, 3> kSlotOf = {{
    {0, 1, 2},
    {1, 3, 4},
    {2, 4, 5},
}};

constexpr std::array<std::pair<BoundaryKind, BoundaryKind>, 6> kCanonical = {{
    {BoundaryKind::Open, BoundaryKind::Open},
    {BoundaryKind::Open, BoundaryKind::In},
    {BoundaryKind::Open, BoundaryKind::Out},
    {BoundaryKind::In, BoundaryKind::In},
    {BoundaryKind::In, BoundaryKind::Out},
    {BoundaryKind::Out, BoundaryKind::Out},
}};

}  // namespace

std::ostream& operator<<(std::ostream& os, Nimber n) { return os << n.value(); }

Nimber mex(std::span<const Nimber> values) {
    std::vector<bool> seen(values.size() + 1, false);
    for (Nimber v : values)
        if (v.value() < seen.size()) seen[v.value()] = true;
    std::uint32_t m = 0;
    while (seen[m]) ++m;
    return Nimber(m);
}

// ------------------------------------------------------------- SegmentTable

SegmentTable::SegmentTable(RuleSet rules, TableOptions options) : rules_(rules), options_(options) {
    for (BoundaryKind kind : {BoundaryKind::Open, BoundaryKind::In, BoundaryKind::Out}) {
        for (bool toward : {false, true}) {
            std::vector<Incidence> arrows;
            if (kind == BoundaryKind::In) arrows.push_back(Incidence::Toward);
            if (kind == BoundaryKind::Out) arrows.push_back(Incidence::Away);
            arrows.push_back(toward ? Incidence::Toward : Incidence::Away);
            end_ok_[kind_index(kind)][toward] = !is_forbidden(classify(arrows), rules);
        }
    }
    for (auto& column : values_) column.assign(1, Nimber(0));
}

Nimber SegmentTable::lookup(SegmentGame seg) const noexcept {
    return values_[kSlotOf[kind_index(seg.left)][kind_index(seg.right)]][seg.length];
}

Nimber SegmentTable::evaluate(BoundaryKind left, BoundaryKind right, std::size_t length,
                              std::vector<Nimber>& scratch) const {
    scratch.clear();
    const auto& left_end = end_ok_[kind_index(left)];
    const auto& right_end = end_ok_[kind_index(right)];
    for (std::size_t a = 0; a < length; ++a) {
        const std::size_t b = length - 1 - a;
        // Forward: arrow leaves the left part's last vertex, enters the right part's first.
        if ((a > 0 || left_end[false]) && (b > 0 || right_end[true])) {
            scratch.push_back(lookup({left, BoundaryKind::Out, a}) ^ lookup({BoundaryKind::In, right, b}));
        }
        if ((a > 0 || left_end[true]) && (b > 0 || right_end[false])) {
            scratch.push_back(lookup({left, BoundaryKind::In, a}) ^ lookup({BoundaryKind::Out, right, b}));
        }
    }
    return mex(scratch);
}

void SegmentTable::extend_to(std::size_t length) {
    std::vector<Nimber> scratch;
    for (std::size_t n = values_[0].size(); n <= length; ++n) {
        for (std::size_t slot = 0; slot < kSlots; ++slot) {
            const auto [left, right] = kCanonical[slot];
            const Nimber value = evaluate(left, right, n, scratch);
            assert(value.value() <= n);
            if (options_.verify_mirror && left != right) {
                const Nimber mirrored_value = evaluate(right, left, n, scratch);
                if (mirrored_value != value) {
                    throw std::logic_error("mirror mismatch at " + describe(SegmentGame{left, right, n}) + ": " +
                                           std::to_string(value.value()) + " vs " +
                                           std::to_string(mirrored_value.value()));
                }
            }
            values_[slot].push_back(value);
        }
    }
}

void SegmentTable::fill_to(std::size_t length) {
    {
        std::shared_lock lock(mutex_);
        if (length < values_[0].size()) return;
    }
    std::unique_lock lock(mutex_);
    if (length >= values_[0].size()) extend_to(length);
}

std::size_t SegmentTable::filled_length() const {
    std::shared_lock lock(mutex_);
    return values_[0].size() - 1;
}

Nimber SegmentTable::value(SegmentGame seg) {
    {
        std::shared_lock lock(mutex_);
        if (seg.length < values_[0].size()) return lookup(seg);
    }
    fill_to(seg.length);
    std::shared_lock lock(mutex_);
    return lookup(seg);
}

// ------------------------------------------------------------- GrundyEngine

GrundyEngine::GrundyEngine(EngineOptions options)
    : standard_(RuleSet::Standard, options.table), sources_allowed_(RuleSet::SourcesAllowed, options.table) {}

SegmentTable& GrundyEngine::table(RuleSet rules) noexcept {
    return rules == RuleSet::Standard ? standard_ : sources_allowed_;
}

Nimber GrundyEngine::segment(SegmentGame seg, RuleSet rules) { return table(rules).value(seg); }

Nimber GrundyEngine::line(const LineState& state, RuleSet rules) {
    Nimber total;
    for (const auto& seg : decompose(state)) total ^= segment(seg, rules);
    return total;
}

Nimber GrundyEngine::cycle(std::size_t n, RuleSet rules) {
    if (n < 2) throw InputError("a cycle needs at least 2 edges (got " + std::to_string(n) + ")");
    // Every opening move is legal and leaves the same (in,out) line up to symmetry.
    const Nimber after_first = segment({BoundaryKind::In, BoundaryKind::Out, n - 1}, rules);
    return mex(std::span<const Nimber>(&after_first, 1));
}

Nimber GrundyEngine::cycle(const CycleState& state, RuleSet rules) {
    if (state.unmarked_count() == state.size()) return cycle(state.size(), rules);
    Nimber total;
    for (const auto& seg : decompose(state)) total ^= segment(seg, rules);
    return total;
}

std::vector<Move> GrundyEngine::best_moves(const LineState& state, RuleSet rules) {
    std::vector<Move> winning;
    for (Move m : legal_moves(state, rules))
        if (line(state.with_mark(m.edge, to_mark(m.direction)), rules).is_zero()) winning.push_back(m);
    return winning;
}

std::vector<Move> GrundyEngine::best_moves(const CycleState& state, RuleSet rules) {
    std::vector<Move> winning;
    for (Move m : legal_moves(state, rules))
        if (cycle(state.with_mark(m.edge, to_mark(m.direction)), rules).is_zero()) winning.push_back(m);
    return winning;
}

GrundyEngine& default_engine() {
    static GrundyEngine engine;
    return engine;
}

Nimber grundy_segment(SegmentGame seg, RuleSet rules, GrundyEngine& engine) { return engine.segment(seg, rules); }

Nimber grundy_line(const LineState& state, RuleSet rules, GrundyEngine& engine) { return engine.line(state, rules); }

Nimber grundy_cycle(std::size_t n, RuleSet rules, GrundyEngine& engine) { return engine.cycle(n, rules); }

std::vector<Move> best_moves(const LineState& state, RuleSet rules, GrundyEngine& engine) {
    return engine.best_moves(state, rules);
}

std::vector<Move> best_moves(const CycleState& state, RuleSet rules, GrundyEngine& engine) {
    return engine.best_moves(state, rules);
}

}  // namespace cycles
