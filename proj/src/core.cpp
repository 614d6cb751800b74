#include "cycles/core.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace cycles {

namespace {

constexpr EdgeMark flipped(EdgeMark mark) noexcept {
    switch (mark) {
    case EdgeMark::Forward: return EdgeMark::Backward;
    case EdgeMark::Backward: return EdgeMark::Forward;
    default: return EdgeMark::Unmarked;
    }
}

constexpr BoundaryKind flipped(BoundaryKind kind) noexcept {
    switch (kind) {
    case BoundaryKind::In: return BoundaryKind::Out;
    case BoundaryKind::Out: return BoundaryKind::In;
    default: return BoundaryKind::Open;
    }
}

// Arrow of an edge seen from its lower endpoint (line/cycle index order).
constexpr Incidence from_tail(EdgeMark mark) noexcept {
    switch (mark) {
    case EdgeMark::Forward: return Incidence::Away;
    case EdgeMark::Backward: return Incidence::Toward;
    default: return Incidence::Unmarked;
    }
}

// Arrow of an edge seen from its higher endpoint.
constexpr Incidence from_head(EdgeMark mark) noexcept {
    switch (mark) {
    case EdgeMark::Forward: return Incidence::Toward;
    case EdgeMark::Backward: return Incidence::Away;
    default: return Incidence::Unmarked;
    }
}

constexpr std::optional<Incidence> boundary_arrow(BoundaryKind kind) noexcept {
    switch (kind) {
    case BoundaryKind::In: return Incidence::Toward;
    case BoundaryKind::Out: return Incidence::Away;
    default: return std::nullopt;
    }
}

std::size_t count_unmarked(std::span<const EdgeMark> marks) noexcept {
    return static_cast<std::size_t>(std::count(marks.begin(), marks.end(), EdgeMark::Unmarked));
}

// Shared legality rule: only the two endpoints of the marked edge change.
template <typename State>
std::optional<Rejection> check_endpoints(const State& after, std::size_t a, std::size_t b, RuleSet rules) {
    std::optional<Rejection> verdict;
    for (std::size_t vertex : {a, b}) {
        const auto status = classify(after.incidence(vertex));
        if (status == VertexStatus::Sink) return Rejection::SinkCreated;
        if (status == VertexStatus::Source && forbids_sources(rules)) verdict = Rejection::SourceCreated;
    }
    return verdict;
}

template <typename State>
std::vector<Move> collect_legal(const State& state, RuleSet rules) {
    std::vector<Move> moves;
    const auto marks = state.edges();
    for (std::size_t e = 0; e < marks.size(); ++e) {
        if (marks[e] != EdgeMark::Unmarked) continue;
        for (Direction d : {Direction::Forward, Direction::Backward}) {
            if (!check_move(state, Move{e, d}, rules)) moves.push_back(Move{e, d});
        }
    }
    return moves;
}

template <typename State>
State apply_checked(const State& state, Move move, RuleSet rules) {
    if (auto reason = check_move(state, move, rules)) throw IllegalMove(move, *reason);
    return state.with_mark(move.edge, to_mark(move.direction));
}

BoundaryKind left_end_from(EdgeMark mark_before_run) {
    // The mark sits immediately left of the run; Forward points into it.
    return mark_before_run == EdgeMark::Forward ? BoundaryKind::In : BoundaryKind::Out;
}

BoundaryKind right_end_from(EdgeMark mark_after_run) {
    return mark_after_run == EdgeMark::Forward ? BoundaryKind::Out : BoundaryKind::In;
}

}  // namespace

std::string_view to_string(RuleSet rules) noexcept {
    return rules == RuleSet::Standard ? "standard" : "sources-allowed";
}

RuleSet parse_rule_set(std::string_view token) {
    if (token == "standard") return RuleSet::Standard;
    if (token == "sources-allowed") return RuleSet::SourcesAllowed;
    throw InputError("unknown rule set '" + std::string(token) + "' (expected standard|sources-allowed)");
}

std::string_view to_string(BoundaryKind kind) noexcept {
    switch (kind) {
    case BoundaryKind::In: return "in";
    case BoundaryKind::Out: return "out";
    default: return "open";
    }
}

BoundaryKind parse_boundary(std::string_view token) {
    if (token == "open") return BoundaryKind::Open;
    if (token == "in") return BoundaryKind::In;
    if (token == "out") return BoundaryKind::Out;
    throw InputError("unknown boundary '" + std::string(token) + "' (expected open|in|out)");
}

std::string describe(SegmentGame seg) {
    return "(" + std::string(to_string(seg.left)) + "," + std::string(to_string(seg.right)) + "," +
           std::to_string(seg.length) + ")";
}

std::string describe(Move move) {
    return std::to_string(move.edge) + (move.direction == Direction::Forward ? ">" : "<");
}

std::string_view to_string(Rejection reason) noexcept {
    switch (reason) {
    case Rejection::NoSuchEdge: return "no-such-edge";
    case Rejection::AlreadyMarked: return "already-marked";
    case Rejection::SinkCreated: return "sink-created";
    default: return "source-created";
    }
}

IllegalMove::IllegalMove(Move move, Rejection reason)
    : std::runtime_error("illegal move " + describe(move) + ": " + std::string(to_string(reason))),
      move_(move),
      reason_(reason) {}

VertexStatus classify(std::span<const Incidence> incident) noexcept {
    if (incident.empty()) return VertexStatus::Pending;
    bool toward = false;
    bool away = false;
    for (Incidence arrow : incident) {
        if (arrow == Incidence::Unmarked) return VertexStatus::Pending;
        (arrow == Incidence::Toward ? toward : away) = true;
    }
    if (toward && away) return VertexStatus::Mixed;
    return toward ? VertexStatus::Sink : VertexStatus::Source;
}

// ---------------------------------------------------------------- LineState

LineState::LineState(std::vector<EdgeMark> edges, BoundaryKind left, BoundaryKind right)
    : edges_(std::move(edges)), left_(left), right_(right) {
    if (edges_.empty()) throw InputError("a line needs at least one edge");
}

LineState LineState::unmarked(SegmentGame seg) {
    return LineState(std::vector<EdgeMark>(seg.length, EdgeMark::Unmarked), seg.left, seg.right);
}

std::size_t LineState::unmarked_count() const noexcept { return count_unmarked(edges_); }

std::vector<Incidence> LineState::incidence(std::size_t vertex) const {
    if (vertex > edges_.size()) throw InputError("line vertex " + std::to_string(vertex) + " out of range");
    std::vector<Incidence> arrows;
    if (vertex == 0) {
        if (auto a = boundary_arrow(left_)) arrows.push_back(*a);
    } else {
        arrows.push_back(from_head(edges_[vertex - 1]));
    }
    if (vertex == edges_.size()) {
        if (auto a = boundary_arrow(right_)) arrows.push_back(*a);
    } else {
        arrows.push_back(from_tail(edges_[vertex]));
    }
    return arrows;
}

LineState LineState::with_mark(std::size_t edge, EdgeMark mark) const {
    LineState next = *this;
    next.edges_.at(edge) = mark;
    return next;
}

// --------------------------------------------------------------- CycleState

CycleState::CycleState(std::vector<EdgeMark> edges) : edges_(std::move(edges)) {
    if (edges_.size() < 2) throw InputError("a cycle needs at least 2 edges");
}

CycleState CycleState::unmarked(std::size_t n) {
    return CycleState(std::vector<EdgeMark>(n, EdgeMark::Unmarked));
}

std::size_t CycleState::unmarked_count() const noexcept { return count_unmarked(edges_); }

std::vector<Incidence> CycleState::incidence(std::size_t vertex) const {
    const std::size_t n = edges_.size();
    if (vertex >= n) throw InputError("cycle vertex " + std::to_string(vertex) + " out of range");
    return {from_head(edges_[(vertex + n - 1) % n]), from_tail(edges_[vertex])};
}

CycleState CycleState::with_mark(std::size_t edge, EdgeMark mark) const {
    CycleState next = *this;
    next.edges_.at(edge) = mark;
    return next;
}

// --------------------------------------------------------------- GraphState

GraphState::GraphState(std::size_t vertex_count, const std::vector<GraphEdge>& edges,
                       const std::vector<std::size_t>& exempt) {
    auto topology = std::make_shared<Topology>();
    topology->vertex_count = vertex_count;
    topology->incident.resize(vertex_count);
    topology->exempt.assign(vertex_count, false);
    marks_.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (e.u >= vertex_count || e.v >= vertex_count)
            throw InputError("edge " + std::to_string(i) + " references an unknown vertex");
        if (e.u == e.v) throw InputError("edge " + std::to_string(i) + " is a self-loop");
        topology->endpoints.emplace_back(e.u, e.v);
        topology->incident[e.u].push_back(i);
        topology->incident[e.v].push_back(i);
        marks_.push_back(e.mark);
    }
    for (std::size_t v : exempt) {
        if (v >= vertex_count) throw InputError("exempt vertex " + std::to_string(v) + " out of range");
        topology->exempt[v] = true;
    }
    topology_ = std::move(topology);
}

GraphState::GraphState(std::shared_ptr<const Topology> topology, std::vector<EdgeMark> marks)
    : topology_(std::move(topology)), marks_(std::move(marks)) {}

std::size_t GraphState::vertex_count() const noexcept { return topology_->vertex_count; }

GraphEdge GraphState::edge(std::size_t index) const {
    const auto [u, v] = topology_->endpoints.at(index);
    return GraphEdge{u, v, marks_[index]};
}

void GraphState::require_vertex(std::size_t vertex) const {
    if (vertex >= topology_->vertex_count)
        throw InputError("unknown vertex " + std::to_string(vertex) + " (graph has " +
                         std::to_string(topology_->vertex_count) + ")");
}

std::span<const std::size_t> GraphState::incident_edges(std::size_t vertex) const {
    require_vertex(vertex);
    return topology_->incident[vertex];
}

bool GraphState::is_exempt(std::size_t vertex) const {
    require_vertex(vertex);
    return topology_->exempt[vertex];
}

std::vector<std::size_t> GraphState::exempt_vertices() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < topology_->vertex_count; ++v)
        if (topology_->exempt[v]) out.push_back(v);
    return out;
}

std::size_t GraphState::unmarked_count() const noexcept { return count_unmarked(marks_); }

std::vector<Incidence> GraphState::incidence(std::size_t vertex) const {
    require_vertex(vertex);
    std::vector<Incidence> arrows;
    if (topology_->exempt[vertex]) return arrows;
    for (std::size_t e : topology_->incident[vertex]) {
        const bool is_head = topology_->endpoints[e].second == vertex;
        arrows.push_back(is_head ? from_head(marks_[e]) : from_tail(marks_[e]));
    }
    return arrows;
}

GraphState GraphState::with_marks(std::vector<EdgeMark> marks) const {
    if (marks.size() != marks_.size()) throw InputError("mark vector does not match the edge count");
    return GraphState(topology_, std::move(marks));
}

GraphState GraphState::with_mark(std::size_t edge, EdgeMark mark) const {
    auto marks = marks_;
    marks.at(edge) = mark;
    return GraphState(topology_, std::move(marks));
}

bool operator==(const GraphState& a, const GraphState& b) {
    if (a.marks_ != b.marks_) return false;
    if (a.topology_ == b.topology_) return true;
    return a.topology_->vertex_count == b.topology_->vertex_count &&
           a.topology_->endpoints == b.topology_->endpoints && a.topology_->exempt == b.topology_->exempt;
}

bool is_sink(const GraphState& state, std::size_t vertex) {
    return classify(state.incidence(vertex)) == VertexStatus::Sink;
}

bool is_source(const GraphState& state, std::size_t vertex) {
    return classify(state.incidence(vertex)) == VertexStatus::Source;
}

// ----------------------------------------------------------------- legality

std::optional<Rejection> check_move(const LineState& state, Move move, RuleSet rules) {
    if (move.edge >= state.size()) return Rejection::NoSuchEdge;
    if (state.edges()[move.edge] != EdgeMark::Unmarked) return Rejection::AlreadyMarked;
    const auto after = state.with_mark(move.edge, to_mark(move.direction));
    return check_endpoints(after, move.edge, move.edge + 1, rules);
}

std::optional<Rejection> check_move(const CycleState& state, Move move, RuleSet rules) {
    if (move.edge >= state.size()) return Rejection::NoSuchEdge;
    if (state.edges()[move.edge] != EdgeMark::Unmarked) return Rejection::AlreadyMarked;
    const auto after = state.with_mark(move.edge, to_mark(move.direction));
    return check_endpoints(after, move.edge, (move.edge + 1) % state.size(), rules);
}

std::optional<Rejection> check_move(const GraphState& state, Move move, RuleSet rules) {
    if (move.edge >= state.edge_count()) return Rejection::NoSuchEdge;
    if (state.marks()[move.edge] != EdgeMark::Unmarked) return Rejection::AlreadyMarked;
    const auto after = state.with_mark(move.edge, to_mark(move.direction));
    const auto e = state.edge(move.edge);
    return check_endpoints(after, e.u, e.v, rules);
}

std::vector<Move> legal_moves(const LineState& state, RuleSet rules) { return collect_legal(state, rules); }

std::vector<Move> legal_moves(const CycleState& state, RuleSet rules) { return collect_legal(state, rules); }

std::vector<Move> legal_moves(const GraphState& state, RuleSet rules) {
    std::vector<Move> moves;
    for (std::size_t e = 0; e < state.edge_count(); ++e) {
        if (state.marks()[e] != EdgeMark::Unmarked) continue;
        for (Direction d : {Direction::Forward, Direction::Backward})
            if (!check_move(state, Move{e, d}, rules)) moves.push_back(Move{e, d});
    }
    return moves;
}

LineState apply_move(const LineState& state, Move move, RuleSet rules) { return apply_checked(state, move, rules); }

CycleState apply_move(const CycleState& state, Move move, RuleSet rules) {
    return apply_checked(state, move, rules);
}

GraphState apply_move(const GraphState& state, Move move, RuleSet rules) {
    if (auto reason = check_move(state, move, rules)) throw IllegalMove(move, *reason);
    return state.with_mark(move.edge, to_mark(move.direction));
}

// ------------------------------------------------------------ decomposition

std::vector<SegmentGame> decompose(const LineState& state) {
    std::vector<SegmentGame> segments;
    const auto marks = state.edges();
    const std::size_t n = marks.size();
    std::size_t i = 0;
    while (i < n) {
        if (marks[i] != EdgeMark::Unmarked) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < n && marks[i] == EdgeMark::Unmarked) ++i;
        const BoundaryKind left = start == 0 ? state.left() : left_end_from(marks[start - 1]);
        const BoundaryKind right = i == n ? state.right() : right_end_from(marks[i]);
        segments.push_back(SegmentGame{left, right, i - start});
    }
    return segments;
}

std::vector<SegmentGame> decompose(const CycleState& state) {
    const auto marks = state.edges();
    const std::size_t n = marks.size();
    std::vector<std::size_t> marked;
    for (std::size_t e = 0; e < n; ++e)
        if (marks[e] != EdgeMark::Unmarked) marked.push_back(e);
    if (marked.empty()) throw InputError("an unmarked cycle does not decompose into segments");

    std::vector<SegmentGame> segments;
    for (std::size_t k = 0; k < marked.size(); ++k) {
        const std::size_t from = marked[k];
        const std::size_t to = marked[(k + 1) % marked.size()];
        const std::size_t gap = (to + n - from - 1) % n;
        if (gap == 0) continue;
        segments.push_back(SegmentGame{left_end_from(marks[from]), right_end_from(marks[to]), gap});
    }
    return segments;
}

LineState mirrored(const LineState& state) {
    std::vector<EdgeMark> edges(state.edges().rbegin(), state.edges().rend());
    for (auto& m : edges) m = flipped(m);
    return LineState(std::move(edges), state.right(), state.left());
}

LineState reversed(const LineState& state) {
    std::vector<EdgeMark> edges(state.edges().begin(), state.edges().end());
    for (auto& m : edges) m = flipped(m);
    return LineState(std::move(edges), flipped(state.left()), flipped(state.right()));
}

GraphState to_graph(const LineState& state) {
    const std::size_t n = state.size();
    std::vector<GraphEdge> edges;
    for (std::size_t i = 0; i < n; ++i) edges.push_back(GraphEdge{i, i + 1, state.edges()[i]});
    std::size_t vertex_count = n + 1;
    std::vector<std::size_t> exempt;
    if (state.left() != BoundaryKind::Open) {
        const std::size_t outer = vertex_count++;
        exempt.push_back(outer);
        // In points into vertex 0: outer -> 0 is Forward on (outer, 0).
        edges.push_back(GraphEdge{outer, 0, state.left() == BoundaryKind::In ? EdgeMark::Forward
                                                                             : EdgeMark::Backward});
    }
    if (state.right() != BoundaryKind::Open) {
        const std::size_t outer = vertex_count++;
        exempt.push_back(outer);
        edges.push_back(GraphEdge{outer, n, state.right() == BoundaryKind::In ? EdgeMark::Forward
                                                                              : EdgeMark::Backward});
    }
    return GraphState(vertex_count, edges, exempt);
}

GraphState to_graph(const CycleState& state) {
    const std::size_t n = state.size();
    std::vector<GraphEdge> edges;
    for (std::size_t i = 0; i < n; ++i) edges.push_back(GraphEdge{i, (i + 1) % n, state.edges()[i]});
    return GraphState(n, edges);
}

}  // namespace cycles
