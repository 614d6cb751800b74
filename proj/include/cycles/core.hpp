// Game states for the Game of Cycles on paths, simple cycles and small
// arbitrary graphs, together with move legality and the decomposition of a
// partially marked line into independent boundary-typed segments.
//
// The model is pure normal play: the player left without a legal move loses.
// The cycle-cell scoring rule of the original game is not modelled; on paths
// no cycle can form and on a simple cycle the move that closes the directed
// cycle is necessarily the last move, so both conventions agree on every
// position this library evaluates.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cycles {

/// Malformed caller input: unknown ids, bad tokens, out-of-range sizes.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Sinks are forbidden under both rule sets; Standard also forbids sources.
enum class RuleSet : std::uint8_t { Standard, SourcesAllowed };

constexpr bool forbids_sources(RuleSet rules) noexcept { return rules == RuleSet::Standard; }

std::string_view to_string(RuleSet rules) noexcept;
/// Accepts "standard" and "sources-allowed".
RuleSet parse_rule_set(std::string_view token);

/// Forward points from the lower-indexed endpoint to the higher-indexed one
/// (clockwise on a cycle, u -> v on a graph edge).
enum class EdgeMark : std::uint8_t { Unmarked, Forward, Backward };
enum class Direction : std::uint8_t { Forward, Backward };

constexpr EdgeMark to_mark(Direction d) noexcept {
    return d == Direction::Forward ? EdgeMark::Forward : EdgeMark::Backward;
}
constexpr Direction opposite(Direction d) noexcept {
    return d == Direction::Forward ? Direction::Backward : Direction::Forward;
}

/// Context at one end of a run of unmarked edges.
///   Open: the end vertex is a real degree-1 vertex.
///   In:   an already-marked edge outside the run points into the end vertex.
///   Out:  an already-marked edge outside the run points away from it.
/// The outer endpoint of an In/Out edge is not checked; it belongs to the
/// neighbouring segment (or, on a cycle, to the other end of this one).
enum class BoundaryKind : std::uint8_t { Open, In, Out };

std::string_view to_string(BoundaryKind kind) noexcept;
/// Accepts "open", "in" and "out".
BoundaryKind parse_boundary(std::string_view token);

/// A run of `length` unmarked edges with typed ends. Length 0 is terminal.
struct SegmentGame {
    BoundaryKind left = BoundaryKind::Open;
    BoundaryKind right = BoundaryKind::Open;
    std::size_t length = 0;

    friend auto operator<=>(const SegmentGame&, const SegmentGame&) = default;
};

constexpr SegmentGame mirror(SegmentGame seg) noexcept { return {seg.right, seg.left, seg.length}; }

std::string describe(SegmentGame seg);

struct Move {
    std::size_t edge = 0;
    Direction direction = Direction::Forward;

    friend auto operator<=>(const Move&, const Move&) = default;
};

/// Short form used in CLI output, e.g. "3>" or "0<".
std::string describe(Move move);

enum class Rejection : std::uint8_t { NoSuchEdge, AlreadyMarked, SinkCreated, SourceCreated };

std::string_view to_string(Rejection reason) noexcept;

class IllegalMove : public std::runtime_error {
public:
    IllegalMove(Move move, Rejection reason);
    Move move() const noexcept { return move_; }
    Rejection reason() const noexcept { return reason_; }

private:
    Move move_;
    Rejection reason_;
};

/// One incident edge as seen from a vertex.
enum class Incidence : std::uint8_t { Unmarked, Toward, Away };

enum class VertexStatus : std::uint8_t { Pending, Mixed, Source, Sink };

/// Pending if some incident edge is unmarked (or there are none); otherwise
/// Sink/Source when every arrow points toward/away from the vertex.
VertexStatus classify(std::span<const Incidence> incident) noexcept;

/// Whether a vertex in this status violates the rule set.
constexpr bool is_forbidden(VertexStatus status, RuleSet rules) noexcept {
    return status == VertexStatus::Sink || (status == VertexStatus::Source && forbids_sources(rules));
}

/// A path of edges 0..n-1 joining vertices 0..n, with symbolic boundaries.
class LineState {
public:
    LineState(std::vector<EdgeMark> edges, BoundaryKind left, BoundaryKind right);

    /// All-unmarked state for seg; seg.length must be at least 1.
    static LineState unmarked(SegmentGame seg);

    std::span<const EdgeMark> edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return edges_.size(); }
    BoundaryKind left() const noexcept { return left_; }
    BoundaryKind right() const noexcept { return right_; }
    std::size_t unmarked_count() const noexcept;

    /// Arrows at vertex 0..size(), boundary edges included.
    std::vector<Incidence> incidence(std::size_t vertex) const;

    LineState with_mark(std::size_t edge, EdgeMark mark) const;

    friend bool operator==(const LineState&, const LineState&) = default;

private:
    std::vector<EdgeMark> edges_;
    BoundaryKind left_;
    BoundaryKind right_;
};

/// A simple cycle: edge i joins vertex i and vertex (i + 1) mod n, n >= 2.
class CycleState {
public:
    explicit CycleState(std::vector<EdgeMark> edges);
    static CycleState unmarked(std::size_t n);

    std::span<const EdgeMark> edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return edges_.size(); }
    std::size_t unmarked_count() const noexcept;
    std::vector<Incidence> incidence(std::size_t vertex) const;
    CycleState with_mark(std::size_t edge, EdgeMark mark) const;

    friend bool operator==(const CycleState&, const CycleState&) = default;

private:
    std::vector<EdgeMark> edges_;
};

struct GraphEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    EdgeMark mark = EdgeMark::Unmarked;  // Forward: u -> v

    friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Arbitrary multigraph without self-loops. Exempt vertices are never
/// classified as sources or sinks; they stand for the far end of a boundary
/// edge that belongs to another game.
class GraphState {
public:
    GraphState(std::size_t vertex_count, const std::vector<GraphEdge>& edges,
               const std::vector<std::size_t>& exempt = {});

    std::size_t vertex_count() const noexcept;
    std::size_t edge_count() const noexcept { return marks_.size(); }
    GraphEdge edge(std::size_t index) const;
    std::span<const EdgeMark> marks() const noexcept { return marks_; }
    std::span<const std::size_t> incident_edges(std::size_t vertex) const;
    bool is_exempt(std::size_t vertex) const;
    std::vector<std::size_t> exempt_vertices() const;
    std::size_t unmarked_count() const noexcept;
    std::vector<Incidence> incidence(std::size_t vertex) const;

    /// Same topology, different marks. marks.size() must equal edge_count().
    GraphState with_marks(std::vector<EdgeMark> marks) const;
    GraphState with_mark(std::size_t edge, EdgeMark mark) const;

    friend bool operator==(const GraphState& a, const GraphState& b);

private:
    struct Topology {
        std::size_t vertex_count = 0;
        std::vector<std::pair<std::size_t, std::size_t>> endpoints;
        std::vector<std::vector<std::size_t>> incident;
        std::vector<bool> exempt;
    };

    GraphState(std::shared_ptr<const Topology> topology, std::vector<EdgeMark> marks);
    void require_vertex(std::size_t vertex) const;

    std::shared_ptr<const Topology> topology_;
    std::vector<EdgeMark> marks_;
};

bool is_sink(const GraphState& state, std::size_t vertex);
bool is_source(const GraphState& state, std::size_t vertex);

/// Reason the move would be rejected, or nullopt when it is legal.
std::optional<Rejection> check_move(const LineState& state, Move move, RuleSet rules);
std::optional<Rejection> check_move(const CycleState& state, Move move, RuleSet rules);
std::optional<Rejection> check_move(const GraphState& state, Move move, RuleSet rules);

/// Legal moves in ascending edge order, Forward before Backward.
std::vector<Move> legal_moves(const LineState& state, RuleSet rules);
std::vector<Move> legal_moves(const CycleState& state, RuleSet rules);
std::vector<Move> legal_moves(const GraphState& state, RuleSet rules);

/// Throws IllegalMove when check_move rejects the move.
LineState apply_move(const LineState& state, Move move, RuleSet rules);
CycleState apply_move(const CycleState& state, Move move, RuleSet rules);
GraphState apply_move(const GraphState& state, Move move, RuleSet rules);

/// Maximal runs of unmarked edges, left to right, with induced boundaries.
std::vector<SegmentGame> decompose(const LineState& state);

/// Runs between consecutive marked edges, starting after the lowest-indexed
/// mark. Requires at least one marked edge; an untouched cycle is not a sum.
std::vector<SegmentGame> decompose(const CycleState& state);

/// Left-right mirror image: edge order reversed, and with it every arrow.
LineState mirrored(const LineState& state);

/// Every arrow flipped in place, boundary arrows included.
LineState reversed(const LineState& state);

/// Graph realisation: boundary edges become real marked edges to exempt
/// vertices. Line vertex j maps to graph vertex j; boundary vertices follow.
GraphState to_graph(const LineState& state);
GraphState to_graph(const CycleState& state);

}  // namespace cycles
