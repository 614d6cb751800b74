#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "cycles/engine.hpp"

namespace cycles {

namespace {

constexpr std::size_t kMaxEncodable = 32;  // two bits per free edge in a 64-bit key

struct EdgeImage {
    std::size_t target;
    bool flip;
};

// Whole-graph search. Only edges unmarked in the root state can change, so
// the memo key encodes just those.
class OracleSearch {
public:
    OracleSearch(const GraphState& root, RuleSet rules, const OracleOptions& options)
        : rules_(rules), marks_(root.marks().begin(), root.marks().end()) {
        const std::size_t unmarked = root.unmarked_count();
        if (unmarked > options.max_unmarked) throw OracleBoundExceeded(unmarked, options.max_unmarked);
        if (options.max_unmarked > kMaxEncodable)
            throw InputError("oracle bound cannot exceed " + std::to_string(kMaxEncodable) + " edges");

        for (std::size_t e = 0; e < marks_.size(); ++e) {
            const auto edge = root.edge(e);
            endpoints_.emplace_back(edge.u, edge.v);
            if (marks_[e] == EdgeMark::Unmarked) free_edges_.push_back(e);
        }
        incident_.resize(root.vertex_count());
        exempt_.resize(root.vertex_count());
        for (std::size_t v = 0; v < root.vertex_count(); ++v) {
            exempt_[v] = root.is_exempt(v);
            for (std::size_t e : root.incident_edges(v)) incident_[v].emplace_back(e, endpoints_[e].second == v);
        }
        if (options.use_symmetry && free_edges_.size() == marks_.size()) build_symmetries(root);
    }

    Nimber solve() {
        const std::uint64_t key = canonical_key();
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::vector<Nimber> options;
        for (std::size_t e : free_edges_) {
            if (marks_[e] != EdgeMark::Unmarked) continue;
            for (EdgeMark mark : {EdgeMark::Forward, EdgeMark::Backward}) {
                marks_[e] = mark;
                if (legal_after(e)) options.push_back(solve());
            }
            marks_[e] = EdgeMark::Unmarked;
        }
        const Nimber result = mex(options);
        memo_.emplace(key, result);
        return result;
    }

    // Value after playing `move` on the root; nullopt when it is illegal.
    std::optional<Nimber> solve_after(Move move) {
        if (move.edge >= marks_.size() || marks_[move.edge] != EdgeMark::Unmarked) return std::nullopt;
        marks_[move.edge] = to_mark(move.direction);
        std::optional<Nimber> result;
        if (legal_after(move.edge)) result = solve();
        marks_[move.edge] = EdgeMark::Unmarked;
        return result;
    }

private:
    bool legal_after(std::size_t e) {
        for (std::size_t v : {endpoints_[e].first, endpoints_[e].second}) {
            if (exempt_[v]) continue;
            arrows_.clear();
            for (auto [edge, is_head] : incident_[v]) {
                const EdgeMark m = marks_[edge];
                if (m == EdgeMark::Unmarked) {
                    arrows_.push_back(Incidence::Unmarked);
                } else {
                    const bool toward = (m == EdgeMark::Forward) == is_head;
                    arrows_.push_back(toward ? Incidence::Toward : Incidence::Away);
                }
            }
            if (is_forbidden(classify(arrows_), rules_)) return false;
        }
        return true;
    }

    static std::uint64_t code(EdgeMark m, bool flip) {
        if (m == EdgeMark::Unmarked) return 0;
        return (m == EdgeMark::Forward) != flip ? 1 : 2;
    }

    std::uint64_t canonical_key() const {
        if (symmetries_.empty()) {
            std::uint64_t key = 0;
            for (std::size_t j = 0; j < free_edges_.size(); ++j) key |= code(marks_[free_edges_[j]], false) << (2 * j);
            return key;
        }
        std::uint64_t best = ~std::uint64_t{0};
        for (const auto& images : symmetries_) {
            std::uint64_t key = 0;
            for (std::size_t e = 0; e < marks_.size(); ++e)
                key |= code(marks_[e], images[e].flip) << (2 * images[e].target);
            best = std::min(best, key);
        }
        return best;
    }

    // Rotations/reflections of a bare path (edges (i,i+1)) or bare cycle
    // (edges (i,i+1 mod n)). Reflection reverses every arrow.
    void build_symmetries(const GraphState& root) {
        const std::size_t m = marks_.size();
        if (m == 0 || !root.exempt_vertices().empty()) return;
        const bool path = root.vertex_count() == m + 1;
        const bool cycle = root.vertex_count() == m && m >= 2;
        if (!path && !cycle) return;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t next = path ? i + 1 : (i + 1) % m;
            if (endpoints_[i] != std::pair{i, next}) return;
        }
        const std::size_t rotations = cycle ? m : 1;
        for (std::size_t r = 0; r < rotations; ++r) {
            std::vector<EdgeImage> turn(m);
            std::vector<EdgeImage> flip(m);
            for (std::size_t i = 0; i < m; ++i) {
                turn[i] = {(i + r) % m, false};
                flip[i] = {(m - 1 - i + r) % m, true};
            }
            symmetries_.push_back(std::move(turn));
            symmetries_.push_back(std::move(flip));
        }
    }

    RuleSet rules_;
    std::vector<EdgeMark> marks_;
    std::vector<std::pair<std::size_t, std::size_t>> endpoints_;
    std::vector<std::size_t> free_edges_;
    std::vector<std::vector<std::pair<std::size_t, bool>>> incident_;
    std::vector<bool> exempt_;
    std::vector<std::vector<EdgeImage>> symmetries_;
    std::vector<Incidence> arrows_;
    std::unordered_map<std::uint64_t, Nimber> memo_;
};

}  // namespace

OracleBoundExceeded::OracleBoundExceeded(std::size_t unmarked, std::size_t bound)
    : std::runtime_error("oracle refused: " + std::to_string(unmarked) + " unmarked edges exceed the bound of " +
                         std::to_string(bound)),
      bound_(bound) {}

Nimber grundy_oracle(const GraphState& state, RuleSet rules, OracleOptions options) {
    OracleSearch search(state, rules, options);
    return search.solve();
}

std::vector<Move> best_moves(const GraphState& state, RuleSet rules, OracleOptions options) {
    OracleSearch search(state, rules, options);
    std::vector<Move> winning;
    for (Move m : legal_moves(state, rules)) {
        const auto value = search.solve_after(m);
        if (value && value->is_zero()) winning.push_back(m);
    }
    return winning;
}

}  // namespace cycles
