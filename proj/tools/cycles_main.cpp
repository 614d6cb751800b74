// cycles: command-line front end for the Game of Cycles engine.
//
// Exit codes: 0 success/pass, 1 analysis failure, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "cycles/catalog.hpp"
#include "cycles/core.hpp"
#include "cycles/dataio.hpp"
#include "cycles/engine.hpp"
#include "cycles/periodicity.hpp"

namespace {

using namespace cycles;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* verdict(Nimber n) { return n.is_zero() ? "second player wins" : "first player wins"; }

// Shared flags describing a path or cycle position.
struct BoardFlags {
    std::string graph = "path";
    std::size_t n = 0;
    std::string edges;
    std::string left = "open";
    std::string right = "open";
    std::string rules = "standard";

    void add(CLI::App& cmd, bool with_edges) {
        cmd.add_option("--graph", graph, "path or cycle")->check(CLI::IsMember({"path", "cycle"}));
        cmd.add_option("--n", n, "number of edges (unmarked board)");
        if (with_edges) cmd.add_option("--edges", edges, "edge string over '-', '>' and '<'");
        cmd.add_option("--left", left, "left boundary of a path: open|in|out");
        cmd.add_option("--right", right, "right boundary of a path: open|in|out");
        cmd.add_option("--rules", rules, "standard or sources-allowed");
    }

    RuleSet rule_set() const { return parse_rule_set(rules); }
    bool is_cycle() const { return graph == "cycle"; }

    std::string edge_string() const {
        if (!edges.empty()) {
            if (n != 0 && n != edges.size()) throw UsageError("--n disagrees with the length of --edges");
            return edges;
        }
        if (n == 0) throw UsageError(is_cycle() ? "--n must be at least 2 for a cycle" : "--n must be at least 1");
        return std::string(n, '-');
    }

    std::variant<LineState, CycleState> board() const {
        const std::string e = edge_string();
        if (is_cycle()) {
            if (e.size() < 2) throw UsageError("a cycle needs at least 2 edges");
            return parse_cycle_state(e);
        }
        return parse_line_state(e, left, right);
    }
};

std::string render(const LineState& s) {
    return std::string(to_string(s.left())) + " [" + render_edges(s.edges()) + "] " + std::string(to_string(s.right()));
}
std::string render(const CycleState& s) { return "cycle [" + render_edges(s.edges()) + "]"; }

std::string join_moves(const std::vector<Move>& moves) {
    std::string out;
    for (const auto& m : moves) out += (out.empty() ? "" : " ") + describe(m);
    return out;
}

// ------------------------------------------------------------------ commands

int cmd_nimber(const BoardFlags& f) {
    const RuleSet rules = f.rule_set();
    if (f.n == 0) throw UsageError("--n is required");
    Nimber value;
    if (f.is_cycle()) {
        if (f.n < 2) throw UsageError("a cycle needs at least 2 edges");
        value = grundy_cycle(f.n, rules);
    } else {
        value = grundy_segment({parse_boundary(f.left), parse_boundary(f.right), f.n}, rules);
    }
    std::cout << "nimber: " << value << "\n" << verdict(value) << "\n";
    return kOk;
}

struct SequenceFlags {
    std::string family;
    std::size_t type = 1;
    std::size_t max = 0;
    std::string format = "csv";
    bool expected = false;
};

int cmd_sequence(const SequenceFlags& f) {
    const FamilySpec spec = builtin(f.family);
    if (f.type < 1 || f.type > spec.type_count())
        throw UsageError("--type must be in [1, " + std::to_string(spec.type_count()) + "] for " + spec.id);
    const auto format = parse_sequence_format(f.format);

    SequenceReport report;
    report.family = spec.id;
    report.rules = spec.rules;
    report.type = f.type;
    report.first = spec.first_length();
    report.last = f.max;
    if (report.range_size() > 0)
        report.values = family_sequence(spec, f.type, report.first, report.last, default_engine());
    if (f.expected) {
        const FixtureTable table = fixtures(spec.id);
        const FixtureSeries* series = table.find(f.type);
        std::vector<std::optional<Nimber>> expected(report.range_size());
        if (series) {
            for (std::size_t j = 0; j < expected.size(); ++j) {
                const std::size_t n = report.first + j;
                if (n >= series->first_length && n - series->first_length < series->values.size())
                    expected[j] = series->values[n - series->first_length];
            }
        }
        report.expected = std::move(expected);
    }
    std::cout << emit_sequence(report, format);
    return kOk;
}

struct VerifyFlags {
    std::string family;
    std::string spec_file;
    std::optional<std::size_t> nmax;
};

int cmd_verify(const VerifyFlags& f) {
    if (f.family.empty() && f.spec_file.empty()) throw UsageError("--family or --spec-file is required");
    FamilySpec spec = f.spec_file.empty() ? builtin(f.family) : parse_family_spec(read_file(f.spec_file));
    const auto cert = certify(spec, default_engine(), f.nmax);
    std::cout << render_certificate(cert);
    return cert.pass ? kOk : kFailed;
}

int cmd_best_move(const BoardFlags& f) {
    const RuleSet rules = f.rule_set();
    return std::visit(
        [&](const auto& state) {
            Nimber value;
            if constexpr (std::is_same_v<std::decay_t<decltype(state)>, LineState>)
                value = grundy_line(state, rules);
            else
                value = default_engine().cycle(state, rules);
            std::cout << "position: " << render(state) << "\n";
            std::cout << "nimber: " << value << "\n";
            if (value.is_zero()) {
                std::cout << "no winning move (second player wins)\n";
            } else {
                std::cout << "winning moves: " << join_moves(best_moves(state, rules)) << "\n";
            }
            return kOk;
        },
        f.board());
}

struct OracleFlags {
    BoardFlags board;
    std::string file;
    std::size_t bound = OracleOptions{}.max_unmarked;
};

int cmd_oracle(const OracleFlags& f) {
    const RuleSet rules = f.board.rule_set();
    const GraphState graph = f.file.empty()
                                 ? std::visit([](const auto& s) { return to_graph(s); }, f.board.board())
                                 : parse_graph(read_file(f.file));
    OracleOptions options;
    options.max_unmarked = f.bound;
    try {
        const Nimber value = grundy_oracle(graph, rules, options);
        std::cout << "nimber: " << value << "\n" << verdict(value) << "\n";
        return kOk;
    } catch (const OracleBoundExceeded& e) {
        std::cerr << "cycles: " << e.what() << "\n";
        return kFailed;
    }
}

struct CompareFlags {
    std::string family;
    std::string format = "text";
};

int cmd_compare(const CompareFlags& f) {
    const auto format = parse_report_format(f.format);
    const auto report = compare_fixtures(fixtures(f.family), default_engine());
    std::cout << render_comparison(report, format);
    return report.all_exact() ? kOk : kFailed;
}

struct PlayFlags {
    BoardFlags board;
    bool engine_first = false;
};

template <class State>
int play_loop(State state, RuleSet rules, bool engine_turn) {
    std::string line;
    while (true) {
        std::cout << render(state) << "\n";
        const auto moves = legal_moves(state, rules);
        if (moves.empty()) {
            std::cout << (engine_turn ? "engine has no legal move: engine loses\n"
                                      : "you have no legal move: you lose\n");
            return kOk;
        }
        if (engine_turn) {
            const auto best = best_moves(state, rules);
            const Move m = best.empty() ? moves.front() : best.front();
            std::cout << "engine plays " << describe(m) << "\n";
            state = apply_move(state, m, rules);
            engine_turn = false;
            continue;
        }
        std::cout << "your move (edge and > or <): " << std::flush;
        if (!std::getline(std::cin, line)) {
            std::cout << "\ninput closed\n";
            return kOk;
        }
        try {
            state = apply_move(state, parse_move(line), rules);
            engine_turn = true;
        } catch (const IllegalMove& e) {
            std::cout << "illegal move " << describe(e.move()) << ": " << to_string(e.reason()) << "\n";
        } catch (const InputError& e) {
            std::cout << e.what() << "\n";
        }
    }
}

int cmd_play(const PlayFlags& f) {
    const RuleSet rules = f.board.rule_set();
    return std::visit([&](const auto& s) { return play_loop(s, rules, f.engine_first); }, f.board.board());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Game of Cycles analysis: nimbers, sequences, periodicity certificates"};
    app.require_subcommand(1);

    BoardFlags nimber_flags;
    auto* nimber = app.add_subcommand("nimber", "Nimber of an unmarked path segment or cycle");
    nimber_flags.add(*nimber, false);

    SequenceFlags sequence_flags;
    auto* sequence = app.add_subcommand("sequence", "Nimber sequence of one family type");
    sequence->add_option("--family", sequence_flags.family, "builtin family")->required();
    sequence->add_option("--type", sequence_flags.type, "type index (1-based)");
    sequence->add_option("--max", sequence_flags.max, "largest length")->required();
    sequence->add_option("--format", sequence_flags.format, "csv or json");
    sequence->add_flag("--expected", sequence_flags.expected, "add reference table values");

    VerifyFlags verify_flags;
    auto* verify = app.add_subcommand("verify", "Certify eventual periodicity of a family");
    verify->add_option("--family", verify_flags.family, "builtin family");
    verify->add_option("--spec-file", verify_flags.spec_file, "family spec JSON");
    verify->add_option("--nmax", verify_flags.nmax, "bound for the empirical faithfulness scan");

    BoardFlags best_flags;
    auto* best = app.add_subcommand("best-move", "Moves to a position of Nimber 0");
    best_flags.add(*best, true);

    OracleFlags oracle_flags;
    auto* oracle = app.add_subcommand("oracle", "Brute-force Nimber of a small graph");
    oracle_flags.board.add(*oracle, true);
    oracle->add_option("--file", oracle_flags.file, "graph file");
    oracle->add_option("--bound", oracle_flags.bound, "largest number of unmarked edges searched");

    CompareFlags compare_flags;
    auto* compare = app.add_subcommand("compare", "Engine against the shipped reference tables");
    compare->add_option("--family", compare_flags.family, "builtin family")->required();
    compare->add_option("--format", compare_flags.format, "text or json");

    PlayFlags play_flags;
    auto* play = app.add_subcommand("play", "Play against the engine on stdin");
    play_flags.board.add(*play, true);
    play->add_flag("--engine-first", play_flags.engine_first, "engine makes the first move");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*nimber) return cmd_nimber(nimber_flags);
        if (*sequence) return cmd_sequence(sequence_flags);
        if (*verify) return cmd_verify(verify_flags);
        if (*best) return cmd_best_move(best_flags);
        if (*oracle) return cmd_oracle(oracle_flags);
        if (*compare) return cmd_compare(compare_flags);
        if (*play) return cmd_play(play_flags);
    } catch (const UsageError& e) {
        std::cerr << "cycles: " << e.what() << "\n";
        return kUsage;
    } catch (const InputError& e) {
        std::cerr << "cycles: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
