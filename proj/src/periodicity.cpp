#include "cycles/periodicity.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>
#include <string>

namespace cycles {

namespace {

std::string type_name(std::size_t type) { return "g" + std::to_string(type); }

std::string move_name(std::size_t type, std::size_t n, SplitPair split, std::size_t a) {
    std::ostringstream out;
    out << type_name(type) << "(" << n << ") move (" << split.p << "," << split.q << "," << a << "," << n - a - 1
        << ")";
    return out.str();
}

bool same_up_to_mirror(BoundaryPair a, BoundaryPair b) {
    return a == b || (a.left == b.right && a.right == b.left);
}

// Boundary pairs of the two parts left by marking an edge of (left, right).
std::pair<BoundaryPair, BoundaryPair> split_parts(BoundaryPair whole, Direction d) {
    if (d == Direction::Forward) return {{whole.left, BoundaryKind::Out}, {BoundaryKind::In, whole.right}};
    return {{whole.left, BoundaryKind::In}, {BoundaryKind::Out, whole.right}};
}

bool matches(const InvalidPattern& pattern, std::size_t type, SplitPair split, std::size_t a, std::size_t b) {
    if (pattern.type != type || pattern.split != split) return false;
    return (pattern.side == Side::Left ? a : b) == pattern.fixed_length;
}

Verdict passed(std::string detail) { return Verdict{true, std::move(detail), std::nullopt}; }
Verdict failed(std::string detail, std::optional<Counterexample> cx = std::nullopt) {
    return Verdict{false, std::move(detail), cx};
}

Verdict inherited(const Verdict& base, const std::string& base_id) {
    Verdict v = base;
    v.detail = "inherited from " + base_id + ": " + base.detail;
    return v;
}

struct Mismatch {
    Counterexample where;
    std::string text;
};

struct FaithfulnessScan {
    std::optional<std::string> split_table_error;
    std::optional<Mismatch> middle;      // a, b >= s - T
    std::optional<Mismatch> short_left;  // a < s - T
    std::optional<Mismatch> short_right; // b < s - T <= a
    std::size_t moves_checked = 0;

    bool clean() const { return !split_table_error && !middle && !short_left && !short_right; }

    std::optional<Mismatch> first() const {
        // Scan order is type-major, so the smallest (type, length, edge) is first.
        std::optional<Mismatch> best;
        for (const auto* m : {&middle, &short_left, &short_right}) {
            if (!*m) continue;
            const auto key = [](const Mismatch& x) {
                return std::tuple(x.where.type, x.where.length, x.where.move.edge, x.where.move.direction);
            };
            if (!best || key(**m) < key(*best)) best = **m;
        }
        return best;
    }
};

FaithfulnessScan scan_faithfulness(const FamilySpec& spec, std::size_t n_max) {
    FaithfulnessScan scan;
    const std::size_t k = spec.type_count();
    for (std::size_t i = 1; i <= k && !scan.split_table_error; ++i) {
        for (Direction d : {Direction::Forward, Direction::Backward}) {
            const SplitPair split = spec.splits[i - 1][d == Direction::Forward ? 0 : 1];
            const auto [left_part, right_part] = split_parts(spec.types[i - 1], d);
            if (!same_up_to_mirror(left_part, spec.types[split.p - 1]) ||
                !same_up_to_mirror(right_part, spec.types[split.q - 1])) {
                std::ostringstream out;
                out << "split table: " << (d == Direction::Forward ? "forward" : "backward") << " mark on "
                    << type_name(i) << " leaves (" << to_string(left_part.left) << "," << to_string(left_part.right)
                    << ") and (" << to_string(right_part.left) << "," << to_string(right_part.right)
                    << "), declared as (" << split.p << "," << split.q << ")";
                scan.split_table_error = out.str();
                break;
            }
        }
    }
    if (scan.split_table_error) return scan;

    const std::size_t short_limit = spec.window - spec.period;  // s - T
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t n = 1; n <= n_max; ++n) {
            const BoundaryPair type = spec.types[i - 1];
            const auto state = LineState::unmarked({type.left, type.right, n});
            for (std::size_t a = 0; a < n; ++a) {
                const std::size_t b = n - 1 - a;
                for (Direction d : {Direction::Forward, Direction::Backward}) {
                    const SplitPair split = spec.splits[i - 1][d == Direction::Forward ? 0 : 1];
                    const bool spec_legal = std::none_of(
                        spec.invalid_patterns.begin(), spec.invalid_patterns.end(),
                        [&](const InvalidPattern& p) { return matches(p, i, split, a, b); });
                    const bool engine_legal = !check_move(state, Move{a, d}, spec.rules).has_value();
                    ++scan.moves_checked;
                    if (spec_legal == engine_legal) continue;
                    auto& slot = a < short_limit ? scan.short_left
                                 : b < short_limit ? scan.short_right
                                                   : scan.middle;
                    if (slot) continue;
                    slot = Mismatch{Counterexample{i, n, Move{a, d}, engine_legal, spec_legal},
                                    move_name(i, n, split, a) + (engine_legal ? " is legal but declared invalid"
                                                                              : " is illegal but declared valid")};
                }
            }
        }
    }
    return scan;
}

Verdict region_verdict(const std::optional<Mismatch>& mismatch, const std::string& ok_text) {
    if (mismatch) return failed(mismatch->text, mismatch->where);
    return passed(ok_text);
}

}  // namespace

std::vector<Nimber> family_sequence(const FamilySpec& spec, std::size_t type, std::size_t first, std::size_t last,
                                    GrundyEngine& engine) {
    if (type < 1 || type > spec.type_count())
        throw InputError("type index " + std::to_string(type) + " out of range 1.." +
                         std::to_string(spec.type_count()));
    std::vector<Nimber> values;
    if (last < first) return values;
    if (first < spec.first_length())
        throw InputError(spec.id + " games start at n = " + std::to_string(spec.first_length()));
    if (spec.kind == FamilyKind::Segments) {
        const auto pair = spec.types[type - 1];
        engine.table(spec.rules).fill_to(last);
        for (std::size_t n = first; n <= last; ++n) values.push_back(engine.segment({pair.left, pair.right, n}, spec.rules));
    } else {
        if (!spec.base) throw InputError(spec.id + " has no base family");
        const auto pair = spec.base->types.at(spec.base_type - 1);
        for (std::size_t n = first; n <= last; ++n) {
            const Nimber after_first = engine.segment({pair.left, pair.right, n - 1}, spec.rules);
            values.push_back(mex(std::span<const Nimber>(&after_first, 1)));
        }
    }
    return values;
}

Verdict check_well_formed(const FamilySpec& spec) {
    if (spec.period < 1) return failed("period T must be at least 1");
    if (spec.window < spec.period) return failed("window s must satisfy s >= T");
    const std::size_t k = spec.type_count();
    if (k == 0) return failed("family has no types");

    if (spec.kind == FamilyKind::CycleOverType) {
        if (!spec.base) return failed("derived family has no base family");
        if (spec.base->kind != FamilyKind::Segments) return failed("base family must be a split family");
        if (spec.base_type < 1 || spec.base_type > spec.base->type_count())
            return failed("base type index out of range");
        if (spec.base->rules != spec.rules) return failed("base family uses a different rule set");
        if (k != 1) return failed("a cycle family has exactly one type");
        if (!spec.splits.empty() || !spec.invalid_patterns.empty())
            return failed("a cycle family declares no splits or patterns");
        if (spec.window + 1 < spec.period + spec.first_length())
            return failed("window too small: n - T must stay >= " + std::to_string(spec.first_length()));
        auto base = check_well_formed(*spec.base);
        if (!base.pass) return failed("base family: " + base.detail);
        return passed("derived cycle family over " + spec.base->id + " " + type_name(spec.base_type));
    }

    if (spec.splits.size() != k) return failed("split table has " + std::to_string(spec.splits.size()) +
                                               " rows for " + std::to_string(k) + " types");
    for (std::size_t i = 0; i < k; ++i) {
        for (const auto& split : spec.splits[i]) {
            if (split.p < 1 || split.p > k || split.q < 1 || split.q > k)
                return failed("split of " + type_name(i + 1) + " references a type outside 1.." + std::to_string(k));
        }
        if (spec.splits[i][0] == spec.splits[i][1])
            return failed("both directions on " + type_name(i + 1) + " declare the same split");
    }
    for (const auto& pattern : spec.invalid_patterns) {
        if (pattern.type < 1 || pattern.type > k) return failed("pattern references unknown type");
        const auto& row = spec.splits[pattern.type - 1];
        if (pattern.split != row[0] && pattern.split != row[1])
            return failed("pattern (" + std::to_string(pattern.split.p) + "," + std::to_string(pattern.split.q) +
                          ") is not a split of " + type_name(pattern.type));
    }
    return passed(std::to_string(k) + " types, " + std::to_string(spec.invalid_patterns.size()) + " invalid patterns");
}

Verdict check_condition1(const FamilySpec& spec) {
    if (spec.kind == FamilyKind::CycleOverType) {
        if (!spec.base) return failed("derived family has no base family");
        return inherited(check_condition1(*spec.base), spec.base->id);
    }
    const std::size_t bound = spec.window >= spec.period ? spec.window - spec.period : 0;
    for (const auto& p : spec.invalid_patterns) {
        if (p.fixed_length >= bound) {
            return failed("pattern on " + type_name(p.type) + " fixes a side of length " +
                          std::to_string(p.fixed_length) + ", not below s - T = " + std::to_string(bound));
        }
    }
    return passed("all patterns fix a side shorter than s - T = " + std::to_string(bound));
}

Verdict check_pattern_faithfulness(const FamilySpec& spec, GrundyEngine& engine, std::size_t n_max) {
    (void)engine;  // move sets come from the shared legality rules, not the table
    if (spec.kind == FamilyKind::CycleOverType) {
        if (!spec.base) return failed("derived family has no base family");
        return inherited(check_pattern_faithfulness(*spec.base, engine, n_max), spec.base->id);
    }
    if (n_max < 2 * spec.window + 1)
        throw InputError("faithfulness bound must be at least 2s + 1 = " + std::to_string(2 * spec.window + 1));
    if (auto wf = check_well_formed(spec); !wf.pass) return failed("ill-formed family: " + wf.detail);
    const auto scan = scan_faithfulness(spec, n_max);
    if (scan.split_table_error) return failed(*scan.split_table_error);
    if (auto first = scan.first()) return failed(first->text, first->where);
    return passed("declared move sets match the engine for n <= " + std::to_string(n_max) + " (" +
                  std::to_string(scan.moves_checked) + " moves)");
}

Verdict check_base_window(const FamilySpec& spec, GrundyEngine& engine) {
    const std::size_t s = spec.window;
    const std::size_t t = spec.period;
    if (t < 1 || s < t) return failed("window requires 1 <= T <= s");
    if (s + 1 < t + spec.first_length())
        return failed("window reaches below n = " + std::to_string(spec.first_length()));
    for (std::size_t i = 1; i <= spec.type_count(); ++i) {
        const std::size_t first = s + 1 - t;
        const auto values = family_sequence(spec, i, first, 2 * s + 1, engine);
        for (std::size_t n = s + 1; n <= 2 * s + 1; ++n) {
            const Nimber here = values[n - first];
            const Nimber back = values[n - t - first];
            if (here != back) {
                std::ostringstream out;
                out << "Nim(" << type_name(i) << "(" << n << ")) = " << here << " but Nim(" << type_name(i) << "("
                    << n - t << ")) = " << back;
                return failed(out.str());
            }
        }
    }
    return passed("Nim(g_i(n)) = Nim(g_i(n - " + std::to_string(t) + ")) for all types and n in [" +
                  std::to_string(s + 1) + ", " + std::to_string(2 * s + 1) + "]");
}

PeriodicityCertificate certify(const FamilySpec& spec, GrundyEngine& engine, std::optional<std::size_t> n_max) {
    PeriodicityCertificate cert;
    cert.family = spec.id;
    cert.rules = spec.rules;
    cert.period = spec.period;
    cert.window = spec.window;

    cert.well_formed = check_well_formed(spec);
    if (!cert.well_formed.pass) {
        const Verdict skipped = failed("not evaluated: family is ill-formed");
        cert.condition1 = cert.condition2 = cert.condition3 = cert.base_window = skipped;
        if (spec.kind == FamilyKind::CycleOverType) cert.derivation = skipped;
        cert.residual_trust = "none: nothing was checked";
        return cert;
    }

    if (spec.kind == FamilyKind::CycleOverType) {
        const auto base_cert = certify(*spec.base, engine, n_max);
        cert.checked_up_to = base_cert.checked_up_to;
        cert.condition1 = inherited(base_cert.condition1, spec.base->id);
        cert.condition2 = inherited(base_cert.condition2, spec.base->id);
        cert.condition3 = inherited(base_cert.condition3, spec.base->id);

        std::string why;
        bool ok = base_cert.pass;
        if (!ok) why = spec.base->id + " is not certified";
        if (ok && spec.period % spec.base->period != 0) {
            ok = false;
            why = "period is not a multiple of the base period " + std::to_string(spec.base->period);
        }
        if (ok && spec.window < spec.base->window + 1) {
            ok = false;
            why = "window must be at least the base window + 1 = " + std::to_string(spec.base->window + 1);
        }
        if (ok) {
            // Base values on [1, s_b + T_b] represent every length.
            const auto& base_seq = base_cert.sequences.at(spec.base_type - 1).values;
            const std::size_t reps = spec.base->window + spec.base->period;
            const bool zero_free =
                std::none_of(base_seq.begin(), base_seq.begin() + static_cast<std::ptrdiff_t>(reps),
                             [](Nimber v) { return v.is_zero(); });
            why = "cycle(n) = mex{Nim(" + spec.base->id + " " + type_name(spec.base_type) + "(n - 1))}; " +
                  (zero_free ? "the base type is never 0, so every cycle has nimber 0"
                             : "the base type takes the value 0 somewhere");
        }
        cert.derivation = ok ? passed(why) : failed(why);
    } else {
        const std::size_t bound = n_max.value_or(default_faithfulness_bound(spec));
        if (bound < 2 * spec.window + 1)
            throw InputError("faithfulness bound must be at least 2s + 1 = " + std::to_string(2 * spec.window + 1));
        cert.checked_up_to = bound;
        const auto scan = scan_faithfulness(spec, bound);
        const auto structural = check_condition1(spec);
        if (scan.split_table_error) {
            cert.condition1 = failed(*scan.split_table_error);
            cert.condition2 = cert.condition3 = failed("not evaluated: split table disagrees with the engine");
        } else {
            cert.condition1 = !structural.pass ? structural
                                               : region_verdict(scan.middle, structural.detail +
                                                                                 "; engine agrees for n <= " +
                                                                                 std::to_string(bound));
            const std::string ok = "short-side invalidity matches the declared patterns for n <= " +
                                   std::to_string(bound);
            cert.condition2 = region_verdict(scan.short_left, ok);
            cert.condition3 = region_verdict(scan.short_right, ok);
        }
    }

    cert.base_window = check_base_window(spec, engine);
    for (std::size_t i = 1; i <= spec.type_count(); ++i) {
        cert.sequences.push_back(CertifiedSequence{
            i, spec.first_length(), family_sequence(spec, i, spec.first_length(), 2 * spec.window + 1, engine)});
    }
    cert.residual_trust = "each invalid-move pattern fixes one side length and matches every n; agreement with the "
                          "engine's move sets was checked for n <= " +
                          std::to_string(cert.checked_up_to);
    cert.pass = cert.well_formed.pass && cert.condition1.pass && cert.condition2.pass && cert.condition3.pass &&
                cert.base_window.pass && (!cert.derivation || cert.derivation->pass);
    return cert;
}

Nimber nimber_at(const PeriodicityCertificate& cert, std::size_t type, std::size_t n) {
    if (!cert.pass) throw InputError("certificate for " + cert.family + " did not pass; refusing lookup");
    if (type < 1 || type > cert.sequences.size())
        throw InputError("type index " + std::to_string(type) + " out of range 1.." +
                         std::to_string(cert.sequences.size()));
    const auto& seq = cert.sequences[type - 1];
    if (n < seq.first_length)
        throw InputError("length " + std::to_string(n) + " is below the first length " +
                         std::to_string(seq.first_length));
    const std::size_t s = cert.window;
    const std::size_t t = cert.period;
    const std::size_t reduced = n <= 2 * s + 1 ? n : s + 1 + (n - s - 1) % t;
    return seq.values.at(reduced - seq.first_length);
}

std::optional<PeriodGuess> suggest_period(const FamilySpec& spec, GrundyEngine& engine, std::size_t n_max,
                                          std::size_t max_period) {
    const std::size_t first = spec.first_length();
    std::vector<std::vector<Nimber>> seqs;
    for (std::size_t i = 1; i <= spec.type_count(); ++i) seqs.push_back(family_sequence(spec, i, first, n_max, engine));
    for (std::size_t t = 1; t <= max_period; ++t) {
        // Smallest s with no violation above it.
        std::size_t s = std::max(t, t + first - 1);
        for (const auto& seq : seqs) {
            for (std::size_t n = n_max; n >= first + t; --n) {
                if (seq[n - first] != seq[n - t - first]) {
                    s = std::max(s, n);
                    break;
                }
            }
        }
        if (2 * s + 1 <= n_max) return PeriodGuess{t, s};
    }
    return std::nullopt;
}

}  // namespace cycles
