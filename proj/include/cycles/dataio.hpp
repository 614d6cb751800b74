// Text formats: line states, graph files, nimber sequence reports, fixture
// tables, family specs and periodicity certificates.
//
// Every emitter is byte-deterministic for a given value; JSON documents use a
// fixed key order and end with a newline.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cycles/catalog.hpp"
#include "cycles/core.hpp"
#include "cycles/engine.hpp"
#include "cycles/periodicity.hpp"

namespace cycles {

inline constexpr std::string_view kCertificateSchema = "cycles-cert/1";
inline constexpr std::string_view kFixtureSchema = "cycles-fixtures/1";
inline constexpr std::string_view kFamilySchema = "cycles-family/1";

// ------------------------------------------------------------ line states

/// Edge string over '-', '>' and '<'; boundary tokens open|in|out.
LineState parse_line_state(std::string_view edges, std::string_view left, std::string_view right);
CycleState parse_cycle_state(std::string_view edges);
std::string render_edges(std::span<const EdgeMark> edges);

/// "3>", "3 >", "3 <", "3 forward", "3 backward".
Move parse_move(std::string_view text);

// ------------------------------------------------------------------ graphs

/// One edge per line, "u v" or "u v >" (u -> v) or "u v <" (v -> u), with an
/// optional "exempt: id id ..." line. Blank lines and '#' comments are skipped.
GraphState parse_graph(std::string_view text);
std::string render_graph(const GraphState& graph);

// --------------------------------------------------------------- sequences

enum class SequenceFormat { Csv, Json };
SequenceFormat parse_sequence_format(std::string_view token);

struct SequenceReport {
    std::string family;
    RuleSet rules = RuleSet::Standard;
    std::size_t type = 1;
    std::size_t first = 1;
    std::size_t last = 0;  // last < first is an empty range
    std::vector<Nimber> values;
    /// Per-index reference values; an empty optional marks a missing entry.
    std::optional<std::vector<std::optional<Nimber>>> expected;

    std::size_t range_size() const noexcept { return last >= first ? last - first + 1 : 0; }
};

std::string emit_sequence(const SequenceReport& report, SequenceFormat format);

// ---------------------------------------------------------------- fixtures

FixtureTable parse_fixture_table(std::string_view text);
std::string render_fixture_table(const FixtureTable& table);

enum class ReportFormat { Text, Json };
ReportFormat parse_report_format(std::string_view token);
std::string render_comparison(const ComparisonReport& report, ReportFormat format);

// ------------------------------------------------------ families and certs

/// A full family document, or {"extends": "<builtin>", ...overrides}.
FamilySpec parse_family_spec(std::string_view text);
std::string render_family_spec(const FamilySpec& spec);

std::string render_certificate(const PeriodicityCertificate& cert);
PeriodicityCertificate parse_certificate(std::string_view text);

}  // namespace cycles
