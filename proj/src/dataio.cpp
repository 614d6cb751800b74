#include "cycles/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "json.hpp"

namespace cycles {

namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        const auto end = text.find('\n');
        lines.push_back(text.substr(0, end));
        if (end == std::string_view::npos) break;
        text.remove_prefix(end + 1);
    }
    return lines;
}

std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) words.push_back(s.substr(start, i - start));
    }
    return words;
}

std::optional<std::size_t> to_index(std::string_view s) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return value;
}

std::size_t require_index(std::string_view s, const std::string& where) {
    if (auto v = to_index(trim(s))) return *v;
    throw InputError(where + ": expected a non-negative integer, got '" + std::string(s) + "'");
}

std::vector<Nimber> parse_nimber_list(std::string_view s, const std::string& where) {
    std::vector<Nimber> values;
    s = trim(s);
    if (s.empty()) return values;
    while (true) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        values.emplace_back(static_cast<std::uint32_t>(require_index(item, where)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return values;
}

std::string join(const std::vector<Nimber>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i].value());
    }
    return out;
}

char mark_char(EdgeMark m) {
    switch (m) {
    case EdgeMark::Forward: return '>';
    case EdgeMark::Backward: return '<';
    default: return '-';
    }
}

std::vector<EdgeMark> parse_edge_string(std::string_view edges) {
    if (edges.empty()) throw InputError("edge string is empty");
    std::vector<EdgeMark> marks;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        switch (edges[i]) {
        case '-': marks.push_back(EdgeMark::Unmarked); break;
        case '>': marks.push_back(EdgeMark::Forward); break;
        case '<': marks.push_back(EdgeMark::Backward); break;
        default:
            throw InputError("bad edge character '" + std::string(1, edges[i]) + "' at position " +
                             std::to_string(i));
        }
    }
    return marks;
}

std::vector<std::uint32_t> raw(const std::vector<Nimber>& values) {
    std::vector<std::uint32_t> out;
    out.reserve(values.size());
    for (Nimber v : values) out.push_back(v.value());
    return out;
}

std::vector<Nimber> nimbers_from(const Json& array) {
    std::vector<Nimber> out;
    for (const auto& v : array) out.emplace_back(v.get<std::uint32_t>());
    return out;
}

Json json_counterexample(const Counterexample& cx) {
    return Json{{"type", cx.type},
                {"n", cx.length},
                {"edge", cx.move.edge},
                {"direction", cx.move.direction == Direction::Forward ? "forward" : "backward"},
                {"engine_legal", cx.engine_legal},
                {"spec_legal", cx.spec_legal}};
}

Json json_verdict(const Verdict& v) {
    Json j{{"pass", v.pass}, {"detail", v.detail}};
    if (v.counterexample) j["counterexample"] = json_counterexample(*v.counterexample);
    return j;
}

Verdict verdict_from(const Json& j) {
    Verdict v{j.at("pass").get<bool>(), j.at("detail").get<std::string>(), std::nullopt};
    if (j.contains("counterexample")) {
        const auto& c = j.at("counterexample");
        v.counterexample = Counterexample{
            c.at("type").get<std::size_t>(),
            c.at("n").get<std::size_t>(),
            Move{c.at("edge").get<std::size_t>(),
                 c.at("direction").get<std::string>() == "forward" ? Direction::Forward : Direction::Backward},
            c.at("engine_legal").get<bool>(), c.at("spec_legal").get<bool>()};
    }
    return v;
}

Json parse_json(std::string_view text, std::string_view what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Side parse_side(const std::string& s) {
    if (s == "left") return Side::Left;
    if (s == "right") return Side::Right;
    throw InputError("pattern side must be left or right, got '" + s + "'");
}

}  // namespace

// ------------------------------------------------------------ line states

LineState parse_line_state(std::string_view edges, std::string_view left, std::string_view right) {
    return LineState(parse_edge_string(edges), parse_boundary(left), parse_boundary(right));
}

CycleState parse_cycle_state(std::string_view edges) { return CycleState(parse_edge_string(edges)); }

std::string render_edges(std::span<const EdgeMark> edges) {
    std::string out;
    for (EdgeMark m : edges) out += mark_char(m);
    return out;
}

Move parse_move(std::string_view text) {
    text = trim(text);
    std::size_t digits = 0;
    while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits]))) ++digits;
    if (digits == 0) throw InputError("move must start with an edge index, e.g. '3 >'");
    const std::size_t edge = require_index(text.substr(0, digits), "move");
    const auto dir = trim(text.substr(digits));
    if (dir == ">" || dir == "f" || dir == "forward") return Move{edge, Direction::Forward};
    if (dir == "<" || dir == "b" || dir == "backward") return Move{edge, Direction::Backward};
    throw InputError("move direction must be '>' or '<', got '" + std::string(dir) + "'");
}

// ------------------------------------------------------------------ graphs

GraphState parse_graph(std::string_view text) {
    std::vector<GraphEdge> edges;
    std::vector<std::size_t> exempt;
    std::size_t vertex_count = 0;
    const auto lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::string where = "graph line " + std::to_string(ln + 1);
        auto line = lines[ln];
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.starts_with("exempt:")) {
            for (auto word : split_words(line.substr(7))) {
                exempt.push_back(require_index(word, where));
                vertex_count = std::max(vertex_count, exempt.back() + 1);
            }
            continue;
        }
        const auto words = split_words(line);
        if (words.size() < 2 || words.size() > 3) throw InputError(where + ": expected 'u v [<|>]'");
        GraphEdge e{require_index(words[0], where), require_index(words[1], where), EdgeMark::Unmarked};
        if (words.size() == 3) {
            if (words[2] == ">") e.mark = EdgeMark::Forward;
            else if (words[2] == "<") e.mark = EdgeMark::Backward;
            else throw InputError(where + ": direction must be '<' or '>'");
        }
        if (e.u == e.v) throw InputError(where + ": self-loops are not allowed");
        vertex_count = std::max({vertex_count, e.u + 1, e.v + 1});
        edges.push_back(e);
    }
    if (edges.empty()) throw InputError("graph has no edges");
    return GraphState(vertex_count, edges, exempt);
}

std::string render_graph(const GraphState& graph) {
    std::ostringstream out;
    const auto exempt = graph.exempt_vertices();
    if (!exempt.empty()) {
        out << "exempt:";
        for (auto v : exempt) out << ' ' << v;
        out << '\n';
    }
    for (std::size_t i = 0; i < graph.edge_count(); ++i) {
        const auto e = graph.edge(i);
        out << e.u << ' ' << e.v;
        if (e.mark != EdgeMark::Unmarked) out << ' ' << mark_char(e.mark);
        out << '\n';
    }
    return out.str();
}

// --------------------------------------------------------------- sequences

SequenceFormat parse_sequence_format(std::string_view token) {
    if (token == "csv") return SequenceFormat::Csv;
    if (token == "json") return SequenceFormat::Json;
    throw InputError("unknown format '" + std::string(token) + "' (expected csv|json)");
}

std::string emit_sequence(const SequenceReport& report, SequenceFormat format) {
    const std::size_t count = report.range_size();
    if (report.values.size() != count) throw InputError("sequence report values do not cover its range");
    if (report.expected && report.expected->size() != count)
        throw InputError("sequence report expected values do not cover its range");

    auto matches = [&](std::size_t j) {
        const auto& e = (*report.expected)[j];
        return e.has_value() && *e == report.values[j];
    };

    if (format == SequenceFormat::Csv) {
        std::string out = report.expected ? "n,value,expected,match\n" : "n,value\n";
        for (std::size_t j = 0; j < count; ++j) {
            out += std::to_string(report.first + j) + "," + std::to_string(report.values[j].value());
            if (report.expected) {
                const auto& e = (*report.expected)[j];
                out += "," + (e ? std::to_string(e->value()) : std::string()) + (matches(j) ? ",true" : ",false");
            }
            out += '\n';
        }
        return out;
    }

    Json j{{"family", report.family},
           {"rules", std::string(to_string(report.rules))},
           {"type", report.type},
           {"first", report.first},
           {"last", report.last},
           {"values", raw(report.values)}};
    if (report.expected) {
        Json expected = Json::array();
        Json match = Json::array();
        for (std::size_t i = 0; i < count; ++i) {
            const auto& e = (*report.expected)[i];
            expected.push_back(e ? Json(e->value()) : Json(nullptr));
            match.push_back(matches(i));
        }
        j["expected"] = std::move(expected);
        j["match"] = std::move(match);
    }
    return j.dump() + "\n";
}

// ---------------------------------------------------------------- fixtures

FixtureTable parse_fixture_table(std::string_view text) {
    FixtureTable table;
    bool have_schema = false;
    bool have_family = false;
    bool have_rules = false;
    FixtureSeries* current = nullptr;
    const auto lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::string where = "fixture line " + std::to_string(ln + 1);
        const auto line = trim(lines[ln]);
        if (line.empty() || line.front() == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw InputError(where + ": expected 'key: value'");
        const auto key = trim(line.substr(0, colon));
        const auto value = trim(line.substr(colon + 1));
        if (key == "schema") {
            if (value != kFixtureSchema) throw InputError(where + ": unsupported schema '" + std::string(value) + "'");
            have_schema = true;
        } else if (key == "family") {
            table.family = value;
            have_family = true;
        } else if (key == "rules") {
            table.rules = parse_rule_set(value);
            have_rules = true;
        } else if (key == "note") {
            table.note = value;
        } else if (key == "type") {
            table.series.push_back(FixtureSeries{require_index(value, where), 1, {}, {}});
            current = &table.series.back();
        } else if (current == nullptr) {
            throw InputError(where + ": '" + std::string(key) + "' before any 'type:' line");
        } else if (key == "start") {
            current->first_length = require_index(value, where);
        } else if (key == "caveat") {
            current->caveat = value;
        } else if (key == "values") {
            current->values = parse_nimber_list(value, where);
        } else {
            throw InputError(where + ": unknown key '" + std::string(key) + "'");
        }
    }
    if (!have_schema || !have_family || !have_rules)
        throw InputError("fixture table needs schema, family and rules lines");
    return table;
}

std::string render_fixture_table(const FixtureTable& table) {
    std::string out = "schema: " + std::string(kFixtureSchema) + "\nfamily: " + table.family +
                      "\nrules: " + std::string(to_string(table.rules)) + "\n";
    if (!table.note.empty()) out += "note: " + table.note + "\n";
    for (const auto& s : table.series) {
        out += "\ntype: " + std::to_string(s.type) + "\nstart: " + std::to_string(s.first_length) + "\n";
        if (!s.caveat.empty()) out += "caveat: " + s.caveat + "\n";
        out += "values: " + join(s.values) + "\n";
    }
    return out;
}

ReportFormat parse_report_format(std::string_view token) {
    if (token == "text") return ReportFormat::Text;
    if (token == "json") return ReportFormat::Json;
    throw InputError("unknown format '" + std::string(token) + "' (expected text|json)");
}

std::string render_comparison(const ComparisonReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) {
        Json series = Json::array();
        for (const auto& s : report.series) {
            Json divergences = Json::array();
            for (const auto& d : s.divergences)
                divergences.push_back(Json{{"n", d.n}, {"engine", d.engine.value()}, {"fixture", d.fixture.value()}});
            Json entry{{"type", s.type},
                       {"first", s.first_length},
                       {"compared", s.compared},
                       {"exact", s.exact()},
                       {"divergences", std::move(divergences)}};
            if (s.alignment) entry["alignment"] = Json{{"at", s.alignment->at}, {"skipped", s.alignment->skipped}};
            if (!s.caveat.empty()) entry["caveat"] = s.caveat;
            series.push_back(std::move(entry));
        }
        Json j{{"family", report.family},
               {"rules", std::string(to_string(report.rules))},
               {"all_exact", report.all_exact()},
               {"series", std::move(series)}};
        return dump(j);
    }

    std::ostringstream out;
    out << "family: " << report.family << " (" << to_string(report.rules) << ")\n";
    std::size_t exact = 0;
    for (const auto& s : report.series) {
        const std::size_t last = s.first_length + s.compared - 1;
        out << "type " << s.type << " n=" << s.first_length << ".." << last << ": ";
        if (s.exact()) {
            ++exact;
            out << "all " << s.compared << " entries match\n";
            continue;
        }
        out << s.compared - s.divergences.size() << "/" << s.compared << " match, " << s.divergences.size()
            << " divergent\n";
        for (const auto& d : s.divergences) out << "  n=" << d.n << " engine=" << d.engine << " fixture=" << d.fixture << "\n";
        if (s.alignment) {
            out << "  fixture equals the engine sequence with n=" << s.alignment->at << ".."
                << s.alignment->at + s.alignment->skipped - 1 << " omitted\n";
        }
        if (!s.caveat.empty()) out << "  caveat: " << s.caveat << "\n";
    }
    out << "summary: " << exact << " of " << report.series.size() << " types match exactly\n";
    return out.str();
}

// ------------------------------------------------------ families and certs

FamilySpec parse_family_spec(std::string_view text) {
    const Json j = parse_json(text, "family spec");
    if (!j.is_object()) throw InputError("family spec: top level must be an object");
    try {
        if (j.contains("schema") && j.at("schema").get<std::string>() != kFamilySchema)
            throw InputError("family spec: unsupported schema '" + j.at("schema").get<std::string>() + "'");
        FamilySpec spec;
        if (j.contains("extends")) {
            spec = builtin(j.at("extends").get<std::string>());
        } else {
            for (const char* key : {"id", "rules", "period", "window"})
                if (!j.contains(key)) throw InputError(std::string("family spec: missing '") + key + "'");
        }
        if (j.contains("id")) spec.id = j.at("id").get<std::string>();
        if (j.contains("rules")) spec.rules = parse_rule_set(j.at("rules").get<std::string>());
        if (j.contains("kind")) {
            const auto kind = j.at("kind").get<std::string>();
            if (kind == "segments") spec.kind = FamilyKind::Segments;
            else if (kind == "cycle-over-type") spec.kind = FamilyKind::CycleOverType;
            else throw InputError("family spec: unknown kind '" + kind + "'");
        }
        if (j.contains("types")) {
            spec.types.clear();
            for (const auto& t : j.at("types")) {
                if (!t.is_array() || t.size() != 2) throw InputError("family spec: each type is [left, right]");
                spec.types.push_back({parse_boundary(t[0].get<std::string>()), parse_boundary(t[1].get<std::string>())});
            }
        }
        if (j.contains("splits")) {
            spec.splits.clear();
            for (const auto& row : j.at("splits")) {
                if (!row.is_array() || row.size() != 2)
                    throw InputError("family spec: each split row is [[p,q] forward, [p,q] backward]");
                std::array<SplitPair, 2> pair{};
                for (std::size_t d = 0; d < 2; ++d) {
                    if (!row[d].is_array() || row[d].size() != 2) throw InputError("family spec: a split is [p, q]");
                    pair[d] = SplitPair{row[d][0].get<std::size_t>(), row[d][1].get<std::size_t>()};
                }
                spec.splits.push_back(pair);
            }
        }
        if (j.contains("invalid_patterns")) {
            spec.invalid_patterns.clear();
            for (const auto& p : j.at("invalid_patterns")) {
                const auto& split = p.at("split");
                if (!split.is_array() || split.size() != 2) throw InputError("family spec: a split is [p, q]");
                spec.invalid_patterns.push_back(InvalidPattern{
                    p.at("type").get<std::size_t>(),
                    SplitPair{split[0].get<std::size_t>(), split[1].get<std::size_t>()},
                    parse_side(p.at("side").get<std::string>()), p.at("length").get<std::size_t>()});
            }
        }
        if (j.contains("period")) spec.period = j.at("period").get<std::size_t>();
        if (j.contains("window")) spec.window = j.at("window").get<std::size_t>();
        if (j.contains("base")) spec.base = std::make_shared<const FamilySpec>(builtin(j.at("base").get<std::string>()));
        if (j.contains("base_type")) spec.base_type = j.at("base_type").get<std::size_t>();
        return spec;
    } catch (const Json::exception& e) {
        throw InputError(std::string("family spec: ") + e.what());
    }
}

std::string render_family_spec(const FamilySpec& spec) {
    Json types = Json::array();
    for (const auto& t : spec.types)
        types.push_back(Json::array({std::string(to_string(t.left)), std::string(to_string(t.right))}));
    Json splits = Json::array();
    for (const auto& row : spec.splits)
        splits.push_back(Json::array({Json::array({row[0].p, row[0].q}), Json::array({row[1].p, row[1].q})}));
    Json patterns = Json::array();
    for (const auto& p : spec.invalid_patterns) {
        patterns.push_back(Json{{"type", p.type},
                                {"split", Json::array({p.split.p, p.split.q})},
                                {"side", p.side == Side::Left ? "left" : "right"},
                                {"length", p.fixed_length}});
    }
    Json j{{"schema", std::string(kFamilySchema)},
           {"id", spec.id},
           {"rules", std::string(to_string(spec.rules))},
           {"kind", spec.kind == FamilyKind::Segments ? "segments" : "cycle-over-type"},
           {"types", std::move(types)},
           {"splits", std::move(splits)},
           {"invalid_patterns", std::move(patterns)},
           {"period", spec.period},
           {"window", spec.window}};
    if (spec.kind == FamilyKind::CycleOverType && spec.base) {
        j["base"] = spec.base->id;
        j["base_type"] = spec.base_type;
    }
    return dump(j);
}

std::string render_certificate(const PeriodicityCertificate& cert) {
    Json verdicts{{"well_formed", json_verdict(cert.well_formed)},
                  {"condition1", json_verdict(cert.condition1)},
                  {"condition2", json_verdict(cert.condition2)},
                  {"condition3", json_verdict(cert.condition3)},
                  {"base_window", json_verdict(cert.base_window)}};
    if (cert.derivation) verdicts["derivation"] = json_verdict(*cert.derivation);
    Json sequences = Json::array();
    for (const auto& s : cert.sequences)
        sequences.push_back(Json{{"type", s.type}, {"first", s.first_length}, {"values", raw(s.values)}});
    Json j{{"schema", std::string(kCertificateSchema)},
           {"family", cert.family},
           {"rules", std::string(to_string(cert.rules))},
           {"period", cert.period},
           {"window", cert.window},
           {"checked_up_to", cert.checked_up_to},
           {"verdicts", std::move(verdicts)},
           {"sequences", std::move(sequences)},
           {"residual_trust", cert.residual_trust},
           {"pass", cert.pass}};
    return dump(j);
}

PeriodicityCertificate parse_certificate(std::string_view text) {
    const Json j = parse_json(text, "certificate");
    try {
        if (j.at("schema").get<std::string>() != kCertificateSchema)
            throw InputError("certificate: unsupported schema '" + j.at("schema").get<std::string>() + "'");
        PeriodicityCertificate cert;
        cert.family = j.at("family").get<std::string>();
        cert.rules = parse_rule_set(j.at("rules").get<std::string>());
        cert.period = j.at("period").get<std::size_t>();
        cert.window = j.at("window").get<std::size_t>();
        cert.checked_up_to = j.at("checked_up_to").get<std::size_t>();
        const auto& v = j.at("verdicts");
        cert.well_formed = verdict_from(v.at("well_formed"));
        cert.condition1 = verdict_from(v.at("condition1"));
        cert.condition2 = verdict_from(v.at("condition2"));
        cert.condition3 = verdict_from(v.at("condition3"));
        cert.base_window = verdict_from(v.at("base_window"));
        if (v.contains("derivation")) cert.derivation = verdict_from(v.at("derivation"));
        for (const auto& s : j.at("sequences")) {
            cert.sequences.push_back(CertifiedSequence{s.at("type").get<std::size_t>(), s.at("first").get<std::size_t>(),
                                                       nimbers_from(s.at("values"))});
        }
        cert.residual_trust = j.at("residual_trust").get<std::string>();
        cert.pass = j.at("pass").get<bool>();
        return cert;
    } catch (const Json::exception& e) {
        throw InputError(std::string("certificate: ") + e.what());
    }
}

}  // namespace cycles
