#include "ila/netlist.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "ila/serialize.hpp"
#include "ila/terminations.hpp"
#include "ila/theorems.hpp"

namespace ila {

namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based position in the source line
};

// Splits on blanks; '|' is a separator that never reaches the caller.
std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < line.size()) {
        const char c = line[k];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '|') {
            ++k;
            continue;
        }
        const std::size_t start = k;
        while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k])) &&
               line[k] != '|')
            ++k;
        out.push_back({line.substr(start, k - start), start + 1});
    }
    return out;
}

DocumentParse fail(std::string code, std::size_t line, std::size_t column, std::string message) {
    return {std::nullopt, Diagnostic{std::move(code), line, column, std::move(message)}};
}

}  // namespace

std::string Diagnostic::render(bool color) const {
    std::ostringstream os;
    os << line << ':' << column << ": ";
    if (color)
        os << "\x1b[31m" << code << "\x1b[0m";
    else
        os << code;
    os << ": " << message;
    return os.str();
}

DocumentParse parse_document(const std::string& text) {
    NetlistDocument doc;
    std::set<std::string> vertex_set;
    std::map<std::string, std::size_t> edge_index;
    bool in_device = false;
    bool field_seen = false;
    std::size_t device_line = 0;

    std::istringstream stream(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(stream, raw)) {
        ++lineno;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::vector<Token> tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& word = tokens.front().text;

        if (in_device && word != "row" && word != "end")
            return fail("MISSING_END", lineno, tokens.front().column,
                        "device block starting on line " + std::to_string(device_line) +
                            " is not closed");

        if (word == "field") {
            if (tokens.size() != 2)
                return fail("ARG_COUNT", lineno, tokens.front().column,
                            "expected: field rational|gaussian");
            if (field_seen)
                return fail("BAD_FIELD", lineno, tokens[1].column, "duplicate field declaration");
            if (!doc.devices.empty())
                return fail("BAD_FIELD", lineno, tokens.front().column,
                            "field declaration must precede device blocks");
            if (tokens[1].text == "rational")
                doc.mode = FieldMode::Rational;
            else if (tokens[1].text == "gaussian")
                doc.mode = FieldMode::GaussianRational;
            else
                return fail("BAD_FIELD", lineno, tokens[1].column,
                            "unknown field '" + tokens[1].text + "'");
            field_seen = true;
        } else if (word == "node") {
            for (std::size_t k = 1; k < tokens.size(); ++k) {
                if (!vertex_set.insert(tokens[k].text).second)
                    return fail("DUPLICATE_VERTEX", lineno, tokens[k].column,
                                "vertex '" + tokens[k].text + "' declared twice");
                doc.vertices.push_back(tokens[k].text);
            }
        } else if (word == "edge" || word == "port") {
            if (tokens.size() != 4)
                return fail("ARG_COUNT", lineno, tokens.front().column,
                            "expected: " + word + " <label> <tail> <head>");
            const std::string& label = tokens[1].text;
            const std::string& tail = tokens[2].text;
            const std::string& head = tokens[3].text;
            if (!vertex_set.count(tail))
                return fail("UNKNOWN_VERTEX", lineno, tokens[2].column,
                            "unknown vertex '" + tail + "'");
            if (!vertex_set.count(head))
                return fail("UNKNOWN_VERTEX", lineno, tokens[3].column,
                            "unknown vertex '" + head + "'");
            if (edge_index.count(label))
                return fail("DUPLICATE_EDGE", lineno, tokens[1].column,
                            "edge label '" + label + "' declared twice");
            edge_index[label] = doc.edges.size();
            doc.edges.push_back({label, tail, head, word == "port"});
        } else if (word == "device") {
            if (tokens.size() < 3)
                return fail("ARG_COUNT", lineno, tokens.front().column,
                            "expected: device <name> edges(<labels>)");
            std::string spec;
            for (std::size_t k = 2; k < tokens.size(); ++k) {
                if (k > 2) spec += ' ';
                spec += tokens[k].text;
            }
            if (spec.rfind("edges(", 0) != 0 || spec.back() != ')')
                return fail("ARG_COUNT", lineno, tokens[2].column, "expected edges(<labels>)");
            NetlistDocument::DeviceBlock block;
            block.name = tokens[1].text;
            std::istringstream names(spec.substr(6, spec.size() - 7));
            std::string name;
            while (names >> name) {
                const auto it = edge_index.find(name);
                if (it == edge_index.end())
                    return fail("UNKNOWN_EDGE", lineno, tokens[2].column,
                                "device references unknown edge '" + name + "'");
                if (doc.edges[it->second].port)
                    return fail("PORT_IN_DEVICE", lineno, tokens[2].column,
                                "port '" + name + "' cannot carry device rows");
                for (const std::string& seen : block.edges)
                    if (seen == name)
                        return fail("DUPLICATE_DEVICE_EDGE", lineno, tokens[2].column,
                                    "edge '" + name + "' listed twice in one block");
                block.edges.push_back(name);
            }
            doc.devices.push_back(std::move(block));
            in_device = true;
            device_line = lineno;
        } else if (word == "row") {
            if (!in_device)
                return fail("ROW_OUTSIDE_DEVICE", lineno, tokens.front().column,
                            "row outside a device block");
            NetlistDocument::DeviceBlock& block = doc.devices.back();
            const std::size_t want = 2 * block.edges.size() + 1;
            if (tokens.size() - 1 != want)
                return fail("ROW_ARITY", lineno, tokens.front().column,
                            "expected " + std::to_string(want) + " coefficients, got " +
                                std::to_string(tokens.size() - 1));
            std::vector<Scalar> row;
            row.reserve(want);
            for (std::size_t k = 1; k < tokens.size(); ++k) {
                const ScalarParse parsed = Scalar::parse(tokens[k].text, doc.mode);
                if (parsed.div0)
                    return fail("DIV0", lineno, tokens[k].column,
                                "zero denominator in '" + tokens[k].text + "'");
                if (!parsed.value)
                    return fail("BAD_LITERAL", lineno, tokens[k].column,
                                "cannot parse '" + tokens[k].text + "' as a " +
                                    to_string(doc.mode) + " literal");
                row.push_back(*parsed.value);
            }
            block.rows.push_back(std::move(row));
        } else if (word == "end") {
            if (!in_device)
                return fail("STRAY_END", lineno, tokens.front().column,
                            "'end' without an open device block");
            in_device = false;
        } else {
            return fail("UNKNOWN_DIRECTIVE", lineno, tokens.front().column,
                        "unknown directive '" + word + "'");
        }
    }
    if (in_device)
        return fail("MISSING_END", device_line, 1, "device block is never closed");
    return {std::move(doc), std::nullopt};
}

Multiport lower(const NetlistDocument& doc) {
    Multiport n;
    for (const std::string& v : doc.vertices) n.graph.add_vertex(v);
    for (const NetlistDocument::Edge& e : doc.edges) n.graph.add_edge(Label(e.label), e.tail, e.head);

    LabelList internal;
    std::map<std::string, std::size_t> pos;
    for (const NetlistDocument::Edge& e : doc.edges) {
        if (e.port) {
            n.ports.push_back(Label(e.label));
        } else {
            pos[e.label] = internal.size();
            internal.push_back(Label(e.label));
        }
    }

    std::size_t total = 0;
    for (const NetlistDocument::DeviceBlock& b : doc.devices) total += b.rows.size();
    const std::size_t m = internal.size();
    ExactMatrix rows(doc.mode, total, 2 * m + 1);
    std::size_t r = 0;
    for (const NetlistDocument::DeviceBlock& b : doc.devices) {
        const std::size_t w = b.edges.size();
        for (const std::vector<Scalar>& src : b.rows) {
            for (std::size_t j = 0; j < w; ++j) {
                rows.at(r, pos.at(b.edges[j])) = src[j];
                rows.at(r, m + pos.at(b.edges[j])) = src[w + j];
            }
            rows.at(r, 2 * m) = src[2 * w];
            ++r;
        }
    }
    n.device = DeviceCharacteristic::make(doc.mode, std::move(internal), std::move(rows));
    return n;
}

NetworkParse parse_netlist(const std::string& text) {
    DocumentParse doc = parse_document(text);
    if (!doc.ok()) return {std::nullopt, std::move(doc.diagnostic)};
    Multiport n = lower(*doc.document);
    validate(n);
    return {std::move(n), std::nullopt};
}

std::string emit_netlist(const Multiport& n) {
    std::ostringstream out;
    out << "field " << to_string(n.mode()) << "\n";
    if (!n.graph.vertices.empty()) {
        out << "node";
        for (const std::string& v : n.graph.vertices) out << ' ' << v;
        out << "\n";
    }
    const std::set<Label> ports(n.ports.begin(), n.ports.end());
    for (const OrientedGraph::Edge& e : n.graph.edges)
        out << (ports.count(e.label) ? "port " : "edge ") << e.label.str() << ' ' << e.tail << ' '
            << e.head << "\n";

    const LabelList internal = n.internal_edges();
    const ExactMatrix& rows = n.device.rows();
    if (rows.rows() > 0) {
        out << "device d edges(";
        for (std::size_t j = 0; j < internal.size(); ++j)
            out << (j ? " " : "") << internal[j].str();
        out << ")\n";
        const std::size_t m = internal.size();
        for (std::size_t i = 0; i < rows.rows(); ++i) {
            out << "  row";
            for (std::size_t j = 0; j < m; ++j) out << ' ' << rows.at(i, j).str();
            out << " |";
            for (std::size_t j = 0; j < m; ++j) out << ' ' << rows.at(i, m + j).str();
            out << " | " << rows.at(i, 2 * m).str() << "\n";
        }
        out << "end\n";
    }
    return out.str();
}

namespace {

void print_behaviour(std::ostream& os, const PortBehaviour& b) {
    os << "ports:";
    for (const Label& p : b.ports) os << ' ' << p.str();
    os << "\n";
    if (b.affine.is_void()) {
        os << "void: the network admits no solution\n";
        return;
    }
    os << "coordinates:";
    for (const Label& l : b.affine.labels()) os << ' ' << l.str();
    os << "\noffset:";
    for (const Scalar& s : b.affine.offset()) os << ' ' << s.str();
    os << "\nbasis:\n";
    const ExactMatrix& rep = b.affine.translate().rep();
    for (std::size_t i = 0; i < rep.rows(); ++i) {
        os << " ";
        for (std::size_t j = 0; j < rep.cols(); ++j) os << ' ' << rep.at(i, j).str();
        os << "\n";
    }
}

nlohmann::json stationarity_json(const StationarityResult& r, const Scalar& power) {
    return {{"classification", to_string(r.classification)},
            {"delivered_power", power.str()},
            {"ports", label_strings(r.ports)},
            {"v", scalar_strings(r.port_v)},
            {"i", scalar_strings(r.port_i)},
            {"lambda", scalar_strings(r.lambda)}};
}

void print_stationarity(std::ostream& os, const StationarityResult& r, const Scalar& power) {
    os << "classification: " << to_string(r.classification) << "\n";
    os << "ports:";
    for (const Label& p : r.ports) os << ' ' << p.str();
    os << "\nv:";
    for (const Scalar& s : r.port_v) os << ' ' << s.str();
    os << "\ni:";
    for (const Scalar& s : r.port_i) os << ' ' << s.str();
    os << "\nlambda:";
    for (const Scalar& s : r.lambda) os << ' ' << s.str();
    os << "\ndelivered power: " << power.str() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact multiport network analysis over rational fields"};
    app.name("ila");
    app.require_subcommand(1);

    std::string file, outfile, suite;
    std::string method = "eliminate";
    bool json = false, serial = false;
    int trials = 100, max_size = 4;
    std::uint64_t seed = 1;

    const auto add_common = [&](CLI::App* sub, bool with_file) {
        if (with_file) sub->add_option("file", file, "netlist input")->required();
        sub->add_flag("--json", json, "machine-readable output");
        sub->add_option("-o,--output", outfile, "write the result to a file");
    };
    CLI::App* beh = app.add_subcommand("behaviour", "port behaviour of the network");
    add_common(beh, true);
    beh->add_option("--method", method, "adjoint-gyrator or eliminate")
        ->check(CLI::IsMember({"adjoint-gyrator", "eliminate"}));
    CLI::App* reg = app.add_subcommand("regular", "test regularity");
    add_common(reg, true);
    CLI::App* adj = app.add_subcommand("adjoint", "emit the adjoint network");
    add_common(adj, true);
    CLI::App* maxp = app.add_subcommand("maxpower", "stationary power transfer point");
    add_common(maxp, true);
    CLI::App* chk = app.add_subcommand("check", "parse and report structural properties");
    add_common(chk, true);
    CLI::App* ver = app.add_subcommand("verify", "randomized identity suites");
    add_common(ver, false);
    ver->add_option("--suite", suite, "iit or idt")
        ->required()
        ->check(CLI::IsMember({"iit", "idt"}));
    ver->add_option("--trials", trials, "trials per field mode")->check(CLI::PositiveNumber);
    ver->add_option("--seed", seed, "base seed");
    ver->add_option("--max-size", max_size, "largest index-set size")->check(CLI::NonNegativeNumber);
    ver->add_flag("--serial", serial, "disable trial parallelism");

    std::vector<const char*> argv;
    argv.push_back("ila");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "ila: " << e.what() << "\n";
        return 2;
    }

    const char* color_env = std::getenv("ILA_COLOR");
    const bool color = color_env != nullptr && std::string(color_env) == "1";

    const auto load = [&](Multiport& n) -> int {
        std::ifstream f(file);
        if (!f) {
            err << file << ": cannot open\n";
            return 2;
        }
        std::stringstream buf;
        buf << f.rdbuf();
        NetworkParse parsed = parse_netlist(buf.str());
        if (!parsed.ok()) {
            err << file << ':' << parsed.diagnostic->render(color) << "\n";
            return 2;
        }
        n = std::move(*parsed.network);
        return 0;
    };

    std::ostringstream result;
    int code = 0;
    try {
        if (app.got_subcommand(beh)) {
            Multiport n;
            if (const int rc = load(n)) return rc;
            PortBehaviour b;
            if (method == "adjoint-gyrator") {
                try {
                    b = thevenin_norton(n);
                } catch (const NotRegularError& e) {
                    if (json)
                        result << nlohmann::json{{"error", "not-regular"},
                                                 {"solve", to_string(e.report_kind())}}
                                      .dump(2)
                               << "\n";
                    else
                        result << e.what() << "\n";
                    code = 1;
                }
            } else {
                b = port_behaviour_eliminate(n);
            }
            if (code == 0) {
                if (json)
                    result << space_json(b.affine).dump(2) << "\n";
                else
                    print_behaviour(result, b);
            }
        } else if (app.got_subcommand(reg)) {
            Multiport n;
            if (const int rc = load(n)) return rc;
            const bool ok = is_regular(n);
            if (json)
                result << nlohmann::json{{"regular", ok}}.dump(2) << "\n";
            else
                result << (ok ? "regular" : "not regular") << "\n";
            code = ok ? 0 : 1;
        } else if (app.got_subcommand(adj)) {
            Multiport n;
            if (const int rc = load(n)) return rc;
            const std::string text = emit_netlist(adjoint_multiport(n));
            if (json)
                result << nlohmann::json{{"netlist", text}}.dump(2) << "\n";
            else
                result << text;
        } else if (app.got_subcommand(maxp)) {
            Multiport n;
            if (const int rc = load(n)) return rc;
            const PortBehaviour b = port_behaviour_eliminate(n);
            StationarityResult stat;
            if (!b.affine.is_void()) stat = stationarity_solve(b);
            const StationarityResult alt = maxpower_via_adjoint(n);
            const bool none_beh =
                stat.classification == StationarityResult::Classification::NoStationaryPoint;
            const bool none_adj =
                alt.classification == StationarityResult::Classification::NoStationaryPoint;
            if (none_beh != none_adj)
                throw InternalInconsistencyError(
                    "stationarity routes disagree on existence of a solution");
            if (none_beh) {
                if (json)
                    result << nlohmann::json{{"classification", to_string(stat.classification)}}
                                  .dump(2)
                           << "\n";
                else
                    result << "no stationary point\n";
                code = 1;
            } else {
                const Scalar via_behaviour = delivered_power(stat.port_v, stat.port_i);
                const Scalar via_adjoint = delivered_power(alt.port_v, alt.port_i);
                if (via_behaviour != via_adjoint)
                    throw InternalInconsistencyError(
                        "stationary power differs between routes: " + via_behaviour.str() +
                        " vs " + via_adjoint.str());
                if (json)
                    result << stationarity_json(stat, via_behaviour).dump(2) << "\n";
                else
                    print_stationarity(result, stat, via_behaviour);
            }
        } else if (app.got_subcommand(chk)) {
            Multiport n;
            if (const int rc = load(n)) return rc;
            const IndexedVectorSpace device = n.device.translate();
            const PortBehaviour b = port_behaviour_eliminate(n);
            const nlohmann::json report = {
                {"mode", to_string(n.mode())},
                {"vertices", n.graph.vertices.size()},
                {"edges", n.graph.edges.size()},
                {"ports", n.ports.size()},
                {"device_rows", n.device.rows().rows()},
                {"consistent_all_sources", is_consistent_all_sources(n)},
                {"unique_interior", has_unique_interior(n)},
                {"regular", is_regular(n)},
                {"reciprocal", is_reciprocal(device)},
                {"dirac", is_dirac(device)},
                {"ideal_transformer", is_ideal_transformer(device)},
                {"passive", is_passive(device)},
                {"strictly_passive", is_strictly_passive(device)},
                {"behaviour_void", b.affine.is_void()},
                {"behaviour_proper", is_proper(b.affine)},
            };
            if (json) {
                result << report.dump(2) << "\n";
            } else {
                for (const auto& [key, value] : report.items())
                    result << key << ": "
                           << (value.is_boolean() ? (value.get<bool>() ? "yes" : "no")
                                                  : value.dump())
                           << "\n";
            }
        } else if (app.got_subcommand(ver)) {
            nlohmann::json suites = nlohmann::json::array();
            bool all_ok = true;
            for (const FieldMode mode : {FieldMode::Rational, FieldMode::GaussianRational}) {
                const SuiteResult r = suite == "idt"
                                          ? run_idt_suite(mode, trials, seed, max_size, !serial)
                                          : run_iit_suite(mode, trials, seed, max_size, !serial);
                all_ok = all_ok && r.ok();
                suites.push_back({{"suite", suite},
                                  {"mode", to_string(mode)},
                                  {"trials", r.trials},
                                  {"failures", r.failures}});
                if (!json) {
                    result << suite << ' ' << to_string(mode) << ": " << (r.trials - r.failures)
                           << '/' << r.trials << "\n";
                    if (!r.ok()) result << "  first failure: " << r.detail << "\n";
                }
            }
            if (json) result << nlohmann::json{{"suites", suites}}.dump(2) << "\n";
            code = all_ok ? 0 : 1;
        }
    } catch (const InternalInconsistencyError& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }

    if (!outfile.empty()) {
        std::ofstream f(outfile, std::ios::binary);
        if (!f) {
            err << outfile << ": cannot write\n";
            return 2;
        }
        f << result.str();
    } else {
        out << result.str();
    }
    return code;
}

}  // namespace ila
