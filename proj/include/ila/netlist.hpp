#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ila/multiport.hpp"

namespace ila {

// Line-oriented circuit description.  Directives: `field`, `node`, `edge`,
// `port`, `device ... end` with `row` lines; `#` starts a comment.  Row
// coefficients run over the block's edges in declared order, voltages first,
// then currents, then the source term; `|` separators between the groups are
// decorative.
struct NetlistDocument {
    struct Edge {
        std::string label, tail, head;
        bool port = false;
    };
    struct DeviceBlock {
        std::string name;
        std::vector<std::string> edges;
        std::vector<std::vector<Scalar>> rows;  // each 2*|edges|+1 wide
    };

    FieldMode mode = FieldMode::Rational;
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    std::vector<DeviceBlock> devices;
};

struct Diagnostic {
    std::string code;  // stable identifier (UNKNOWN_VERTEX, ROW_ARITY, DIV0, ...)
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;

    // "line:col: CODE: message", with the code highlighted when color is on.
    std::string render(bool color) const;
};

struct DocumentParse {
    std::optional<NetlistDocument> document;
    std::optional<Diagnostic> diagnostic;
    bool ok() const { return document.has_value(); }
};

struct NetworkParse {
    std::optional<Multiport> network;
    std::optional<Diagnostic> diagnostic;
    bool ok() const { return network.has_value(); }
};

DocumentParse parse_document(const std::string& text);
// Device blocks are stacked over the full internal edge list; edges no block
// mentions stay unconstrained.
Multiport lower(const NetlistDocument& doc);
NetworkParse parse_netlist(const std::string& text);

// Canonical form: one node line, edges in graph order (`port` lines for port
// edges), a single device block over all internal edges holding the normalized
// rows.  parse(emit(n)) reproduces n whenever n's ports follow the edge
// declaration order, and emit(parse(text)) is idempotent.
std::string emit_netlist(const Multiport& n);

// Command-line entry point shared by the binary and the tests.  `args` holds
// the arguments after the program name.  Writes results to `out`, diagnostics
// and errors to `err`.  Returns 0 on success, 1 when the analysis comes back
// negative (not regular, failed verification, no stationary point), 2 on
// parse/usage errors, 3 when an internal cross-check fails.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ila
