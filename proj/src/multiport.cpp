#include "ila/multiport.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ila {

DeviceCharacteristic DeviceCharacteristic::make(FieldMode mode, LabelList edges,
                                                ExactMatrix rows_with_rhs) {
    if (rows_with_rhs.cols() != 2 * edges.size() + 1)
        throw SpaceError("device rows must have 2*|edges|+1 columns");
    for (const Label& e : edges)
        if (e.decoration != Decoration::Plain)
            throw SpaceError("device edges must be plain labels");
    DeviceCharacteristic d;
    d.mode_ = mode;
    d.edges_ = std::move(edges);
    const RrefResult r = rref(rows_with_rhs);
    d.rows_ = r.matrix;
    d.inconsistent_ = !r.pivots.empty() && r.pivots.back() == rows_with_rhs.cols() - 1;
    return d;
}

DeviceCharacteristic DeviceCharacteristic::unconstrained(FieldMode mode, LabelList edges) {
    const std::size_t n = edges.size();
    return make(mode, std::move(edges), ExactMatrix(mode, 0, 2 * n + 1));
}

namespace {

// Labels of the voltage/current variable pairs of an edge list, in the
// device's column order (all voltages, then all currents).
LabelList device_variables(const LabelList& edges) {
    return concat(primed(edges), doubleprimed(edges));
}

}  // namespace

DeviceCharacteristic DeviceCharacteristic::from_space(const IndexedVectorSpace& v,
                                                      LabelList edges) {
    const LabelList vars = device_variables(edges);
    if (sorted_labels(vars) != v.labels())
        throw SpaceError("device space does not match the edge pair labels");
    const ExactMatrix c = perp(v).rep();  // equations of v (bilinear kernel form)
    ExactMatrix rows(v.mode(), c.rows(), vars.size() + 1);
    for (std::size_t j = 0; j < vars.size(); ++j) {
        const std::size_t cj = v.index_of(vars[j]);
        for (std::size_t i = 0; i < c.rows(); ++i) rows.at(i, j) = c.at(i, cj);
    }
    return make(v.mode(), std::move(edges), std::move(rows));
}

IndexedAffineSpace DeviceCharacteristic::solution_space() const {
    const LabelList vars = device_variables(edges_);
    std::vector<std::size_t> mn_cols(vars.size());
    for (std::size_t j = 0; j < vars.size(); ++j) mn_cols[j] = j;
    ExactMatrix c = rows_.select_columns(mn_cols);
    std::vector<Scalar> d;
    d.reserve(rows_.rows());
    for (std::size_t i = 0; i < rows_.rows(); ++i) d.push_back(rows_.at(i, vars.size()));
    return IndexedAffineSpace::from_equations(mode_, vars, c, d);
}

IndexedVectorSpace DeviceCharacteristic::translate() const {
    const LabelList vars = device_variables(edges_);
    std::vector<std::size_t> mn_cols(vars.size());
    for (std::size_t j = 0; j < vars.size(); ++j) mn_cols[j] = j;
    return IndexedVectorSpace::from_rep(mode_, vars,
                                        nullspace_basis(rows_.select_columns(mn_cols)));
}

DeviceCharacteristic DeviceCharacteristic::homogeneous() const {
    ExactMatrix rows = rows_;
    for (std::size_t i = 0; i < rows.rows(); ++i)
        rows.at(i, rows.cols() - 1) = Scalar(mode_);
    return make(mode_, edges_, std::move(rows));
}

LabelList Multiport::internal_edges() const {
    LabelList out;
    const std::set<Label> port_set(ports.begin(), ports.end());
    for (const auto& e : graph.edges)
        if (!port_set.count(e.label)) out.push_back(e.label);
    return out;
}

void validate(const Multiport& n) {
    for (const Label& p : n.ports)
        if (!n.graph.has_edge(p)) throw SpaceError("port is not a graph edge: " + p.str());
    const LabelList internal = n.internal_edges();
    if (n.device.edges() != internal)
        throw SpaceError("device characteristic must cover exactly the internal edges");
    if (n.device.mode() != n.mode()) throw SpaceError("mixed field modes");
}

namespace {

struct VariableIndex {
    LabelList variables;
    std::map<Label, std::size_t> position;

    explicit VariableIndex(LabelList vars) : variables(std::move(vars)) {
        for (std::size_t k = 0; k < variables.size(); ++k) position[variables[k]] = k;
    }
};

// Embeds a representative matrix over sorted plain edge labels into the
// variable columns given by `copy` (prime for voltages, double prime for
// currents).
void scatter_rows(const ExactMatrix& rep, const LabelList& sorted_edges, Decoration copy,
                  const VariableIndex& vars, ExactMatrix& out, std::size_t row_offset) {
    for (std::size_t j = 0; j < sorted_edges.size(); ++j) {
        const std::size_t col = vars.position.at(sorted_edges[j].with_decoration(copy));
        for (std::size_t i = 0; i < rep.rows(); ++i)
            out.at(row_offset + i, col) = rep.at(i, j);
    }
}

}  // namespace

AssembledSystem assemble(const Multiport& n) {
    validate(n);
    const FieldMode mode = n.mode();
    const LabelList s = n.internal_edges();
    const LabelList& p = n.ports;

    VariableIndex vars(concat(concat(primed(s), primed(p)), concat(doubleprimed(s), doubleprimed(p))));

    const IndexedVectorSpace kcl = current_space(n.graph, mode);  // B rows, applied to v
    const IndexedVectorSpace kvl = voltage_space(n.graph, mode);  // Q rows, applied to i
    const ExactMatrix& dev = n.device.rows();

    const std::size_t rows = kcl.dim() + kvl.dim() + dev.rows();
    AssembledSystem out{vars.variables, ExactMatrix(mode, rows, vars.variables.size()),
                        std::vector<Scalar>(rows, Scalar(mode))};

    scatter_rows(kcl.rep(), kcl.labels(), Decoration::Prime, vars, out.matrix, 0);
    scatter_rows(kvl.rep(), kvl.labels(), Decoration::DoublePrime, vars, out.matrix, kcl.dim());

    const std::size_t dev_base = kcl.dim() + kvl.dim();
    for (std::size_t i = 0; i < dev.rows(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            out.matrix.at(dev_base + i, vars.position.at(s[j].with_decoration(Decoration::Prime))) =
                dev.at(i, j);
            out.matrix.at(dev_base + i,
                          vars.position.at(s[j].with_decoration(Decoration::DoublePrime))) =
                dev.at(i, s.size() + j);
        }
        out.rhs[dev_base + i] = dev.at(i, 2 * s.size());
    }
    return out;
}

PortBehaviour port_behaviour_eliminate(const Multiport& n) {
    const FieldMode mode = n.mode();
    const AssembledSystem sys = assemble(n);
    const LabelList s = n.internal_edges();
    const LabelList& p = n.ports;

    // Columns reordered interior-first so that after row reduction the rows
    // whose pivots land in the port block carry no interior variables; those
    // rows are the eliminated system.  A pivot in the trailing right-hand-side
    // column certifies inconsistency.
    const std::size_t ns = s.size(), np = p.size();
    std::vector<std::size_t> order;
    order.reserve(2 * ns + 2 * np);
    for (std::size_t j = 0; j < ns; ++j) order.push_back(j);                 // v_{S'}
    for (std::size_t j = 0; j < ns; ++j) order.push_back(ns + np + j);       // i_{S''}
    for (std::size_t j = 0; j < np; ++j) order.push_back(ns + j);            // v_{P'}
    for (std::size_t j = 0; j < np; ++j) order.push_back(2 * ns + np + j);   // i_{P''}

    ExactMatrix aug(mode, sys.matrix.rows(), order.size() + 1);
    for (std::size_t i = 0; i < sys.matrix.rows(); ++i) {
        for (std::size_t j = 0; j < order.size(); ++j) aug.at(i, j) = sys.matrix.at(i, order[j]);
        aug.at(i, order.size()) = sys.rhs[i];
    }
    const RrefResult r = rref(aug);

    const LabelList behaviour_labels = concat(primed(p), doubleprimed(p));
    PortBehaviour out;
    out.ports = p;
    if (!r.pivots.empty() && r.pivots.back() == order.size()) {
        out.affine = IndexedAffineSpace::make_void(mode, behaviour_labels);
        return out;
    }

    std::vector<std::vector<Scalar>> port_rows;
    std::vector<Scalar> rhs;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] < 2 * ns) continue;
        std::vector<Scalar> row;
        row.reserve(2 * np);
        for (std::size_t j = 0; j < 2 * np; ++j) row.push_back(r.matrix.at(i, 2 * ns + j));
        // Port-current sign flip: substitute i = -i'' in the current columns.
        for (std::size_t j = np; j < 2 * np; ++j) row[j] = -row[j];
        port_rows.push_back(std::move(row));
        rhs.push_back(r.matrix.at(i, order.size()));
    }
    ExactMatrix eliminated(mode, port_rows.size(), 2 * np);
    for (std::size_t i = 0; i < port_rows.size(); ++i)
        for (std::size_t j = 0; j < 2 * np; ++j) eliminated.at(i, j) = port_rows[i][j];
    out.affine = IndexedAffineSpace::from_equations(mode, behaviour_labels, eliminated, rhs);
    return out;
}

namespace {

// The two space identities of the regularity criterion, stated over the
// primed/double-primed interior variables.
IndexedVectorSpace relabel_copy(const IndexedVectorSpace& v, Decoration copy) {
    return relabel(v, [copy](const Label& l) { return l.with_decoration(copy); });
}

}  // namespace

bool is_consistent_all_sources(const Multiport& n) {
    validate(n);
    const FieldMode mode = n.mode();
    const LabelList s = n.internal_edges();
    const IndexedVectorSpace open_v =
        relabel_copy(voltage_space(delete_edges(n.graph, n.ports), mode), Decoration::Prime);
    const IndexedVectorSpace short_i =
        relabel_copy(current_space(contract_edges(n.graph, n.ports), mode),
                     Decoration::DoublePrime);
    const IndexedVectorSpace sum =
        ext_sum(ext_sum(open_v, short_i), n.device.translate());
    return sum.dim() == 2 * s.size();
}

bool has_unique_interior(const Multiport& n) {
    validate(n);
    const FieldMode mode = n.mode();
    const IndexedVectorSpace short_v =
        relabel_copy(voltage_space(contract_edges(n.graph, n.ports), mode), Decoration::Prime);
    const IndexedVectorSpace open_i =
        relabel_copy(current_space(delete_edges(n.graph, n.ports), mode),
                     Decoration::DoublePrime);
    return ext_intersect(ext_sum(short_v, open_i), n.device.translate()).dim() == 0;
}

bool is_regular(const Multiport& n) {
    return is_consistent_all_sources(n) && has_unique_interior(n);
}

namespace {

// Splits a paired index set into its primed labels; validates that every base
// occurs with both decorations and nothing else.
LabelList primed_half(const LabelList& labels) {
    LabelList primes;
    for (const Label& l : labels) {
        if (l.decoration == Decoration::Prime)
            primes.push_back(l);
        else if (l.decoration != Decoration::DoublePrime)
            throw SpaceError("expected a primed/double-primed index set");
    }
    if (2 * primes.size() != labels.size())
        throw SpaceError("unpaired labels in primed/double-primed index set");
    for (const Label& l : primes) {
        const Label twin = l.with_decoration(Decoration::DoublePrime);
        if (!std::binary_search(labels.begin(), labels.end(), twin))
            throw SpaceError("missing current copy for " + l.str());
    }
    return primes;
}

Label swap_copy(const Label& l) {
    return l.with_decoration(l.decoration == Decoration::Prime ? Decoration::DoublePrime
                                                               : Decoration::Prime);
}

IndexedVectorSpace mode_dual(const IndexedVectorSpace& v) {
    return v.mode() == FieldMode::GaussianRational ? star(v) : perp(v);
}

}  // namespace

IndexedVectorSpace adjoint_space(const IndexedVectorSpace& v) {
    const LabelList primes = primed_half(v.labels());
    IndexedVectorSpace swapped = relabel(mode_dual(v), swap_copy);
    return signflip(swapped, primes);
}

IndexedVectorSpace dirac_dual(const IndexedVectorSpace& v) {
    primed_half(v.labels());
    return relabel(mode_dual(v), swap_copy);
}

IndexedVectorSpace ortho_dual(const IndexedVectorSpace& v) { return mode_dual(v); }

Multiport adjoint_multiport(const Multiport& n) {
    validate(n);
    Multiport out;
    out.graph = n.graph;
    out.ports = n.ports;
    out.device =
        DeviceCharacteristic::from_space(adjoint_space(n.device.translate()), n.device.edges());
    return out;
}

bool is_reciprocal(const IndexedVectorSpace& v) { return v == adjoint_space(v); }

bool is_dirac(const IndexedVectorSpace& v) { return v == dirac_dual(v); }

bool is_ideal_transformer(const IndexedVectorSpace& v) {
    LabelList primes = primed_half(v.labels());
    const IndexedVectorSpace v_prime = restrict_to(v, primes);
    const IndexedVectorSpace dual_double = relabel(perp(v_prime), swap_copy);
    return v == ext_sum(v_prime, dual_double);
}

namespace {

ExactMatrix passivity_gram(const IndexedVectorSpace& v) {
    const LabelList primes = primed_half(v.labels());
    const FieldMode mode = v.mode();
    const std::size_t dim = v.dim();

    std::vector<std::vector<Scalar>> vs(dim), is(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        for (const Label& l : primes) {
            vs[k].push_back(v.rep().at(k, v.index_of(l)));
            is[k].push_back(v.rep().at(k, v.index_of(swap_copy(l))));
        }
    }
    ExactMatrix g(mode, dim, dim);
    const Scalar half = Scalar::fraction(mode, 1, 2);
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t l = 0; l < dim; ++l) {
            if (mode == FieldMode::GaussianRational)
                g.at(k, l) = dot_conj(vs[k], is[l]) + dot_conj(is[k], vs[l]);
            else
                g.at(k, l) = half * (dot(vs[k], is[l]) + dot(vs[l], is[k]));
        }
    return g;
}

}  // namespace

bool is_passive(const IndexedVectorSpace& v) {
    return is_positive_semidefinite(passivity_gram(v));
}

bool is_strictly_passive(const IndexedVectorSpace& v) {
    return is_positive_definite(passivity_gram(v));
}

bool is_proper(const IndexedAffineSpace& a) {
    return !a.is_void() && 2 * a.translate().dim() == a.labels().size();
}

}  // namespace ila
