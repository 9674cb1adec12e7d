#include "ila/terminations.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <string>
#include <utility>

namespace ila {

namespace {

void check_port_pairing(const LabelList& p, const LabelList& pt) {
    if (p.size() != pt.size()) throw SpaceError("coupling: port lists differ in length");
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j].decoration != Decoration::Plain || p[j].tilde)
            throw SpaceError("coupling: left ports must be plain labels");
        if (pt[j] != p[j].with_tilde(true))
            throw SpaceError("coupling: right ports must be the tilde twins, in order");
    }
}

CouplingSpace finish(CouplingSpace k) {
    if (rref(k.rows).rank != k.rows.rows())
        throw InternalInconsistencyError("coupling rows are not independent");
    return k;
}

std::size_t index_in(const LabelList& vars, const Label& l) {
    const auto it = std::find(vars.begin(), vars.end(), l);
    if (it == vars.end()) throw InternalInconsistencyError("missing variable " + l.str());
    return static_cast<std::size_t>(it - vars.begin());
}

// Restriction of a solved network vector to the given ports, in behaviour
// coordinates (port current negated).
std::vector<Scalar> port_restriction(const LabelList& variables, const std::vector<Scalar>& x,
                                     const LabelList& ports) {
    std::vector<Scalar> out;
    out.reserve(2 * ports.size());
    for (const Label& p : ports) out.push_back(x[index_in(variables, p.with_decoration(Decoration::Prime))]);
    for (const Label& p : ports)
        out.push_back(-x[index_in(variables, p.with_decoration(Decoration::DoublePrime))]);
    return out;
}

ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix out = a;
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out.at(i, j) += b.at(i, j);
    return out;
}

// The equation matrix of a behaviour flat, split by coordinate copy.  Rows
// read  b v + m i = s  over the sorted plain port list (m carries the current
// coefficients as stored, i.e. the negative of the classical second block).
struct BehaviourBlocks {
    LabelList ports;
    ExactMatrix b;
    ExactMatrix m;
    std::vector<Scalar> s;
};

BehaviourBlocks split_equations(const IndexedAffineSpace& a) {
    auto [c, d] = a.equations();
    const LabelList& labels = a.labels();
    std::vector<std::size_t> prime_cols, double_cols;
    LabelList ports;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        switch (labels[k].decoration) {
            case Decoration::Prime:
                prime_cols.push_back(k);
                ports.push_back(labels[k].with_decoration(Decoration::Plain));
                break;
            case Decoration::DoublePrime:
                double_cols.push_back(k);
                break;
            case Decoration::Plain:
                throw SpaceError("behaviour labels must come in primed/double-primed pairs");
        }
    }
    if (prime_cols.size() != double_cols.size())
        throw SpaceError("behaviour labels must come in primed/double-primed pairs");
    for (std::size_t k = 0; k < ports.size(); ++k)
        if (labels[double_cols[k]].with_decoration(Decoration::Plain) != ports[k])
            throw SpaceError("behaviour labels must come in primed/double-primed pairs");
    return {std::move(ports), c.select_columns(prime_cols), c.select_columns(double_cols),
            std::move(d)};
}

}  // namespace

LabelList CouplingSpace::variables() const {
    return concat(concat(primed(ports), doubleprimed(ports)),
                  concat(primed(tilde_ports), doubleprimed(tilde_ports)));
}

IndexedAffineSpace CouplingSpace::realized() const {
    return IndexedAffineSpace::from_equations(rows.mode(), variables(), rows, rhs);
}

CouplingSpace make_gyrator(FieldMode mode, const LabelList& p, const LabelList& pt) {
    return make_gyrator(mode, p, pt, std::vector<Scalar>(p.size(), Scalar::one(mode)));
}

CouplingSpace make_gyrator(FieldMode mode, const LabelList& p, const LabelList& pt,
                           const std::vector<Scalar>& r_diag) {
    check_port_pairing(p, pt);
    if (r_diag.size() != p.size()) throw SpaceError("coupling: one gyration ratio per port");
    for (const Scalar& r : r_diag)
        if (!r.is_real() || r.real_sign() <= 0)
            throw SpaceError("coupling: gyration ratios must be positive");

    const std::size_t q = p.size();
    CouplingSpace k;
    k.kind = CouplingSpace::Kind::Gyrator;
    k.ports = p;
    k.tilde_ports = pt;
    k.rows = ExactMatrix(mode, 2 * q, 4 * q);
    k.rhs.assign(2 * q, Scalar::zero(mode));
    for (std::size_t j = 0; j < q; ++j) {
        k.rows.at(2 * j, j) = Scalar::one(mode);                // v_{p'}
        k.rows.at(2 * j, 3 * q + j) = r_diag[j];                // + r i_{~p''} = 0
        k.rows.at(2 * j + 1, 2 * q + j) = Scalar::one(mode);    // v_{~p'}
        k.rows.at(2 * j + 1, q + j) = -r_diag[j];               // - r i_{p''} = 0
    }
    return finish(std::move(k));
}

CouplingSpace make_transformer_link(FieldMode mode, const LabelList& p, const LabelList& pt) {
    check_port_pairing(p, pt);
    const std::size_t q = p.size();
    CouplingSpace k;
    k.kind = CouplingSpace::Kind::IdealTransformerLink;
    k.ports = p;
    k.tilde_ports = pt;
    k.rows = ExactMatrix(mode, 2 * q, 4 * q);
    k.rhs.assign(2 * q, Scalar::zero(mode));
    for (std::size_t j = 0; j < q; ++j) {
        k.rows.at(2 * j, 2 * q + j) = Scalar::one(mode);        // v_{~p'}
        k.rows.at(2 * j, j) = -Scalar::one(mode);               // - v_{p'} = 0
        k.rows.at(2 * j + 1, 3 * q + j) = Scalar::one(mode);    // i_{~p''}
        k.rows.at(2 * j + 1, q + j) = Scalar::one(mode);        // + i_{p''} = 0
    }
    return finish(std::move(k));
}

CouplingSpace make_perturbed(FieldMode mode, const LabelList& p, const LabelList& pt,
                             std::size_t t, Perturbation which) {
    CouplingSpace k = make_gyrator(mode, p, pt);
    if (t >= p.size()) throw SpaceError("coupling: perturbation index out of range");
    if (which == Perturbation::Voltage) {
        k.kind = CouplingSpace::Kind::PerturbedGyratorV;
        k.rhs[2 * t] = Scalar::integer(mode, -1);
    } else {
        k.kind = CouplingSpace::Kind::PerturbedGyratorI;
        k.rhs[2 * t + 1] = Scalar::one(mode);
    }
    return k;
}

Multiport tilde_copy(const Multiport& n) {
    Multiport out;
    out.graph = tilde_copy(n.graph);
    out.ports.reserve(n.ports.size());
    for (const Label& p : n.ports) out.ports.push_back(p.with_tilde(true));
    LabelList edges;
    edges.reserve(n.device.edges().size());
    for (const Label& e : n.device.edges()) edges.push_back(e.with_tilde(true));
    out.device = DeviceCharacteristic::make(n.mode(), std::move(edges), n.device.rows());
    return out;
}

Multiport terminate(const Multiport& n, const Multiport& nt, const CouplingSpace& k) {
    validate(n);
    validate(nt);
    if (n.mode() != nt.mode() || k.rows.mode() != n.mode())
        throw SpaceError("terminate: mixed field modes");
    if (k.ports != n.ports || k.tilde_ports != nt.ports)
        throw SpaceError("terminate: coupling must pair the two port lists in order");

    Multiport out;
    out.graph = disjoint_union(n.graph, nt.graph);
    const LabelList edges = out.graph.edge_labels();
    std::map<Label, std::size_t> pos;
    for (std::size_t j = 0; j < edges.size(); ++j) pos[edges[j]] = j;

    const std::size_t m = edges.size();
    const std::size_t q = k.ports.size();
    ExactMatrix rows(n.mode(),
                     n.device.rows().rows() + nt.device.rows().rows() + k.rows.rows(),
                     2 * m + 1);
    std::size_t r0 = 0;
    const auto put_device = [&](const DeviceCharacteristic& d) {
        const LabelList& de = d.edges();
        const ExactMatrix& src = d.rows();
        const std::size_t w = de.size();
        for (std::size_t i = 0; i < src.rows(); ++i) {
            for (std::size_t j = 0; j < w; ++j) {
                rows.at(r0 + i, pos.at(de[j])) = src.at(i, j);
                rows.at(r0 + i, m + pos.at(de[j])) = src.at(i, w + j);
            }
            rows.at(r0 + i, 2 * m) = src.at(i, 2 * w);
        }
        r0 += src.rows();
    };
    put_device(n.device);
    put_device(nt.device);
    for (std::size_t i = 0; i < k.rows.rows(); ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            rows.at(r0 + i, pos.at(k.ports[j])) = k.rows.at(i, j);
            rows.at(r0 + i, m + pos.at(k.ports[j])) = k.rows.at(i, q + j);
            rows.at(r0 + i, pos.at(k.tilde_ports[j])) = k.rows.at(i, 2 * q + j);
            rows.at(r0 + i, m + pos.at(k.tilde_ports[j])) = k.rows.at(i, 3 * q + j);
        }
        rows.at(r0 + i, 2 * m) = k.rhs[i];
    }

    out.device = DeviceCharacteristic::make(n.mode(), edges, std::move(rows));
    return out;
}

NotRegularError::NotRegularError(SolveReport::Kind kind)
    : SpaceError(std::string("multiport is not regular: the gyrator-terminated network solves as ") +
                 to_string(kind)),
      kind_(kind) {}

PortBehaviour thevenin_norton(const Multiport& n, Parallelism par) {
    validate(n);
    const FieldMode mode = n.mode();
    const LabelList& p = n.ports;
    const Multiport adj = tilde_copy(adjoint_multiport(n));

    const AssembledSystem probe = assemble(terminate(n, adj, make_gyrator(mode, p, adj.ports)));
    const SolveReport probe_report = solve_classified(probe.matrix, probe.rhs);
    if (probe_report.kind != SolveReport::Kind::Unique) throw NotRegularError(probe_report.kind);
    const std::vector<Scalar> offset_raw =
        port_restriction(probe.variables, *probe_report.particular, p);

    Multiport hom = n;
    hom.device = n.device.homogeneous();

    const std::size_t trials = 2 * p.size();
    std::vector<std::vector<Scalar>> generators(trials);
    std::vector<std::string> failures(trials);
    const auto run_trial = [&](std::size_t t) {
        try {
            const Perturbation which = (t % 2 == 0) ? Perturbation::Voltage : Perturbation::Current;
            const CouplingSpace k = make_perturbed(mode, p, adj.ports, t / 2, which);
            const AssembledSystem sys = assemble(terminate(hom, adj, k));
            const SolveReport report = solve_classified(sys.matrix, sys.rhs);
            if (report.kind != SolveReport::Kind::Unique) {
                failures[t] = "perturbed termination " + std::to_string(t) + " solved as " +
                              to_string(report.kind);
                return;
            }
            generators[t] = port_restriction(sys.variables, *report.particular, p);
        } catch (const std::exception& e) {
            failures[t] = e.what();
        }
    };

#if defined(_OPENMP)
    if (par == Parallelism::Auto && trials > 1) {
#pragma omp parallel for schedule(dynamic)
        for (long t = 0; t < static_cast<long>(trials); ++t) run_trial(static_cast<std::size_t>(t));
    } else {
        for (std::size_t t = 0; t < trials; ++t) run_trial(t);
    }
#else
    (void)par;
    for (std::size_t t = 0; t < trials; ++t) run_trial(t);
#endif

    for (const std::string& f : failures)
        if (!f.empty()) throw InternalInconsistencyError("regular multiport, yet " + f);

    const LabelList coords = concat(primed(p), doubleprimed(p));
    IndexedVectorSpace translate = IndexedVectorSpace::span(mode, coords, generators);
    std::vector<Scalar> offset;
    offset.reserve(coords.size());
    for (const Label& l : translate.labels()) offset.push_back(offset_raw[index_in(coords, l)]);

    PortBehaviour out;
    out.ports = p;
    out.affine = IndexedAffineSpace::make(std::move(offset), std::move(translate));
    return out;
}

const char* to_string(StationarityResult::Classification c) {
    switch (c) {
        case StationarityResult::Classification::NoStationaryPoint: return "no-stationary-point";
        case StationarityResult::Classification::Stationary: return "stationary";
        case StationarityResult::Classification::MaxUnderPassivity: return "max-under-passivity";
        case StationarityResult::Classification::UniqueMaxUnderStrictPassivity:
            return "unique-max-under-strict-passivity";
    }
    return "?";
}

StationarityResult stationarity_solve(const PortBehaviour& behaviour) {
    const IndexedAffineSpace& a = behaviour.affine;
    if (a.is_void()) throw SpaceError("stationarity: the behaviour is void");
    const FieldMode mode = a.mode();
    const bool gaussian = mode == FieldMode::GaussianRational;

    const BehaviourBlocks eq = split_equations(a);
    const ExactMatrix bt = gaussian ? eq.b.conj_transpose() : eq.b.transpose();
    const ExactMatrix mt = gaussian ? eq.m.conj_transpose() : eq.m.transpose();
    // With rows  b v + m i = s  the stationarity system is
    //   (b m^T + m b^T) lambda = s,   v = m^T lambda,   i = b^T lambda.
    const SolveReport report = solve_classified(add(multiply(eq.b, mt), multiply(eq.m, bt)), eq.s);

    StationarityResult out;
    out.ports = eq.ports;
    if (report.kind == SolveReport::Kind::None) {
        out.classification = StationarityResult::Classification::NoStationaryPoint;
        return out;
    }
    out.lambda = *report.particular;
    out.port_v = matvec(mt, out.lambda);
    out.port_i = matvec(bt, out.lambda);
    if (is_strictly_passive(a.translate()))
        out.classification = StationarityResult::Classification::UniqueMaxUnderStrictPassivity;
    else if (is_passive(a.translate()))
        out.classification = StationarityResult::Classification::MaxUnderPassivity;
    else
        out.classification = StationarityResult::Classification::Stationary;
    return out;
}

StationarityResult maxpower_via_adjoint(const Multiport& n) {
    validate(n);
    const FieldMode mode = n.mode();
    const Multiport adj = tilde_copy(adjoint_multiport(n));
    const AssembledSystem sys =
        assemble(terminate(n, adj, make_transformer_link(mode, n.ports, adj.ports)));
    const SolveReport report = solve_classified(sys.matrix, sys.rhs);

    StationarityResult out;
    out.ports = sorted_labels(n.ports);
    if (report.kind == SolveReport::Kind::None) {
        out.classification = StationarityResult::Classification::NoStationaryPoint;
        return out;
    }
    out.interior_unique = report.kind == SolveReport::Kind::Unique;
    const std::vector<Scalar> flat = port_restriction(sys.variables, *report.particular, out.ports);
    out.port_v.assign(flat.begin(), flat.begin() + static_cast<long>(out.ports.size()));
    out.port_i.assign(flat.begin() + static_cast<long>(out.ports.size()), flat.end());

    const PortBehaviour behaviour = port_behaviour_eliminate(n);
    if (behaviour.affine.is_void())
        throw InternalInconsistencyError("terminated network solvable but the behaviour is void");
    const BehaviourBlocks eq = split_equations(behaviour.affine);
    const bool gaussian = mode == FieldMode::GaussianRational;
    const ExactMatrix stacked = (gaussian ? eq.m.conj_transpose() : eq.m.transpose())
                                    .vstack(gaussian ? eq.b.conj_transpose() : eq.b.transpose());
    std::vector<Scalar> target = out.port_v;
    target.insert(target.end(), out.port_i.begin(), out.port_i.end());
    const SolveReport multiplier = solve_classified(stacked, target);
    if (multiplier.kind == SolveReport::Kind::None)
        throw InternalInconsistencyError("stationary port vector outside the multiplier range");
    out.lambda = *multiplier.particular;

    const IndexedVectorSpace device = n.device.translate();
    const LabelList ports_sorted = out.ports;
    const bool no_port_loop = contract_to(current_space(n.graph, mode), ports_sorted).dim() == 0;
    const bool no_port_cutset = contract_to(voltage_space(n.graph, mode), ports_sorted).dim() == 0;
    if (is_strictly_passive(device) && no_port_loop && no_port_cutset)
        out.classification = StationarityResult::Classification::UniqueMaxUnderStrictPassivity;
    else if (is_passive(device))
        out.classification = StationarityResult::Classification::MaxUnderPassivity;
    else
        out.classification = StationarityResult::Classification::Stationary;
    return out;
}

Scalar absorbed_power(const std::vector<Scalar>& v, const std::vector<Scalar>& i) {
    if (v.size() != i.size()) throw SpaceError("power: coordinate lengths differ");
    if (v.empty()) return Scalar::zero(FieldMode::Rational);
    if (v.front().mode() == FieldMode::GaussianRational) return dot_conj(i, v) + dot_conj(v, i);
    return dot(v, i);
}

Scalar delivered_power(const std::vector<Scalar>& v, const std::vector<Scalar>& i) {
    return -absorbed_power(v, i);
}

}  // namespace ila
