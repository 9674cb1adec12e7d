#include "doctest.h"

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "ila/terminations.hpp"
#include "ila/theorems.hpp"
#include "support.hpp"

using namespace ila;

namespace {
const FieldMode Q = FieldMode::Rational;
const FieldMode G = FieldMode::GaussianRational;
using Classification = StationarityResult::Classification;

std::vector<Scalar> vec(FieldMode mode, std::initializer_list<long> xs) {
    std::vector<Scalar> out;
    for (long x : xs) out.push_back(Scalar::integer(mode, x));
    return out;
}

ExactMatrix rows_of(FieldMode mode, std::initializer_list<std::initializer_list<long>> rs) {
    std::vector<std::vector<Scalar>> rows;
    for (auto r : rs) rows.push_back(vec(mode, r));
    return ExactMatrix::from_rows(mode, rows);
}

Multiport thevenin_fixture() {
    OrientedGraph g;
    for (const char* v : {"n0", "n1", "n2"}) g.add_vertex(v);
    g.add_edge(Label("e1"), "n0", "n1");
    g.add_edge(Label("e2"), "n1", "n2");
    g.add_edge(Label("p1"), "n0", "n2");
    Multiport n;
    n.graph = g;
    n.ports = {Label("p1")};
    n.device = DeviceCharacteristic::make(
        Q, {Label("e1"), Label("e2")},
        rows_of(Q, {{1, 0, 0, 0, 4}, {0, 1, 0, -2, 0}}));
    return n;
}

// Two ports across the two edges of an internal two-edge device.
Multiport two_port(FieldMode mode, ExactMatrix device_rows) {
    OrientedGraph g;
    for (const char* v : {"a", "b", "c", "d"}) g.add_vertex(v);
    g.add_edge(Label("e1"), "a", "b");
    g.add_edge(Label("p1"), "a", "b");
    g.add_edge(Label("e2"), "c", "d");
    g.add_edge(Label("p2"), "c", "d");
    Multiport n;
    n.graph = g;
    n.ports = {Label("p1"), Label("p2")};
    n.device = DeviceCharacteristic::make(mode, {Label("e1"), Label("e2")},
                                          std::move(device_rows));
    return n;
}

LabelList tilde_of(const LabelList& p) {
    LabelList out;
    for (const Label& l : p) out.push_back(l.with_tilde(true));
    return out;
}

std::size_t col_of(const LabelList& labels, const Label& l) {
    return static_cast<std::size_t>(
        std::find(labels.begin(), labels.end(), l) - labels.begin());
}

// Arranges per-port voltage/current values into behaviour label order.
std::vector<Scalar> port_point(const FieldMode mode, const PortBehaviour& b,
                               const LabelList& ports, const std::vector<Scalar>& v,
                               const std::vector<Scalar>& i) {
    const LabelList& cols = b.affine.labels();
    std::vector<Scalar> m(cols.size(), Scalar::zero(mode));
    for (std::size_t j = 0; j < ports.size(); ++j) {
        m[col_of(cols, ports[j].with_decoration(Decoration::Prime))] = v[j];
        m[col_of(cols, ports[j].with_decoration(Decoration::DoublePrime))] = i[j];
    }
    return m;
}
}  // namespace

TEST_CASE("coupling devices realize the pinned rows") {
    const LabelList p = {Label("p")};
    const LabelList pt = tilde_of(p);

    const CouplingSpace gy = make_gyrator(Q, p, pt);
    CHECK(gy.variables() ==
          LabelList{Label("p", Decoration::Prime), Label("p", Decoration::DoublePrime),
                    Label("p", Decoration::Prime, true),
                    Label("p", Decoration::DoublePrime, true)});
    CHECK(gy.rows == rows_of(Q, {{1, 0, 0, 1}, {0, -1, 1, 0}}));
    CHECK(gy.rhs == vec(Q, {0, 0}));
    CHECK(is_dirac(gy.realized().translate()));

    const CouplingSpace link = make_transformer_link(Q, p, pt);
    CHECK(link.rows == rows_of(Q, {{-1, 0, 1, 0}, {0, 1, 0, 1}}));
    CHECK(link.rhs == vec(Q, {0, 0}));
    CHECK(is_ideal_transformer(link.realized().translate()));

    const CouplingSpace gv = make_perturbed(Q, p, pt, 0, Perturbation::Voltage);
    CHECK(gv.rows == gy.rows);
    CHECK(gv.rhs == vec(Q, {-1, 0}));
    const CouplingSpace gi = make_perturbed(Q, p, pt, 0, Perturbation::Current);
    CHECK(gi.rhs == vec(Q, {0, 1}));

    const LabelList p2 = {Label("p1"), Label("p2")};
    const CouplingSpace scaled =
        make_gyrator(Q, p2, tilde_of(p2), {Scalar::integer(Q, 2), Scalar::integer(Q, 3)});
    CHECK(scaled.rows.rows() == 4);
    CHECK(rref(scaled.rows).rank == 4);
    CHECK(is_dirac(scaled.realized().translate()));

    CHECK_THROWS_AS(make_gyrator(Q, p, {Label("q", Decoration::Plain, true)}), SpaceError);
    CHECK_THROWS_AS(make_gyrator(Q, p, p), SpaceError);
}

TEST_CASE("termination stacks devices into a portless network") {
    const Multiport n = thevenin_fixture();
    const Multiport nt = tilde_copy(n);
    CHECK(nt.ports == tilde_of(n.ports));
    CHECK(nt.device.edges() == tilde_of(n.device.edges()));
    CHECK(nt.device.rows() == n.device.rows());

    const CouplingSpace k = make_gyrator(Q, n.ports, nt.ports);
    const Multiport big = terminate(n, nt, k);
    CHECK(big.ports.empty());
    CHECK_NOTHROW(validate(big));
    CHECK(big.graph == disjoint_union(n.graph, nt.graph));
    CHECK(big.device.edges().size() == 6);
    CHECK(big.device.rows().rows() == n.device.rows().rows() + nt.device.rows().rows() + 2);
    // Algorithm step 1 termination legs are proper devices.
    CHECK(is_proper(big.device.solution_space()));

    CHECK_THROWS_AS(terminate(n, n, k), SpaceError);

    // Terminating the regular fixture by its adjoint through the gyrator has
    // exactly one solution.
    const Multiport probe = terminate(n, adjoint_multiport(nt), k);
    const AssembledSystem sys = assemble(probe);
    CHECK(solve_classified(sys.matrix, sys.rhs).kind == SolveReport::Kind::Unique);

    // A shorted one-port linked to its copy leaves a circulating current free.
    OrientedGraph sg;
    sg.add_vertex("a");
    sg.add_vertex("b");
    sg.add_edge(Label("e"), "a", "b");
    sg.add_edge(Label("p"), "a", "b");
    Multiport shorted;
    shorted.graph = sg;
    shorted.ports = {Label("p")};
    shorted.device = DeviceCharacteristic::make(Q, {Label("e")}, rows_of(Q, {{1, 0, 0}}));
    const Multiport ring =
        terminate(shorted, tilde_copy(shorted), make_transformer_link(Q, {Label("p")}, {Label("p", Decoration::Plain, true)}));
    const AssembledSystem rsys = assemble(ring);
    CHECK(solve_classified(rsys.matrix, rsys.rhs).kind == SolveReport::Kind::Affine);
}

TEST_CASE("the adjoint-gyrator behaviour matches elimination on the fixture") {
    const Multiport n = thevenin_fixture();
    const PortBehaviour direct = port_behaviour_eliminate(n);
    const PortBehaviour serial = thevenin_norton(n, Parallelism::Serial);
    const PortBehaviour parallel = thevenin_norton(n, Parallelism::Auto);

    CHECK(serial.affine == direct.affine);
    CHECK(parallel.affine == direct.affine);
    CHECK(serial.ports == direct.ports);

    // Source-free variant: particular 0, one-dimensional span v = 2 i.
    Multiport hom = n;
    hom.device = n.device.homogeneous();
    const PortBehaviour free = thevenin_norton(hom);
    CHECK(free.affine == IndexedAffineSpace::from_space(IndexedVectorSpace::span(
                             Q, free.affine.labels(), {vec(Q, {2, 1})})));
}

TEST_CASE("non-regular multiports are rejected with the solve kind") {
    // A norator pair beside the port: the circulation around the internal
    // loop never meets a device row, so the interior stays underdetermined
    // and the coupled probe inherits that freedom.
    OrientedGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge(Label("e1"), "a", "b");
    g.add_edge(Label("e2"), "a", "b");
    g.add_edge(Label("p1"), "a", "b");
    Multiport ring;
    ring.graph = g;
    ring.ports = {Label("p1")};
    ring.device = DeviceCharacteristic::unconstrained(Q, {Label("e1"), Label("e2")});
    CHECK(is_consistent_all_sources(ring));
    CHECK_FALSE(has_unique_interior(ring));
    REQUIRE_FALSE(is_regular(ring));
    try {
        thevenin_norton(ring);
        FAIL("expected NotRegularError");
    } catch (const NotRegularError& e) {
        CHECK(e.report_kind() == SolveReport::Kind::Affine);
    }

    // Contradictory device: the probe network has no solution at all.
    OrientedGraph g2;
    g2.add_vertex("a");
    g2.add_vertex("b");
    g2.add_edge(Label("e"), "a", "b");
    g2.add_edge(Label("p"), "a", "b");
    Multiport clash;
    clash.graph = g2;
    clash.ports = {Label("p")};
    clash.device = DeviceCharacteristic::make(Q, {Label("e")}, rows_of(Q, {{0, 0, 1}}));
    try {
        thevenin_norton(clash);
        FAIL("expected NotRegularError");
    } catch (const NotRegularError& e) {
        CHECK(e.report_kind() == SolveReport::Kind::None);
    }
}

TEST_CASE("parallel port edges stay regular: the probe couples their split") {
    // Two port edges across one resistive branch.  The bare network leaves
    // the split of current between the ports open, but that freedom lives
    // entirely in the port variables: deleting the ports pins the branch and
    // contracting them shorts it, so both regularity conditions hold, and the
    // coupling ties the twin voltages together and with them the split.
    OrientedGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge(Label("e"), "a", "b");
    g.add_edge(Label("p1"), "a", "b");
    g.add_edge(Label("p2"), "a", "b");
    Multiport loop;
    loop.graph = g;
    loop.ports = {Label("p1"), Label("p2")};
    loop.device = DeviceCharacteristic::make(Q, {Label("e")}, rows_of(Q, {{1, -1, 0}}));
    CHECK(is_consistent_all_sources(loop));
    CHECK(has_unique_interior(loop));
    CHECK(is_regular(loop));

    const PortBehaviour direct = port_behaviour_eliminate(loop);
    const PortBehaviour via = thevenin_norton(loop);
    CHECK(via.affine == direct.affine);
    // Equal port voltages; the port currents jointly feed the branch.
    CHECK(direct.affine ==
          IndexedAffineSpace::from_space(IndexedVectorSpace::span(
              Q, direct.affine.labels(),
              {vec(Q, {1, 1, 1, 0}), vec(Q, {0, 1, 0, -1})})));
}

TEST_CASE("both behaviour routes agree on random regular networks") {
    for (int t = 0; t < 6; ++t) {
        const Multiport n = testsupport::random_regular_multiport(40 + t, 7, 1 + t % 3);
        const PortBehaviour a = port_behaviour_eliminate(n);
        const PortBehaviour b = thevenin_norton(n, Parallelism::Serial);
        const PortBehaviour c = thevenin_norton(n, Parallelism::Auto);
        CHECK(a.affine == b.affine);
        CHECK(b.affine == c.affine);
    }

    // Complex impedance one-port: the sesquilinear adjoint leg must still
    // reproduce the eliminated behaviour.
    OrientedGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge(Label("e"), "a", "b");
    g.add_edge(Label("p"), "a", "b");
    Multiport zport;
    zport.graph = g;
    zport.ports = {Label("p")};
    const Scalar i = Scalar::imaginary_unit();
    const Scalar one = Scalar::one(G);
    ExactMatrix zrow(G, 1, 3);
    zrow.at(0, 0) = one;
    zrow.at(0, 1) = -(one + i);
    zrow.at(0, 2) = Scalar::integer(G, 2);
    zport.device = DeviceCharacteristic::make(G, {Label("e")}, std::move(zrow));
    CHECK(thevenin_norton(zport).affine == port_behaviour_eliminate(zport).affine);
}

TEST_CASE("stationarity of the series source-resistor behaviour") {
    const StationarityResult r = stationarity_solve(port_behaviour_eliminate(thevenin_fixture()));
    CHECK(r.classification == Classification::UniqueMaxUnderStrictPassivity);
    CHECK(r.ports == LabelList{Label("p1")});
    CHECK(r.lambda == vec(Q, {-1}));
    CHECK(r.port_v == vec(Q, {2}));
    CHECK(r.port_i == vec(Q, {-1}));
    CHECK(delivered_power(r.port_v, r.port_i) == Scalar::integer(Q, 2));
    CHECK(to_string(r.classification) == std::string("unique-max-under-strict-passivity"));
}

TEST_CASE("stationarity edge cases") {
    // Skew coupling with a source: the stationarity system is unsolvable.
    const PortBehaviour skew = port_behaviour_eliminate(
        two_port(Q, rows_of(Q, {{1, 0, 0, 1, 1}, {0, 1, -1, 0, 0}})));
    REQUIRE_FALSE(skew.affine.is_void());
    const StationarityResult none = stationarity_solve(skew);
    CHECK(none.classification == Classification::NoStationaryPoint);
    CHECK(none.lambda.empty());

    // Source-free behaviour: the stationary point is the origin.
    Multiport hom = thevenin_fixture();
    hom.device = hom.device.homogeneous();
    const StationarityResult zero = stationarity_solve(port_behaviour_eliminate(hom));
    CHECK(zero.classification == Classification::UniqueMaxUnderStrictPassivity);
    CHECK(zero.port_v == vec(Q, {0}));
    CHECK(zero.port_i == vec(Q, {0}));
    CHECK(delivered_power(zero.port_v, zero.port_i).is_zero());

    // Passive but not strictly passive: an internally shorted port.
    OrientedGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge(Label("e"), "a", "b");
    g.add_edge(Label("p"), "a", "b");
    Multiport shorted;
    shorted.graph = g;
    shorted.ports = {Label("p")};
    shorted.device = DeviceCharacteristic::make(Q, {Label("e")}, rows_of(Q, {{1, 0, 0}}));
    const StationarityResult soft = stationarity_solve(port_behaviour_eliminate(shorted));
    CHECK(soft.classification == Classification::MaxUnderPassivity);

    // Negative resistance: a stationary saddle, no passivity certificate.
    Multiport neg = shorted;
    neg.device = DeviceCharacteristic::make(Q, {Label("e")}, rows_of(Q, {{1, 1, 1}}));
    const StationarityResult saddle = stationarity_solve(port_behaviour_eliminate(neg));
    CHECK(saddle.classification == Classification::Stationary);
    CHECK(saddle.lambda == std::vector<Scalar>{Scalar::fraction(Q, 1, 2)});

    CHECK_THROWS_AS(
        stationarity_solve(PortBehaviour{
            {Label("p")},
            IndexedAffineSpace::make_void(Q, {Label("p", Decoration::Prime),
                                              Label("p", Decoration::DoublePrime)})}),
        SpaceError);
}

TEST_CASE("complex stationarity uses the conjugate transposes") {
    OrientedGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge(Label("e"), "a", "b");
    g.add_edge(Label("p"), "a", "b");
    Multiport zport;
    zport.graph = g;
    zport.ports = {Label("p")};
    const Scalar i = Scalar::imaginary_unit();
    const Scalar one = Scalar::one(G);
    ExactMatrix zrow(G, 1, 3);
    zrow.at(0, 0) = one;
    zrow.at(0, 1) = -(one + i);
    zrow.at(0, 2) = Scalar::integer(G, 2);
    zport.device = DeviceCharacteristic::make(G, {Label("e")}, std::move(zrow));

    const StationarityResult r = stationarity_solve(port_behaviour_eliminate(zport));
    CHECK(r.classification == Classification::UniqueMaxUnderStrictPassivity);
    CHECK(r.lambda == std::vector<Scalar>{-one});
    CHECK(r.port_v == std::vector<Scalar>{one - i});
    CHECK(r.port_i == std::vector<Scalar>{-one});
    const Scalar p = delivered_power(r.port_v, r.port_i);
    CHECK(p == Scalar::integer(G, 2));
    CHECK(p.is_real());
}

TEST_CASE("absorbed power splits into stationary and deviation parts") {
    for (int t = 0; t < 6; ++t) {
        const Multiport n = testsupport::random_regular_multiport(60 + t, 6, 2);
        const PortBehaviour b = port_behaviour_eliminate(n);
        const StationarityResult r = stationarity_solve(b);
        if (r.classification == Classification::NoStationaryPoint) continue;
        // Resistive interiors certify at least a passive maximum.
        REQUIRE((r.classification == Classification::UniqueMaxUnderStrictPassivity ||
                 r.classification == Classification::MaxUnderPassivity));

        const IndexedVectorSpace tr = b.affine.translate();
        const LabelList& cols = b.affine.labels();
        const std::size_t np = r.ports.size();
        std::vector<std::size_t> vcol(np), icol(np);
        for (std::size_t j = 0; j < np; ++j) {
            vcol[j] = col_of(cols, r.ports[j].with_decoration(Decoration::Prime));
            icol[j] = col_of(cols, r.ports[j].with_decoration(Decoration::DoublePrime));
        }
        for (std::size_t k = 0; k < tr.rep().rows(); ++k) {
            for (long c : {1L, -1L, 3L}) {
                std::vector<Scalar> dv, di;
                for (std::size_t j = 0; j < np; ++j)
                    dv.push_back(Scalar::integer(Q, c) * tr.rep().at(k, vcol[j]));
                for (std::size_t j = 0; j < np; ++j)
                    di.push_back(Scalar::integer(Q, c) * tr.rep().at(k, icol[j]));
                std::vector<Scalar> v = r.port_v, iv = r.port_i;
                for (std::size_t j = 0; j < np; ++j) {
                    v[j] += dv[j];
                    iv[j] += di[j];
                }
                std::vector<Scalar> m(cols.size(), Scalar::zero(Q));
                for (std::size_t j = 0; j < np; ++j) {
                    m[vcol[j]] = v[j];
                    m[icol[j]] = iv[j];
                }
                CHECK(member(b.affine, m));
                CHECK(absorbed_power(v, iv) ==
                      absorbed_power(r.port_v, r.port_i) + absorbed_power(dv, di));
                // Strict passivity makes the stationary point the maximum.
                CHECK((delivered_power(r.port_v, r.port_i) - delivered_power(v, iv))
                          .real_sign() >= 0);
            }
        }
    }
}

TEST_CASE("the transformer-link route reproduces the stationary point") {
    const Multiport n = thevenin_fixture();
    const StationarityResult via = maxpower_via_adjoint(n);
    // The source row keeps the device from being strictly passive, so the
    // interior-side certificate stops at a passive maximum even though the
    // stationary point itself is the unique one.
    CHECK(via.classification == Classification::MaxUnderPassivity);
    CHECK(via.port_v == vec(Q, {2}));
    CHECK(via.port_i == vec(Q, {-1}));
    CHECK(via.lambda == vec(Q, {-1}));
    CHECK(via.interior_unique);
    CHECK(delivered_power(via.port_v, via.port_i) == Scalar::integer(Q, 2));

    for (int t = 0; t < 6; ++t) {
        const Multiport m = testsupport::random_regular_multiport(80 + t, 6, 2);
        const PortBehaviour b = port_behaviour_eliminate(m);
        const StationarityResult direct = stationarity_solve(b);
        const StationarityResult linked = maxpower_via_adjoint(m);
        REQUIRE(direct.classification != Classification::NoStationaryPoint);
        // Resistive interiors: a port loop or cutset is exactly what keeps
        // the behaviour from being strictly passive, so the two routes'
        // certificates coincide here.
        CHECK(linked.classification == direct.classification);
        CHECK(delivered_power(linked.port_v, linked.port_i) ==
              delivered_power(direct.port_v, direct.port_i));
        if (direct.classification == Classification::UniqueMaxUnderStrictPassivity) {
            CHECK(linked.port_v == direct.port_v);
            CHECK(linked.port_i == direct.port_i);
            CHECK(linked.lambda == direct.lambda);
        } else {
            // The stationary set is a coset; each route may pick a different
            // point of it, but both lie in the behaviour and deliver the
            // same power.
            CHECK(member(b.affine, port_point(Q, b, m.ports, direct.port_v, direct.port_i)));
            CHECK(member(b.affine, port_point(Q, b, m.ports, linked.port_v, linked.port_i)));
        }
    }

    // Gyrator device: all power stationary at zero, certified only as a
    // passive maximum.
    const Multiport gy = two_port(Q, rows_of(Q, {{1, 0, 0, 1, 0}, {0, 1, -1, 0, 0}}));
    const StationarityResult gr = maxpower_via_adjoint(gy);
    CHECK(gr.classification == Classification::MaxUnderPassivity);
    CHECK(delivered_power(gr.port_v, gr.port_i).is_zero());
    CHECK(stationarity_solve(port_behaviour_eliminate(gy)).classification ==
          Classification::MaxUnderPassivity);

    // Gyrator with a source: no stationary point on either route.
    const Multiport gs = two_port(Q, rows_of(Q, {{1, 0, 0, 1, 1}, {0, 1, -1, 0, 0}}));
    CHECK(maxpower_via_adjoint(gs).classification == Classification::NoStationaryPoint);
    CHECK(stationarity_solve(port_behaviour_eliminate(gs)).classification ==
          Classification::NoStationaryPoint);
}

TEST_CASE("interior freedom away from the ports is reported but harmless") {
    Multiport n = thevenin_fixture();
    n.graph.add_vertex("n3");
    n.graph.add_edge(Label("e3"), "n2", "n3");
    n.graph.add_edge(Label("e4"), "n2", "n3");
    ExactMatrix rows(Q, 2, 9);
    rows.at(0, 0) = Scalar::one(Q);
    rows.at(0, 8) = Scalar::integer(Q, 4);
    rows.at(1, 1) = Scalar::one(Q);
    rows.at(1, 5) = Scalar::integer(Q, -2);
    n.device = DeviceCharacteristic::make(
        Q, {Label("e1"), Label("e2"), Label("e3"), Label("e4")}, std::move(rows));
    REQUIRE_FALSE(is_regular(n));

    // The dangling norator pair does not reach the port behaviour.
    const PortBehaviour b = port_behaviour_eliminate(n);
    const StationarityResult direct = stationarity_solve(b);
    REQUIRE(direct.classification == Classification::UniqueMaxUnderStrictPassivity);

    const StationarityResult via = maxpower_via_adjoint(n);
    CHECK_FALSE(via.interior_unique);
    CHECK(via.port_v == direct.port_v);
    CHECK(via.port_i == direct.port_i);
    // The device itself is no longer passive, so this route can only call
    // the point stationary.
    CHECK(via.classification == Classification::Stationary);
}

TEST_CASE("power helpers agree with the sign conventions") {
    CHECK(delivered_power(vec(Q, {2}), vec(Q, {-1})) == Scalar::integer(Q, 2));
    CHECK(absorbed_power(vec(Q, {2}), vec(Q, {-1})) == Scalar::integer(Q, -2));
    CHECK(delivered_power(vec(Q, {7, 3}), vec(Q, {0, 0})).is_zero());

    const Scalar i = Scalar::imaginary_unit();
    const Scalar one = Scalar::one(G);
    const Scalar p = delivered_power({one + i}, {one});
    CHECK(p == Scalar::integer(G, -2));
    CHECK(p.is_real());
}
