#include "doctest.h"

#include <initializer_list>
#include <vector>

#include "ila/multiport.hpp"
#include "ila/theorems.hpp"
#include "support.hpp"

using namespace ila;

namespace {
const FieldMode Q = FieldMode::Rational;
const FieldMode G = FieldMode::GaussianRational;

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

// Voltage copies then current copies of the given bases, in that order.
LabelList pair_labels(std::initializer_list<const char*> bases) {
    LabelList plain;
    for (const char* b : bases) plain.emplace_back(b);
    return concat(primed(plain), doubleprimed(plain));
}

IndexedVectorSpace pair_span(FieldMode mode, std::initializer_list<const char*> bases,
                             std::initializer_list<std::initializer_list<long>> gens) {
    std::vector<std::vector<Scalar>> rows;
    for (auto g : gens) rows.push_back(vec(mode, g));
    return IndexedVectorSpace::span(mode, pair_labels(bases), rows);
}

// Source E in series with resistance R behind a single port.
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

// One internal edge in parallel with one port; device rows as given.
Multiport parallel_one_port(FieldMode mode, std::initializer_list<std::initializer_list<long>> rs) {
    OrientedGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge(Label("e"), "a", "b");
    g.add_edge(Label("p"), "a", "b");
    Multiport n;
    n.graph = g;
    n.ports = {Label("p")};
    n.device = rs.size() == 0
                   ? DeviceCharacteristic::unconstrained(mode, {Label("e")})
                   : DeviceCharacteristic::make(mode, {Label("e")}, rows_of(mode, rs));
    return n;
}

// Two internal edges and one port, all in parallel.
Multiport parallel_pair_port(std::initializer_list<std::initializer_list<long>> rs) {
    OrientedGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge(Label("e1"), "a", "b");
    g.add_edge(Label("e2"), "a", "b");
    g.add_edge(Label("p"), "a", "b");
    Multiport n;
    n.graph = g;
    n.ports = {Label("p")};
    n.device = rs.size() == 0
                   ? DeviceCharacteristic::unconstrained(Q, {Label("e1"), Label("e2")})
                   : DeviceCharacteristic::make(Q, {Label("e1"), Label("e2")}, rows_of(Q, rs));
    return n;
}
}  // namespace

TEST_CASE("device characteristics normalize and remember contradictions") {
    const LabelList e = {Label("e1"), Label("e2")};
    const DeviceCharacteristic a =
        DeviceCharacteristic::make(Q, e, rows_of(Q, {{1, 0, 0, 0, 1}, {2, 0, 0, 0, 2}}));
    CHECK(a.rows().rows() == 1);
    CHECK_FALSE(a.inconsistent());
    CHECK(a == DeviceCharacteristic::make(Q, e, rows_of(Q, {{3, 0, 0, 0, 3}})));

    const DeviceCharacteristic bad =
        DeviceCharacteristic::make(Q, {Label("e")}, rows_of(Q, {{1, 0, 0}, {1, 0, 1}}));
    CHECK(bad.inconsistent());
    CHECK(bad.solution_space().is_void());
    CHECK(bad.translate() == IndexedVectorSpace::span(
                                 Q, pair_labels({"e"}), {vec(Q, {0, 1})}));
    CHECK_FALSE(bad.homogeneous().inconsistent());
    CHECK_FALSE(bad.homogeneous().solution_space().is_void());

    const DeviceCharacteristic open = DeviceCharacteristic::unconstrained(Q, {Label("e")});
    CHECK(open.rows().rows() == 0);
    CHECK(open.solution_space() ==
          IndexedAffineSpace::from_space(IndexedVectorSpace::full(Q, pair_labels({"e"}))));

    const IndexedVectorSpace v = pair_span(Q, {"e"}, {{1, 2}});
    const DeviceCharacteristic round = DeviceCharacteristic::from_space(v, {Label("e")});
    CHECK(round.solution_space() == IndexedAffineSpace::from_space(v));

    CHECK_THROWS_AS(DeviceCharacteristic::make(Q, e, rows_of(Q, {{1, 0, 0, 0}})), SpaceError);
}

TEST_CASE("multiport validation catches structural mistakes") {
    Multiport n = thevenin_fixture();
    CHECK_NOTHROW(validate(n));
    CHECK(n.internal_edges() == LabelList{Label("e1"), Label("e2")});

    Multiport bad_port = n;
    bad_port.ports = {Label("zz")};
    CHECK_THROWS_AS(validate(bad_port), SpaceError);

    Multiport port_with_rows = n;
    port_with_rows.ports = {Label("e2"), Label("p1")};
    CHECK_THROWS_AS(validate(port_with_rows), SpaceError);

    Multiport wrong_cover = n;
    wrong_cover.device = DeviceCharacteristic::unconstrained(Q, {Label("e1")});
    CHECK_THROWS_AS(validate(wrong_cover), SpaceError);
}

TEST_CASE("assembly stacks topology rows over device rows") {
    const Multiport n = thevenin_fixture();
    const AssembledSystem sys = assemble(n);

    const LabelList expect = {Label("e1", Decoration::Prime),  Label("e2", Decoration::Prime),
                              Label("p1", Decoration::Prime),  Label("e1", Decoration::DoublePrime),
                              Label("e2", Decoration::DoublePrime),
                              Label("p1", Decoration::DoublePrime)};
    CHECK(sys.variables == expect);
    CHECK(sys.matrix.rows() == 5);
    CHECK(sys.matrix.cols() == 6);
    CHECK(sys.rhs.size() == 5);

    // The open-circuit operating point solves the full system.
    CHECK(matvec(sys.matrix, vec(Q, {4, 0, 4, 0, 0, 0})) == sys.rhs);
    // A legal closed-circuit point too: v_p = 0 forces i = -2 around the loop.
    CHECK(matvec(sys.matrix, vec(Q, {4, -4, 0, -2, -2, 2})) == sys.rhs);
    // KVL violation breaks only topology rows, not the device rows.
    CHECK_FALSE(matvec(sys.matrix, vec(Q, {4, 0, 0, 0, 0, 0})) == sys.rhs);

    // Portless self-loop resistor: one current-law row, one device row.
    OrientedGraph loop;
    loop.add_vertex("a");
    loop.add_edge(Label("e"), "a", "a");
    Multiport portless;
    portless.graph = loop;
    portless.device = DeviceCharacteristic::make(Q, {Label("e")}, rows_of(Q, {{1, -1, 0}}));
    const AssembledSystem small = assemble(portless);
    CHECK(small.matrix.rows() == 2);
    CHECK(small.matrix.cols() == 2);
}

TEST_CASE("port behaviour of the series source-resistor one-port") {
    const PortBehaviour b = port_behaviour_eliminate(thevenin_fixture());
    CHECK(b.ports == LabelList{Label("p1")});
    CHECK(b.affine == IndexedAffineSpace::from_equations(
                          Q, pair_labels({"p1"}),
                          rows_of(Q, {{1, -2}}), vec(Q, {4})));
    CHECK(member(b.affine, vec(Q, {4, 0})));   // open circuit
    CHECK(member(b.affine, vec(Q, {0, -2})));  // short circuit, flipped sign
    CHECK(is_proper(b.affine));
}

TEST_CASE("port behaviour covers the parallel one-port variants") {
    // Resistor v = 3 i: after the flip the behaviour satisfies v' = 3 i''.
    const PortBehaviour r = port_behaviour_eliminate(parallel_one_port(Q, {{1, -3, 0}}));
    CHECK(r.affine == IndexedAffineSpace::from_space(pair_span(Q, {"p"}, {{3, 1}})));

    // Internal short: port voltage pinned to zero, current free.
    const PortBehaviour s = port_behaviour_eliminate(parallel_one_port(Q, {{1, 0, 0}}));
    CHECK(s.affine == IndexedAffineSpace::from_space(pair_span(Q, {"p"}, {{0, 1}})));
    CHECK(is_proper(s.affine));

    // Internal norator: every port pair is reachable.
    const PortBehaviour free = port_behaviour_eliminate(parallel_one_port(Q, {}));
    CHECK(free.affine == IndexedAffineSpace::from_space(
                             IndexedVectorSpace::full(Q, pair_labels({"p"}))));
    CHECK_FALSE(is_proper(free.affine));

    // Internal nullator: no port pair is reachable beyond the pinned zero.
    const PortBehaviour none =
        port_behaviour_eliminate(parallel_one_port(Q, {{1, 0, 0}, {0, 1, 0}}));
    CHECK(none.affine == IndexedAffineSpace::point(Q, pair_labels({"p"}), vec(Q, {0, 0})));
    CHECK_FALSE(is_proper(none.affine));

    // Contradictory sources around a loop: the behaviour is the void set.
    OrientedGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge(Label("e1"), "a", "b");
    g.add_edge(Label("e2"), "a", "b");
    Multiport clash;
    clash.graph = g;
    clash.device = DeviceCharacteristic::make(
        Q, {Label("e1"), Label("e2")},
        rows_of(Q, {{1, 0, 0, 0, 1}, {0, 1, 0, 0, 2}}));
    CHECK(port_behaviour_eliminate(clash).affine.is_void());
}

TEST_CASE("regularity splits into the two space conditions") {
    const Multiport good = thevenin_fixture();
    CHECK(is_consistent_all_sources(good));
    CHECK(has_unique_interior(good));
    CHECK(is_regular(good));

    // A norator pair supports a free internal circulation.
    const Multiport norators = parallel_pair_port({});
    CHECK(is_consistent_all_sources(norators));
    CHECK_FALSE(has_unique_interior(norators));
    CHECK_FALSE(is_regular(norators));

    // A nullator against a short cannot absorb an arbitrary source.
    const Multiport pinned = parallel_pair_port({{1, 0, 0, 0, 0},
                                                 {0, 0, 1, 0, 0},
                                                 {0, 1, 0, 0, 0}});
    CHECK_FALSE(is_consistent_all_sources(pinned));
    CHECK(has_unique_interior(pinned));
    CHECK_FALSE(is_regular(pinned));

    // No internal edges at all: both conditions hold vacuously.  The port
    // edge has no return path, so its current is pinned to zero and the
    // behaviour is an open circuit.
    OrientedGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge(Label("p"), "a", "b");
    Multiport bare;
    bare.graph = g;
    bare.ports = {Label("p")};
    bare.device = DeviceCharacteristic::unconstrained(Q, {});
    CHECK(is_regular(bare));
    CHECK(port_behaviour_eliminate(bare).affine ==
          IndexedAffineSpace::from_space(pair_span(Q, {"p"}, {{1, 0}})));

    for (int t = 0; t < 10; ++t) {
        const Multiport n = testsupport::random_regular_multiport(900 + t, 6, 2);
        CHECK(is_regular(n));
        const PortBehaviour b = port_behaviour_eliminate(n);
        REQUIRE_FALSE(b.affine.is_void());
        // Rank partition for regular networks: device + behaviour translate
        // ranks add up to |S| + |P|.
        CHECK(n.device.translate().dim() + b.affine.translate().dim() ==
              n.internal_edges().size() + n.ports.size());
    }
}

TEST_CASE("adjoint of the one-port fixture is the source-free short-resistor pair") {
    const Multiport adj = adjoint_multiport(thevenin_fixture());
    CHECK(adj.graph == thevenin_fixture().graph);
    CHECK(adj.ports == thevenin_fixture().ports);
    CHECK(adj.device == DeviceCharacteristic::make(
                            Q, {Label("e1"), Label("e2")},
                            rows_of(Q, {{1, 0, 0, 0, 0}, {0, 1, 0, -2, 0}})));

    // Double adjoint returns the translate of the original device.
    const Multiport twice = adjoint_multiport(adjoint_multiport(thevenin_fixture()));
    CHECK(twice.device == thevenin_fixture().device.homogeneous());
}

TEST_CASE("adjoint and Dirac duals on impedance spaces") {
    // v = R i with diagonal positive R: self-adjoint, not self-Dirac.
    const IndexedVectorSpace r = pair_span(Q, {"x", "y"}, {{1, 0, 1, 0}, {0, 2, 0, 1}});
    CHECK(adjoint_space(r) == r);
    CHECK(is_reciprocal(r));
    CHECK_FALSE(is_dirac(r));
    CHECK(dirac_dual(r) == pair_span(Q, {"x", "y"}, {{-1, 0, 1, 0}, {0, -2, 0, 1}}));

    // Hybrid two-port v1 = 2 i1 + 3 v2, i2 = 5 i1 + 7 v2; its adjoint swaps
    // the off-diagonal blocks with a sign.
    const IndexedVectorSpace h =
        pair_span(Q, {"x", "y"}, {{2, 0, 1, 5}, {3, 1, 0, 7}});
    const IndexedVectorSpace h_adj =
        pair_span(Q, {"x", "y"}, {{2, 0, 1, -3}, {-5, 1, 0, 7}});
    CHECK(adjoint_space(h) == h_adj);
    CHECK(adjoint_space(h_adj) == h);
    CHECK_FALSE(is_reciprocal(h));

    RandomSpaceGen gen(777);
    for (int t = 0; t < 20; ++t) {
        const FieldMode mode = t % 2 == 0 ? Q : G;
        const IndexedVectorSpace v = gen.next_space(mode, pair_labels({"x", "y"}), 3);
        CHECK(adjoint_space(adjoint_space(v)) == v);
        CHECK(dirac_dual(dirac_dual(v)) == v);
        CHECK(ortho_dual(ortho_dual(v)) == v);
        CHECK(v.dim() + adjoint_space(v).dim() == 4);
    }
}

TEST_CASE("characteristic predicates on the classic devices") {
    // Gyrator v1 = -2 i2, v2 = 2 i1.
    const IndexedVectorSpace gy = pair_span(Q, {"x", "y"}, {{-2, 0, 0, 1}, {0, 2, 1, 0}});
    CHECK(is_dirac(gy));
    CHECK_FALSE(is_reciprocal(gy));
    CHECK(is_passive(gy));
    CHECK_FALSE(is_strictly_passive(gy));

    // Ideal transformer v2 = 2 v1, i1 = -2 i2.
    const IndexedVectorSpace tr = pair_span(Q, {"x", "y"}, {{1, 2, 0, 0}, {0, 0, 2, -1}});
    CHECK(is_ideal_transformer(tr));
    CHECK(is_reciprocal(tr));
    CHECK(is_dirac(tr));
    CHECK(is_passive(tr));
    CHECK_FALSE(is_strictly_passive(tr));
    CHECK_FALSE(is_ideal_transformer(gy));

    // Diagonal resistors: strictly passive and reciprocal.
    const IndexedVectorSpace r = pair_span(Q, {"x", "y"}, {{1, 0, 1, 0}, {0, 2, 0, 1}});
    CHECK(is_passive(r));
    CHECK(is_strictly_passive(r));
    CHECK_FALSE(is_ideal_transformer(r));

    // Negative resistance is not passive.
    CHECK_FALSE(is_passive(pair_span(Q, {"x"}, {{-1, 1}})));

    // Hermitian positive-definite impedance in Gaussian mode.
    const Scalar i = Scalar::imaginary_unit();
    const Scalar one = Scalar::one(G);
    const Scalar two = Scalar::integer(G, 2);
    const IndexedVectorSpace z = IndexedVectorSpace::span(
        G, pair_labels({"x", "y"}),
        {{one, -i, one, Scalar::zero(G)}, {i, two, Scalar::zero(G), one}});
    CHECK(is_passive(z));
    CHECK(is_strictly_passive(z));

    // A skew contribution to the impedance drops out of the power form.
    const IndexedVectorSpace skewed_z = IndexedVectorSpace::span(
        G, pair_labels({"x", "y"}),
        {{one, -one, one, Scalar::zero(G)}, {one, one, Scalar::zero(G), one}});
    CHECK(is_strictly_passive(skewed_z));
}

TEST_CASE("reciprocal transformer and resistor devices push through to the ports") {
    // Ideal transformer inside, one port across each winding.
    OrientedGraph g;
    for (const char* v : {"a", "b", "c", "d"}) g.add_vertex(v);
    g.add_edge(Label("e1"), "a", "b");
    g.add_edge(Label("p1"), "a", "b");
    g.add_edge(Label("e2"), "c", "d");
    g.add_edge(Label("p2"), "c", "d");
    Multiport n;
    n.graph = g;
    n.ports = {Label("p1"), Label("p2")};
    n.device = DeviceCharacteristic::make(
        Q, {Label("e1"), Label("e2")},
        rows_of(Q, {{-2, 1, 0, 0, 0}, {0, 0, 1, 2, 0}}));
    REQUIRE(is_ideal_transformer(n.device.translate()));

    const PortBehaviour b = port_behaviour_eliminate(n);
    REQUIRE_FALSE(b.affine.is_void());
    CHECK(is_ideal_transformer(b.affine.translate()));
    CHECK(is_reciprocal(b.affine.translate()));
    CHECK(b.affine.translate().dim() == n.ports.size());

    for (int t = 0; t < 8; ++t) {
        const Multiport m = testsupport::random_regular_multiport(300 + t, 5, 2);
        REQUIRE(is_reciprocal(m.device.translate()));
        const PortBehaviour pb = port_behaviour_eliminate(m);
        CHECK(is_reciprocal(pb.affine.translate()));
        CHECK(pb.affine.translate().dim() == m.ports.size());
    }
}

TEST_CASE("homogeneous devices give the behaviour translate") {
    for (int t = 0; t < 8; ++t) {
        const Multiport n = testsupport::random_regular_multiport(500 + t, 6, 2);
        const PortBehaviour b = port_behaviour_eliminate(n);
        REQUIRE_FALSE(b.affine.is_void());

        Multiport h = n;
        h.device = n.device.homogeneous();
        const PortBehaviour hb = port_behaviour_eliminate(h);
        CHECK(hb.affine == IndexedAffineSpace::from_space(b.affine.translate()));
    }
}

TEST_CASE("adjoint devices give adjoint behaviours") {
    for (int t = 0; t < 8; ++t) {
        const Multiport n = testsupport::random_regular_multiport(600 + t, 6, 2);
        const Multiport adj = adjoint_multiport(n);
        CHECK(is_regular(adj));

        const IndexedVectorSpace original = port_behaviour_eliminate(n).affine.translate();
        const PortBehaviour ab = port_behaviour_eliminate(adj);
        REQUIRE_FALSE(ab.affine.is_void());
        CHECK(ab.affine == IndexedAffineSpace::from_space(adjoint_space(original)));
    }
}

TEST_CASE("passive devices yield passive behaviours") {
    int strict_hits = 0;
    for (int t = 0; t < 12; ++t) {
        const Multiport n = testsupport::random_regular_multiport(700 + t, 6, 2);
        REQUIRE(is_strictly_passive(n.device.translate()));
        const IndexedVectorSpace b = port_behaviour_eliminate(n).affine.translate();
        CHECK(is_passive(b));

        const LabelList ports = sorted_labels(n.ports);
        const bool port_loop =
            contract_to(current_space(n.graph, Q), ports).dim() > 0;
        const bool port_cutset =
            contract_to(voltage_space(n.graph, Q), ports).dim() > 0;
        if (!port_loop && !port_cutset) {
            CHECK(is_strictly_passive(b));
            ++strict_hits;
            if (is_proper(IndexedAffineSpace::from_space(b)))
                CHECK(is_strictly_passive(adjoint_space(b)));
        }
    }
    CHECK(strict_hits > 0);
}
