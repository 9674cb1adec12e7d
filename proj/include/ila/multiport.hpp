#pragma once

#include "ila/graph.hpp"
#include "ila/space.hpp"

namespace ila {

// Affine constraints  M v_{S'} + N i_{S''} = s  on the internal edges S of a
// network.  Row coefficient order follows the edge declaration order:
// voltages first, then currents, then the source column.  Rows are normalized
// to reduced echelon form on construction, so equal characteristics compare
// equal; a contradictory row set is remembered explicitly (its solution set is
// empty but the translate is still defined by the homogeneous part).
class DeviceCharacteristic {
  public:
    DeviceCharacteristic() = default;

    // rows_with_rhs has 2*|edges|+1 columns: (M | N | s).
    static DeviceCharacteristic make(FieldMode mode, LabelList edges, ExactMatrix rows_with_rhs);
    static DeviceCharacteristic unconstrained(FieldMode mode, LabelList edges);
    // Source-free characteristic whose solution set is the given space
    // (indexed by the primed/double-primed copies of `edges`).
    static DeviceCharacteristic from_space(const IndexedVectorSpace& v, LabelList edges);

    FieldMode mode() const { return mode_; }
    const LabelList& edges() const { return edges_; }
    const ExactMatrix& rows() const { return rows_; }  // (M | N | s), normalized
    bool inconsistent() const { return inconsistent_; }

    // Solutions as a flat over S' and S'' (VOID when contradictory).
    IndexedAffineSpace solution_space() const;
    // Vector-space translate (homogeneous solutions).
    IndexedVectorSpace translate() const;
    DeviceCharacteristic homogeneous() const;

    bool operator==(const DeviceCharacteristic&) const = default;

  private:
    FieldMode mode_ = FieldMode::Rational;
    LabelList edges_;
    ExactMatrix rows_;
    bool inconsistent_ = false;
};

// A network with a distinguished set of port edges.  Ports are norators: the
// device characteristic constrains exactly the non-port edges.
struct Multiport {
    OrientedGraph graph;
    LabelList ports;
    DeviceCharacteristic device;

    FieldMode mode() const { return device.mode(); }
    LabelList internal_edges() const;

    bool operator==(const Multiport&) const = default;
};

// Checks the structural invariants (ports are edges, the device covers exactly
// the internal edges); throws SpaceError on violation.
void validate(const Multiport& n);

// Full constraint system over (v_{S'}, v_{P'}, i_{S''}, i_{P''}): a KCL-space
// representative row block applied to voltages, a KVL-space representative
// block applied to currents, then the device rows.
struct AssembledSystem {
    LabelList variables;
    ExactMatrix matrix;
    std::vector<Scalar> rhs;
};
AssembledSystem assemble(const Multiport& n);

// The relation the network imposes between port voltages and port currents,
// with the port-current sign flipped (so that a network of passive devices
// presents a passive behaviour).  The flip happens here and only here.
struct PortBehaviour {
    LabelList ports;            // plain port labels
    IndexedAffineSpace affine;  // on P' and P''
};

// Eliminates the interior variables by row reduction; VOID when the network
// is inconsistent.
PortBehaviour port_behaviour_eliminate(const Multiport& n);

// The network has a solution for every source vector of its device
// characteristic.
bool is_consistent_all_sources(const Multiport& n);
// Each port vector extends to at most one interior solution.
bool has_unique_interior(const Multiport& n);
// Conjunction of the two (depends only on the device translate).
bool is_regular(const Multiport& n);

// Duals of a space indexed by primed/double-primed pairs.  In Gaussian mode
// the sesquilinear dual replaces the bilinear one throughout.
IndexedVectorSpace adjoint_space(const IndexedVectorSpace& v);
IndexedVectorSpace dirac_dual(const IndexedVectorSpace& v);
IndexedVectorSpace ortho_dual(const IndexedVectorSpace& v);

// Same graph and ports; device characteristic replaced by the adjoint of its
// translate (sources dropped).
Multiport adjoint_multiport(const Multiport& n);

bool is_reciprocal(const IndexedVectorSpace& v);
bool is_dirac(const IndexedVectorSpace& v);
bool is_ideal_transformer(const IndexedVectorSpace& v);
// Absorbed power <v,i> is positive semidefinite (resp. definite) on the
// space, decided by an exact LDL scan of the Gram matrix over a basis.
bool is_passive(const IndexedVectorSpace& v);
bool is_strictly_passive(const IndexedVectorSpace& v);
// The flat's translate has half the index-set size (one dimension per pair).
bool is_proper(const IndexedAffineSpace& a);

}  // namespace ila
