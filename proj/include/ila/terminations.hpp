#pragma once

#include "ila/multiport.hpp"

namespace ila {

// Canonical two-sided coupling devices on a port set P and its tilde copy.
// Each realizes exactly 2|P| independent constraint rows over the variables
// (v_{P'}, i_{P''}, v_{~P'}, i_{~P''}).
struct CouplingSpace {
    enum class Kind { Gyrator, IdealTransformerLink, PerturbedGyratorV, PerturbedGyratorI };

    Kind kind = Kind::Gyrator;
    LabelList ports;        // plain labels
    LabelList tilde_ports;  // tilde twins, same order
    ExactMatrix rows;       // coefficients over variables() below
    std::vector<Scalar> rhs;

    LabelList variables() const;
    IndexedAffineSpace realized() const;
};

// Unit gyrator rows v_{p'} + i_{~p''} = 0, v_{~p'} - i_{p''} = 0 (or with the
// given positive diagonal R scaling the cross terms).
CouplingSpace make_gyrator(FieldMode mode, const LabelList& p, const LabelList& pt);
CouplingSpace make_gyrator(FieldMode mode, const LabelList& p, const LabelList& pt,
                           const std::vector<Scalar>& r_diag);
// 1:1 link v_{~p'} = v_{p'}, i_{~p''} = -i_{p''}.
CouplingSpace make_transformer_link(FieldMode mode, const LabelList& p, const LabelList& pt);
// Gyrator with a unit source on the voltage (resp. current) row of port t.
enum class Perturbation { Voltage, Current };
CouplingSpace make_perturbed(FieldMode mode, const LabelList& p, const LabelList& pt,
                             std::size_t t, Perturbation which);

// Tilde-universe copy of a whole multiport (graph, ports, device rows).
Multiport tilde_copy(const Multiport& n);

// Connects two multiports through a coupling into a portless network whose
// device characteristic stacks both devices and the coupling rows.
Multiport terminate(const Multiport& n, const Multiport& nt, const CouplingSpace& k);

// Raised when the uniqueness probe of the gyrator-terminated network fails:
// the multiport is not regular, and the solve outcome says which way.
class NotRegularError : public SpaceError {
  public:
    explicit NotRegularError(SolveReport::Kind kind);
    SolveReport::Kind report_kind() const { return kind_; }

  private:
    SolveReport::Kind kind_;
};

// A condition the underlying theory guarantees was violated at runtime
// (e.g. a perturbed termination with a non-unique solution after the
// regularity probe passed).
class InternalInconsistencyError : public SpaceError {
  public:
    using SpaceError::SpaceError;
};

enum class Parallelism { Auto, Serial };

// Generalized Thevenin-Norton: terminates the multiport by its adjoint
// through a unit gyrator to obtain a particular port vector (unique iff the
// multiport is regular), then re-solves with a unit source perturbation on
// each voltage and current row to generate the behaviour translate.  The
// 2|P| perturbed solves are independent; Parallelism::Auto runs them across
// threads when OpenMP is available.
PortBehaviour thevenin_norton(const Multiport& n, Parallelism par = Parallelism::Auto);

struct StationarityResult {
    enum class Classification {
        NoStationaryPoint,
        Stationary,
        MaxUnderPassivity,
        UniqueMaxUnderStrictPassivity,
    };

    Classification classification = Classification::NoStationaryPoint;
    LabelList ports;              // sorted plain port labels; v/i follow this order
    std::vector<Scalar> lambda;   // multiplier (empty when no stationary point)
    std::vector<Scalar> port_v;   // behaviour coordinates (current sign flipped)
    std::vector<Scalar> port_i;
    bool interior_unique = true;  // false when the probe network had freedom
};

const char* to_string(StationarityResult::Classification c);

// Solves the stationarity system  (B | -Q)(-Q^T; B^T) lambda = s  built from
// the behaviour's equation form (conjugate transposes in Gaussian mode) and
// classifies the result by the behaviour translate's passivity.
StationarityResult stationarity_solve(const PortBehaviour& behaviour);

// Alternative route: terminates the multiport by its adjoint through the 1:1
// transformer link; any solution's port restriction (sign-flipped) is a
// stationary vector.  Classification comes from the device characteristic's
// passivity together with the absence of port loops/cutsets.
StationarityResult maxpower_via_adjoint(const Multiport& n);

// -v.i, resp. -(v*i + i*v) in Gaussian mode (always a real scalar).
Scalar delivered_power(const std::vector<Scalar>& v, const std::vector<Scalar>& i);
Scalar absorbed_power(const std::vector<Scalar>& v, const std::vector<Scalar>& i);

}  // namespace ila
