#pragma once

#include "slowlight/adiabaton.hpp"
#include "slowlight/model.hpp"

#include <functional>
#include <vector>

namespace slowlight {

// ---------------------------------------------------------------------------
// Direct integration of the coupled Maxwell-Schroedinger system on the
// (tau, zeta) lattice: RK4 march of the atoms along tau at each zeta slice,
// explicit midpoint (2nd order) advance of the fields in zeta.
// ---------------------------------------------------------------------------

struct BoundaryCondition {
  // Incoming fields (Omega_+, Omega_-) at zeta = zeta_min.
  std::function<std::pair<cplx, cplx>(double tau)> incoming_fields;
  // Initial atomic state at tau = tau_min as a function of zeta.  Empty means
  // the instantaneous dark state of the incoming fields at tau_min, extended
  // uniformly in zeta.
  std::function<AtomicState(double zeta)> initial_atoms;
};

/// Boundary data reproducing the analytic shape-preserving solution: fields
/// from the ansatz at zeta_min, atoms in the evolving dark state at tau_min.
BoundaryCondition adiabaton_boundary(const AdiabatonSpec& spec,
                                     const SimulationGrid& grid);

struct SliceDiagnostics {
  double zeta = 0.0;
  double norm_drift = 0.0;      // max over tau of | |psi|^2 - 1 |
  double min_fidelity = 1.0;    // dark-state fidelity, min over tau
  double max_psi_e_sq = 0.0;    // max over tau of |psi_e|^2
};

struct RunRecord {
  SimulationGrid grid;
  double dtau_used = 0.0;
  double dzeta_used = 0.0;
  // Row-major histories indexed [j * n_tau + i] for (tau_i, zeta_j).
  std::vector<cplx> omega_plus;
  std::vector<cplx> omega_minus;
  std::vector<AtomicState> atoms;
  std::vector<SliceDiagnostics> diagnostics; // one entry per zeta slice

  cplx field_plus(int i, int j) const { return omega_plus[j * grid.n_tau + i]; }
  cplx field_minus(int i, int j) const { return omega_minus[j * grid.n_tau + i]; }
  const AtomicState& atom(int i, int j) const { return atoms[j * grid.n_tau + i]; }
};

/// d psi / d tau = -i H psi, minus (gamma_e/2) psi_e on the e component.
AtomicState atom_rhs(const FieldPair& fields, const AtomicState& state,
                     double gamma_e);

/// Classical RK4 march along tau with fields given at the tau nodes and
/// interpolated linearly at half steps.  Throws if the norm drift of a
/// single step exceeds 1e-8 (gamma_e == 0 only).
std::vector<AtomicState> integrate_atoms_line(const std::vector<cplx>& omega_plus,
                                              const std::vector<cplx>& omega_minus,
                                              const AtomicState& initial,
                                              double dtau, double gamma_e = 0.0);

/// d Omega_pm / d zeta = i g conj(psi_pm) psi_e (real-time convention;
/// barred components are the conjugates).
FieldPair field_rhs(const AtomicState& state, double g);

using CouplingProfile = std::function<double(double zeta)>;

RunRecord run_simulation(const SimulationGrid& grid, const MediumParams& medium,
                         const BoundaryCondition& boundary,
                         const CouplingProfile& g_profile = {});

/// Grid-L2 (RMS over interior nodes) residual of the discrete local law
/// d_zeta(|Omega_+|^2 + |Omega_-|^2) + 2 g d_tau |psi_e|^2 = 0,
/// central differences in both directions.  Valid for gamma_e = 0.
double excitation_conservation_residual(const RunRecord& record, double g);

} // namespace slowlight
