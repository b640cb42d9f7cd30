#pragma once

#include "slowlight/adiabaton.hpp"
#include "slowlight/model.hpp"

#include <array>
#include <vector>

namespace slowlight {

// ---------------------------------------------------------------------------
// Spectral and complex-time analysis: instantaneous eigenvalues, dark-state
// fidelity, level crossings of the continued total intensity, and the
// Landau-Zener tunneling exponent from a complex crossing to the real axis.
// ---------------------------------------------------------------------------

struct CrossingPoint {
  cplx tau_c{};
  int multiplicity = 1;
  double residual = 0.0;   // |Omega^2(tau_c)|
  bool degenerate = false; // real-axis crossing: H vanishes, no state mixing
};

struct TunnelingResult {
  double amplitude_magnitude = 1.0;
  double exponent = 0.0; // magnitude = exp(-exponent)
  std::vector<cplx> contour;
  bool degenerate = false;
};

struct SearchStrip {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_max = 1.0; // |Im tau| <= im_max
  int n_re = 64;
  int n_im = 16;
};

/// (E0, E+, E-) with E_pm = +-(1/2) sqrt(total intensity), principal branch.
std::array<cplx, 3> instantaneous_eigenvalues(const FieldPair& fields);

/// |<d|psi>|^2 with |d> the normalized zero-eigenvalue ground direction
/// proportional to Omega_- |+> - Omega_+ |->.  Throws on zero intensity.
double dark_state_fidelity(const FieldPair& fields, const AtomicState& state);

/// Newton search for zeros of Omega^2(tau) seeded from a strip lattice.
/// Real-axis roots are flagged degenerate.  An empty result means no roots
/// were found in the strip.
std::vector<CrossingPoint> locate_crossings(const EnvelopeSpec& envelope,
                                            const SearchStrip& strip);

/// Landau-Zener exponent |Im integral (E+ - E-) dtau| along the straight
/// contour from tau_c to Re(tau_c), with E+ - E- = Omega(tau) continued by
/// sign tracking.  Gauss-Legendre after a square-root-absorbing endpoint
/// substitution.
TunnelingResult lz_amplitude(const EnvelopeSpec& envelope,
                             const CrossingPoint& crossing, int nodes = 48);

struct ImmunityReport {
  double max_identity_deviation = 0.0; // | assembled intensity - Omega^2 |
  std::vector<CrossingPoint> envelope_crossings;
  std::vector<CrossingPoint> assembled_crossings;
  bool all_real_crossings_degenerate = true;
};

/// Checks on a strip lattice that the assembled ansatz intensity equals the
/// envelope intensity independently of (Theta, phi, zeta), then locates the
/// crossings of both and reports them side by side.
ImmunityReport crossing_immunity_check(const AdiabatonSpec& spec,
                                       const SearchStrip& strip,
                                       double zeta = 0.0);

} // namespace slowlight
