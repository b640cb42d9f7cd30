#pragma once

#include "slowlight/model.hpp"

namespace slowlight {

// ---------------------------------------------------------------------------
// The generalized shape-preserving solution: fields built from the ansatz
//   Omega_+ = Omega(tau) e^{+i phi_+} cos Theta(xi)
//   Omega_- = Omega(tau) e^{+i phi_-} sin Theta(xi)
// with xi = zeta - (1/2g) * integral of Omega^2 dtau, the phase-sum rule
// phi_+ + phi_- = integral of cos(2 Theta) dphi, and the accompanying
// evolving dark state.
// ---------------------------------------------------------------------------

struct AdiabatonSpec {
  EnvelopeSpec envelope; // Omega(tau)
  ShapeSpec theta;       // Theta(xi)
  ShapeSpec phi;         // phi(xi)
  MediumParams medium;   // g (> 0)
  double tau_ref = 0.0;  // lower limit of all tau integrals
  double xi_ref = 0.0;   // lower limit of the phase-sum integral
};

void validate(const AdiabatonSpec& spec);

enum class DarkGauge { Auto, PlusDominant, MinusDominant };

struct DarkStateResult {
  AtomicState state;
  double n0 = 0.0;            // |N| on the real axis
  cplx n_phase{1.0};          // N / N0, unit modulus for real tau
  cplx n_phase_bar{1.0};      // bar N / N0 (inverse phase on the real axis)
  bool swapped_gauge = false; // true if the |+> <-> |-> swapped form was used
};

/// xi = zeta - (1/2g) * integral_{tau_ref}^{tau} Omega^2(tau') dtau'.
/// Closed-form antiderivative when the family provides one, otherwise
/// adaptive quadrature along the straight contour.
cplx comoving_coordinate(const AdiabatonSpec& spec, double zeta, cplx tau);

/// Sigma(xi) = integral_{xi_ref}^{xi} cos(2 Theta) phi' dxi', so that
/// phi_+ + phi_- = Sigma and phi_+ - phi_- = phi.
cplx phase_sum(const AdiabatonSpec& spec, cplx xi);

/// Assembled ansatz fields at (zeta, tau); tau may be complex, in which case
/// the barred entries are the independent continued-conjugate values.
FieldPair build_fields(const AdiabatonSpec& spec, double zeta, cplx tau);

/// Same assembly with the comoving coordinate supplied by the caller.
FieldPair assemble_ansatz(const AdiabatonSpec& spec, cplx xi, cplx tau);

/// The evolving dark state at (zeta, tau) for real tau.  The formula is
/// written in the Omega_+-dominant gauge and is singular at Omega_+ = 0;
/// with gauge = Auto the implementation switches to the swapped (+ <-> -)
/// form whenever |Omega_-| > |Omega_+|.  The two gauges agree up to the
/// global phase -e^{i phi(xi)}.
DarkStateResult dark_state(const AdiabatonSpec& spec, double zeta, double tau,
                           DarkGauge gauge = DarkGauge::Auto);

/// |psi_e|^2 = (Omega^2 / 4 g^2) * [(2 Theta')^2 + phi'^2 sin^2(2 Theta)],
/// evaluated from the closed-form shape derivatives at real (xi, tau).
double excited_population_estimate(const AdiabatonSpec& spec, double xi,
                                   double tau);

} // namespace slowlight
