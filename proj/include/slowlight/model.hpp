#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace slowlight {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Analytic envelope families Omega(tau).
//
// All parameters are real, so every family obeys the Schwarz reflection
// principle: the continued conjugate equals conj(f(conj(tau))).  The
// raised-cosine gate is piecewise (piece selected by Re tau); it is meant
// for real-time storage runs, not for complex-time root searches.
// ---------------------------------------------------------------------------

enum class EnvelopeFamily {
  Constant,        // Omega0
  GaussianDip,     // Omega0 * (1 - level * exp(-u^2/T^2))
  TanhRamp,        // Omega0 * tanh(u/T)
  LorentzianHump,  // Omega0 * sqrt(1 + u^2/T^2)
  QuarticHump,     // Omega0 * sqrt(1 + u^4/T^4)
  RaisedCosineGate // Omega0 outside a window, Omega0*level inside,
                   // raised-cosine ramps of width `edge`
};

struct EnvelopeSpec {
  EnvelopeFamily family = EnvelopeFamily::Constant;
  double amplitude = 1.0; // Omega0
  double width = 1.0;     // T (gate: full width of the closed window)
  double center = 0.0;    // tau0
  double level = 0.0;     // dip depth (GaussianDip) or floor level (gate)
  double edge = 0.25;     // gate ramp width
};

void validate(const EnvelopeSpec& spec);

/// Omega(tau), exact analytic continuation of the closed form.
/// Throws std::domain_error at a branch point of the sqrt families.
cplx evaluate_envelope(const EnvelopeSpec& spec, cplx tau);

/// The barred field value: conj(evaluate_envelope(spec, conj(tau))).
cplx continue_conjugate(const EnvelopeSpec& spec, cplx tau);

/// Omega^2(tau) as a single-valued analytic function (no sqrt involved).
cplx envelope_intensity(const EnvelopeSpec& spec, cplx tau);

/// d/dtau of envelope_intensity, closed form.
cplx envelope_intensity_derivative(const EnvelopeSpec& spec, cplx tau);

/// Families with a closed-form antiderivative of Omega^2 valid for complex tau.
bool envelope_has_closed_antiderivative(const EnvelopeSpec& spec);

/// Antiderivative F with F' = Omega^2, F(center) arbitrary but fixed.
cplx envelope_intensity_antiderivative(const EnvelopeSpec& spec, cplx tau);

// ---------------------------------------------------------------------------
// Shape families Theta(xi), phi(xi) with exact first derivatives.
// ---------------------------------------------------------------------------

enum class ShapeFamily {
  Constant,     // A
  TanhKink,     // (A/2) * (1 + tanh(u/a))
  GaussianBump, // A * exp(-u^2/a^2)
  Linear,       // A * u
  AtanTanh      // atan(A * tanh(u/a))
};

struct ShapeSpec {
  ShapeFamily family = ShapeFamily::Constant;
  double amplitude = 0.0; // A
  double width = 1.0;     // a (xi, i.e. time units)
  double center = 0.0;    // xi0
};

void validate(const ShapeSpec& spec);

cplx evaluate_shape(const ShapeSpec& spec, cplx xi);
cplx shape_derivative(const ShapeSpec& spec, cplx xi);

// ---------------------------------------------------------------------------
// State of the light at one grid point.  On the real-tau axis the barred
// entries equal the conjugates of the unbarred ones; off the real axis they
// are independent values (continuation of the conjugate, not conjugate of
// the continuation).
// ---------------------------------------------------------------------------

struct FieldPair {
  cplx omega_plus{};
  cplx omega_minus{};
  cplx omega_plus_bar{};
  cplx omega_minus_bar{};

  static FieldPair from_real(cplx wp, cplx wm) {
    return {wp, wm, std::conj(wp), std::conj(wm)};
  }

  cplx total_intensity() const {
    return omega_plus_bar * omega_plus + omega_minus_bar * omega_minus;
  }
};

struct AtomicState {
  cplx psi_plus{};
  cplx psi_minus{};
  cplx psi_e{};

  double norm_sq() const {
    return std::norm(psi_plus) + std::norm(psi_minus) + std::norm(psi_e);
  }
};

struct MediumParams {
  double g = 1.0;       // coupling, frequency^2
  double gamma_e = 0.0; // phenomenological excited-state decay, frequency
};

void validate(const MediumParams& medium);

struct SimulationGrid {
  double tau_min = 0.0;
  double tau_max = 1.0;
  int n_tau = 2;
  double zeta_min = 0.0;
  double zeta_max = 1.0;
  int n_zeta = 2;

  double dtau() const { return (tau_max - tau_min) / (n_tau - 1); }
  double dzeta() const { return (zeta_max - zeta_min) / (n_zeta - 1); }
  double tau(int i) const { return tau_min + i * dtau(); }
  double zeta(int j) const { return zeta_min + j * dzeta(); }
};

void validate(const SimulationGrid& grid);

struct LossParams {
  double wavelength = 1.0;         // lambda
  double density_param = 1.0;      // n * lambda^3, dimensionless
  double pulse_scale = 1.0;        // a
  double propagation_length = 1.0; // l
};

void validate(const LossParams& params);

/// eta_L = 32*pi/(n lambda^3) * l lambda / a^2
double loss_rate(const LossParams& params);

/// H|psi> for the Lambda Hamiltonian at exact resonance:
/// (H psi)_pm = -(bar Omega_pm / 2) psi_e,
/// (H psi)_e  = -(Omega_+ psi_+ + Omega_- psi_-) / 2.
AtomicState hamiltonian_apply(const FieldPair& fields, const AtomicState& state);

} // namespace slowlight
