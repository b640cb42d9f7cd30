#include "slowlight/adiabaton.hpp"

#include "slowlight/quadrature.hpp"

#include <cmath>

namespace slowlight {

void validate(const AdiabatonSpec& spec) {
  validate(spec.envelope);
  validate(spec.theta);
  validate(spec.phi);
  validate(spec.medium);
  if (spec.medium.g <= 0.0)
    throw std::invalid_argument("adiabaton requires medium.g > 0");
  if (spec.envelope.amplitude == 0.0)
    throw std::invalid_argument("adiabaton envelope must not be identically zero");
}

cplx comoving_coordinate(const AdiabatonSpec& spec, double zeta, cplx tau) {
  cplx accumulated;
  if (envelope_has_closed_antiderivative(spec.envelope)) {
    accumulated = envelope_intensity_antiderivative(spec.envelope, tau) -
                  envelope_intensity_antiderivative(spec.envelope, spec.tau_ref);
  } else {
    accumulated = integrate_segment(
        [&](cplx t) { return envelope_intensity(spec.envelope, t); },
        cplx(spec.tau_ref), tau, 1e-13);
  }
  return zeta - accumulated / (2.0 * spec.medium.g);
}

cplx phase_sum(const AdiabatonSpec& spec, cplx xi) {
  if (spec.phi.family == ShapeFamily::Constant || spec.phi.amplitude == 0.0)
    return cplx(0.0);
  if (spec.theta.family == ShapeFamily::Constant) {
    cplx c = std::cos(2.0 * evaluate_shape(spec.theta, 0.0));
    return c * (evaluate_shape(spec.phi, xi) - evaluate_shape(spec.phi, spec.xi_ref));
  }
  return integrate_segment(
      [&](cplx x) {
        return std::cos(2.0 * evaluate_shape(spec.theta, x)) *
               shape_derivative(spec.phi, x);
      },
      cplx(spec.xi_ref), xi, 1e-13);
}

FieldPair build_fields(const AdiabatonSpec& spec, double zeta, cplx tau) {
  return assemble_ansatz(spec, comoving_coordinate(spec, zeta, tau), tau);
}

FieldPair assemble_ansatz(const AdiabatonSpec& spec, cplx xi, cplx tau) {
  const cplx omega = evaluate_envelope(spec.envelope, tau);
  const cplx theta = evaluate_shape(spec.theta, xi);
  const cplx phi = evaluate_shape(spec.phi, xi);
  const cplx sigma = phase_sum(spec, xi);
  const cplx phi_plus = 0.5 * (sigma + phi);
  const cplx phi_minus = 0.5 * (sigma - phi);
  const cplx i{0.0, 1.0};

  FieldPair f;
  f.omega_plus = omega * std::exp(i * phi_plus) * std::cos(theta);
  f.omega_minus = omega * std::exp(i * phi_minus) * std::sin(theta);
  f.omega_plus_bar = omega * std::exp(-i * phi_plus) * std::cos(theta);
  f.omega_minus_bar = omega * std::exp(-i * phi_minus) * std::sin(theta);
  return f;
}

namespace {

// Normalization phase exponent: (1/2) * integral N0^2 (rho d(bar rho) -
// bar rho d(rho)) dtau.  Under the ansatz the integrand reduces to
// +i sin^2(Theta) dphi in the plus-dominant gauge and -i cos^2(Theta) dphi
// in the swapped gauge; the tau integral is taken over xi by substitution.
cplx normalization_exponent(const AdiabatonSpec& spec, double zeta, double tau,
                            bool swapped) {
  if (spec.phi.family == ShapeFamily::Constant || spec.phi.amplitude == 0.0)
    return cplx(0.0);
  const cplx xi_a = comoving_coordinate(spec, zeta, spec.tau_ref);
  const cplx xi_b = comoving_coordinate(spec, zeta, tau);
  const cplx i{0.0, 1.0};
  const double sign = swapped ? -1.0 : 1.0;
  return sign * i *
         integrate_segment(
             [&](cplx x) {
               cplx t = evaluate_shape(spec.theta, x);
               cplx s = swapped ? std::cos(t) : std::sin(t);
               return s * s * shape_derivative(spec.phi, x);
             },
             xi_a, xi_b, 1e-13);
}

} // namespace

DarkStateResult dark_state(const AdiabatonSpec& spec, double zeta, double tau,
                           DarkGauge gauge) {
  const FieldPair f = build_fields(spec, zeta, tau);
  const double abs_plus = std::abs(f.omega_plus);
  const double abs_minus = std::abs(f.omega_minus);
  if (abs_plus == 0.0 && abs_minus == 0.0)
    throw std::domain_error("dark state undefined: both field components vanish");

  const double total = std::sqrt(abs_plus * abs_plus + abs_minus * abs_minus);
  bool swapped;
  switch (gauge) {
    case DarkGauge::PlusDominant:
      if (abs_plus <= 1e-12 * total)
        throw std::domain_error("singular ratio: Omega_+ = 0 in plus-dominant gauge");
      swapped = false;
      break;
    case DarkGauge::MinusDominant:
      if (abs_minus <= 1e-12 * total)
        throw std::domain_error("singular ratio: Omega_- = 0 in minus-dominant gauge");
      swapped = true;
      break;
    default:
      swapped = abs_minus > abs_plus;
  }

  const double xi = comoving_coordinate(spec, zeta, tau).real();
  const double theta = evaluate_shape(spec.theta, xi).real();
  const double phi = evaluate_shape(spec.phi, xi).real();
  const double theta_d = shape_derivative(spec.theta, xi).real();
  const double phi_d = shape_derivative(spec.phi, xi).real();
  const double xi_tau =
      -envelope_intensity(spec.envelope, tau).real() / (2.0 * spec.medium.g);
  const cplx i{0.0, 1.0};

  // Ratio of the subdominant to the dominant component and its exact tau
  // derivative, from the closed forms of the shape families.
  cplx rho, drho_dtau, omega_bar_dom;
  double n0;
  if (!swapped) {
    rho = std::tan(theta) * std::exp(-i * phi);
    const double c = std::cos(theta);
    drho_dtau = std::exp(-i * phi) *
                (theta_d / (c * c) - i * std::tan(theta) * phi_d) * xi_tau;
    omega_bar_dom = f.omega_plus_bar;
    n0 = 1.0 / std::sqrt(1.0 + std::norm(rho));
  } else {
    rho = std::exp(i * phi) / std::tan(theta);
    const double s = std::sin(theta);
    drho_dtau = std::exp(i * phi) *
                (-theta_d / (s * s) + i * phi_d / std::tan(theta)) * xi_tau;
    omega_bar_dom = f.omega_minus_bar;
    n0 = 1.0 / std::sqrt(1.0 + std::norm(rho));
  }

  const cplx phase_exp = normalization_exponent(spec, zeta, tau, swapped);
  const cplx n_phase = std::exp(phase_exp);
  const cplx big_n = n0 * n_phase;

  DarkStateResult result;
  result.n0 = n0;
  result.n_phase = n_phase;
  result.n_phase_bar = std::exp(-phase_exp);
  result.swapped_gauge = swapped;
  // The factor i makes the ground components solve the Schroedinger equation
  // exactly and matches the sign of the reduced Maxwell equations.
  const cplx psi_e = i * big_n * (2.0 * n0 * n0 / omega_bar_dom) * drho_dtau;
  if (!swapped) {
    result.state = {-big_n * rho, big_n, psi_e};
  } else {
    // Swapped gauge: exchange + and - everywhere in the dark-state formula.
    // Relative to the plus-dominant form this differs by the global phase
    // -e^{-i phi(xi(tau_ref))}.
    result.state = {big_n, -big_n * rho, psi_e};
  }
  return result;
}

double excited_population_estimate(const AdiabatonSpec& spec, double xi,
                                   double tau) {
  const double omega_sq = envelope_intensity(spec.envelope, tau).real();
  const double theta = evaluate_shape(spec.theta, xi).real();
  const double theta_d = shape_derivative(spec.theta, xi).real();
  const double phi_d = shape_derivative(spec.phi, xi).real();
  const double s2 = std::sin(2.0 * theta);
  const double g = spec.medium.g;
  return omega_sq / (4.0 * g * g) *
         (4.0 * theta_d * theta_d + phi_d * phi_d * s2 * s2);
}

} // namespace slowlight
