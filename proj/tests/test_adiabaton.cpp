#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slowlight/adiabaton.hpp"

#include <cmath>

using namespace slowlight;

namespace {

constexpr double kPi = 3.14159265358979323846;

AdiabatonSpec base_spec() {
  AdiabatonSpec s;
  s.envelope = {EnvelopeFamily::Constant, 1.0, 1.0, 0.0, 0.0, 0.25};
  s.theta = {ShapeFamily::Constant, 0.0, 1.0, 0.0};
  s.phi = {ShapeFamily::Constant, 0.0, 1.0, 0.0};
  s.medium = {1.0, 0.0};
  s.tau_ref = 0.0;
  s.xi_ref = 0.0;
  return s;
}

} // namespace

TEST_CASE("comoving coordinate: constant envelope closed form") {
  AdiabatonSpec s = base_spec();
  s.envelope.amplitude = 1.4;
  s.medium.g = 3.0;
  for (double tau : {0.0, 1.0, -2.5, 7.0}) {
    double expected = 2.0 - 1.4 * 1.4 * tau / (2.0 * 3.0);
    CHECK(comoving_coordinate(s, 2.0, tau).real() == doctest::Approx(expected));
  }
}

TEST_CASE("comoving coordinate: closed gate freezes the structure") {
  AdiabatonSpec s = base_spec();
  s.envelope = {EnvelopeFamily::RaisedCosineGate, 1.0, 20.0, 0.0, 0.0, 1.0};
  s.tau_ref = -5.0;
  // Omega == 0 on the whole interval [-5, 5]: xi = zeta
  CHECK(std::abs(comoving_coordinate(s, 0.7, 5.0) - 0.7) < 1e-13);
}

TEST_CASE("comoving coordinate: quadrature agrees with the constant limit") {
  AdiabatonSpec quad = base_spec();
  quad.envelope = {EnvelopeFamily::GaussianDip, 1.0, 3.0, 0.0, 0.0, 0.25};
  AdiabatonSpec closed = base_spec();
  quad.medium.g = closed.medium.g = 2.0;
  for (double tau : {0.5, 4.0, -6.0}) {
    CHECK(std::abs(comoving_coordinate(quad, 1.0, tau) -
                   comoving_coordinate(closed, 1.0, tau)) < 1e-12);
  }
}

TEST_CASE("phase sum special cases") {
  AdiabatonSpec s = base_spec();
  s.theta = {ShapeFamily::Constant, kPi / 4.0, 1.0, 0.0};
  s.phi = {ShapeFamily::Linear, 1.0, 1.0, 0.0};
  CHECK(std::abs(phase_sum(s, 3.7)) < 1e-14); // cos(pi/2) = 0

  s.theta.amplitude = 0.0; // Theta == 0 -> Sigma = phi(xi) - phi(xi_ref)
  s.xi_ref = -2.0;
  CHECK(phase_sum(s, 1.5).real() == doctest::Approx(1.5 - (-2.0)));
}

TEST_CASE("phase sum vs independent Riemann-sum oracle") {
  AdiabatonSpec s = base_spec();
  s.theta = {ShapeFamily::TanhKink, kPi / 2.0, 1.0, 0.0};
  s.phi = {ShapeFamily::Linear, 1.0, 1.0, 0.0};
  s.xi_ref = -8.0;

  // midpoint Riemann sum of cos(2 Theta(x)) * phi'(x), 1e6 steps
  const long n = 1000000;
  const double a = -8.0, b = 0.0;
  const double h = (b - a) / n;
  double sum = 0.0;
  for (long k = 0; k < n; ++k) {
    double x = a + (k + 0.5) * h;
    double theta = 0.5 * (kPi / 2.0) * (1.0 + std::tanh(x));
    sum += std::cos(2.0 * theta) * 1.0 * h;
  }
  CHECK(std::abs(phase_sum(s, 0.0).real() - sum) < 1e-8);
}

TEST_CASE("build_fields limits and the intensity identity") {
  AdiabatonSpec s = base_spec();
  s.envelope = {EnvelopeFamily::GaussianDip, 1.0, 2.0, 0.0, 0.5, 0.25};
  SUBCASE("single-beam limit") {
    FieldPair f = build_fields(s, 0.3, 1.2);
    CHECK(std::abs(f.omega_plus -
                   evaluate_envelope(s.envelope, 1.2)) < 1e-14);
    CHECK(std::abs(f.omega_minus) < 1e-14);
  }
  SUBCASE("balanced beams") {
    AdiabatonSpec b = base_spec();
    b.theta = {ShapeFamily::Constant, kPi / 4.0, 1.0, 0.0};
    FieldPair f = build_fields(b, 0.0, 2.0);
    CHECK(std::abs(f.omega_plus - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(f.omega_minus - 1.0 / std::sqrt(2.0)) < 1e-14);
  }
  SUBCASE("intensity identity on a lattice") {
    AdiabatonSpec t = base_spec();
    t.envelope = {EnvelopeFamily::LorentzianHump, 1.3, 1.0, 0.0, 0.0, 0.25};
    t.theta = {ShapeFamily::TanhKink, kPi / 2.0, 1.0, 0.2};
    t.phi = {ShapeFamily::Linear, 0.7, 1.0, 0.0};
    t.medium.g = 10.0;
    const double omega0_sq = 1.3 * 1.3;
    for (double zeta : {0.0, 0.4, 1.1}) {
      for (double tau = -3.0; tau <= 3.0; tau += 0.21) {
        FieldPair f = build_fields(t, zeta, tau);
        cplx expected = envelope_intensity(t.envelope, tau);
        CHECK(std::abs(f.total_intensity() - expected) <= 1e-12 * omega0_sq);
      }
    }
  }
}

TEST_CASE("dark state limits") {
  SUBCASE("vanishing minus beam gives |->") {
    AdiabatonSpec s = base_spec();
    DarkStateResult d = dark_state(s, 0.0, 1.7);
    CHECK(std::abs(d.state.psi_minus - 1.0) < 1e-13);
    CHECK(std::abs(d.state.psi_plus) < 1e-13);
    CHECK(std::abs(d.state.psi_e) < 1e-13);
    CHECK(d.n0 == doctest::Approx(1.0));
  }
  SUBCASE("constant unit ratio") {
    AdiabatonSpec s = base_spec();
    s.theta = {ShapeFamily::Constant, kPi / 4.0, 1.0, 0.0};
    DarkStateResult d = dark_state(s, 0.0, 0.9);
    CHECK(std::abs(d.state.psi_minus - 1.0 / std::sqrt(2.0)) < 1e-13);
    CHECK(std::abs(d.state.psi_plus + 1.0 / std::sqrt(2.0)) < 1e-13);
    CHECK(std::abs(d.state.psi_e) < 1e-13);
    CHECK(d.n0 == doctest::Approx(1.0 / std::sqrt(2.0)));
  }
}

TEST_CASE("dark state with a tanh ratio: closed-form psi_e") {
  // Theta = atan(tanh((xi - xi0)/a)) with constant Omega realizes the ratio
  // Omega_-/Omega_+ = tanh(-tau/T), T = 2 g a / Omega0^2.  At tau = 0 the
  // ratio vanishes, N0 = 1 and |psi_e| = 2/(Omega0 T).
  AdiabatonSpec s = base_spec();
  s.medium.g = 5.0;
  s.theta = {ShapeFamily::AtanTanh, 1.0, 2.0, 0.0};
  const double T = 2.0 * 5.0 * 2.0 / 1.0;
  DarkStateResult d = dark_state(s, 0.0, 0.0);
  CHECK(std::abs(d.state.psi_e) == doctest::Approx(2.0 / T).epsilon(1e-12));
  CHECK(d.n0 == doctest::Approx(1.0));

  // finite-difference oracle for the ratio derivative
  const double h = 1e-5;
  auto ratio = [&](double tau) {
    FieldPair f = build_fields(s, 0.0, tau);
    return f.omega_minus / f.omega_plus;
  };
  cplx fd = (ratio(h) - ratio(-h)) / (2.0 * h);
  // |psi_e| = 2 |d ratio/d tau| / Omega0 here
  CHECK(std::abs(std::abs(d.state.psi_e) - 2.0 * std::abs(fd)) < 1e-6);
}

TEST_CASE("dark state invariants on a lattice, both gauges") {
  AdiabatonSpec s = base_spec();
  s.envelope = {EnvelopeFamily::GaussianDip, 1.2, 4.0, 0.0, 0.4, 0.25};
  s.theta = {ShapeFamily::TanhKink, kPi / 2.0, 1.5, 0.0};
  s.phi = {ShapeFamily::Linear, 0.3, 1.0, 0.0};
  s.medium.g = 20.0;
  s.tau_ref = -6.0;
  bool saw_swapped = false, saw_plain = false;
  for (double zeta : {0.0, 0.5}) {
    for (double tau = -6.0; tau <= 6.0; tau += 0.73) {
      FieldPair f = build_fields(s, zeta, tau);
      DarkStateResult d = dark_state(s, zeta, tau);
      (d.swapped_gauge ? saw_swapped : saw_plain) = true;
      // orthogonality to the applied fields
      CHECK(std::abs(f.omega_plus * d.state.psi_plus +
                     f.omega_minus * d.state.psi_minus) <= 1e-12);
      // ground-manifold normalization for real tau
      CHECK(std::abs(std::norm(d.state.psi_plus) + std::norm(d.state.psi_minus) -
                     1.0) <= 1e-10);
      CHECK(std::abs(std::abs(d.n_phase) - 1.0) <= 1e-12);
      CHECK(std::abs(d.n_phase * d.n_phase_bar - 1.0) <= 1e-12);
      // cross-check of |psi_e| against the closed-form estimate
      double xi = comoving_coordinate(s, zeta, tau).real();
      double est = excited_population_estimate(s, xi, tau);
      CHECK(std::abs(std::abs(d.state.psi_e) - std::sqrt(est)) <= 1e-8);
    }
  }
  CHECK(saw_swapped);
  CHECK(saw_plain);
}

TEST_CASE("forced gauge fails where its dominant component vanishes") {
  AdiabatonSpec s = base_spec();
  s.theta = {ShapeFamily::Constant, kPi / 2.0, 1.0, 0.0}; // Omega_+ == 0
  CHECK_THROWS_AS(dark_state(s, 0.0, 1.0, DarkGauge::PlusDominant),
                  std::domain_error);
  CHECK_NOTHROW(dark_state(s, 0.0, 1.0)); // auto-selects the swapped form
}

TEST_CASE("excited population estimate closed forms") {
  AdiabatonSpec s = base_spec();
  s.medium.g = 7.0;
  SUBCASE("flat profiles give zero") {
    s.theta = {ShapeFamily::Constant, 0.6, 1.0, 0.0};
    CHECK(excited_population_estimate(s, 0.3, 1.0) == 0.0);
  }
  SUBCASE("kink center") {
    const double a = 1.7;
    s.theta = {ShapeFamily::TanhKink, kPi / 2.0, a, 0.0};
    double expected = kPi * kPi / (16.0 * 7.0 * 7.0 * a * a);
    CHECK(excited_population_estimate(s, 0.0, 2.0) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("pure phase gradient") {
    s.theta = {ShapeFamily::Constant, kPi / 4.0, 1.0, 0.0};
    s.phi = {ShapeFamily::Linear, 0.8, 1.0, 0.0};
    CHECK(excited_population_estimate(s, 1.0, 0.0) ==
          doctest::Approx(0.8 * 0.8 / (4.0 * 49.0)).epsilon(1e-12));
  }
}

TEST_CASE("shape preservation: translation along the characteristic") {
  AdiabatonSpec s = base_spec();
  s.envelope.amplitude = 1.1;
  s.medium.g = 12.0;
  s.theta = {ShapeFamily::TanhKink, kPi / 2.0, 1.0, 0.0};
  auto pol_angle = [&](double zeta, double tau) {
    FieldPair f = build_fields(s, zeta, tau);
    return std::atan2(std::abs(f.omega_minus), std::abs(f.omega_plus));
  };
  const double delta = 0.37;
  const double dtau = 2.0 * s.medium.g * delta / (1.1 * 1.1);
  for (double tau : {-1.0, 0.4, 3.0}) {
    CHECK(pol_angle(0.2, tau) ==
          doctest::Approx(pol_angle(0.2 + delta, tau + dtau)).epsilon(1e-12));
  }
}
