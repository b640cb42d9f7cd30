#include "slowlight/model.hpp"

#include <cmath>

namespace slowlight {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Piece of the raised-cosine gate containing tau (selected by Re).
// Returns the gate profile value in [level, 1] scaled later by amplitude.
cplx gate_profile(const EnvelopeSpec& s, cplx u) {
  const double w = 0.5 * s.width;
  cplx su = (u.real() >= 0.0) ? u : -u;
  const double x = su.real();
  if (x <= w) return cplx(s.level);
  if (x < w + s.edge) {
    const double pi = 3.14159265358979323846;
    cplx ramp = 0.5 * (1.0 - std::cos(pi * (su - w) / s.edge));
    return s.level + (1.0 - s.level) * ramp;
  }
  return cplx(1.0);
}

// Antiderivative of the squared gate profile on the half-line Re(u) >= 0;
// the profile is even, so the odd extension covers the other half.  On the
// ramp p = A - c*cos(sigma) with A = level + c, c = (1 - level)/2, and
// integral p^2 dx = (edge/pi) [A^2 sigma - 2Ac sin(sigma)
//                              + c^2 (sigma/2 + sin(2 sigma)/4)].
cplx gate_intensity_antiderivative_half(const EnvelopeSpec& s, cplx su) {
  const double pi = 3.14159265358979323846;
  const double w = 0.5 * s.width;
  const double L = s.level;
  const double c = 0.5 * (1.0 - L);
  const double A = L + c;
  const double x = su.real();
  if (x <= w) return L * L * su;
  const cplx base{L * L * w};
  if (x < w + s.edge) {
    const cplx sigma = pi * (su - w) / s.edge;
    const cplx H = A * A * sigma - 2.0 * A * c * std::sin(sigma) +
                   c * c * (0.5 * sigma + 0.25 * std::sin(2.0 * sigma));
    return base + s.edge / pi * H;
  }
  const double full_ramp = s.edge * (A * A + 0.5 * c * c);
  return base + full_ramp + (su - w - s.edge);
}

cplx gate_profile_derivative(const EnvelopeSpec& s, cplx u) {
  const double w = 0.5 * s.width;
  const double sign = (u.real() >= 0.0) ? 1.0 : -1.0;
  cplx su = sign * u;
  const double x = su.real();
  if (x <= w || x >= w + s.edge) return cplx(0.0);
  const double pi = 3.14159265358979323846;
  return sign * (1.0 - s.level) * 0.5 * (pi / s.edge) *
         std::sin(pi * (su - w) / s.edge);
}

} // namespace

void validate(const EnvelopeSpec& spec) {
  require(spec.width > 0.0, "envelope.width must be > 0");
  require(std::isfinite(spec.amplitude), "envelope.amplitude must be finite");
  if (spec.family == EnvelopeFamily::RaisedCosineGate)
    require(spec.edge > 0.0, "envelope.edge must be > 0");
}

cplx envelope_intensity(const EnvelopeSpec& s, cplx tau) {
  const cplx u = tau - s.center;
  const double a2 = s.amplitude * s.amplitude;
  switch (s.family) {
    case EnvelopeFamily::Constant:
      return cplx(a2);
    case EnvelopeFamily::GaussianDip: {
      cplx e = std::exp(-u * u / (s.width * s.width));
      cplx f = 1.0 - s.level * e;
      return a2 * f * f;
    }
    case EnvelopeFamily::TanhRamp: {
      cplx t = std::tanh(u / s.width);
      return a2 * t * t;
    }
    case EnvelopeFamily::LorentzianHump:
      return a2 * (1.0 + u * u / (s.width * s.width));
    case EnvelopeFamily::QuarticHump: {
      cplx r = u / s.width;
      return a2 * (1.0 + r * r * r * r);
    }
    case EnvelopeFamily::RaisedCosineGate: {
      cplx p = gate_profile(s, u);
      return a2 * p * p;
    }
  }
  throw std::logic_error("unreachable envelope family");
}

cplx envelope_intensity_derivative(const EnvelopeSpec& s, cplx tau) {
  const cplx u = tau - s.center;
  const double a2 = s.amplitude * s.amplitude;
  const double T = s.width;
  switch (s.family) {
    case EnvelopeFamily::Constant:
      return cplx(0.0);
    case EnvelopeFamily::GaussianDip: {
      cplx e = std::exp(-u * u / (T * T));
      cplx f = 1.0 - s.level * e;
      cplx fp = s.level * e * 2.0 * u / (T * T);
      return a2 * 2.0 * f * fp;
    }
    case EnvelopeFamily::TanhRamp: {
      cplx t = std::tanh(u / T);
      cplx c = std::cosh(u / T);
      return a2 * 2.0 * t / (c * c) / T;
    }
    case EnvelopeFamily::LorentzianHump:
      return a2 * 2.0 * u / (T * T);
    case EnvelopeFamily::QuarticHump:
      return a2 * 4.0 * u * u * u / (T * T * T * T);
    case EnvelopeFamily::RaisedCosineGate: {
      cplx p = gate_profile(s, u);
      return a2 * 2.0 * p * gate_profile_derivative(s, u);
    }
  }
  throw std::logic_error("unreachable envelope family");
}

cplx evaluate_envelope(const EnvelopeSpec& s, cplx tau) {
  const cplx u = tau - s.center;
  switch (s.family) {
    case EnvelopeFamily::Constant:
      return cplx(s.amplitude);
    case EnvelopeFamily::GaussianDip:
      return s.amplitude * (1.0 - s.level * std::exp(-u * u / (s.width * s.width)));
    case EnvelopeFamily::TanhRamp:
      return s.amplitude * std::tanh(u / s.width);
    case EnvelopeFamily::LorentzianHump:
    case EnvelopeFamily::QuarticHump: {
      // Principal branch of sqrt(Omega^2); real and >= 0 on the real axis.
      cplx i2 = envelope_intensity(s, tau);
      double scale = s.amplitude * s.amplitude;
      if (scale > 0.0 && std::abs(i2) < 1e-28 * scale)
        throw std::domain_error("envelope evaluated at a branch point");
      return std::sqrt(i2);
    }
    case EnvelopeFamily::RaisedCosineGate:
      return s.amplitude * gate_profile(s, u);
  }
  throw std::logic_error("unreachable envelope family");
}

cplx continue_conjugate(const EnvelopeSpec& s, cplx tau) {
  return std::conj(evaluate_envelope(s, std::conj(tau)));
}

bool envelope_has_closed_antiderivative(const EnvelopeSpec& s) {
  switch (s.family) {
    case EnvelopeFamily::Constant:
    case EnvelopeFamily::TanhRamp:
    case EnvelopeFamily::LorentzianHump:
    case EnvelopeFamily::QuarticHump:
    case EnvelopeFamily::RaisedCosineGate:
      return true;
    default:
      return false;
  }
}

cplx envelope_intensity_antiderivative(const EnvelopeSpec& s, cplx tau) {
  const cplx u = tau - s.center;
  const double a2 = s.amplitude * s.amplitude;
  const double T = s.width;
  switch (s.family) {
    case EnvelopeFamily::Constant:
      return a2 * u;
    case EnvelopeFamily::TanhRamp:
      // integral of tanh^2 = u - T*tanh(u/T)
      return a2 * (u - T * std::tanh(u / T));
    case EnvelopeFamily::LorentzianHump:
      return a2 * (u + u * u * u / (3.0 * T * T));
    case EnvelopeFamily::QuarticHump: {
      cplx u2 = u * u;
      return a2 * (u + u2 * u2 * u / (5.0 * T * T * T * T));
    }
    case EnvelopeFamily::RaisedCosineGate: {
      const double sign = (u.real() >= 0.0) ? 1.0 : -1.0;
      return a2 * sign * gate_intensity_antiderivative_half(s, sign * u);
    }
    default:
      throw std::logic_error("family has no closed antiderivative");
  }
}

void validate(const ShapeSpec& spec) {
  require(spec.width > 0.0, "shape.width must be > 0");
  require(std::isfinite(spec.amplitude), "shape.amplitude must be finite");
}

cplx evaluate_shape(const ShapeSpec& s, cplx xi) {
  const cplx u = xi - s.center;
  switch (s.family) {
    case ShapeFamily::Constant:
      return cplx(s.amplitude);
    case ShapeFamily::TanhKink:
      return 0.5 * s.amplitude * (1.0 + std::tanh(u / s.width));
    case ShapeFamily::GaussianBump:
      return s.amplitude * std::exp(-u * u / (s.width * s.width));
    case ShapeFamily::Linear:
      return s.amplitude * u;
    case ShapeFamily::AtanTanh:
      return std::atan(s.amplitude * std::tanh(u / s.width));
  }
  throw std::logic_error("unreachable shape family");
}

cplx shape_derivative(const ShapeSpec& s, cplx xi) {
  const cplx u = xi - s.center;
  const double a = s.width;
  switch (s.family) {
    case ShapeFamily::Constant:
      return cplx(0.0);
    case ShapeFamily::TanhKink: {
      cplx c = std::cosh(u / a);
      return 0.5 * s.amplitude / (a * c * c);
    }
    case ShapeFamily::GaussianBump:
      return -2.0 * s.amplitude * u / (a * a) * std::exp(-u * u / (a * a));
    case ShapeFamily::Linear:
      return cplx(s.amplitude);
    case ShapeFamily::AtanTanh: {
      cplx t = std::tanh(u / a);
      cplx c = std::cosh(u / a);
      return s.amplitude / (a * c * c) / (1.0 + s.amplitude * s.amplitude * t * t);
    }
  }
  throw std::logic_error("unreachable shape family");
}

void validate(const MediumParams& medium) {
  require(medium.g >= 0.0, "medium.g must be >= 0");
  require(medium.gamma_e >= 0.0, "medium.gamma_e must be >= 0");
}

void validate(const SimulationGrid& grid) {
  require(grid.n_tau >= 2, "grid.n_tau must be >= 2");
  require(grid.n_zeta >= 2, "grid.n_zeta must be >= 2");
  require(grid.tau_max > grid.tau_min, "grid.tau_max must exceed grid.tau_min");
  require(grid.zeta_max > grid.zeta_min, "grid.zeta_max must exceed grid.zeta_min");
}

void validate(const LossParams& params) {
  require(params.wavelength > 0.0, "loss.wavelength must be > 0");
  require(params.density_param > 0.0, "loss.density_param must be > 0");
  require(params.pulse_scale > 0.0, "loss.pulse_scale must be > 0");
  require(params.propagation_length > 0.0, "loss.propagation_length must be > 0");
}

double loss_rate(const LossParams& p) {
  validate(p);
  const double pi = 3.14159265358979323846;
  const double n_lambda3 =
      p.density_param * p.wavelength * p.wavelength * p.wavelength;
  return 32.0 * pi / n_lambda3 * p.propagation_length * p.wavelength /
         (p.pulse_scale * p.pulse_scale);
}

AtomicState hamiltonian_apply(const FieldPair& f, const AtomicState& psi) {
  AtomicState out;
  out.psi_plus = -0.5 * f.omega_plus_bar * psi.psi_e;
  out.psi_minus = -0.5 * f.omega_minus_bar * psi.psi_e;
  out.psi_e = -0.5 * (f.omega_plus * psi.psi_plus + f.omega_minus * psi.psi_minus);
  return out;
}

} // namespace slowlight
