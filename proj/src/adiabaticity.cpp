#include "slowlight/adiabaticity.hpp"

#include "slowlight/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace slowlight {

std::array<cplx, 3> instantaneous_eigenvalues(const FieldPair& f) {
  const cplx e = 0.5 * std::sqrt(f.total_intensity());
  return {cplx(0.0), e, -e};
}

double dark_state_fidelity(const FieldPair& f, const AtomicState& psi) {
  const double inten = std::abs(f.total_intensity());
  if (inten == 0.0)
    throw std::domain_error(
        "dark-state fidelity undefined: total intensity vanishes");
  // Zero-eigenvalue ground direction, proportional to Omega_-|+> - Omega_+|->.
  const double inv = 1.0 / std::sqrt(std::norm(f.omega_plus) +
                                     std::norm(f.omega_minus));
  const cplx d_plus = f.omega_minus * inv;
  const cplx d_minus = -f.omega_plus * inv;
  const cplx overlap =
      std::conj(d_plus) * psi.psi_plus + std::conj(d_minus) * psi.psi_minus;
  return std::norm(overlap);
}

namespace {

using ComplexFn = std::function<cplx(cplx)>;

// Newton iteration on F from a lattice of strip seeds; roots deduplicated
// and classified by local order of vanishing.
std::vector<CrossingPoint> find_roots(const ComplexFn& f, const ComplexFn& df,
                                      const SearchStrip& strip, double scale,
                                      double f_scale) {
  std::vector<cplx> roots;
  const double res_tol = 1e-10 * f_scale;
  const double margin = 1e-6 * scale;
  // Landing exactly on a branch point of an assembled integrand means the
  // intensity vanishes there: that is a root, not an error.  A quadrature
  // failure is different: the value is unknown, so the caller must drop the
  // seed rather than mistake the point for a root.
  bool eval_failed = false;
  auto eval = [&](const ComplexFn& fn, cplx z) -> cplx {
    try {
      return fn(z);
    } catch (const std::domain_error&) {
      return cplx(0.0);
    } catch (const std::runtime_error&) {
      eval_failed = true;
      return cplx(0.0);
    }
  };
  for (int a = 0; a < strip.n_re; ++a) {
    for (int b = 0; b < strip.n_im; ++b) {
      double re = strip.re_min +
                  (strip.re_max - strip.re_min) * (a + 0.5) / strip.n_re;
      double im = -strip.im_max + 2.0 * strip.im_max * (b + 0.5) / strip.n_im;
      cplx z{re, im};
      const double re_span = strip.re_max - strip.re_min;
      bool converged = false;
      // 120 iterations cover the linear convergence of a multiple root from
      // anywhere in the strip; seeds that leave the widened strip are dropped.
      for (int it = 0; it < 120; ++it) {
        eval_failed = false;
        cplx fv = eval(f, z);
        cplx dv = eval(df, z);
        if (eval_failed) break;
        if (std::abs(dv) == 0.0) {
          converged = std::abs(fv) <= res_tol;
          break;
        }
        cplx step = fv / dv;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        // Keep wandering seeds bounded.
        if (std::abs(step) > 4.0 * scale) step *= 4.0 * scale / std::abs(step);
        z -= step;
        // Step-size convergence polishes multiple roots too; a residual test
        // alone would stop ~1e-5 away from a double root.
        if (std::abs(step) <= 1e-13 * scale && std::abs(eval(f, z)) <= res_tol &&
            !eval_failed) {
          converged = true;
          break;
        }
        if (std::abs(z.imag()) > 4.0 * strip.im_max + 4.0 * scale) break;
        if (z.real() < strip.re_min - re_span - 4.0 * scale ||
            z.real() > strip.re_max + re_span + 4.0 * scale)
          break;
      }
      if (!converged) continue;
      if (z.real() < strip.re_min - margin || z.real() > strip.re_max + margin ||
          std::abs(z.imag()) > strip.im_max + margin)
        continue;
      bool dup = false;
      for (const cplx& r : roots)
        if (std::abs(r - z) < 1e-8 * scale) {
          dup = true;
          break;
        }
      if (!dup) roots.push_back(z);
    }
  }

  std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });

  std::vector<CrossingPoint> out;
  for (const cplx& z : roots) {
    CrossingPoint c;
    c.tau_c = z;
    c.residual = std::abs(eval(f, z));
    c.degenerate = std::abs(z.imag()) <= 1e-10 * std::max(1.0, scale);
    // Local order of vanishing from a dyadic probe.
    const double delta = 1e-3 * scale;
    const double f1 = std::abs(eval(f, z + delta));
    const double f2 = std::abs(eval(f, z + 0.5 * delta));
    if (f1 > 0.0 && f2 > 0.0) {
      const int m = static_cast<int>(std::lround(std::log(f1 / f2) / std::log(2.0)));
      c.multiplicity = std::max(1, m);
    }
    out.push_back(c);
  }
  return out;
}

} // namespace

std::vector<CrossingPoint> locate_crossings(const EnvelopeSpec& envelope,
                                            const SearchStrip& strip) {
  validate(envelope);
  if (envelope.family == EnvelopeFamily::RaisedCosineGate)
    throw std::invalid_argument(
        "crossing search requires an analytic envelope family; the "
        "raised-cosine gate is piecewise");
  if (envelope.amplitude == 0.0)
    throw std::invalid_argument("crossing search requires a nonzero envelope");
  const double f_scale = envelope.amplitude * envelope.amplitude;
  return find_roots(
      [&](cplx t) { return envelope_intensity(envelope, t); },
      [&](cplx t) { return envelope_intensity_derivative(envelope, t); }, strip,
      envelope.width, f_scale);
}

TunnelingResult lz_amplitude(const EnvelopeSpec& envelope,
                             const CrossingPoint& crossing, int nodes) {
  const double f_scale = envelope.amplitude * envelope.amplitude;
  if (std::abs(envelope_intensity(envelope, crossing.tau_c)) > 1e-8 * f_scale)
    throw std::invalid_argument("crossing point is not a zero of the envelope");
  if (crossing.degenerate || crossing.tau_c.imag() == 0.0)
    return {1.0, 0.0, {}, true};

  // Straight contour tau(u) = tau_c + delta * u^2 with delta pointing to the
  // real axis; the u^2 substitution absorbs the sqrt vanishing at the root.
  const cplx delta = cplx(crossing.tau_c.real(), 0.0) - crossing.tau_c;
  std::vector<double> x, w;
  gauss_legendre(nodes, x, w);

  TunnelingResult result;
  cplx integral = 0.0;
  cplx prev{};
  bool have_prev = false;
  for (int k = 0; k < nodes; ++k) {
    const double u = 0.5 * (x[k] + 1.0);
    const double wu = 0.5 * w[k];
    const cplx tau = crossing.tau_c + delta * (u * u);
    const cplx f = envelope_intensity(envelope, tau);
    const double af = std::abs(f);
    if (u > 1e-6 && af < 1e-12 * f_scale)
      throw std::runtime_error(
          "branch ambiguity: contour passes through another root");
    if (!std::isfinite(af) || af > 1e12 * f_scale)
      throw std::runtime_error("branch ambiguity: contour passes near a pole");
    // Gap E+ - E- = sqrt(Omega^2), continued by adjacent-node sign tracking.
    cplx gap = std::sqrt(f);
    if (have_prev && std::abs(gap - prev) > std::abs(-gap - prev)) gap = -gap;
    prev = gap;
    have_prev = true;
    integral += wu * gap * 2.0 * u * delta;
    result.contour.push_back(tau);
  }
  result.exponent = std::abs(integral.imag());
  result.amplitude_magnitude = std::exp(-result.exponent);
  result.degenerate = false;
  return result;
}

ImmunityReport crossing_immunity_check(const AdiabatonSpec& spec,
                                       const SearchStrip& strip, double zeta) {
  validate(spec);
  ImmunityReport report;

  auto assembled = [&](cplx tau) {
    return build_fields(spec, zeta, tau).total_intensity();
  };

  for (int a = 0; a < strip.n_re; ++a) {
    for (int b = 0; b < strip.n_im; ++b) {
      double re = strip.re_min +
                  (strip.re_max - strip.re_min) * (a + 0.5) / strip.n_re;
      double im = -strip.im_max + 2.0 * strip.im_max * (b + 0.5) / strip.n_im;
      cplx tau{re, im};
      double dev =
          std::abs(assembled(tau) - envelope_intensity(spec.envelope, tau));
      report.max_identity_deviation =
          std::max(report.max_identity_deviation, dev);
    }
  }

  report.envelope_crossings = locate_crossings(spec.envelope, strip);

  const double scale = spec.envelope.width;
  const double f_scale = spec.envelope.amplitude * spec.envelope.amplitude;
  const cplx h{1e-6 * scale, 0.0};
  report.assembled_crossings = find_roots(
      assembled,
      [&](cplx t) { return (assembled(t + h) - assembled(t - h)) / (2.0 * h); },
      strip, scale, f_scale);

  for (const CrossingPoint& c : report.envelope_crossings)
    if (std::abs(c.tau_c.imag()) <= 1e-10 * std::max(1.0, scale) &&
        !c.degenerate)
      report.all_real_crossings_degenerate = false;
  return report;
}

} // namespace slowlight
