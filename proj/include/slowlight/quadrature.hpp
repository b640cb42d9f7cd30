#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace slowlight {

// Adaptive Gauss-Kronrod (G7/K15) integration of a complex-valued function
// along the straight segment from a to b in the complex plane.

namespace detail {

// abscissa, Gauss weight, Kronrod weight
inline constexpr double g7k15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529}};

template <class F>
std::complex<double> gk_panel(const F& f, std::complex<double> a,
                              std::complex<double> b, double& err) {
  const std::complex<double> mid = 0.5 * (a + b);
  const std::complex<double> half = 0.5 * (b - a);
  std::complex<double> y0 = f(mid);
  std::complex<double> g = g7k15[0][1] * y0;
  std::complex<double> k = g7k15[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    std::complex<double> d = half * g7k15[i][0];
    std::complex<double> y = f(mid + d) + f(mid - d);
    g += g7k15[i][1] * y;
    k += g7k15[i][2] * y;
  }
  g *= half;
  k *= half;
  err = std::abs(k - g);
  return k;
}

} // namespace detail

/// Integrate f along [a, b] (straight contour) to absolute tolerance abs_tol.
template <class F>
std::complex<double> integrate_segment(const F& f, std::complex<double> a,
                                       std::complex<double> b,
                                       double abs_tol = 1e-12,
                                       int max_depth = 40) {
  struct Panel {
    std::complex<double> a, b;
    int depth;
  };
  std::vector<Panel> stack{{a, b, 0}};
  std::complex<double> total = 0.0;
  const double span = std::abs(b - a);
  long panels = 0;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    // Budget on total work: an integrand whose roundoff noise exceeds the
    // per-panel floor would otherwise refine a whole subinterval to max
    // depth, costing millions of panels for no accuracy gain.
    if (++panels > 100000)
      throw std::runtime_error("quadrature failed to converge");
    double err;
    std::complex<double> v = detail::gk_panel(f, p.a, p.b, err);
    double local_tol = abs_tol * std::abs(p.b - p.a) / (span > 0 ? span : 1.0);
    // The 1e-14*|v| floor stops subdivision once the Kronrod-Gauss difference
    // is dominated by roundoff; below it refinement only multiplies panels.
    // The constant allows for integrands that are themselves computed with a
    // few tens of ulps of noise (complex exponentials with large phases).
    if (err <= std::max(local_tol, 1e-14 * std::abs(v)) || p.depth >= max_depth) {
      if (p.depth >= max_depth && err > 1e3 * local_tol)
        throw std::runtime_error("quadrature failed to converge");
      total += v;
    } else {
      std::complex<double> m = 0.5 * (p.a + p.b);
      stack.push_back({p.a, m, p.depth + 1});
      stack.push_back({m, p.b, p.depth + 1});
    }
  }
  return total;
}

/// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration
/// on the Legendre polynomial.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const double pi = 3.14159265358979323846;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

} // namespace slowlight
