#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace cavneg {

struct QuadratureOptions {
  double abs_tol = 1e-8;
  int max_subdivisions = 4000;
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;
  int subdivisions = 0;
};

/// Globally adaptive Gauss-Kronrod (31-point) integration of a complex-valued
/// integrand over consecutive segments [points[k], points[k+1]]. The first
/// and last points may be -inf / +inf; those segments are mapped onto a
/// finite interval. Interior points should mark peaks or kinks.
///
/// Throws NumericalError, reporting the achieved error estimate, when the
/// tolerance is not met within max_subdivisions bisections.
QuadratureResult integrate(const std::function<std::complex<double>(double)>& f,
                           std::vector<double> points, const QuadratureOptions& options = {});

}  // namespace cavneg
