#pragma once

#include <functional>

namespace fracdeg::quadrature {

struct Tolerance {
    double absolute = 1e-10;
    double relative = 1e-10;
    int max_depth = 30;
};

/// Adaptive tensor Gauss-Legendre integration of f over [x0,x1) x [y0,y1).
///
/// Each box is compared against the sum over its four quadrants; boxes are
/// bisected until the two estimates agree within the tolerance. Throws
/// QuadratureError when max_depth is reached first.
double box_integral(const std::function<double(double, double)>& f,
                    double x0, double x1, double y0, double y1,
                    const Tolerance& tol = {});

/// Adaptive Gauss-Kronrod integration over a finite interval.
double interval_integral(const std::function<double(double)>& f, double a, double b,
                         const Tolerance& tol = {});

/// Tanh-sinh integration over [a, b]; tolerates integrable endpoint
/// singularities such as r^{1-lambda} at r = 0.
double endpoint_singular_integral(const std::function<double(double)>& f, double a, double b,
                                  const Tolerance& tol = {});

/// Integral of f over [a, infinity). Throws QuadratureError when the
/// estimate does not settle, which is how divergent tails show up.
double tail_integral(const std::function<double(double)>& f, double a,
                     const Tolerance& tol = {});

/// Fixed 20-point Gauss-Legendre rule on [a, b].
double gauss_legendre_20(const std::function<double(double)>& f, double a, double b);

} // namespace fracdeg::quadrature
