#pragma once

#include "fracdeg/grid.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fracdeg {

enum class KernelKind { fractional, levy };

/// Quadrature weights of a symmetric jump kernel on the lattice dx*Z^d.
///
/// G_beta is the kernel mass of the box x_beta + dx/2*[-1,1)^d. Only the
/// window |beta|_inf <= half_width is stored; everything beyond it is
/// lumped into tail_mass, which is exact when the field vanishes outside
/// the computational window.
struct NonlocalWeights {
    int dim = 1;
    double dx = 1.0;
    KernelKind kind = KernelKind::fractional;
    double exponent = 1.0;       ///< lambda; meaningless for KernelKind::levy
    double normalization = 1.0;  ///< c_lambda
    long half_width = 0;
    std::vector<double> weights; ///< dense (2K+1)^d block, centre entry 0
    double tail_mass = 0.0;

    long side() const { return 2 * half_width + 1; }
    double at(long b0, long b1 = 0) const {
        const long k = half_width;
        return dim == 2 ? weights[static_cast<std::size_t>((b0 + k) * side() + (b1 + k))]
                        : weights[static_cast<std::size_t>(b0 + k)];
    }
    /// Sum of G_beta over the window.
    double window_mass() const;
    /// Window mass plus tail mass: the full off-diagonal rate.
    double total_mass() const { return window_mass() + tail_mass; }
    std::string tag() const { return kind == KernelKind::fractional ? "fractional" : "general-Levy"; }
};

/// c_{d,lambda} = lambda 2^{lambda-1} Gamma((d+lambda)/2) / (pi^{d/2} Gamma(1-lambda/2)),
/// which gives (-Delta)^{lambda/2} the Fourier symbol |xi|^lambda.
double standard_normalization(int dim, double lambda);

/// Measure of the unit sphere S^{d-1}: 2 for d=1, 2*pi for d=2.
double unit_sphere_measure(int dim);

/// Integral of |z|^{-d-lambda} over |z| > 1.
double unit_exterior_integral(int dim, double lambda);

/// Smallest window half width covering every offset between two cells of
/// the grid (n-1 for n cells along the longest axis).
long covering_half_width(const Grid& grid);

/// Weights of c_lambda |z|^{-d-lambda}. Closed form in 1-d, adaptive box
/// quadrature (relative error <= 1e-10) in 2-d. A non-positive
/// normalization selects standard_normalization(dim, lambda).
NonlocalWeights fractional_weights(double lambda, double dx, int dim, long half_width,
                                   double normalization = 0.0);

/// Radially symmetric Levy measure with density nu(|z|).
struct LevyMeasureSpec {
    std::function<double(double)> radial_density;
    /// User-supplied bound on the integral of (|z|^2 /\ 1) nu over R^d.
    double integrability_bound = 0.0;

    /// Wrap a 1-d density given on signed z. Rejects it unless
    /// nu(z) == nu(-z) on a sample of points.
    static LevyMeasureSpec from_signed_density(std::function<double(double)> density,
                                               double integrability_bound);
    /// Non-negativity on a sample and the near-origin second moment
    /// against integrability_bound. Throws InvalidArgument.
    void validate(int dim) const;
};

/// G_beta = integral of nu(|z|) over x_beta + R_0, by adaptive quadrature.
/// Throws QuadratureError when the tail beyond the window diverges.
NonlocalWeights levy_weights(const LevyMeasureSpec& spec, double dx, int dim, long half_width);

/// L_alpha = sum_{beta in W} G_beta (V_{alpha+beta} - V_alpha) - tail * V_alpha,
/// with V = 0 outside the grid window. Direct O(N * |W|) summation.
Field apply_nonlocal(const NonlocalWeights& w, const Field& v);

/// Same operator via FFT convolution: (G * V)_alpha - (sum G + tail) V_alpha.
Field apply_nonlocal_fast(const NonlocalWeights& w, const Field& v);

/// Reusable FFT convolution for one (weights, grid) pair. The kernel
/// spectrum is computed once; apply() may then be called repeatedly.
class FastNonlocalOperator {
public:
    FastNonlocalOperator(const NonlocalWeights& w, const Grid& grid);
    ~FastNonlocalOperator();
    FastNonlocalOperator(FastNonlocalOperator&&) noexcept;
    FastNonlocalOperator& operator=(FastNonlocalOperator&&) noexcept;
    FastNonlocalOperator(const FastNonlocalOperator&) = delete;
    FastNonlocalOperator& operator=(const FastNonlocalOperator&) = delete;

    /// out = L v for values laid out as in Field::values.
    void apply(std::span<const double> v, std::span<double> out) const;
    const Grid& grid() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Throws InvalidArgument unless the weights live on the grid's lattice.
void check_compatible(const NonlocalWeights& w, const Grid& grid);

/// CSV export: a '#' header line with lambda, dx, c_lambda and tail, then
/// columns beta_0[,beta_1],G_beta for every window entry except beta = 0.
void write_weights_csv(std::ostream& os, const NonlocalWeights& w);

} // namespace fracdeg
