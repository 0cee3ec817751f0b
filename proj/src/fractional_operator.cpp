#include "fracdeg/fractional_operator.hpp"

#include "fracdeg/csv.hpp"
#include "fracdeg/error.hpp"
#include "fracdeg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

namespace fracdeg {

namespace {

void check_exponent(double lambda) {
    if (!(lambda > 0.0 && lambda < 2.0))
        throw InvalidArgument("exponent lambda must lie in (0,2), got " + std::to_string(lambda));
}

void check_common(double dx, int dim, long half_width) {
    if (!(dx > 0.0) || !std::isfinite(dx))
        throw InvalidArgument("grid spacing must be positive and finite");
    if (dim != 1 && dim != 2)
        throw InvalidArgument("only dimensions 1 and 2 are supported");
    if (half_width < 0)
        throw InvalidArgument("window half width must be non-negative");
}

// Integral of r^{-1-lambda} over [i-1/2, i+1/2] at unit spacing, i >= 1.
// Written through expm1/log1p so far entries keep full relative precision.
double unit_cell_mass_1d(long i, double lambda) {
    const double a = double(i) - 0.5;
    return std::pow(a, -lambda) * -std::expm1(-lambda * std::log1p(1.0 / a)) / lambda;
}

// Integral of max(|cos t|, |sin t|)^lambda over one octant; eight of these
// give the angular factor of the exterior of a square.
double square_exterior_angular(double lambda) {
    return quadrature::gauss_legendre_20(
        [lambda](double t) { return std::pow(std::cos(t), lambda); }, 0.0, std::numbers::pi / 4);
}

// Fill the dense 2-d block from values computed on the octant
// 0 <= b1 <= b0 <= K using the eight-fold symmetry of radial kernels.
template <class CellMass>
void fill_by_octant(NonlocalWeights& w, CellMass&& cell_mass) {
    const long k = w.half_width, side = w.side();
    w.weights.assign(static_cast<std::size_t>(side * side), 0.0);
    auto put = [&](long a, long b, double g) {
        w.weights[static_cast<std::size_t>((a + k) * side + (b + k))] = g;
    };
    for (long b0 = 1; b0 <= k; ++b0) {
        for (long b1 = 0; b1 <= b0; ++b1) {
            const double g = cell_mass(b0, b1);
            for (long s0 : {-1L, 1L})
                for (long s1 : {-1L, 1L}) {
                    put(s0 * b0, s1 * b1, g);
                    put(s0 * b1, s1 * b0, g);
                }
        }
    }
}

} // namespace

double NonlocalWeights::window_mass() const {
    double sum = 0.0;
    for (double g : weights) sum += g;
    return sum;
}

double standard_normalization(int dim, double lambda) {
    check_exponent(lambda);
    if (dim != 1 && dim != 2) throw InvalidArgument("only dimensions 1 and 2 are supported");
    const double d = dim;
    return lambda * std::pow(2.0, lambda - 1.0) * std::tgamma(0.5 * (d + lambda)) /
           (std::pow(std::numbers::pi, 0.5 * d) * std::tgamma(1.0 - 0.5 * lambda));
}

double unit_sphere_measure(int dim) {
    if (dim == 1) return 2.0;
    if (dim == 2) return 2.0 * std::numbers::pi;
    throw InvalidArgument("only dimensions 1 and 2 are supported");
}

double unit_exterior_integral(int dim, double lambda) {
    check_exponent(lambda);
    return unit_sphere_measure(dim) / lambda;
}

long covering_half_width(const Grid& grid) {
    long n = grid.cells[0];
    if (grid.dim == 2) n = std::max(n, grid.cells[1]);
    return std::max(0L, n - 1);
}

NonlocalWeights fractional_weights(double lambda, double dx, int dim, long half_width,
                                   double normalization) {
    check_exponent(lambda);
    check_common(dx, dim, half_width);
    NonlocalWeights w;
    w.dim = dim;
    w.dx = dx;
    w.kind = KernelKind::fractional;
    w.exponent = lambda;
    w.normalization = normalization > 0.0 ? normalization : standard_normalization(dim, lambda);
    w.half_width = half_width;

    // G_beta(dx) = dx^{-lambda} G_beta(1): compute at unit spacing, then scale.
    const double scale = w.normalization * std::pow(dx, -lambda);
    const double edge = double(half_width) + 0.5;
    if (dim == 1) {
        w.weights.assign(static_cast<std::size_t>(w.side()), 0.0);
        for (long i = 1; i <= half_width; ++i) {
            const double g = scale * unit_cell_mass_1d(i, lambda);
            w.weights[static_cast<std::size_t>(half_width + i)] = g;
            w.weights[static_cast<std::size_t>(half_width - i)] = g;
        }
        w.tail_mass = scale * 2.0 * std::pow(edge, -lambda) / lambda;
    } else {
        const double p = -0.5 * (2.0 + lambda);
        auto kernel = [p](double x, double y) { return std::pow(x * x + y * y, p); };
        const quadrature::Tolerance tol{1e-300, 1e-10, 40};
        fill_by_octant(w, [&](long b0, long b1) {
            return scale * quadrature::box_integral(kernel, double(b0) - 0.5, double(b0) + 0.5,
                                                    double(b1) - 0.5, double(b1) + 0.5, tol);
        });
        // Exterior of the square [-a,a)^2 in polar form:
        // (8/lambda) a^{-lambda} * integral_0^{pi/4} cos^lambda.
        w.tail_mass = scale * 8.0 * std::pow(edge, -lambda) * square_exterior_angular(lambda) / lambda;
    }
    return w;
}

LevyMeasureSpec LevyMeasureSpec::from_signed_density(std::function<double(double)> density,
                                                     double integrability_bound) {
    for (double r = 1e-4; r < 1e4; r *= 1.37) {
        const double a = density(r), b = density(-r);
        if (std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b)))
            throw InvalidArgument("Levy density is not symmetric (nu(" + std::to_string(r) +
                                  ") != nu(-" + std::to_string(r) +
                                  ")); only symmetric measures are supported");
    }
    LevyMeasureSpec spec;
    spec.radial_density = [f = std::move(density)](double r) { return f(r); };
    spec.integrability_bound = integrability_bound;
    return spec;
}

void LevyMeasureSpec::validate(int dim) const {
    if (!radial_density) throw InvalidArgument("Levy measure has no density");
    for (double r = 1e-6; r < 1e4; r *= 1.25) {
        const double v = radial_density(r);
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InvalidArgument("Levy density must be finite and non-negative, nu(" +
                                  std::to_string(r) + ") = " + std::to_string(v));
    }
    const double sphere = unit_sphere_measure(dim);
    // int_{|z|<1} |z|^2 dmu + mu(|z| >= 1), in polar coordinates. The near
    // part is summed over dyadic shells [2^-k-1, 2^-k]; shells of an
    // integrable density eventually shrink geometrically, and the remainder
    // is extrapolated from the last ratio.
    auto moment_density = [&](double r) { return r * r * std::pow(r, dim - 1) * radial_density(r); };
    double near = 0.0, previous = 0.0, ratio = 0.0;
    bool settled = false;
    for (int k = 0; k < 4000 && !settled; ++k) {
        const double hi = std::ldexp(1.0, -k), lo = 0.5 * hi;
        const double shell = quadrature::gauss_legendre_20(moment_density, lo, hi);
        if (!std::isfinite(shell))
            throw InvalidArgument("Levy density violates the second-moment condition near the origin");
        near += shell;
        if (k > 8 && previous > 0.0) {
            ratio = shell / previous;
            if (ratio >= 1.0) break;
            const double rest = shell * ratio / (1.0 - ratio);
            settled = rest <= 1e-10 * near || shell == 0.0;
            if (settled) near += rest;
        } else if (k > 8 && shell == 0.0) {
            settled = true;
        }
        previous = shell;
    }
    if (!settled)
        throw InvalidArgument("Levy density violates the second-moment condition near the origin");
    const double far = quadrature::tail_integral(
        [&](double r) { return std::pow(r, dim - 1) * radial_density(r); }, 1.0);
    const double moment = sphere * (near + far);
    if (!std::isfinite(moment) || moment > integrability_bound * (1.0 + 1e-8) + 1e-300)
        throw InvalidArgument("integral of (|z|^2 ^ 1) dmu = " + std::to_string(moment) +
                              " exceeds the supplied bound " + std::to_string(integrability_bound));
}

NonlocalWeights levy_weights(const LevyMeasureSpec& spec, double dx, int dim, long half_width) {
    check_common(dx, dim, half_width);
    spec.validate(dim);
    NonlocalWeights w;
    w.dim = dim;
    w.dx = dx;
    w.kind = KernelKind::levy;
    w.exponent = std::numeric_limits<double>::quiet_NaN();
    w.normalization = 1.0;
    w.half_width = half_width;
    const auto& nu = spec.radial_density;
    const double edge = (double(half_width) + 0.5) * dx;
    const quadrature::Tolerance tol{1e-300, 1e-10, 40};

    if (dim == 1) {
        w.weights.assign(static_cast<std::size_t>(w.side()), 0.0);
        // Boost's Gauss-Kronrod error estimate bottoms out near 1e-10
        // relative, so ask for 1e-9; the rule itself is far more accurate
        // on these smooth intervals.
        const quadrature::Tolerance interval_tol{1e-300, 1e-9, 12};
        for (long i = 1; i <= half_width; ++i) {
            const double g = quadrature::interval_integral(nu, (double(i) - 0.5) * dx,
                                                           (double(i) + 0.5) * dx, interval_tol);
            w.weights[static_cast<std::size_t>(half_width + i)] = g;
            w.weights[static_cast<std::size_t>(half_width - i)] = g;
        }
        w.tail_mass = 2.0 * quadrature::tail_integral(nu, edge);
    } else {
        auto density = [&nu](double x, double y) { return nu(std::sqrt(x * x + y * y)); };
        fill_by_octant(w, [&](long b0, long b1) {
            return quadrature::box_integral(density, (double(b0) - 0.5) * dx, (double(b0) + 0.5) * dx,
                                            (double(b1) - 0.5) * dx, (double(b1) + 0.5) * dx, tol);
        });
        // Exterior of the square: 8 * int_0^{pi/4} int_{edge/cos t}^inf nu(r) r dr dt.
        w.tail_mass = 8.0 * quadrature::gauss_legendre_20(
                                [&](double t) {
                                    return quadrature::tail_integral(
                                        [&](double r) { return nu(r) * r; }, edge / std::cos(t));
                                },
                                0.0, std::numbers::pi / 4);
    }
    return w;
}

void check_compatible(const NonlocalWeights& w, const Grid& grid) {
    if (w.dim != grid.dim)
        throw InvalidArgument("weights are " + std::to_string(w.dim) + "-d but the grid is " +
                              std::to_string(grid.dim) + "-d");
    if (std::abs(w.dx - grid.dx) > 1e-12 * grid.dx)
        throw InvalidArgument("weights spacing " + std::to_string(w.dx) +
                              " does not match grid spacing " + std::to_string(grid.dx));
}

Field apply_nonlocal(const NonlocalWeights& w, const Field& v) {
    check_compatible(w, v.grid);
    const Grid& g = v.grid;
    const long k = w.half_width;
    Field out(g, v.time);
    if (g.dim == 1) {
        for (long i = 0; i < g.cells[0]; ++i) {
            const double vi = v(i);
            double sum = 0.0;
            for (long b = -k; b <= k; ++b) {
                if (b == 0) continue;
                sum += w.at(b) * (v.at_or_zero(i + b) - vi);
            }
            out(i) = sum - w.tail_mass * vi;
        }
    } else {
        for (long i = 0; i < g.cells[0]; ++i)
            for (long j = 0; j < g.cells[1]; ++j) {
                const double vij = v(i, j);
                double sum = 0.0;
                for (long a = -k; a <= k; ++a)
                    for (long b = -k; b <= k; ++b) {
                        if (a == 0 && b == 0) continue;
                        sum += w.at(a, b) * (v.at_or_zero(i + a, j + b) - vij);
                    }
                out(i, j) = sum - w.tail_mass * vij;
            }
    }
    return out;
}

Field apply_nonlocal_fast(const NonlocalWeights& w, const Field& v) {
    FastNonlocalOperator op(w, v.grid);
    Field out(v.grid, v.time);
    op.apply(v.values, out.values);
    return out;
}

void write_weights_csv(std::ostream& os, const NonlocalWeights& w) {
    os << "# kind=" << w.tag() << ",dim=" << w.dim
       << ",lambda=" << format_double(w.exponent) << ",dx=" << format_double(w.dx)
       << ",c_lambda=" << format_double(w.normalization)
       << ",tail_mass=" << format_double(w.tail_mass) << '\n';
    const long k = w.half_width;
    if (w.dim == 1) {
        os << "beta,G_beta\n";
        for (long b = -k; b <= k; ++b)
            if (b != 0) os << b << ',' << format_double(w.at(b)) << '\n';
    } else {
        os << "beta_0,beta_1,G_beta\n";
        for (long a = -k; a <= k; ++a)
            for (long b = -k; b <= k; ++b)
                if (a != 0 || b != 0) os << a << ',' << b << ',' << format_double(w.at(a, b)) << '\n';
    }
}

} // namespace fracdeg
