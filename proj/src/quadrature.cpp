#include "fracdeg/quadrature.hpp"

#include "fracdeg/error.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <string>

namespace fracdeg::quadrature {

namespace {

using Rule8 = boost::math::quadrature::gauss<double, 8>;

// Boost stores the non-negative half of the symmetric node set.
template <class Rule, class F>
void for_each_node(F&& visit) {
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] == 0.0) {
            visit(0.0, w[k]);
        } else {
            visit(x[k], w[k]);
            visit(-x[k], w[k]);
        }
    }
}

double tensor_rule(const std::function<double(double, double)>& f,
                   double x0, double x1, double y0, double y1) {
    const double cx = 0.5 * (x0 + x1), hx = 0.5 * (x1 - x0);
    const double cy = 0.5 * (y0 + y1), hy = 0.5 * (y1 - y0);
    double sum = 0.0;
    for_each_node<Rule8>([&](double s, double ws) {
        for_each_node<Rule8>([&](double t, double wt) {
            sum += ws * wt * f(cx + hx * s, cy + hy * t);
        });
    });
    return sum * hx * hy;
}

double refine(const std::function<double(double, double)>& f,
              double x0, double x1, double y0, double y1,
              double coarse, const Tolerance& tol, int depth) {
    const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
    const double q[4] = {tensor_rule(f, x0, xm, y0, ym), tensor_rule(f, xm, x1, y0, ym),
                         tensor_rule(f, x0, xm, ym, y1), tensor_rule(f, xm, x1, ym, y1)};
    const double fine = q[0] + q[1] + q[2] + q[3];
    if (std::abs(fine - coarse) <= std::max(tol.absolute, tol.relative * std::abs(fine)))
        return fine;
    if (depth >= tol.max_depth)
        throw QuadratureError("box quadrature did not converge within depth " +
                              std::to_string(tol.max_depth));
    // Children get a quarter of the absolute budget each.
    Tolerance child = tol;
    child.absolute = 0.25 * tol.absolute;
    return refine(f, x0, xm, y0, ym, q[0], child, depth + 1) +
           refine(f, xm, x1, y0, ym, q[1], child, depth + 1) +
           refine(f, x0, xm, ym, y1, q[2], child, depth + 1) +
           refine(f, xm, x1, ym, y1, q[3], child, depth + 1);
}

} // namespace

double box_integral(const std::function<double(double, double)>& f,
                    double x0, double x1, double y0, double y1, const Tolerance& tol) {
    return refine(f, x0, x1, y0, y1, tensor_rule(f, x0, x1, y0, y1), tol, 0);
}

double interval_integral(const std::function<double(double)>& f, double a, double b,
                         const Tolerance& tol) {
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
        f, a, b, static_cast<unsigned>(tol.max_depth), tol.relative, &error);
    if (!std::isfinite(value) || error > std::max(tol.absolute, tol.relative * std::abs(value)) * 10)
        throw QuadratureError("interval quadrature did not converge on [" + std::to_string(a) +
                              ", " + std::to_string(b) + "]");
    return value;
}

double endpoint_singular_integral(const std::function<double(double)>& f, double a, double b,
                                  const Tolerance& tol) {
    boost::math::quadrature::tanh_sinh<double> rule;
    double error = 0.0, l1 = 0.0;
    double value = 0.0;
    try {
        value = rule.integrate(f, a, b, tol.relative, &error, &l1);
    } catch (const std::exception& e) {
        throw QuadratureError(std::string("singular interval integral failed: ") + e.what());
    }
    if (!std::isfinite(value) || error > std::max(tol.absolute, 1e-6 * std::abs(value)))
        throw QuadratureError("singular interval integral did not converge");
    return value;
}

double tail_integral(const std::function<double(double)>& f, double a, const Tolerance& tol) {
    boost::math::quadrature::exp_sinh<double> rule;
    double error = 0.0, l1 = 0.0;
    double value = 0.0;
    try {
        value = rule.integrate(f, a, std::numeric_limits<double>::infinity(), tol.relative,
                               &error, &l1);
    } catch (const std::exception& e) {
        throw QuadratureError(std::string("tail integral failed: ") + e.what());
    }
    if (!std::isfinite(value) || error > std::max(tol.absolute, 1e-6 * std::abs(value)))
        throw QuadratureError("tail integral from " + std::to_string(a) +
                              " does not converge (non-integrable tail?)");
    return value;
}

double gauss_legendre_20(const std::function<double(double)>& f, double a, double b) {
    using Rule20 = boost::math::quadrature::gauss<double, 20>;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double sum = 0.0;
    for_each_node<Rule20>([&](double s, double w) { sum += w * f(c + h * s); });
    return sum * h;
}

} // namespace fracdeg::quadrature
