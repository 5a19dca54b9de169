#ifndef VRING_TESTS_ORACLES_HPP
#define VRING_TESTS_ORACLES_HPP

// Independent reference computations used by the test suites.  Everything
// here is deliberately low-tech (adaptive Simpson, closed forms) so the
// expected values do not share code paths with the library under test.

#include <cmath>
#include <functional>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a,
                      double b) {
    double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double adaptive_quad_impl(const std::function<double(double)>& f,
                                 double a, double b, double whole, double tol,
                                 int depth) {
    double c = 0.5 * (a + b);
    double left = simpson(f, a, c);
    double right = simpson(f, c, b);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_quad_impl(f, a, c, left, 0.5 * tol, depth - 1) +
           adaptive_quad_impl(f, c, b, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson on [a,b].
inline double adaptive_quad(const std::function<double(double)>& f, double a,
                            double b, double tol = 1e-12) {
    return adaptive_quad_impl(f, a, b, simpson(f, a, b), tol, 48);
}

// Adaptive quadrature over [0,inf) via x = t/(1-t).
inline double adaptive_quad_halfline(const std::function<double(double)>& f,
                                     double tol = 1e-12) {
    auto g = [&f](double t) {
        double m = 1.0 - t;
        if (m <= 0.0) return 0.0;
        double x = t / m;
        return f(x) / (m * m);
    };
    return adaptive_quad(g, 0.0, 1.0 - 1e-12, tol);
}

}  // namespace oracle

#endif
