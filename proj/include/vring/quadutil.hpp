#ifndef VRING_QUADUTIL_HPP
#define VRING_QUADUTIL_HPP

#include <cmath>
#include <functional>

namespace vring {

namespace detail {
inline double simpson3(const std::function<double(double)>& f, double a, double b) {
    return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}
inline double adq(const std::function<double(double)>& f, double a, double b,
                  double whole, double tol, int depth) {
    double c = 0.5 * (a + b);
    double l = simpson3(f, a, c), r = simpson3(f, c, b);
    if (depth <= 0 || std::abs(l + r - whole) < 15.0 * tol)
        return l + r + (l + r - whole) / 15.0;
    // keep the child tolerance above the roundoff of the sub-estimates, or
    // the recursion chases floating-point noise to full depth
    double tnext = std::max(0.5 * tol, 6e-17 * (std::abs(l) + std::abs(r)));
    return adq(f, a, c, l, tnext, depth - 1) + adq(f, c, b, r, tnext, depth - 1);
}
}  // namespace detail

// Adaptive Simpson quadrature on [a,b].
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12) {
    if (a == b) return 0.0;
    return detail::adq(f, a, b, detail::simpson3(f, a, b), tol, 44);
}

}  // namespace vring

#endif
