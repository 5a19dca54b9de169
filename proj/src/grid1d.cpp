#include "vring/grid1d.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace vring {

void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes = es.eigenvalues();
    weights.resize(n);
    for (int j = 0; j < n; ++j) {
        double v0 = es.eigenvectors()(0, j);
        weights[j] = 2.0 * v0 * v0;
    }
}

void cheb_lobatto(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
    if (n < 2) throw std::invalid_argument("cheb_lobatto: n < 2");
    int N = n - 1;
    nodes.resize(n);
    for (int j = 0; j <= N; ++j)
        nodes[j] = -std::cos(M_PI * j / N);
    nodes[0] = -1.0;
    nodes[N] = 1.0;
    // Clenshaw-Curtis weights by direct cosine sums.
    weights.resize(n);
    for (int j = 0; j <= N; ++j) {
        double cj = (j == 0 || j == N) ? 2.0 : 1.0;
        double s = 1.0;
        for (int k = 1; k <= N / 2; ++k) {
            double bk = (2 * k == N) ? 1.0 : 2.0;
            s -= bk * std::cos(2.0 * k * M_PI * j / N) / (4.0 * k * k - 1.0);
        }
        weights[j] = 2.0 * s / (cj * N);
    }
}

Eigen::VectorXd barycentric_weights(const Eigen::VectorXd& nodes) {
    const int n = static_cast<int>(nodes.size());
    Eigen::VectorXd logw(n);
    Eigen::VectorXd sign = Eigen::VectorXd::Ones(n);
    for (int i = 0; i < n; ++i) {
        double ls = 0.0, sg = 1.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double d = nodes[i] - nodes[j];
            ls -= std::log(std::abs(d));
            if (d < 0) sg = -sg;
        }
        logw[i] = ls;
        sign[i] = sg;
    }
    double m = logw.maxCoeff();
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w[i] = sign[i] * std::exp(logw[i] - m);
    return w;
}

Eigen::MatrixXd diff_matrix(const Eigen::VectorXd& nodes,
                            const Eigen::VectorXd& bary) {
    const int n = static_cast<int>(nodes.size());
    Eigen::MatrixXd D(n, n);
    for (int i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            double v = (bary[j] / bary[i]) / (nodes[i] - nodes[j]);
            D(i, j) = v;
            rowsum += v;
        }
        D(i, i) = -rowsum;  // exact derivative of constants is zero
    }
    return D;
}

Eigen::MatrixXd interp_matrix(const Eigen::VectorXd& nodes,
                              const Eigen::VectorXd& bary,
                              const Eigen::VectorXd& targets) {
    const int n = static_cast<int>(nodes.size());
    const int m = static_cast<int>(targets.size());
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m, n);
    for (int i = 0; i < m; ++i) {
        int hit = -1;
        for (int j = 0; j < n; ++j)
            if (targets[i] == nodes[j]) { hit = j; break; }
        if (hit >= 0) {
            P(i, hit) = 1.0;
            continue;
        }
        double denom = 0.0;
        for (int j = 0; j < n; ++j)
            denom += bary[j] / (targets[i] - nodes[j]);
        for (int j = 0; j < n; ++j)
            P(i, j) = (bary[j] / (targets[i] - nodes[j])) / denom;
    }
    return P;
}

namespace {

// Assemble a grid from reference nodes t in [-1,1] and a smooth map
// x(t) with derivatives xp, xpp supplied at the nodes.
Grid1d from_map(const Eigen::VectorXd& t, const Eigen::VectorXd& wt,
                const Eigen::VectorXd& x, const Eigen::VectorXd& xp,
                const Eigen::VectorXd& xpp, double lo, double hi) {
    Grid1d g;
    g.x = x;
    g.lo = lo;
    g.hi = hi;
    Eigen::VectorXd bt = barycentric_weights(t);
    Eigen::MatrixXd Dt = diff_matrix(t, bt);
    Eigen::MatrixXd Dt2 = Dt * Dt;
    Eigen::ArrayXd inv = xp.array().inverse();
    g.D1 = inv.matrix().asDiagonal() * Dt;
    g.D2 = (inv * inv).matrix().asDiagonal() * Dt2 -
           (xpp.array() * inv * inv * inv).matrix().asDiagonal() * Dt;
    g.w = (wt.array() * xp.array()).matrix();
    return g;
}

}  // namespace

Grid1d make_sinh_grid(double a, double b, double focus, double width, int n) {
    if (!(b > a)) throw std::invalid_argument("make_sinh_grid: b <= a");
    Eigen::VectorXd t, wt;
    cheb_lobatto(n, t, wt);
    if (width <= 0.0) return make_cheb_grid(a, b, n);
    double A1 = std::asinh((a - focus) / width);
    double A2 = std::asinh((b - focus) / width);
    double kap = 0.5 * (A2 - A1);
    double off = 0.5 * (A2 + A1);
    Eigen::VectorXd x(n), xp(n), xpp(n);
    for (int j = 0; j < n; ++j) {
        double s = kap * t[j] + off;
        x[j] = focus + width * std::sinh(s);
        xp[j] = width * kap * std::cosh(s);
        xpp[j] = width * kap * kap * std::sinh(s);
    }
    x[0] = a;
    x[n - 1] = b;
    Grid1d g = from_map(t, wt, x, xp, xpp, a, b);
    g.tnodes = t;
    g.to_ref = [focus, width, kap, off](double xx) {
        return (std::asinh((xx - focus) / width) - off) / kap;
    };
    return g;
}

Grid1d make_band_grid(double L, double core, double ratio, int n) {
    if (!(L > 0.0) || !(core > 0.0) || !(ratio >= 1.0))
        throw std::invalid_argument("make_band_grid: bad parameters");
    const double A = ratio - 1.0;
    auto map = [A, core](double s) {
        return s + A * (s - core * std::atan(s / core));
    };
    auto mapp = [A, core](double s) {
        return 1.0 + A * s * s / (s * s + core * core);
    };
    auto mappp = [A, core](double s) {
        double d = s * s + core * core;
        return A * 2.0 * s * core * core / (d * d);
    };
    // half-width S in the s coordinate: solve map(S) = L (monotone)
    double S = L / ratio;
    for (int it = 0; it < 60; ++it) {
        double step = (map(S) - L) / mapp(S);
        S -= step;
        if (std::abs(step) < 1e-14 * (1.0 + S)) break;
    }
    Eigen::VectorXd t, wt;
    cheb_lobatto(n, t, wt);
    Eigen::VectorXd x(n), xp(n), xpp(n);
    for (int j = 0; j < n; ++j) {
        double s = S * t[j];
        x[j] = map(s);
        xp[j] = S * mapp(s);
        xpp[j] = S * S * mappp(s);
    }
    x[0] = -L;
    x[n - 1] = L;
    Grid1d g = from_map(t, wt, x, xp, xpp, -L, L);
    g.tnodes = t;
    g.to_ref = [map, mapp, S](double xx) {
        double s = xx;  // map is a perturbation of the identity
        for (int it = 0; it < 60; ++it) {
            double step = (map(s) - xx) / mapp(s);
            s -= step;
            if (std::abs(step) < 1e-14 * (1.0 + std::abs(s))) break;
        }
        return s / S;
    };
    return g;
}

Grid1d make_cheb_grid(double a, double b, int n) {
    Eigen::VectorXd t, wt;
    cheb_lobatto(n, t, wt);
    double h = 0.5 * (b - a);
    Eigen::VectorXd x(n), xp(n), xpp(n);
    for (int j = 0; j < n; ++j) {
        x[j] = a + h * (t[j] + 1.0);
        xp[j] = h;
        xpp[j] = 0.0;
    }
    Grid1d g = from_map(t, wt, x, xp, xpp, a, b);
    g.tnodes = t;
    g.to_ref = [a, h](double xx) { return (xx - a) / h - 1.0; };
    return g;
}

Eigen::MatrixXd grid_interp(const Grid1d& g, const Eigen::VectorXd& pts) {
    if (g.to_ref && g.tnodes.size() == g.x.size()) {
        Eigen::VectorXd tp(pts.size());
        for (int i = 0; i < pts.size(); ++i) tp[i] = g.to_ref(pts[i]);
        Eigen::VectorXd bw = barycentric_weights(g.tnodes);
        return interp_matrix(g.tnodes, bw, tp);
    }
    Eigen::VectorXd bw = barycentric_weights(g.x);
    return interp_matrix(g.x, bw, pts);
}

}  // namespace vring
