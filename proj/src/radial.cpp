#include "vring/radial.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vring {

namespace {

// Node budget per panel: ~n/8 nodes on the rational tail (algebraic map
// only), the rest over P graded panels.  `front_load` gives the innermost
// panel the largest share (weights P-k); otherwise shares are equal.
void allocate(int nin, int P, bool front_load, std::vector<int>& per) {
    per.assign(P, 1);
    double W = 0.0;
    for (int k = 0; k < P; ++k) W += front_load ? (P - k) : 1.0;
    int used = P;
    for (int k = 0; k < P && used < nin; ++k) {
        double wk = front_load ? (P - k) : 1.0;
        int extra = static_cast<int>(std::floor(nin * wk / W)) - 1;
        extra = std::min(extra, nin - used);
        if (extra > 0) { per[k] += extra; used += extra; }
    }
    for (int k = 0; used < nin; k = (k + 1) % P) { per[k] += 1; ++used; }
}

}  // namespace

RadialGrid build_radial_grid(int n, double rho_max, const std::string& mapping) {
    if (n < 8) throw std::invalid_argument("build_radial_grid: n < 8");
    if (rho_max <= 0) throw std::invalid_argument("build_radial_grid: rho_max <= 0");
    const bool alg = mapping == "algebraic";
    if (!alg && mapping != "geometric")
        throw std::invalid_argument("build_radial_grid: unknown mapping " + mapping);

    RadialGrid rg;
    rg.mapping = mapping;
    rg.rho_max = rho_max;

    const int ntail = alg ? std::max(1, n / 8) : 0;
    const int nin = n - ntail;
    // Fixed panel count so layouts scale cleanly when n doubles.
    const int P = nin < 16 ? 2 : 4;

    std::vector<double> bps(P + 1);
    if (alg) {
        for (int k = 0; k <= P; ++k)
            bps[k] = rho_max * std::pow(static_cast<double>(k) / P, 1.5);
    } else {
        // geometric grading, dynamic range 64 toward the origin
        double ratio = std::pow(64.0, 1.0 / (P - 1));
        bps[P] = rho_max;
        for (int k = P - 1; k >= 1; --k) bps[k] = bps[k + 1] / ratio;
        bps[0] = 0.0;
    }
    std::vector<int> per;
    allocate(nin, P, alg, per);

    rg.g.x.resize(n);
    rg.g.w.resize(n);
    rg.wq.resize(n);
    rg.g.D1 = Eigen::MatrixXd::Zero(n, n);
    rg.g.D2 = Eigen::MatrixXd::Zero(n, n);
    rg.g.lo = 0.0;
    rg.g.hi = alg ? std::numeric_limits<double>::infinity() : rho_max;

    int off = 0;
    for (int k = 0; k < P; ++k) {
        Eigen::VectorXd t, wt;
        gauss_legendre(per[k], t, wt);
        RadialGrid::Panel pan;
        pan.offset = off;
        pan.n = per[k];
        pan.a = bps[k];
        pan.b = bps[k + 1];
        double h = 0.5 * (pan.b - pan.a);
        pan.ref.resize(pan.n);
        for (int j = 0; j < pan.n; ++j) {
            double x = pan.a + h * (t[j] + 1.0);
            pan.ref[j] = x;
            rg.g.x[off + j] = x;
            rg.g.w[off + j] = h * wt[j];
            rg.wq[off + j] = h * wt[j] * x;
        }
        pan.bary = barycentric_weights(pan.ref);
        pan.D1 = diff_matrix(pan.ref, pan.bary);
        rg.g.D1.block(off, off, pan.n, pan.n) = pan.D1;
        rg.g.D2.block(off, off, pan.n, pan.n) = pan.D1 * pan.D1;
        rg.panels.push_back(pan);
        off += pan.n;
    }
    if (ntail > 0) {
        Eigen::VectorXd t, wt;
        gauss_legendre(ntail, t, wt);
        RadialGrid::Panel pan;
        pan.offset = off;
        pan.n = ntail;
        pan.a = rho_max;
        pan.b = std::numeric_limits<double>::infinity();
        pan.tail = true;
        pan.tail_scale = rho_max;
        pan.ref.resize(ntail);  // u coordinates in (0,1)
        Eigen::VectorXd xp(ntail);
        for (int j = 0; j < ntail; ++j) {
            double u = 0.5 * (t[j] + 1.0);
            double m = 1.0 - u;
            pan.ref[j] = u;
            rg.g.x[off + j] = rho_max + pan.tail_scale * u / m;
            xp[j] = pan.tail_scale / (m * m);  // d rho/du
            rg.g.w[off + j] = 0.5 * wt[j] * xp[j];
            rg.wq[off + j] = rg.g.w[off + j] * rg.g.x[off + j];
        }
        pan.bary = barycentric_weights(pan.ref);
        Eigen::MatrixXd Du = diff_matrix(pan.ref, pan.bary);
        Eigen::ArrayXd inv = xp.array().inverse();
        pan.D1 = inv.matrix().asDiagonal() * Du;
        Eigen::VectorXd xpp(ntail);
        for (int j = 0; j < ntail; ++j) {
            double m = 1.0 - pan.ref[j];
            xpp[j] = 2.0 * pan.tail_scale / (m * m * m);
        }
        rg.g.D1.block(off, off, ntail, ntail) = pan.D1;
        rg.g.D2.block(off, off, ntail, ntail) =
            (inv * inv).matrix().asDiagonal() * (Du * Du) -
            (xpp.array() * inv * inv * inv).matrix().asDiagonal() * Du;
        rg.panels.push_back(pan);
    }
    return rg;
}

Eigen::RowVectorXd RadialGrid::eval_row(int p, double x) const {
    const Panel& pan = panels[p];
    double c = pan.tail ? (x - pan.a) / (pan.tail_scale + (x - pan.a)) : x;
    Eigen::VectorXd pt(1);
    pt[0] = c;
    return interp_matrix(pan.ref, pan.bary, pt).row(0);
}

Eigen::RowVectorXd RadialGrid::deriv_row(int p, double x) const {
    return eval_row(p, x) * panels[p].D1;
}

Eigen::MatrixXd RadialGrid::interp_to(const Eigen::VectorXd& pts) const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(pts.size(), n());
    for (int i = 0; i < pts.size(); ++i) {
        int p = static_cast<int>(panels.size()) - 1;
        for (size_t k = 0; k < panels.size(); ++k)
            if (pts[i] <= panels[k].b) { p = static_cast<int>(k); break; }
        M.block(i, panels[p].offset, 1, panels[p].n) = eval_row(p, pts[i]);
    }
    return M;
}

double radial_weight_at(double rho, double plateau, double power) {
    auto smoothstep = [](double s) {
        if (s <= 0.0) return 0.0;
        if (s >= 1.0) return 1.0;
        double a = std::exp(-1.0 / s);
        double b = std::exp(-1.0 / (1.0 - s));
        return a / (a + b);
    };
    double expo = power * smoothstep((rho - plateau) / plateau);
    return std::pow(std::sqrt(1.0 + rho * rho), expo);
}

Eigen::VectorXd radial_weight(const Eigen::VectorXd& rho, double plateau,
                              double power) {
    Eigen::VectorXd g(rho.size());
    for (int i = 0; i < rho.size(); ++i)
        g[i] = radial_weight_at(rho[i], plateau, power);
    return g;
}

}  // namespace vring
