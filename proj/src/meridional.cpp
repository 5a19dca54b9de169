#include "vring/meridional.hpp"

#include <stdexcept>

namespace vring {

namespace {

// Reshape-free tensor application: out = (Ar ⊗ I) f  or  (I ⊗ Az) f.
Eigen::VectorXd apply_r(const MeridionalGrid& g, const Eigen::MatrixXd& Ar,
                        const Eigen::VectorXd& f) {
    Eigen::Map<const Eigen::MatrixXd> F(f.data(), g.nz, g.nr);  // col ir = f(ir,:)
    Eigen::MatrixXd out = F * Ar.transpose();
    return Eigen::Map<const Eigen::VectorXd>(out.data(), g.n);
}

Eigen::VectorXd apply_z(const MeridionalGrid& g, const Eigen::MatrixXd& Az,
                        const Eigen::VectorXd& f) {
    Eigen::Map<const Eigen::MatrixXd> F(f.data(), g.nz, g.nr);
    Eigen::MatrixXd out = Az * F;
    return Eigen::Map<const Eigen::VectorXd>(out.data(), g.n);
}

}  // namespace

MeridionalGrid make_meridional_grid(const Grid1d& gr, const Grid1d& gz,
                                    double ell_off) {
    MeridionalGrid g;
    g.gr = gr;
    g.gz = gz;
    g.ell_off = ell_off;
    g.nr = gr.n();
    g.nz = gz.n();
    g.n = g.nr * g.nz;
    g.r.resize(g.n);
    g.z.resize(g.n);
    g.wbox.resize(g.n);
    g.radius.resize(g.n);
    for (int ir = 0; ir < g.nr; ++ir) {
        for (int iz = 0; iz < g.nz; ++iz) {
            int id = g.idx(ir, iz);
            g.r[id] = gr.x[ir];
            g.z[id] = gz.x[iz];
            g.wbox[id] = gr.w[ir] * gz.w[iz];
            g.radius[id] = gr.x[ir] + ell_off;
        }
    }
    return g;
}

Eigen::MatrixXd kron_r(const MeridionalGrid& g, const Eigen::MatrixXd& Ar) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(g.n, g.n);
    for (int ir = 0; ir < g.nr; ++ir)
        for (int jr = 0; jr < g.nr; ++jr) {
            double a = Ar(ir, jr);
            if (a == 0.0) continue;
            for (int iz = 0; iz < g.nz; ++iz)
                M(g.idx(ir, iz), g.idx(jr, iz)) = a;
        }
    return M;
}

Eigen::MatrixXd kron_z(const MeridionalGrid& g, const Eigen::MatrixXd& Az) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(g.n, g.n);
    for (int ir = 0; ir < g.nr; ++ir)
        for (int iz = 0; iz < g.nz; ++iz)
            for (int jz = 0; jz < g.nz; ++jz)
                M(g.idx(ir, iz), g.idx(ir, jz)) = Az(iz, jz);
    return M;
}

Eigen::MatrixXd MeridionalGrid::Dr() const { return kron_r(*this, gr.D1); }
Eigen::MatrixXd MeridionalGrid::Dz() const { return kron_z(*this, gz.D1); }
Eigen::MatrixXd MeridionalGrid::Drr() const { return kron_r(*this, gr.D2); }
Eigen::MatrixXd MeridionalGrid::Dzz() const { return kron_z(*this, gz.D2); }

Eigen::MatrixXd grid_transfer(const MeridionalGrid& src, const MeridionalGrid& dst) {
    Eigen::MatrixXd Pr = grid_interp(src.gr, dst.gr.x);
    Eigen::MatrixXd Pz = grid_interp(src.gz, dst.gz.x);
    for (int i = 0; i < dst.nr; ++i)
        if (dst.gr.x[i] < src.gr.x[0] || dst.gr.x[i] > src.gr.x[src.nr - 1])
            Pr.row(i).setZero();
    for (int i = 0; i < dst.nz; ++i)
        if (dst.gz.x[i] < src.gz.x[0] || dst.gz.x[i] > src.gz.x[src.nz - 1])
            Pz.row(i).setZero();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(dst.n, src.n);
    for (int ir = 0; ir < dst.nr; ++ir)
        for (int iz = 0; iz < dst.nz; ++iz)
            for (int jr = 0; jr < src.nr; ++jr) {
                double pr = Pr(ir, jr);
                if (pr == 0.0) continue;
                for (int jz = 0; jz < src.nz; ++jz)
                    P(dst.idx(ir, iz), src.idx(jr, jz)) = pr * Pz(iz, jz);
            }
    return P;
}

double sobolev_sq(const MeridionalGrid& g, const Eigen::VectorXd& f, int k,
                  const Eigen::VectorXd& w) {
    if (k < 0 || k > 3) throw std::invalid_argument("sobolev_sq: order out of range");
    double total = 0.0;
    // d[a] holds ∂_r^a applied a times; inner loop layers ∂_z.
    Eigen::VectorXd da = f;
    for (int a = 0; a <= k; ++a) {
        Eigen::VectorXd dab = da;
        for (int b = 0; a + b <= k; ++b) {
            total += (dab.array().square() * w.array()).sum();
            if (a + b < k) dab = apply_z(g, g.gz.D1, dab);
        }
        if (a < k) da = apply_r(g, g.gr.D1, da);
    }
    return total;
}

double sobolev_sq(const MeridionalGrid& g, const Field2& v, int k,
                  const Eigen::VectorXd& w) {
    double total = sobolev_sq(g, v.r, k, w) + sobolev_sq(g, v.z, k, w);
    if (k >= 1) {
        Eigen::ArrayXd m = v.r.array() / g.radius.array();
        total += (m.square() * w.array()).sum();
    }
    return total;
}

}  // namespace vring
