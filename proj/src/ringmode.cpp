#include "vring/ringmode.hpp"

#include <cmath>
#include <stdexcept>

namespace vring {

RingBasis make_ring_basis(int n_radial, double rho_max, int K,
                          const std::string& mapping) {
    if (K < 1) throw std::invalid_argument("ring basis needs K >= 1");
    RingBasis b;
    b.rg = build_radial_grid(n_radial, rho_max, mapping);
    b.K = K;
    b.nr = b.rg.n();
    b.N = (2 * K + 1) * b.nr;
    return b;
}

namespace {

// Ladder factors of the Cartesian derivatives on mode n:
//   d_x: (n -> n+1) 1/2 (D1 - n/rho),   (n -> n-1) 1/2 (D1 + n/rho)
//   d_z: (n -> n+1) -i/2 (D1 - n/rho),  (n -> n-1) +i/2 (D1 + n/rho)
Cplx ladder_coef(char deriv, int step) {
    if (deriv == 'x') return Cplx(0.5, 0.0);
    return step > 0 ? Cplx(0.0, -0.5) : Cplx(0.0, 0.5);
}

Eigen::MatrixXd ladder_radial(const RingBasis& b, int n, int step) {
    Eigen::MatrixXd P = b.rg.g.D1;
    P -= (double(step) * n) *
         Eigen::MatrixXd(b.rg.rho().cwiseInverse().asDiagonal());
    return P;
}

// Shared ladder assembly for the full matrix forms.
Eigen::MatrixXcd ladder_op(const RingBasis& b, char deriv) {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(b.N, b.N);
    for (int n = -b.K; n <= b.K; ++n)
        for (int step : {+1, -1}) {
            int m = n + step;
            if (m < -b.K || m > b.K) continue;
            A.block(b.idx(m, 0), b.idx(n, 0), b.nr, b.nr) =
                ladder_coef(deriv, step) * ladder_radial(b, n, step);
        }
    return A;
}

// Angular Fourier coefficients c_k(rho_i), |k| <= kmax, of a coefficient
// field; rows where every angular sample is exactly zero stay exactly zero.
Eigen::MatrixXcd angular_table(const RingBasis& b,
                               const std::function<double(double, double)>& c,
                               int kmax, int nphi) {
    if (nphi < 4 * (b.K + kmax) + 4) nphi = 4 * (b.K + kmax) + 4;
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(b.nr, 2 * kmax + 1);
    const Eigen::VectorXd& rho = b.rg.rho();
    Eigen::VectorXd samples(nphi);
    for (int i = 0; i < b.nr; ++i) {
        bool nonzero = false;
        for (int j = 0; j < nphi; ++j) {
            double phi = 2.0 * M_PI * j / nphi;
            samples[j] = c(rho[i] * std::cos(phi), rho[i] * std::sin(phi));
            nonzero = nonzero || samples[j] != 0.0;
        }
        if (!nonzero) continue;
        for (int k = -kmax; k <= kmax; ++k) {
            Cplx ck(0.0, 0.0);
            for (int j = 0; j < nphi; ++j) {
                double ang = -2.0 * M_PI * k * j / nphi;
                ck += samples[j] * Cplx(std::cos(ang), std::sin(ang));
            }
            T(i, k + kmax) = ck / double(nphi);
        }
    }
    return T;
}

}  // namespace

Eigen::MatrixXcd ring_dx(const RingBasis& b) { return ladder_op(b, 'x'); }

Eigen::MatrixXcd ring_dz(const RingBasis& b) { return ladder_op(b, 'z'); }

Eigen::MatrixXcd ring_mult(const RingBasis& b,
                           const std::function<double(double, double)>& c,
                           int kmax, int nphi) {
    Eigen::MatrixXcd T = angular_table(b, c, kmax, nphi);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(b.N, b.N);
    for (int k = -kmax; k <= kmax; ++k)
        for (int np = -b.K; np <= b.K; ++np) {
            int n = np + k;
            if (n < -b.K || n > b.K) continue;
            for (int i = 0; i < b.nr; ++i)
                A(b.idx(n, i), b.idx(np, i)) += T(i, k + kmax);
        }
    return A;
}

Eigen::MatrixXcd ring_mult_deriv(const RingBasis& b,
                                 const std::function<double(double, double)>& c,
                                 int kmax, char deriv, int nphi) {
    if (deriv != 'x' && deriv != 'z')
        throw std::invalid_argument("deriv must be 'x' or 'z'");
    Eigen::MatrixXcd T = angular_table(b, c, kmax, nphi);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(b.N, b.N);
    for (int np = -b.K; np <= b.K; ++np)
        for (int step : {+1, -1}) {
            int mu = np + step;  // ladder intermediate; may lie outside the window
            Eigen::MatrixXcd P =
                ladder_coef(deriv, step) * ladder_radial(b, np, step);
            for (int k = -kmax; k <= kmax; ++k) {
                int n = mu + k;
                if (n < -b.K || n > b.K) continue;
                A.block(b.idx(n, 0), b.idx(np, 0), b.nr, b.nr) +=
                    T.col(k + kmax).asDiagonal() * P;
            }
        }
    return A;
}

Eigen::MatrixXcd ring_mult_apply(const RingBasis& b,
                                 const std::function<double(double, double)>& c,
                                 int kmax, const Eigen::MatrixXcd& X, int nphi) {
    Eigen::MatrixXcd T = angular_table(b, c, kmax, nphi);
    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(X.rows(), X.cols());
    for (int k = -kmax; k <= kmax; ++k)
        for (int np = -b.K; np <= b.K; ++np) {
            int n = np + k;
            if (n < -b.K || n > b.K) continue;
            Y.middleRows(b.idx(n, 0), b.nr) +=
                T.col(k + kmax).asDiagonal() * X.middleRows(b.idx(np, 0), b.nr);
        }
    return Y;
}

namespace {
Eigen::MatrixXcd ladder_apply(const RingBasis& b, char deriv,
                              const Eigen::MatrixXcd& X) {
    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(X.rows(), X.cols());
    for (int n = -b.K; n <= b.K; ++n)
        for (int step : {+1, -1}) {
            int m = n + step;
            if (m < -b.K || m > b.K) continue;
            Y.middleRows(b.idx(m, 0), b.nr) +=
                ladder_coef(deriv, step) *
                (ladder_radial(b, n, step) * X.middleRows(b.idx(n, 0), b.nr));
        }
    return Y;
}
}  // namespace

Eigen::MatrixXcd ring_dx_apply(const RingBasis& b, const Eigen::MatrixXcd& X) {
    return ladder_apply(b, 'x', X);
}

Eigen::MatrixXcd ring_dz_apply(const RingBasis& b, const Eigen::MatrixXcd& X) {
    return ladder_apply(b, 'z', X);
}

Eigen::VectorXd ring_metric(const RingBasis& b, const Eigen::VectorXd* gamma) {
    Eigen::VectorXd w(b.N);
    for (int n = -b.K; n <= b.K; ++n)
        for (int i = 0; i < b.nr; ++i)
            w[b.idx(n, i)] =
                2.0 * M_PI * b.rg.wq[i] * (gamma ? (*gamma)[i] : 1.0);
    return w;
}

Eigen::MatrixXcd ring_similar(const Eigen::MatrixXcd& A,
                              const Eigen::VectorXd& wmetric) {
    Eigen::VectorXd s = wmetric.cwiseSqrt();
    Eigen::MatrixXcd M = A;
    for (int i = 0; i < M.rows(); ++i) M.row(i) *= s[i];
    for (int j = 0; j < M.cols(); ++j) M.col(j) /= s[j];
    return M;
}

Eigen::VectorXcd ring_analyze(const RingBasis& b,
                              const std::function<Cplx(double, double)>& f,
                              int nphi) {
    if (nphi < 4 * b.K + 4) nphi = 4 * b.K + 4;
    Eigen::VectorXcd coef = Eigen::VectorXcd::Zero(b.N);
    const Eigen::VectorXd& rho = b.rg.rho();
    Eigen::VectorXcd samples(nphi);
    for (int i = 0; i < b.nr; ++i) {
        for (int j = 0; j < nphi; ++j) {
            double phi = 2.0 * M_PI * j / nphi;
            samples[j] = f(rho[i] * std::cos(phi), rho[i] * std::sin(phi));
        }
        for (int n = -b.K; n <= b.K; ++n) {
            Cplx cn(0.0, 0.0);
            for (int j = 0; j < nphi; ++j) {
                double ang = -2.0 * M_PI * n * j / nphi;
                cn += samples[j] * Cplx(std::cos(ang), std::sin(ang));
            }
            coef[b.idx(n, i)] = cn / double(nphi);
        }
    }
    return coef;
}

Cplx ring_eval(const RingBasis& b, const Eigen::VectorXcd& coef, double x,
               double z) {
    double rho = std::hypot(x, z);
    double phi = std::atan2(z, x);
    Eigen::VectorXd pt(1);
    pt[0] = rho;
    Eigen::RowVectorXd row = b.rg.interp_to(pt).row(0);
    Cplx val(0.0, 0.0);
    for (int n = -b.K; n <= b.K; ++n) {
        Cplx fn = (row.cast<Cplx>() * coef.segment(b.idx(n, 0), b.nr)).value();
        val += fn * Cplx(std::cos(n * phi), std::sin(n * phi));
    }
    return val;
}

Eigen::VectorXcd ring_to_grid(const RingBasis& b, const Eigen::VectorXcd& coef,
                              const MeridionalGrid& g) {
    Eigen::VectorXd pts(g.n);
    for (int p = 0; p < g.n; ++p) pts[p] = std::hypot(g.r[p], g.z[p]);
    Eigen::MatrixXd E = b.rg.interp_to(pts);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(g.n);
    for (int p = 0; p < g.n; ++p) {
        double phi = std::atan2(g.z[p], g.r[p]);
        for (int n = -b.K; n <= b.K; ++n) {
            Cplx fn =
                (E.row(p).cast<Cplx>() * coef.segment(b.idx(n, 0), b.nr)).value();
            out[p] += fn * Cplx(std::cos(n * phi), std::sin(n * phi));
        }
    }
    return out;
}

}  // namespace vring
