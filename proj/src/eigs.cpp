#include "vring/eigs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace vring {

double op_scale(const Eigen::MatrixXcd& A) {
    double s = A.norm() / std::sqrt(static_cast<double>(A.rows()));
    return s > 0 ? s : 1.0;
}

namespace {

double pair_residual(const Eigen::MatrixXcd& A, const EigenPair& p, double scale) {
    return (A * p.vec - p.lambda * p.vec).norm() / (p.vec.norm() * scale);
}

void sort_spectrum(Spectrum& s) {
    std::sort(s.pairs.begin(), s.pairs.end(), [](const EigenPair& a, const EigenPair& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() > b.lambda.real();
        return a.lambda.imag() > b.lambda.imag();
    });
}

}  // namespace

Spectrum eigensolve_dense(const Eigen::MatrixXcd& A) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolve_dense: complex QR failed to converge");
    const double scale = op_scale(A);
    Spectrum s;
    s.pairs.resize(A.rows());
    for (int j = 0; j < A.rows(); ++j) {
        EigenPair& p = s.pairs[j];
        p.lambda = es.eigenvalues()[j];
        p.vec = es.eigenvectors().col(j).normalized();
        p.residual = pair_residual(A, p, scale);
    }
    sort_spectrum(s);
    return s;
}

Spectrum eigensolve_dense(const Eigen::MatrixXd& A) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolve_dense: real QR failed to converge");
    const Eigen::MatrixXcd Ac = A.cast<Cplx>();
    const double scale = op_scale(Ac);
    Spectrum s;
    s.pairs.resize(A.rows());
    for (int j = 0; j < A.rows(); ++j) {
        EigenPair& p = s.pairs[j];
        p.lambda = es.eigenvalues()[j];
        p.vec = es.eigenvectors().col(j).normalized();
        p.residual = pair_residual(Ac, p, scale);
    }
    sort_spectrum(s);
    return s;
}

void rayleigh_refine(const Eigen::MatrixXcd& A, EigenPair& p, int iters) {
    const int n = static_cast<int>(A.rows());
    const double scale = op_scale(A);
    for (int it = 0; it < iters; ++it) {
        if (p.residual < 1e-14) break;
        Eigen::MatrixXcd M = A - p.lambda * Eigen::MatrixXcd::Identity(n, n);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
        Eigen::VectorXcd v = lu.solve(p.vec);
        double nv = v.norm();
        if (!(nv > 0) || !std::isfinite(nv)) break;
        v /= nv;
        Cplx rq = v.dot(A * v);  // Eigen's dot conjugates the first argument
        EigenPair cand{rq, v, 0.0};
        cand.residual = pair_residual(A, cand, scale);
        if (cand.residual <= p.residual) p = cand;
        else break;
    }
}

namespace {

Spectrum shift_invert_impl(const Eigen::MatrixXcd& A, Cplx sigma, int k, int m) {
    const int n = static_cast<int>(A.rows());
    if (k < 1) throw std::invalid_argument("eigensolve_shift_invert: k < 1");
    if (m <= 0) m = std::min(n, std::max(2 * k + 16, 40));
    m = std::min(m, n);

    Eigen::MatrixXcd M = A - sigma * Eigen::MatrixXcd::Identity(n, n);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);

    // Arnoldi on (A - sigma I)^{-1} with full reorthogonalization.
    Eigen::MatrixXcd V(n, m + 1);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
    Eigen::VectorXcd v0 = Eigen::VectorXcd::Ones(n);
    for (int i = 0; i < n; ++i) v0[i] += Cplx(0.0, std::sin(1.7 * (i + 1)));
    V.col(0) = v0.normalized();
    int mm = m;
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXcd w = lu.solve(V.col(j));
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= j; ++i) {
                Cplx h = V.col(i).dot(w);
                w -= h * V.col(i);
                if (pass == 0) H(i, j) += h;
            }
        }
        double nw = w.norm();
        H(j + 1, j) = nw;
        if (nw < 1e-12) { mm = j + 1; break; }
        V.col(j + 1) = w / nw;
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H.topLeftCorner(mm, mm));
    struct Ritz { Cplx theta; int idx; };
    std::vector<Ritz> ritz;
    for (int j = 0; j < mm; ++j)
        if (std::abs(es.eigenvalues()[j]) > 1e-14)
            ritz.push_back({es.eigenvalues()[j], j});
    std::sort(ritz.begin(), ritz.end(),
              [](const Ritz& a, const Ritz& b) { return std::abs(a.theta) > std::abs(b.theta); });

    const double scale = op_scale(A);
    Spectrum s;
    for (int i = 0; i < std::min<int>(k, static_cast<int>(ritz.size())); ++i) {
        EigenPair p;
        p.lambda = sigma + 1.0 / ritz[i].theta;
        p.vec = (V.leftCols(mm) * es.eigenvectors().col(ritz[i].idx)).normalized();
        p.residual = pair_residual(A, p, scale);
        if (p.residual > 1e-10) rayleigh_refine(A, p);
        s.pairs.push_back(p);
    }
    sort_spectrum(s);
    return s;
}

}  // namespace

Spectrum eigensolve_shift_invert(const Eigen::MatrixXcd& A, Cplx sigma, int k, int krylov) {
    return shift_invert_impl(A, sigma, k, krylov);
}

Spectrum eigensolve_shift_invert(const Eigen::MatrixXd& A, Cplx sigma, int k, int krylov) {
    return shift_invert_impl(A.cast<Cplx>(), sigma, k, krylov);
}

ContourResult contour_projection(const Eigen::MatrixXcd& A, Cplx center,
                                 double radius, double idem_tol, int nodes0,
                                 int max_doublings) {
    const int n = static_cast<int>(A.rows());
    ContourResult best;
    int K = nodes0;
    int prev_rank = -1;
    for (int round = 0; round <= max_doublings; ++round, K *= 2) {
        Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(n, n);
        for (int j = 0; j < K; ++j) {
            double th = 2.0 * M_PI * (j + 0.5) / K;
            Cplx z = center + radius * Cplx(std::cos(th), std::sin(th));
            Eigen::MatrixXcd M = z * Eigen::MatrixXcd::Identity(n, n) - A;
            Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
            Eigen::MatrixXcd R = lu.solve(Eigen::MatrixXcd::Identity(n, n));
            P += (z - center) * R;
        }
        P /= static_cast<double>(K);

        ContourResult res;
        res.P = P;
        res.nodes = K;
        res.rank = static_cast<int>(std::lround(P.trace().real()));
        res.idempotency = (P * P - P).norm();
        if (res.rank > 0) {
            Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(P);
            Eigen::MatrixXcd Q = qr.householderQ();
            res.basis = Q.leftCols(res.rank);
        }
        res.converged = (res.rank == prev_rank) && (res.idempotency <= idem_tol);
        best = res;
        if (res.converged) break;
        prev_rank = res.rank;
    }
    return best;
}

}  // namespace vring
