#include "vring/axisym.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "vring/euler2d.hpp"

namespace vring {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_ell(const RingBasis& b, double ell) {
    if (std::isfinite(ell) && ell < 2.0 * b.rg.rho_max)
        throw std::invalid_argument(
            "ring offset ell must be >= 2 * rho_max so the symmetry wall "
            "stays outside the polar patch");
}
}  // namespace

Eigen::VectorXcd RingStream::solve(const Eigen::VectorXcd& omega) const {
    return lu.solve((rhs_mask.array() * omega.array()).matrix());
}

Eigen::MatrixXcd RingStream::solution_map() const {
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(rhs_mask.size(), rhs_mask.size());
    rhs.diagonal() = rhs_mask.cast<Cplx>();
    return lu.solve(rhs);
}

RingStream make_ring_stream(const RingBasis& b, double ell, int kmax) {
    check_ell(b, ell);
    const int N = b.N;
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(N, N);
    Eigen::VectorXd mask = Eigen::VectorXd::Ones(N);

    // planar part: block diagonal over the modes (only |n| matters)
    for (int n = -b.K; n <= b.K; ++n) {
        Eigen::VectorXd mloc;
        Eigen::MatrixXd Lloc = stream_collocation(b.rg, n, mloc);
        L.block(b.idx(n, 0), b.idx(n, 0), b.nr, b.nr) = Lloc.cast<Cplx>();
        mask.segment(b.idx(n, 0), b.nr) = mloc;
    }

    // finite-radius terms (x+ell)^{-1} d_x - (x+ell)^{-2}, kept off the
    // constraint rows so the boundary conditions stay per mode
    if (std::isfinite(ell)) {
        Eigen::MatrixXcd C = ring_mult_deriv(
            b, [ell](double x, double) { return 1.0 / (x + ell); }, kmax, 'x');
        C -= ring_mult(
            b, [ell](double x, double) { return 1.0 / ((x + ell) * (x + ell)); },
            kmax);
        for (int i = 0; i < N; ++i)
            if (mask[i] != 0.0) L.row(i) += C.row(i);
    }

    // row equilibration keeps the LU well scaled across panels
    Eigen::VectorXd rs(N);
    for (int i = 0; i < N; ++i) {
        double m = L.row(i).cwiseAbs().maxCoeff();
        rs[i] = (m > 0.0) ? 1.0 / m : 1.0;
        L.row(i) *= rs[i];
    }

    RingStream s;
    s.b = &b;
    s.ell = ell;
    s.rhs_mask = (rs.array() * mask.array()).matrix();
    s.lu.compute(L);
    return s;
}

void ring_velocity_maps(const RingStream& s, Eigen::MatrixXcd& Ux,
                        Eigen::MatrixXcd& Uz, int kmax) {
    const RingBasis& b = *s.b;
    Eigen::MatrixXcd Psi = s.solution_map();
    Ux = -ring_dz_apply(b, Psi);
    Uz = ring_dx_apply(b, Psi);
    if (std::isfinite(s.ell)) {
        double ell = s.ell;
        Uz += ring_mult_apply(
            b, [ell](double x, double) { return 1.0 / (x + ell); }, kmax, Psi);
    }
}

double spectral_norm_est(const Eigen::MatrixXcd& A, int iters) {
    const int n = static_cast<int>(A.rows());
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i)
        v[i] = Cplx(1.0 + 1e-3 * std::sin(1.7 * i + 0.3), 1e-3 * std::cos(2.3 * i));
    v.normalize();
    double sigma = 0.0;
    for (int it = 0; it < iters; ++it) {
        Eigen::VectorXcd w = A * v;
        double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = A.adjoint() * w;
        double nv = v.norm();
        sigma = std::sqrt(nv);
        if (nv == 0.0) return 0.0;
        v /= nv;
    }
    return sigma;
}

RingOperator assemble_ring_operator(const RingBasis& b,
                                    const TruncatedProfile& t,
                                    const CorrectionField* corr, double ell,
                                    double weight_power, int kmax) {
    check_ell(b, ell);
    const bool finite = std::isfinite(ell);
    if (finite && ell < 2.0 * t.Rbar)
        throw std::invalid_argument("offset ell must be >= 2 * support radius");
    if (finite && corr == nullptr)
        throw std::invalid_argument(
            "finite ring radius requires the divergence correction field");
    const double Rbar = t.Rbar;

    // Background samplers; all are identically zero outside the support ball,
    // which keeps the corresponding operator rows exactly zero there.
    auto vel = [&](double x, double z, double& ux, double& uz) {
        double rho = std::hypot(x, z);
        if (rho >= Rbar) {
            ux = uz = 0.0;
            return;
        }
        double zeta = t.zeta(rho);
        ux = -zeta * z;
        uz = zeta * x;
        if (finite) {
            double wr, wz;
            corr->eval(x, z, wr, wz);
            ux += wr / (x + ell);
            uz += wz / (x + ell);
        }
    };
    auto divv = [&](double x, double z) {
        if (!finite) return 0.0;
        double rho = std::hypot(x, z);
        if (rho >= Rbar) return 0.0;
        double wr, wz;
        corr->eval(x, z, wr, wz);
        double ur_plan = -t.zeta(rho) * z;
        return -(ur_plan + wr / (x + ell)) / (x + ell);
    };

    RingOperator op;
    op.ell = ell;
    op.Rbar = Rbar;
    op.gamma.resize(b.nr);
    for (int i = 0; i < b.nr; ++i)
        op.gamma[i] = radial_weight_at(b.rg.rho()[i], Rbar, weight_power);
    op.wmetric = ring_metric(b, &op.gamma);

    // main part: advection by the corrected background, plus the divergence
    // compensator that makes the continuum operator skew in the metric
    op.M = -ring_mult_deriv(
               b,
               [&](double x, double z) {
                   double ux, uz;
                   vel(x, z, ux, uz);
                   return ux;
               },
               kmax, 'x') -
           ring_mult_deriv(
               b,
               [&](double x, double z) {
                   double ux, uz;
                   vel(x, z, ux, uz);
                   return uz;
               },
               kmax, 'z');
    if (finite) op.M -= 0.5 * ring_mult(b, divv, kmax);

    // project onto the metric-skew component and record the discarded defect
    {
        Eigen::VectorXd winv = op.wmetric.cwiseInverse();
        Eigen::MatrixXcd Mt = op.M.adjoint();
        for (int i = 0; i < b.N; ++i) Mt.row(i) *= winv[i];
        for (int j = 0; j < b.N; ++j) Mt.col(j) *= op.wmetric[j];
        Eigen::MatrixXcd Ms = 0.5 * (op.M - Mt);
        double nm = spectral_norm_est(ring_similar(op.M, op.wmetric));
        double nd = spectral_norm_est(ring_similar(op.M - Ms, op.wmetric));
        op.skew_correction = (nm > 0.0) ? nd / nm : 0.0;
        op.M = Ms;
    }

    // velocity maps through the stream solve
    RingStream st = make_ring_stream(b, ell, kmax);
    Eigen::MatrixXcd Ux, Uz;
    ring_velocity_maps(st, Ux, Uz, kmax);

    // compact part: transport of the background vorticity gradient
    auto om_dx = [&](double x, double z) {
        double rho = std::hypot(x, z);
        return (rho >= Rbar) ? 0.0 : t.omega_p(rho) * x / rho;
    };
    auto om_dz = [&](double x, double z) {
        double rho = std::hypot(x, z);
        return (rho >= Rbar) ? 0.0 : t.omega_p(rho) * z / rho;
    };
    op.K = -ring_mult_apply(b, om_dx, kmax, Ux) -
           ring_mult_apply(b, om_dz, kmax, Uz);

    // small part: curvature terms, O(1/ell) on the support
    if (finite) {
        auto om_curv = [&](double x, double z) {
            double rho = std::hypot(x, z);
            return (rho >= Rbar) ? 0.0 : t.omega(rho) / (x + ell);
        };
        auto zero_order = [&](double x, double z) {
            double rho = std::hypot(x, z);
            if (rho >= Rbar) return 0.0;
            double ux, uz;
            vel(x, z, ux, uz);
            return ux / (x + ell) + 0.5 * divv(x, z);
        };
        op.S = ring_mult_apply(b, om_curv, kmax, Ux) +
               ring_mult(b, zero_order, kmax);
    } else {
        op.S = Eigen::MatrixXcd::Zero(b.N, b.N);
    }
    return op;
}

std::vector<StreamConvergenceRow> stream_convergence_study(
    const RingBasis& b, const Eigen::VectorXcd& omega, double Rbar,
    const std::vector<double>& ells) {
    Eigen::VectorXd wball = Eigen::VectorXd::Zero(b.N);
    for (int n = -b.K; n <= b.K; ++n)
        for (int i = 0; i < b.nr; ++i)
            if (b.rg.rho()[i] <= Rbar)
                wball[b.idx(n, i)] = 2.0 * M_PI * b.rg.wq[i];

    Eigen::MatrixXcd Dx = ring_dx(b), Dz = ring_dz(b);
    RingStream st_inf = make_ring_stream(b, kInf);
    Eigen::VectorXcd psi_inf = st_inf.solve(omega);
    Eigen::VectorXcd gx_inf = Dx * psi_inf, gz_inf = Dz * psi_inf;

    std::vector<StreamConvergenceRow> rows;
    for (double ell : ells) {
        RingStream st = make_ring_stream(b, ell);
        Eigen::VectorXcd psi = st.solve(omega);
        StreamConvergenceRow row;
        row.ell = ell;
        Eigen::VectorXcd dgx = Dx * psi - gx_inf, dgz = Dz * psi - gz_inf;
        row.grad_diff =
            std::sqrt(wball.dot(dgx.cwiseAbs2()) + wball.dot(dgz.cwiseAbs2()));
        Eigen::VectorXcd por = ring_mult_apply(
            b, [ell](double x, double) { return 1.0 / (x + ell); }, 8, psi);
        row.psi_over_r = std::sqrt(wball.dot(por.cwiseAbs2()));
        rows.push_back(row);
    }
    return rows;
}

namespace {

// Riesz-projector rank of the Rayleigh-Ritz restriction of A to the span of
// the supplied (approximate eigenvector) columns, over the given contour.
int contour_rank(const Eigen::MatrixXcd& A, const std::vector<EigenPair>& pairs,
                 Cplx center, double radius) {
    if (pairs.empty()) return 0;
    Eigen::MatrixXcd V(A.rows(), static_cast<int>(pairs.size()));
    for (int j = 0; j < V.cols(); ++j) V.col(j) = pairs[j].vec;
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(V);
    Eigen::MatrixXcd Q =
        qr.householderQ() * Eigen::MatrixXcd::Identity(A.rows(), V.cols());
    Eigen::MatrixXcd T = Q.adjoint() * (A * Q);
    ContourResult c = contour_projection(T, center, radius);
    return c.converged ? c.rank : 0;
}

}  // namespace

std::vector<EllRow> ell_continuation(const RingBasis& b,
                                     const TruncatedProfile& t,
                                     const std::vector<double>& ells,
                                     Cplx lambda_seed, double contour_radius,
                                     double weight_power) {
    std::vector<EllRow> rows;
    Cplx lambda_inf = lambda_seed;

    auto run_one = [&](double ell) {
        EllRow row;
        row.ell = ell;
        try {
            CorrectionField corr;
            const CorrectionField* cp = nullptr;
            if (std::isfinite(ell)) {
                corr = make_correction_field(t);
                cp = &corr;
            }
            RingOperator op = assemble_ring_operator(b, t, cp, ell, weight_power);
            row.skew = op.skew_correction;
            row.snorm = spectral_norm_est(op.similar(op.S));
            row.mnorm = spectral_norm_est(op.similar(op.M));
            Eigen::MatrixXcd A = op.similar(op.total());
            Cplx sigma = std::isfinite(ell) ? lambda_inf : lambda_seed;
            Spectrum sp = eigensolve_shift_invert(A, sigma, 4);
            int best = 0;
            for (int j = 1; j < static_cast<int>(sp.pairs.size()); ++j)
                if (std::abs(sp.pairs[j].lambda - sigma) <
                    std::abs(sp.pairs[best].lambda - sigma))
                    best = j;
            row.lambda = sp.pairs[best].lambda;
            row.residual = sp.pairs[best].residual;
            if (!std::isfinite(ell)) lambda_inf = row.lambda;
            row.dist = std::abs(row.lambda - lambda_inf);
            // isolation/multiplicity count around the row's own eigenvalue
            row.rank = contour_rank(A, sp.pairs, row.lambda, contour_radius);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(row);
    };

    run_one(kInf);
    for (double ell : ells) run_one(ell);
    return rows;
}

void write_ell_csv(const std::string& path, const std::vector<EllRow>& rows) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << "ell,re_lambda,im_lambda,residual,dist,snorm,mnorm,skew,rank,error\n";
    char buf[320];
    for (const EllRow& r : rows) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%s\n",
                      r.ell, r.lambda.real(), r.lambda.imag(), r.residual,
                      r.dist, r.snorm, r.mnorm, r.skew, r.rank, r.error.c_str());
        f << buf;
    }
}

Eigen::MatrixXcd padded_embedding(const Eigen::MatrixXcd& A, int n_extra) {
    if (n_extra < 0) throw std::invalid_argument("padding must be nonnegative");
    Eigen::MatrixXcd B =
        Eigen::MatrixXcd::Zero(A.rows() + n_extra, A.cols() + n_extra);
    B.topLeftCorner(A.rows(), A.cols()) = A;
    return B;
}

}  // namespace vring
