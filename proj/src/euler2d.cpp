#include "vring/euler2d.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace vring {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Scatter a panel-local row into a global-length row.
Eigen::RowVectorXd scatter(const RadialGrid& rg, int p,
                           const Eigen::RowVectorXd& local) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(rg.n());
    row.segment(rg.panels[p].offset, rg.panels[p].n) = local;
    return row;
}
}  // namespace

Eigen::VectorXd StreamSolver::solve(const Eigen::VectorXd& g) const {
    return lu.solve((rhs_mask.array() * g.array()).matrix());
}

Eigen::MatrixXd StreamSolver::solution_map() const {
    return lu.solve(Eigen::MatrixXd(rhs_mask.asDiagonal()));
}

Eigen::MatrixXd stream_collocation(const RadialGrid& rg, int n,
                                   Eigen::VectorXd& mask_out) {
    int an = std::abs(n);
    const int N = rg.n();
    const Eigen::VectorXd& rho = rg.rho();

    Eigen::MatrixXd L = rg.g.D2;
    L += rho.cwiseInverse().asDiagonal() * rg.g.D1;
    L -= (double(an) * an) *
         Eigen::MatrixXd(rho.array().square().inverse().matrix().asDiagonal());

    Eigen::VectorXd mask = Eigen::VectorXd::Ones(N);
    // panel coupling: continuity of f and f' at every interface
    for (size_t p = 0; p + 1 < rg.panels.size(); ++p) {
        double xi = rg.panels[p + 1].a;
        int rl = rg.panels[p].offset + rg.panels[p].n - 1;  // last node, left
        int rr = rg.panels[p + 1].offset;                   // first node, right
        L.row(rl) = scatter(rg, int(p), rg.eval_row(int(p), xi)) -
                    scatter(rg, int(p) + 1, rg.eval_row(int(p) + 1, xi));
        L.row(rr) = scatter(rg, int(p), rg.deriv_row(int(p), xi)) -
                    scatter(rg, int(p) + 1, rg.deriv_row(int(p) + 1, xi));
        mask[rl] = 0.0;
        mask[rr] = 0.0;
    }
    // axis: for n != 0 the regular branch rho^{|n|} vanishes at rho = 0;
    // for n = 0 the regular branch is even, so f'(0) = 0 instead
    L.row(0) = (an > 0) ? scatter(rg, 0, rg.eval_row(0, 0.0))
                        : scatter(rg, 0, rg.deriv_row(0, 0.0));
    mask[0] = 0.0;
    // outer edge: decaying branch f ~ rho^{-|n|}, i.e. f' + (|n|/rho) f = 0
    // (for n = 0 the non-constant branch is logarithmic; pin f = 0 there)
    if (an == 0) {
        int pb = int(rg.panels.size()) - 1;
        L.row(N - 1) = scatter(rg, pb, rg.eval_row(pb, rg.rho_max));
    } else if (rg.panels.back().tail) {
        int last = N - 1;
        L.row(last) = rg.g.D1.row(last);
        L(last, last) += double(an) / rho[last];
    } else {
        int pb = int(rg.panels.size()) - 1;
        double xb = rg.rho_max;
        L.row(N - 1) = scatter(rg, pb, rg.deriv_row(pb, xb)) +
                       (double(an) / xb) * scatter(rg, pb, rg.eval_row(pb, xb));
    }
    mask[N - 1] = 0.0;
    mask_out = mask;
    return L;
}

StreamSolver make_stream_solver(const RadialGrid& rg, int n) {
    const int N = rg.n();
    Eigen::VectorXd mask;
    Eigen::MatrixXd L = stream_collocation(rg, n, mask);

    // row equilibration keeps the LU well scaled across panels
    Eigen::VectorXd rs(N);
    for (int i = 0; i < N; ++i) {
        double m = L.row(i).cwiseAbs().maxCoeff();
        rs[i] = (m > 0.0) ? 1.0 / m : 1.0;
    }
    L = rs.asDiagonal() * L;

    StreamSolver s;
    s.rg = &rg;
    s.n = n;
    s.rhs_mask = (rs.array() * mask.array()).matrix();
    s.lu.compute(L);
    return s;
}

Eigen::MatrixXcd ModeOperator::metric_similar() const {
    Eigen::VectorXd s = weight.cwiseSqrt();
    Eigen::MatrixXcd M = A;
    for (int i = 0; i < M.rows(); ++i) M.row(i) *= s[i];
    for (int j = 0; j < M.cols(); ++j) M.col(j) /= s[j];
    return M;
}

ModeOperator assemble_mode_operator(const RadialGrid& rg,
                                    const std::function<double(double)>& zeta,
                                    const std::function<double(double)>& omega_p,
                                    int n, const Eigen::VectorXd* gamma) {
    const int N = rg.n();
    ModeOperator op;
    op.n = n;
    op.weight = gamma ? Eigen::VectorXd(rg.wq.array() * gamma->array()) : rg.wq;
    if (n == 0) {
        op.A = Eigen::MatrixXcd::Zero(N, N);
        return op;
    }
    StreamSolver solver = make_stream_solver(rg, n);
    Eigen::MatrixXd F = solver.solution_map();
    Eigen::MatrixXd B(N, N);
    B.setZero();
    const Eigen::VectorXd& rho = rg.rho();
    for (int i = 0; i < N; ++i) {
        B.row(i) = (omega_p(rho[i]) / rho[i]) * F.row(i);
        B(i, i) -= zeta(rho[i]);
    }
    op.A = Cplx(0.0, double(n)) * B.cast<Cplx>();
    return op;
}

ModeOperator assemble_mode_operator(const RadialGrid& rg, const VortexProfile& p,
                                    int n, const Eigen::VectorXd* gamma) {
    return assemble_mode_operator(
        rg, [&p](double r) { return p.zeta(r); },
        [&p](double r) { return p.omega_p(r); }, n, gamma);
}

ModeOperator assemble_mode_operator(const RadialGrid& rg,
                                    const TruncatedProfile& t, int n,
                                    const Eigen::VectorXd* gamma) {
    return assemble_mode_operator(
        rg, [&t](double r) { return t.zeta(r); },
        [&t](double r) { return t.omega_p(r); }, n, gamma);
}

double operator_norm(const ModeOperator& op) {
    return op.metric_similar().jacobiSvd().singularValues()[0];
}

double operator_norm_diff(const ModeOperator& a, const ModeOperator& b) {
    if ((a.weight - b.weight).cwiseAbs().maxCoeff() != 0.0)
        throw std::invalid_argument("operator norms require a common metric");
    Eigen::MatrixXcd D = a.metric_similar() - b.metric_similar();
    return D.jacobiSvd().singularValues()[0];
}

double skew_defect(const Eigen::MatrixXcd& M, const Eigen::VectorXd& weight) {
    Eigen::VectorXd s = weight.cwiseSqrt();
    Eigen::MatrixXcd T = M;
    for (int i = 0; i < T.rows(); ++i) T.row(i) *= s[i];
    for (int j = 0; j < T.cols(); ++j) T.col(j) /= s[j];
    double nrm = T.jacobiSvd().singularValues()[0];
    if (nrm == 0.0) return 0.0;
    Eigen::MatrixXcd S = T + T.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S,
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff() / nrm;
}

std::vector<SweepRow> mode_spectrum_sweep(const RadialGrid& rg,
                                          const VortexProfile& p,
                                          const std::vector<int>& n_list,
                                          const std::vector<double>& R_list) {
    std::vector<SweepRow> rows;
    std::vector<double> radii = {kInf};
    radii.insert(radii.end(), R_list.begin(), R_list.end());
    for (int n : n_list) {
        for (double R : radii) {
            SweepRow row;
            row.m = p.m;
            row.n = n;
            row.R = R;
            try {
                ModeOperator op =
                    std::isfinite(R)
                        ? assemble_mode_operator(rg, truncate_profile(p, R), n)
                        : assemble_mode_operator(rg, p, n);
                Spectrum sp = eigensolve_dense(op.metric_similar());
                row.lambda = sp.rightmost().lambda;
                row.residual = sp.rightmost().residual;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << "m,n,R,re_lambda,im_lambda,residual,error\n";
    char buf[256];
    for (const SweepRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%s\n", r.m,
                      r.n, r.R, r.lambda.real(), r.lambda.imag(), r.residual,
                      r.error.c_str());
        f << buf;
    }
}

UnstableSeed find_unstable_annulus(const RadialGrid& rg, double re_lo,
                                   double re_hi,
                                   const std::vector<double>& widths,
                                   const std::vector<int>& modes) {
    UnstableSeed best;
    for (double w : widths) {
        VortexProfile p = make_annulus(1.0, w, 1.0);
        for (int n : modes) {
            ModeOperator op = assemble_mode_operator(rg, p, n);
            Spectrum sp = eigensolve_dense(op.metric_similar());
            Cplx lam = sp.rightmost().lambda;
            if (lam.real() >= re_lo && lam.real() <= re_hi) {
                if (!best.found || lam.real() > best.lambda.real()) {
                    best.found = true;
                    best.profile = p;
                    best.profile.m = n;
                    best.n = n;
                    best.lambda = lam;
                }
            }
        }
    }
    return best;
}

}  // namespace vring
