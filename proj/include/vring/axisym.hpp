#ifndef VRING_AXISYM_HPP
#define VRING_AXISYM_HPP

#include <string>
#include <vector>

#include "vring/eigs.hpp"
#include "vring/profiles.hpp"
#include "vring/ringmode.hpp"

namespace vring {

// Stream solver on the ring basis for the axisymmetric vector-potential
// equation in ring-centred coordinates (true cylindrical radius = x + ell):
//   d_xx psi + d_zz psi + (x+ell)^{-1} d_x psi - (x+ell)^{-2} psi = omega.
// ell = inf degenerates to the planar Poisson equation, which is block
// diagonal over the Fourier modes; the finite-ell terms couple neighbouring
// modes through the angular expansion of (x+ell)^{-1}.  Regularity at the
// axis rho = 0 and far-field decay are imposed per mode as in the planar
// radial solver.  Requires ell >= 2 * rho_max so the symmetry wall r = -ell
// never enters the polar patch.
struct RingStream {
    const RingBasis* b = nullptr;
    double ell = 0.0;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
    Eigen::VectorXd rhs_mask;  // equilibration scale, 0 on constraint rows

    Eigen::VectorXcd solve(const Eigen::VectorXcd& omega) const;
    Eigen::MatrixXcd solution_map() const;
};
RingStream make_ring_stream(const RingBasis& b, double ell, int kmax = 8);

// Dense maps omega -> (u^x, u^z) through the stream solve,
//   u^x = -d_z psi,   u^z = d_x psi + (x+ell)^{-1} psi.
void ring_velocity_maps(const RingStream& s, Eigen::MatrixXcd& Ux,
                        Eigen::MatrixXcd& Uz, int kmax = 8);

// Linearized axisymmetric-no-swirl Euler operator about the corrected ring
// vortex, split into main (advection), compact (background-gradient coupling)
// and small (curvature) parts; total() = M + K + S.  Adjoints and norms are
// taken in the weighted inner product <f, g> = sum w_i gamma_i conj(f_i) g_i.
// The advection part is projected onto its metric-skew component; the size of
// the discarded defect is recorded in skew_correction.
struct RingOperator {
    double ell = 0.0;
    double Rbar = 0.0;
    Eigen::MatrixXcd M, K, S;
    Eigen::VectorXd gamma;         // radial weight gamma(rho_i), length nr
    Eigen::VectorXd wmetric;       // full metric per (n, i) coefficient
    double skew_correction = 0.0;

    Eigen::MatrixXcd total() const { return M + K + S; }
    Eigen::MatrixXcd similar(const Eigen::MatrixXcd& part) const {
        return ring_similar(part, wmetric);
    }
};

// corr may be null only for ell = inf (no divergence repair in the plane).
RingOperator assemble_ring_operator(const RingBasis& b,
                                    const TruncatedProfile& t,
                                    const CorrectionField* corr, double ell,
                                    double weight_power = 100.0, int kmax = 8);

// Largest singular value by power iteration on A^H A (deterministic start).
double spectral_norm_est(const Eigen::MatrixXcd& A, int iters = 120);

// Stream continuation study at fixed vorticity: distance of the ring-radius
// solve to the planar solve in the gradient seminorm over the ball rho <= Rbar,
// and the curvature column norm ||(x+ell)^{-1} psi_ell|| over the same ball.
struct StreamConvergenceRow {
    double ell = 0.0;
    double grad_diff = 0.0;
    double psi_over_r = 0.0;
};
std::vector<StreamConvergenceRow> stream_convergence_study(
    const RingBasis& b, const Eigen::VectorXcd& omega, double Rbar,
    const std::vector<double>& ells);

// Per-ell continuation of the unstable eigenvalue, seeded by lambda_seed
// (typically the planar value from the radial mode computation).  The first
// row reports the planar (ell = inf) operator on the same basis; `dist` is
// measured against that row.  `rank` counts the eigenvalues of a
// Rayleigh-Ritz restriction of the operator enclosed by the contour
// |z - lambda_inf| = contour_radius (Riesz projector rank of the restriction).
struct EllRow {
    double ell = 0.0;
    Cplx lambda;
    double residual = 0.0;
    double dist = 0.0;    // |lambda_ell - lambda_inf|
    double snorm = 0.0;   // weighted operator norm of S
    double mnorm = 0.0;   // weighted operator norm of M
    double skew = 0.0;    // skew projection size of the advection part
    int rank = 0;
    std::string error;
};
std::vector<EllRow> ell_continuation(const RingBasis& b,
                                     const TruncatedProfile& t,
                                     const std::vector<double>& ells,
                                     Cplx lambda_seed,
                                     double contour_radius = 0.03,
                                     double weight_power = 100.0);
void write_ell_csv(const std::string& path, const std::vector<EllRow>& rows);

// Discrete counterpart of the single-space device: embed an operator acting
// on a restricted index set into a larger one by zero rows/columns.  The
// nonzero spectrum is unchanged.
Eigen::MatrixXcd padded_embedding(const Eigen::MatrixXcd& A, int n_extra);

}  // namespace vring

#endif
