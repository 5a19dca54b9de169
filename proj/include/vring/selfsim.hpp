#ifndef VRING_SELFSIM_HPP
#define VRING_SELFSIM_HPP

#include <functional>
#include <string>
#include <vector>

#include "vring/eigs.hpp"
#include "vring/meridional.hpp"
#include "vring/profiles.hpp"
#include "vring/ringmode.hpp"

namespace vring {

// ---------------------------------------------------------------------------
// Conforming subspace of the ring basis.
//
// Per angular mode, the span of nodal fields satisfying the panel interface
// matching (value and first derivative), regularity at the patch center
// (value zero for n != 0, zero slope for n = 0) and a homogeneous Dirichlet
// condition at the patch edge.  On this subspace the weak Laplacian below is
// exactly self-adjoint and nonpositive in the cylindrical inner product,
// which is what makes the dissipative resolvent bounds hold discretely by
// the same energy argument as in the continuum.
// ---------------------------------------------------------------------------
struct SwirlSpace {
    const RingBasis* b = nullptr;
    double ell = 0.0;
    int nred = 0;  // reduced radial dimension per mode
    int N = 0;     // total reduced dimension, (2K+1) * nred

    Eigen::MatrixXcd Z0;  // kernel basis for the n = 0 constraints (nr x nred)
    Eigen::MatrixXcd Z1;  // kernel basis for the n != 0 constraints

    Eigen::MatrixXcd gram;               // reduced cylindrical Gram Z^H G Z
    Eigen::LLT<Eigen::MatrixXcd> chol;   // gram = L L^H

    int jdx(int n, int i) const { return (n + b->K) * nred + i; }
    const Eigen::MatrixXcd& zblk(int n) const { return n == 0 ? Z0 : Z1; }

    // Orthonormal-frame coordinates yhat (in which the standard 2-norm is the
    // cylindrical L^2 norm) <-> nodal ring coefficients.
    Eigen::VectorXcd to_nodal(const Eigen::VectorXcd& yhat) const;
    // L^2-orthogonal projection of a nodal field into the subspace.
    Eigen::VectorXcd from_nodal(const Eigen::VectorXcd& f) const;

    // Z^H A Z for a nodal quadratic form A (entries <phi_i, Op phi_j>_cyl).
    Eigen::MatrixXcd reduce(const Eigen::MatrixXcd& form) const;
    // Orthonormal-frame operator of a reduced quadratic form: L^{-1} F L^{-H}.
    Eigen::MatrixXcd ortho(const Eigen::MatrixXcd& reduced_form) const;
};

SwirlSpace make_swirl_space(const RingBasis& b, double ell, int kmax = 8);

// Nodal cylindrical Gram: planar ring metric times multiplication by the
// cylindrical radius x + ell.  Hermitian positive definite.
Eigen::MatrixXcd cyl_gram(const RingBasis& b, double ell);

// Gram times a nodal operator, exploiting the band-1 mode structure of the
// radius factor (cheap compared with a dense product).
Eigen::MatrixXcd cyl_gram_times(const RingBasis& b, double ell,
                                const Eigen::MatrixXcd& A);

// ---------------------------------------------------------------------------
// Linearized similarity-variable vorticity operators on axisymmetric
// pure-swirl fields, reduced to the conforming subspace and expressed in the
// Gram-orthonormal frame (standard adjoint = cylindrical-metric adjoint).
//
// Parts: D = 3/4 + (xi/2).grad + Delta   (dissipation; D - Delta exactly
//            skew after antisymmetrization, Delta exactly Hermitian <= 0),
//        M = -u_bg.grad                  (advection; exactly skew),
//        S = curvature / stretching multiplications, O(1/ell) on the support,
//        K = -(BS[.].grad omega_bg)      (compact coupling).
// The vorticity family is T(beta) = D/beta + M + S + K and the full operator
// is L(beta) = D + beta (M + S + K) + 1/4 = beta T(beta) + 1/4.
// ---------------------------------------------------------------------------
struct SelfSimOperator {
    const SwirlSpace* space = nullptr;
    double ell = 0.0, Rbar = 0.0;
    double beta = 0.0;  // shipped amplitude (parts themselves are unscaled)

    Eigen::MatrixXcd D;        // dissipation (drift part antisymmetrized)
    Eigen::MatrixXcd Dlap;     // Laplacian piece of D alone (Hermitian <= 0)
    Eigen::MatrixXcd M, S, K;  // advection / stretching / compact coupling

    double drift_defect = 0.0;  // relative antisymmetrization defects
    double m_defect = 0.0;
    double mu = 0.0;    // measured ||S||

    Eigen::MatrixXcd Tmat(double beta_) const;  // beta_ may be +infinity
    Eigen::MatrixXcd Lvor(double beta_) const;
};

SelfSimOperator assemble_selfsim(const SwirlSpace& s, const TruncatedProfile& t,
                                 const CorrectionField& corr, double beta,
                                 int kmax = 8);

// Sobolev quadratic forms in the orthonormal frame: entry k gives
// ||u||_{H^k}^2 = yhat^H F_k yhat (flat patch derivatives up to order k plus
// the swirl metric term |u/r|^2 from order >= 1).
std::vector<Eigen::MatrixXcd> sobolev_forms(const SwirlSpace& s, int order);

// ---------------------------------------------------------------------------
// Amplitude continuation, resolvent, propagation
// ---------------------------------------------------------------------------
struct BetaRow {
    double beta = 0.0;
    Cplx lambda;          // unstable eigenvalue of T(beta)
    Cplx lambda_tilde;    // beta * lambda + 1/4
    Cplx lambda_direct;   // eigenvalue of the directly assembled L(beta)
    double residual = 0.0, residual_direct = 0.0;
    double identity_gap = 0.0;  // |lambda_direct - lambda_tilde|
    double dist = 0.0;          // |lambda - lambda_inf|
    std::string error;
};

// First entry of the result is the beta = infinity row (the seed refinement);
// subsequent entries follow `betas`.
std::vector<BetaRow> beta_continuation(const SelfSimOperator& op,
                                       const std::vector<double>& betas,
                                       Cplx seed);
void write_beta_csv(const std::string& path, const std::vector<BetaRow>& rows);

// Operator norm of the resolvent of D/beta + M + S at lambda (power
// iteration on the inverse; the compact part K is excluded, matching the
// dissipative bound (Re lambda - mu)^{-1}).
double resolvent_norm(const SelfSimOperator& op, double beta, Cplx lambda,
                      int iters = 80);

// Direct solve of (lambda - T(beta)) x = w in the orthonormal frame.
Eigen::VectorXcd resolvent_apply(const SelfSimOperator& op, double beta,
                                 Cplx lambda, const Eigen::VectorXcd& w);

enum class PropagatorMode {
    kTbeta,      // d/dtau y = T(beta) y
    kVorticity,  // d/dtau y = L(beta) y  (velocity semigroup, vorticity form)
    kFree        // d/dtau y = (D + 1/4) y (zero background)
};

struct Trajectory {
    std::vector<double> tau;
    std::vector<Eigen::VectorXcd> snaps;  // orthonormal-frame coordinates
    Eigen::MatrixXd norms;                // row i: ||u(tau_i)||_{H^k}, k = 0..
    double dtau = 0.0;
    int scheme_order = 2;  // Crank-Nicolson
};

// Crank-Nicolson propagation of the selected linear mode from y0.  `nforms`
// are the Sobolev forms whose square roots populate the norm ladder (pass at
// least the H^0 form).  Snapshots are stored every `store_every` steps.
Trajectory propagate(const SelfSimOperator& op, PropagatorMode mode,
                     double beta, const Eigen::VectorXcd& y0, double tau_end,
                     double dtau,
                     const std::vector<Eigen::MatrixXcd>& nforms,
                     int store_every = 1);

struct GrowthFit {
    double exponent = 0.0;
    double log_prefactor = 0.0;
    double fit_residual = 0.0;  // rms residual of the linear fit in log space
};

// Least-squares fit of log ||u(tau)|| ~ exponent * tau + const over
// tau >= tau_min, using norm column `col` of the trajectory.
GrowthFit fit_growth(const Trajectory& tr, int col, double tau_min);

// ---------------------------------------------------------------------------
// Exact heat-kernel oracle for the free mode.
//
// A pure-swirl field w = w0(r,z) e_theta evolving under the vector heat
// equation satisfies d/dt w0 = (Delta_3 - 1/r^2) w0, and phi = w0 / r solves
// the radially symmetric 5-d heat equation.  The 5-d Gaussian kernel,
// reduced over the angular sphere, gives the exact evolution as a separable
// (r', z') quadrature with a scaled Bessel factor.  Returns the L^2(R^3)
// norms of w(., dt) for each requested time increment.
// ---------------------------------------------------------------------------
std::vector<double> heat_swirl_oracle(
    const std::function<double(double, double)>& w0, double r_lo, double r_hi,
    double z_half, const std::vector<double>& dts, int nsrc = 180,
    int ntgt = 220);

// I_1(x) e^{-x}: series for small x, asymptotic expansion for large x.
double scaled_bessel_i1(double x);

// ---------------------------------------------------------------------------
// Background lift certificate
// ---------------------------------------------------------------------------
struct LiftedBackground {
    Field2 U;                  // e_r, e_z components on the meridional grid
    double beta = 0.0;         // amplitude multiplying the profile
    double div_rel = 0.0;      // cylindrical divergence, relative sup norm
    double mass_outside = 0.0; // |U| quadrature mass outside the support ball
};

// Sample beta * u_bg on a meridional grid whose horizontal coordinate is the
// patch offset x = r - ell (grid ell_off should equal ell).
LiftedBackground lift_background(const TruncatedProfile& t,
                                 const CorrectionField& corr, double ell,
                                 double beta, const MeridionalGrid& g);

}  // namespace vring

#endif
