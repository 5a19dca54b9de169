#ifndef VRING_EULER2D_HPP
#define VRING_EULER2D_HPP

#include <functional>
#include <string>
#include <vector>

#include "vring/eigs.hpp"
#include "vring/profiles.hpp"
#include "vring/radial.hpp"

namespace vring {

// Multi-domain collocation solver for the per-mode stream equation
//   (d_rr + (1/rho) d_r - n^2/rho^2) f = g        on (0, inf),
// with the regular branch rho^{|n|} selected at the axis and the decaying
// branch rho^{-|n|} at the outer edge (Robin closures); panel interfaces are
// coupled by value/derivative matching rows.
struct StreamSolver {
    const RadialGrid* rg = nullptr;
    int n = 0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    Eigen::VectorXd rhs_mask;  // 1 where the collocation row kept the ODE

    Eigen::VectorXd solve(const Eigen::VectorXd& g) const;
    Eigen::MatrixXd solution_map() const;  // dense g -> f matrix
};
StreamSolver make_stream_solver(const RadialGrid& rg, int n);

// Collocation matrix of the mode-n radial stream equation with the boundary
// and panel-interface rows installed; mask_out is 1 on interior (rhs) rows
// and 0 on constraint rows.  No row equilibration is applied.
Eigen::MatrixXd stream_collocation(const RadialGrid& rg, int n,
                                   Eigen::VectorXd& mask_out);

// Angular mode n of the vorticity form of the linearized planar Euler
// equations around the vortex u = zeta(rho) x^perp:
//   A g = -i n zeta g + (i n / rho) omega' f,   stream f from g.
// `weight` is the inner-product weight (rho drho quadrature, optionally
// gamma-weighted); adjoints and norms are taken in that metric.
struct ModeOperator {
    int n = 0;
    Eigen::MatrixXcd A;
    Eigen::VectorXd weight;

    // Similarity transform W^{1/2} A W^{-1/2}: same spectrum, and the
    // metric adjoint becomes the plain conjugate transpose.
    Eigen::MatrixXcd metric_similar() const;
};

ModeOperator assemble_mode_operator(const RadialGrid& rg,
                                    const std::function<double(double)>& zeta,
                                    const std::function<double(double)>& omega_p,
                                    int n,
                                    const Eigen::VectorXd* gamma = nullptr);
ModeOperator assemble_mode_operator(const RadialGrid& rg, const VortexProfile& p,
                                    int n, const Eigen::VectorXd* gamma = nullptr);
ModeOperator assemble_mode_operator(const RadialGrid& rg,
                                    const TruncatedProfile& t, int n,
                                    const Eigen::VectorXd* gamma = nullptr);

// Operator norm (largest singular value) in the operator's metric.
double operator_norm(const ModeOperator& op);
double operator_norm_diff(const ModeOperator& a, const ModeOperator& b);

// ||M + M*|| / ||M|| in the metric of `weight`, for the skew-adjointness
// checks of the advection part.
double skew_defect(const Eigen::MatrixXcd& M, const Eigen::VectorXd& weight);

// Rightmost eigenvalues across angular modes and truncation radii.
// R = inf marks the untruncated operator.
struct SweepRow {
    int m = 0;      // base wavenumber of the profile
    int n = 0;      // angular mode swept
    double R = 0.0; // truncation radius (inf: none)
    Cplx lambda;
    double residual = 0.0;
    std::string error;  // nonempty if this entry failed
};
std::vector<SweepRow> mode_spectrum_sweep(const RadialGrid& rg,
                                          const VortexProfile& p,
                                          const std::vector<int>& n_list,
                                          const std::vector<double>& R_list = {});
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

// Grid search over ring widths and angular modes for a profile whose
// fastest-growing mode has growth rate inside [re_lo, re_hi].
struct UnstableSeed {
    VortexProfile profile;
    int n = 0;           // unstable angular mode found
    Cplx lambda;         // its eigenvalue
    bool found = false;
};
UnstableSeed find_unstable_annulus(const RadialGrid& rg, double re_lo,
                                   double re_hi,
                                   const std::vector<double>& widths,
                                   const std::vector<int>& modes);

}  // namespace vring

#endif
