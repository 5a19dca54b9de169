#ifndef VRING_PROFILES_HPP
#define VRING_PROFILES_HPP

#include <string>
#include <vector>

#include "vring/meridional.hpp"
#include "vring/radial.hpp"

namespace vring {

// Smooth cutoff: 1 on [0,1/2], exp(1 - 1/(1-(2x-1)^2)) on (1/2,1), 0 on [1,inf).
double bump(double x);
double bump_d1(double x);
double bump_d2(double x);

// Radial vorticity profile omega(rho) of a planar vortex u = zeta(rho) x^perp,
// where zeta(rho) = rho^{-2} \int_0^rho s omega(s) ds is the angular velocity.
struct VortexProfile {
    std::string family;  // "tail_p2" | "annulus" | "custom_table"
    double amp = 1.0;
    double center = 1.0;     // annulus only
    double width = 0.25;     // annulus only
    double beta_tail = 0.0;  // annulus only: amplitude of an added
                             // amp*beta_tail/(1+rho^2)^2 algebraic skirt
    int m = 2;            // azimuthal wavenumber this profile is studied at
    std::vector<double> tab_rho, tab_om;  // custom_table: piecewise-linear data

    double omega(double rho) const;
    double omega_p(double rho) const;          // d omega / d rho
    double cumulative(double rho) const;       // \int_0^rho s omega(s) ds
    double zeta(double rho) const;             // rho^{-2} * cumulative
    double zeta_p(double rho) const;           // (omega - 2 zeta) / rho
    double circulation() const;                // 2 pi \int_0^inf s omega ds (may be inf)
    double support_radius() const;             // inf for analytic families
};

// amp / (1 + rho^2): algebraic tail, decay weight <rho>^{-2}.
VortexProfile make_tail_p2(double amp, int m = 2);
// amp * [exp(-((rho-center)/width)^2) + beta_tail/(1+rho^2)^2]: concentrated
// vorticity ring, optionally with an algebraic skirt so that far-field
// truncation has a measurable (rather than exponentially small) effect.
VortexProfile make_annulus(double amp, double width, double center, int m = 2,
                           double beta_tail = 0.0);
// Piecewise-linear table (rho_i, omega_i); omega = 0 beyond the last node and
// constant equal to the first value on [0, rho_0].
VortexProfile make_custom_table(std::vector<double> rho, std::vector<double> om,
                                int m = 2);

// Compactly supported truncation at radius R: velocity u_R = phi(rho/R) u, so
// the angular velocity is zeta_R = phi(rho/R) zeta and the vorticity picks up
// a cutoff-derivative term. Identical to the parent on B_{R/2}, zero outside B_R.
struct TruncatedProfile {
    VortexProfile base;
    double R = 0.0;
    double Rbar = 0.0;  // support radius bound used downstream (= R)

    double zeta(double rho) const;
    double omega(double rho) const;    // phi om + phi' zeta rho
    double omega_p(double rho) const;  // phi om' + phi'(2 om - zeta) + phi'' zeta rho
};

TruncatedProfile truncate_profile(const VortexProfile& p, double R);
// Same, but checks the grid resolves the cutoff band [R/2, R] with >= 8 nodes.
TruncatedProfile truncate_profile(const VortexProfile& p, double R,
                                  const RadialGrid& grid);

// Decay certificate: the constants a downstream stability argument consumes.
struct ProfileCertificate {
    double decay_sup = 0.0;    // sup <rho>^2 (|omega| + rho |omega'|)
    double circulation = 0.0;  // 2 pi \int_0^inf s omega ds
    double amp = 0.0;
};
ProfileCertificate profile_certificate(const VortexProfile& p);

// Axisymmetric divergence repair. Placing the truncated planar vortex in the
// meridional (r,z) plane at distance ell from the symmetry axis, the planar
// field u~ = zeta_R(rho) (-z, r) has cylindrical divergence -(r+ell)^{-1} zeta_R z.
// The correction v = w/(r+ell) with
//   w = grad(Q(rho) z) - (C3/2) grad^perp((1 - chi(rho)) r / rho^2),
//   Q'(rho) = rho^{-3} \int_0^rho s^3 zeta_R ds,  Q(rho) = -\int_rho^inf Q'(s) ds,
//   C3 = \int_0^inf s^3 zeta_R ds,  chi = bump(rho/R),
// satisfies div_cyl(u~ + v) = 0 pointwise and w vanishes identically outside B_R
// (the grad(Qz) dipole tail is cancelled by its curl-potential twin).
struct DivergenceCorrection {
    double ell = 0.0;
    Field2 v;             // correction velocity on the grid
    Field2 w;             // (r+ell) * v, independent of ell
    double residual = 0.0;  // max |div_cyl(u~ + v)| by grid differentiation
    double scale = 0.0;     // max |zeta_R z| on the grid (rhs magnitude)
    double vmax = 0.0;      // max |v|
};
DivergenceCorrection divergence_correction(const TruncatedProfile& t, double ell,
                                           const MeridionalGrid& g);

// Closed-form point evaluator for the compact potential field w = (r+ell) v
// of the divergence correction (independent of ell).  Exactly zero outside
// the truncation ball.
struct CorrectionField {
    double R = 0.0;
    double C3 = 0.0;                  // third moment of the truncated zeta
    Grid1d cg;                        // Chebyshev interpolation backbone
    Eigen::VectorXd cb, F1, J;
    void eval(double r, double z, double& wr, double& wz) const;
};
CorrectionField make_correction_field(const TruncatedProfile& t);

// Planar velocity of the truncated vortex sampled on a meridional grid
// (local coordinates, vortex centred at r=0,z=0).
Field2 sample_truncated_velocity(const TruncatedProfile& t, const MeridionalGrid& g);

// Columnar text exchange: header lines "# key value", then rows
// "rho omega omega' zeta". Import returns a custom_table profile carrying the
// header metadata.
void write_profile_table(const std::string& path, const VortexProfile& p,
                         const std::vector<double>& rho);
VortexProfile read_profile_table(const std::string& path);

}  // namespace vring

#endif
