#ifndef VRING_RINGMODE_HPP
#define VRING_RINGMODE_HPP

#include <functional>
#include <string>

#include "vring/eigs.hpp"
#include "vring/meridional.hpp"
#include "vring/radial.hpp"

namespace vring {

// Polar-Fourier discretization of the meridional plane around the ring
// centre: fields are expanded as
//   f(x, z) = sum_{n = -K..K} f_n(rho) e^{i n phi},
//   x = rho cos phi,  z = rho sin phi,
// with each f_n collocated on a shared radial grid.  Coefficients are stored
// mode-major: entry idx(n, i) holds f_n(rho_i).
struct RingBasis {
    RadialGrid rg;
    int K = 0;   // Fourier modes n = -K..K
    int nr = 0;  // radial nodes per mode
    int N = 0;   // total complex degrees of freedom, (2K+1)*nr

    int idx(int n, int i) const { return (n + K) * nr + i; }
};

// The geometric (bounded) mapping is the default: every node then satisfies
// rho <= rho_max, so polynomial growth weights stay finite in double
// precision.
RingBasis make_ring_basis(int n_radial, double rho_max, int K,
                          const std::string& mapping = "geometric");

// Cartesian derivatives.  On a single mode they act as the ladder pair
//   (d_x f)_{n+1} += (f' - n f / rho) / 2,   (d_x f)_{n-1} += (f' + n f / rho) / 2,
//   (d_z f)_{n+1} += (f' - n f / rho) / 2i,  (d_z f)_{n-1} -= (f' + n f / rho) / 2i,
// so both are block tridiagonal in the mode index; contributions that would
// land outside |n| <= K are dropped.
Eigen::MatrixXcd ring_dx(const RingBasis& b);
Eigen::MatrixXcd ring_dz(const RingBasis& b);

// Multiplication by a scalar coefficient field c(x, z).  At each radial node
// the angular Fourier coefficients c_k(rho_i), |k| <= kmax, are computed by a
// length-nphi trapezoidal DFT, and mode n' feeds mode n through c_{n-n'}.
Eigen::MatrixXcd ring_mult(const RingBasis& b,
                           const std::function<double(double, double)>& c,
                           int kmax, int nphi = 256);

// Window-exact composition c(x,z) * d_deriv (deriv = 'x' or 'z'): every entry
// between retained modes equals the untruncated value, because the ladder
// intermediate n' +- 1 only enters the bookkeeping (its radial factor exists
// whether or not the mode is stored).  A plain product ring_mult * ring_dx
// would instead lose the paths through dropped modes at |n| = K, corrupting
// the edge blocks; this form also skips the dense N^3 product.
Eigen::MatrixXcd ring_mult_deriv(const RingBasis& b,
                                 const std::function<double(double, double)>& c,
                                 int kmax, char deriv, int nphi = 256);

// Banded products applied to dense matrices without forming the N x N factor.
Eigen::MatrixXcd ring_mult_apply(const RingBasis& b,
                                 const std::function<double(double, double)>& c,
                                 int kmax, const Eigen::MatrixXcd& X,
                                 int nphi = 256);
Eigen::MatrixXcd ring_dx_apply(const RingBasis& b, const Eigen::MatrixXcd& X);
Eigen::MatrixXcd ring_dz_apply(const RingBasis& b, const Eigen::MatrixXcd& X);

// Weighted inner-product metric: the L^2(dx dz) quadrature weight of the
// (n, i) coefficient is 2 pi wq_i, optionally multiplied by a radial factor
// gamma(rho_i) (length-nr vector).
Eigen::VectorXd ring_metric(const RingBasis& b,
                            const Eigen::VectorXd* gamma = nullptr);

// Similarity transform W^{1/2} A W^{-1/2} turning the metric adjoint into
// the plain conjugate transpose.
Eigen::MatrixXcd ring_similar(const Eigen::MatrixXcd& A,
                              const Eigen::VectorXd& wmetric);

// Coefficients of a sampled field (per-node angular DFT), point evaluation of
// a coefficient vector, and synthesis onto a meridional collocation grid
// centred at the same origin.
Eigen::VectorXcd ring_analyze(const RingBasis& b,
                              const std::function<Cplx(double, double)>& f,
                              int nphi = 256);
Cplx ring_eval(const RingBasis& b, const Eigen::VectorXcd& coef, double x,
               double z);
Eigen::VectorXcd ring_to_grid(const RingBasis& b, const Eigen::VectorXcd& coef,
                              const MeridionalGrid& g);

}  // namespace vring

#endif
