#ifndef VRING_EIGS_HPP
#define VRING_EIGS_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace vring {

using Cplx = std::complex<double>;

struct EigenPair {
    Cplx lambda;
    Eigen::VectorXcd vec;       // unit 2-norm
    double residual = 0.0;      // ||A v - lambda v|| / scale(A)
};

// Eigenvalues sorted by decreasing real part.
struct Spectrum {
    std::vector<EigenPair> pairs;
    const EigenPair& rightmost() const { return pairs.front(); }
};

// Crude magnitude scale of an operator matrix, used to normalize residuals.
double op_scale(const Eigen::MatrixXcd& A);

// Dense ground-truth eigensolve (QR algorithm); all eigenpairs, with
// residuals attached.  The real overload avoids complex Schur work.
Spectrum eigensolve_dense(const Eigen::MatrixXcd& A);
Spectrum eigensolve_dense(const Eigen::MatrixXd& A);

// Shift-invert Arnoldi around sigma: k eigenvalues nearest the shift,
// refined by a few inverse-iteration steps.  krylov <= 0 picks a default.
Spectrum eigensolve_shift_invert(const Eigen::MatrixXcd& A, Cplx sigma,
                                 int k, int krylov = 0);
Spectrum eigensolve_shift_invert(const Eigen::MatrixXd& A, Cplx sigma,
                                 int k, int krylov = 0);

// A few steps of inverse iteration with Rayleigh-quotient updates, driving
// the residual of an approximate pair toward machine level.
void rayleigh_refine(const Eigen::MatrixXcd& A, EigenPair& p, int iters = 4);

// Trapezoidal contour quadrature of the Riesz projection onto the spectrum
// inside the circle |z - center| = radius.  Nodes are doubled until the
// rounded trace (the rank) is stable and ||P^2-P|| passes `idem_tol`.
struct ContourResult {
    Eigen::MatrixXcd P;       // projection matrix
    Eigen::MatrixXcd basis;   // orthonormal basis of the range (n x rank)
    int rank = 0;
    double idempotency = 0.0; // ||P^2 - P||_2 estimate (Frobenius)
    int nodes = 0;
    bool converged = false;
};

ContourResult contour_projection(const Eigen::MatrixXcd& A, Cplx center,
                                 double radius, double idem_tol = 1e-6,
                                 int nodes0 = 8, int max_doublings = 5);

}  // namespace vring

#endif
