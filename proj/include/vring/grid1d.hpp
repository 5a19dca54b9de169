#ifndef VRING_GRID1D_HPP
#define VRING_GRID1D_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace vring {

// One-dimensional collocation grid: nodes, differentiation matrices and
// quadrature weights, all expressed in the physical coordinate.  Grids are
// built from a reference family (Chebyshev-Lobatto or Gauss-Legendre) pushed
// through a smooth monotone map, so the differentiation matrices stay
// spectrally accurate on stretched domains.
struct Grid1d {
    Eigen::VectorXd x;   // nodes, strictly increasing
    Eigen::MatrixXd D1;  // first-derivative collocation matrix
    Eigen::MatrixXd D2;  // second-derivative collocation matrix
    Eigen::VectorXd w;   // quadrature weights for integration in dx
    double lo = 0.0;     // nominal domain endpoints (lo may be -inf-like
    double hi = 0.0;     //  only in the sense that no node sits on it)

    // Reference representation: nodes t in [-1,1] and the inverse map
    // x -> t, used so interpolation happens in the well-conditioned
    // reference coordinate even on strongly stretched grids.
    Eigen::VectorXd tnodes;
    std::function<double(double)> to_ref;

    int n() const { return static_cast<int>(x.size()); }
};

// Gauss-Legendre nodes/weights on [-1,1] via the Golub-Welsch tridiagonal.
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

// Chebyshev-Gauss-Lobatto nodes on [-1,1], increasing, with Clenshaw-Curtis
// quadrature weights.
void cheb_lobatto(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

// Barycentric interpolation weights for an arbitrary strictly increasing
// node set (normalized to unit max magnitude).
Eigen::VectorXd barycentric_weights(const Eigen::VectorXd& nodes);

// Differentiation matrix from barycentric weights (rows sum to zero exactly).
Eigen::MatrixXd diff_matrix(const Eigen::VectorXd& nodes,
                            const Eigen::VectorXd& bary);

// Interpolation matrix from `nodes` to arbitrary `targets`; rows for targets
// that coincide with a node reduce to a Kronecker delta.
Eigen::MatrixXd interp_matrix(const Eigen::VectorXd& nodes,
                              const Eigen::VectorXd& bary,
                              const Eigen::VectorXd& targets);

// Chebyshev-Lobatto grid on [a,b] under a sinh stretching that clusters
// nodes around `focus` with local spacing scale `width`.  width <= 0 (or a
// very wide width) degenerates to the affine map.
Grid1d make_sinh_grid(double a, double b, double focus, double width, int n);

// Plain affine Chebyshev-Lobatto grid on [a,b].
Grid1d make_cheb_grid(double a, double b, int n);

// Symmetric Chebyshev-Lobatto grid on [-L, L] under a rational stretching
// that keeps near-unit node density on the central band |x| <= core and
// dilates the spacing by `ratio` far outside it:
//   x(s) = s + (ratio-1) (s - core atan(s/core)),  s = S t,  x(S) = L.
Grid1d make_band_grid(double L, double core, double ratio, int n);

// Interpolation matrix between two grids (barycentric, from g.x to pts).
Eigen::MatrixXd grid_interp(const Grid1d& g, const Eigen::VectorXd& pts);

}  // namespace vring

#endif
