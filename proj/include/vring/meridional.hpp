#ifndef VRING_MERIDIONAL_HPP
#define VRING_MERIDIONAL_HPP

#include "vring/grid1d.hpp"

namespace vring {

// Tensor-product collocation grid in the meridional (r,z) half-plane.
// The horizontal coordinate r may be offset from the true cylindrical
// radius: radius = r + ell_off (ell_off = 0 when r is the radius itself).
// Flattened index convention: idx = ir * nz + iz.
struct MeridionalGrid {
    Grid1d gr, gz;
    double ell_off = 0.0;
    int nr = 0, nz = 0, n = 0;
    Eigen::VectorXd r, z;      // flattened node coordinates (size n)
    Eigen::VectorXd wbox;      // flattened dr dz quadrature weights
    Eigen::VectorXd radius;    // r + ell_off per node

    int idx(int ir, int iz) const { return ir * nz + iz; }

    // Dense Kronecker lifts of the 1-D differentiation matrices.
    Eigen::MatrixXd Dr() const;
    Eigen::MatrixXd Dz() const;
    Eigen::MatrixXd Drr() const;
    Eigen::MatrixXd Dzz() const;

    // integral of f dr dz, and of f * radius dr dz
    double quad(const Eigen::VectorXd& f) const { return wbox.dot(f); }
    double quad_cyl(const Eigen::VectorXd& f) const {
        return (wbox.array() * radius.array() * f.array()).sum();
    }
};

MeridionalGrid make_meridional_grid(const Grid1d& gr, const Grid1d& gz,
                                    double ell_off = 0.0);

// Lift a 1-D matrix acting in r (resp. z) to the flattened 2-D index space.
Eigen::MatrixXd kron_r(const MeridionalGrid& g, const Eigen::MatrixXd& Ar);
Eigen::MatrixXd kron_z(const MeridionalGrid& g, const Eigen::MatrixXd& Az);

// Interpolation matrix from grid `src` onto the nodes of grid `dst`.
// Points of `dst` outside the hull of `src` get zero rows (fields are
// treated as compactly supported on the source box).
Eigen::MatrixXd grid_transfer(const MeridionalGrid& src, const MeridionalGrid& dst);

// Vector field on a meridional grid (components along e_r and e_z).
struct Field2 {
    Eigen::VectorXd r, z;
};

// Weighted squared Sobolev norm of order k (k <= 3) of a scalar or vector
// grid function.  Derivatives are the flat (∂_r, ∂_z) combinations up to
// order k; for vectors the axisymmetric metric term (v^r/radius)^2 is
// included from k >= 1.  `w` is the quadrature weight per node (e.g. the
// cylindrical measure 2*pi*radius*wbox).
double sobolev_sq(const MeridionalGrid& g, const Eigen::VectorXd& f, int k,
                  const Eigen::VectorXd& w);
double sobolev_sq(const MeridionalGrid& g, const Field2& v, int k,
                  const Eigen::VectorXd& w);

}  // namespace vring

#endif
