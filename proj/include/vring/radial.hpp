#ifndef VRING_RADIAL_HPP
#define VRING_RADIAL_HPP

#include <string>
#include <vector>

#include "vring/grid1d.hpp"

namespace vring {

// Radial grid on the half line, built from Gauss-Legendre panels so that no
// node sits at rho = 0 and differentiation is exact on polynomials panel by
// panel (the differentiation matrices are block diagonal).
//
//   "algebraic" : graded panels covering [0, rho_max] (breakpoints
//                 rho_max (k/P)^{3/2}) plus one semi-infinite rational
//                 panel rho = rho_max + s u/(1-u); quadrature weights
//                 integrate over the whole half line.
//   "geometric" : geometrically graded panels truncated at rho_max.
//
// Multi-domain solvers couple the panels through interface matching rows
// built from eval_row/deriv_row.
struct RadialGrid {
    struct Panel {
        int offset = 0;             // first global node index
        int n = 0;                  // nodes in this panel
        double a = 0.0, b = 0.0;    // physical extent (b ignored for tail)
        bool tail = false;
        Eigen::VectorXd ref;        // interpolation nodes (physical, or u for tail)
        Eigen::VectorXd bary;       // barycentric weights on `ref`
        Eigen::MatrixXd D1;         // panel derivative matrix (physical)
        double tail_scale = 0.0;    // s in rho = a + s u/(1-u)
    };

    Grid1d g;                   // nodes + block-diagonal D1/D2 + dx weights
    Eigen::VectorXd wq;         // quadrature weights for ∫ f(rho) rho d rho
    std::vector<Panel> panels;
    std::string mapping;
    double rho_max = 0.0;

    int n() const { return g.n(); }
    const Eigen::VectorXd& rho() const { return g.x; }
    double quad(const Eigen::VectorXd& f) const { return wq.dot(f); }

    // Row vectors evaluating the panel interpolant (or its derivative) at a
    // physical point inside panel p; length = panels[p].n.
    Eigen::RowVectorXd eval_row(int p, double x) const;
    Eigen::RowVectorXd deriv_row(int p, double x) const;

    // Interpolation matrix from the grid onto arbitrary points in [0, inf);
    // each point is evaluated through the panel that contains it.
    Eigen::MatrixXd interp_to(const Eigen::VectorXd& pts) const;
};

RadialGrid build_radial_grid(int n, double rho_max,
                             const std::string& mapping = "algebraic");

// Polynomial-growth weight: 1 on [0, plateau], matching smoothly to
// <rho>^power beyond 2*plateau.
Eigen::VectorXd radial_weight(const Eigen::VectorXd& rho, double plateau,
                              double power);
double radial_weight_at(double rho, double plateau, double power);

}  // namespace vring

#endif
