#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vring/eigs.hpp"
#include "vring/grid1d.hpp"
#include "vring/meridional.hpp"
#include "vring/radial.hpp"

#include "oracles.hpp"

using namespace vring;

TEST_CASE("gauss-legendre quadrature is exact on polynomials") {
    Eigen::VectorXd t, w;
    gauss_legendre(12, t, w);
    double s7 = 0.0, s22 = 0.0;
    for (int j = 0; j < 12; ++j) {
        s7 += w[j] * std::pow(t[j], 7);
        s22 += w[j] * std::pow(t[j], 22);
    }
    CHECK(std::abs(s7) < 1e-14);                  // odd power
    CHECK(s22 == doctest::Approx(2.0 / 23.0));    // degree 22 <= 2n-1
}

TEST_CASE("radial grid invariants") {
    for (const char* mapping : {"algebraic", "geometric"}) {
        RadialGrid rg = build_radial_grid(64, 16.0, mapping);
        CAPTURE(mapping);
        // strictly increasing, origin excluded
        CHECK(rg.rho()[0] > 0.0);
        for (int j = 1; j < rg.n(); ++j) CHECK(rg.rho()[j] > rg.rho()[j - 1]);
        // derivative of a constant vanishes identically
        Eigen::VectorXd ones = Eigen::VectorXd::Ones(rg.n());
        CHECK((rg.g.D1 * ones).cwiseAbs().maxCoeff() < 1e-12);
        // derivative of rho^2 at interior nodes
        Eigen::VectorXd f = rg.rho().array().square();
        Eigen::VectorXd df = rg.g.D1 * f;
        for (int j = 0; j < rg.n(); ++j) {
            if (rg.rho()[j] > rg.rho_max) continue;  // mapped tail nodes
            CHECK(std::abs(df[j] - 2.0 * rg.rho()[j]) < 1e-8 * (1.0 + 2.0 * rg.rho()[j]));
        }
        // gaussian integrates to 1/2 in rho d rho
        Eigen::VectorXd gsn = (-rg.rho().array().square()).exp();
        CHECK(std::abs(rg.quad(gsn) - 0.5) < 1e-8);
    }
}

TEST_CASE("radial quadrature at coarse resolution") {
    RadialGrid rg = build_radial_grid(8, 8.0, "algebraic");
    Eigen::VectorXd gsn = (-rg.rho().array().square()).exp();
    CHECK(std::abs(rg.quad(gsn) - 0.5) < 1e-3);
}

TEST_CASE("half-line quadrature of an algebraic tail matches the adaptive oracle") {
    double ref = oracle::adaptive_quad_halfline(
        [](double x) { return x / ((1.0 + x * x) * (1.0 + x * x)); });
    CHECK(ref == doctest::Approx(0.5).epsilon(1e-10));
    RadialGrid rg = build_radial_grid(256, 30.0, "algebraic");
    Eigen::VectorXd f(rg.n());
    for (int j = 0; j < rg.n(); ++j) {
        double r2 = rg.rho()[j] * rg.rho()[j];
        f[j] = 1.0 / ((1.0 + r2) * (1.0 + r2));
    }
    CHECK(std::abs(rg.quad(f) - ref) < 1e-6);
}

TEST_CASE("spectral accuracy: derivative error collapses when n doubles") {
    auto derr = [](int n) {
        RadialGrid rg = build_radial_grid(n, 12.0, "geometric");
        double emax = 0.0;
        for (int j = 0; j < rg.n(); ++j) {
            double r = rg.rho()[j];
            double exact = std::cos(r) - 2.0 * r * std::exp(-r * r);
            double got = (rg.g.D1 * ((rg.rho().array().sin()) +
                                     (-rg.rho().array().square()).exp()).matrix())[j];
            emax = std::max(emax, std::abs(got - exact));
        }
        return emax;
    };
    double e16 = derr(16), e32 = derr(32);
    CHECK(e32 < e16 / 4.0);

    auto cerr2 = [](int n) {
        Grid1d g = make_sinh_grid(-3.0, 5.0, 0.0, 1.0, n);
        Eigen::VectorXd f = (g.x.array() * 1.3).sin();
        Eigen::VectorXd d2 = g.D2 * f;
        double emax = 0.0;
        for (int j = 0; j < g.n(); ++j)
            emax = std::max(emax, std::abs(d2[j] + 1.69 * std::sin(1.3 * g.x[j])));
        return emax;
    };
    double c16 = cerr2(16), c32 = cerr2(32);
    CHECK(c32 < c16 / 4.0);

    auto qerr = [](int n) {
        Grid1d g = make_cheb_grid(0.0, 2.0, n);
        Eigen::VectorXd f = (-g.x.array().square()).exp();
        double ref = oracle::adaptive_quad([](double x) { return std::exp(-x * x); }, 0.0, 2.0);
        return std::abs(g.w.dot(f) - ref);
    };
    CHECK(qerr(24) < qerr(12) / 4.0);
}

TEST_CASE("meridional grid: tensor quadrature and transfer") {
    MeridionalGrid g = make_meridional_grid(make_sinh_grid(-4.0, 4.0, 0.0, 2.0, 32),
                                            make_cheb_grid(-4.0, 4.0, 30), 10.0);
    // product quadrature equals the product of 1-D quadratures
    Eigen::VectorXd f(g.n);
    for (int i = 0; i < g.n; ++i)
        f[i] = std::exp(-g.r[i] * g.r[i] - g.z[i] * g.z[i]);
    double q1r = 0.0, q1z = 0.0;
    for (int i = 0; i < g.nr; ++i) q1r += g.gr.w[i] * std::exp(-g.gr.x[i] * g.gr.x[i]);
    for (int i = 0; i < g.nz; ++i) q1z += g.gz.w[i] * std::exp(-g.gz.x[i] * g.gz.x[i]);
    CHECK(std::abs(g.quad(f) - q1r * q1z) < 1e-8 * std::abs(q1r * q1z));

    // cylindrical measure picks up the radius factor exactly
    double qc = g.quad_cyl(f);
    Eigen::VectorXd fr = (f.array() * g.radius.array()).matrix();
    CHECK(qc == doctest::Approx(g.quad(fr)));

    // transfer to a finer grid reproduces a smooth function
    MeridionalGrid g2 = make_meridional_grid(make_sinh_grid(-4.0, 4.0, 0.0, 1.0, 31),
                                             make_cheb_grid(-4.0, 4.0, 29), 10.0);
    Eigen::MatrixXd T = grid_transfer(g, g2);
    Eigen::VectorXd f2 = T * f;
    for (int i = 0; i < g2.n; ++i) {
        double exact = std::exp(-g2.r[i] * g2.r[i] - g2.z[i] * g2.z[i]);
        CHECK(std::abs(f2[i] - exact) < 1e-5);
    }
}

TEST_CASE("sobolev norms against closed forms") {
    MeridionalGrid g = make_meridional_grid(make_cheb_grid(-6.0, 6.0, 40),
                                            make_cheb_grid(-6.0, 6.0, 40), 20.0);
    Eigen::VectorXd f(g.n);
    for (int i = 0; i < g.n; ++i)
        f[i] = std::exp(-0.5 * (g.r[i] * g.r[i] + g.z[i] * g.z[i]));
    // ||f||^2 = pi, ||grad f||^2 = pi (for exp(-|x|^2/2) in 2 dims, dr dz)
    double h0 = sobolev_sq(g, f, 0, g.wbox);
    double h1 = sobolev_sq(g, f, 1, g.wbox);
    CHECK(h0 == doctest::Approx(M_PI).epsilon(1e-8));
    CHECK(h1 - h0 == doctest::Approx(M_PI).epsilon(1e-7));
}

TEST_CASE("dense and shift-invert eigensolves agree on a nonnormal matrix") {
    int n = 60;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        A(i, i) = -0.01 * i * i;
        if (i + 1 < n) A(i, i + 1) = 0.5;
        if (i >= 1) A(i, i - 1) = -0.3 + 0.01 * i;
    }
    A(0, n - 1) = 0.2;
    Spectrum d = eigensolve_dense(A);
    for (const auto& p : d.pairs) CHECK(p.residual < 1e-8);
    Spectrum si = eigensolve_shift_invert(A, d.rightmost().lambda + Cplx(0.05, 0.02), 3);
    CHECK(std::abs(si.rightmost().lambda - d.rightmost().lambda) < 1e-9);
    CHECK(si.rightmost().residual < 1e-6);
}

TEST_CASE("contour projection recovers rank and idempotency") {
    // block diagonal: two eigenvalues near 1.0, the rest well separated
    int n = 40;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    A(0, 0) = 1.0;
    A(1, 1) = 1.1;
    A(0, 1) = 0.4;
    for (int i = 2; i < n; ++i) A(i, i) = -1.0 - 0.1 * i;
    for (int i = 2; i + 1 < n; ++i) A(i, i + 1) = 0.05;
    ContourResult cr = contour_projection(A.cast<Cplx>(), Cplx(1.05, 0.0), 0.4);
    CHECK(cr.converged);
    CHECK(cr.rank == 2);
    CHECK(cr.idempotency <= 1e-6);
    // the projection commutes with A on its range
    Eigen::MatrixXcd Ac = A.cast<Cplx>();
    CHECK((cr.P * Ac - Ac * cr.P).norm() < 1e-8 * Ac.norm());
}
