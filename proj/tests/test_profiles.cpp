#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <vector>

#include "vring/grid1d.hpp"
#include "vring/meridional.hpp"
#include "vring/profiles.hpp"
#include "vring/radial.hpp"

#include "oracles.hpp"

using namespace vring;

namespace {
double fd1(const std::function<double(double)>& f, double x, double h = 1e-5) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}
}  // namespace

TEST_CASE("smooth cutoff: plateau, support, derivatives") {
    CHECK(bump(0.0) == 1.0);
    CHECK(bump(0.5) == 1.0);
    CHECK(bump(1.0) == 0.0);
    CHECK(bump(3.7) == 0.0);
    // the two-sided mollifier is antisymmetric about the transition midpoint
    CHECK(bump(0.75) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(bump(0.6) + bump(0.9) == doctest::Approx(1.0).epsilon(1e-13));
    for (double x : {0.55, 0.62, 0.75, 0.85, 0.93}) {
        CHECK(bump_d1(x) ==
              doctest::Approx(fd1([](double s) { return bump(s); }, x)).epsilon(1e-7));
        CHECK(bump_d2(x) ==
              doctest::Approx(fd1([](double s) { return bump_d1(s); }, x)).epsilon(1e-5));
    }
    // C^1 flatness at the junctions
    CHECK(std::abs(bump_d1(0.5 + 1e-4)) < 1e-8);
    CHECK(std::abs(bump_d1(1.0 - 1e-4)) < 1e-8);
}

TEST_CASE("angular velocity is the normalized first moment of vorticity") {
    std::vector<VortexProfile> ps = {
        make_tail_p2(1.3),
        make_annulus(1.0, 0.25, 1.0),
        make_custom_table({0.0, 0.5, 1.0, 1.5}, {0.8, 0.6, 0.6, 0.0})};
    for (const auto& p : ps) {
        CAPTURE(p.family);
        for (double rho : {0.3, 0.7, 1.2, 2.5, 6.0, 14.0}) {
            // split the range so the adaptive rule cannot terminate early on
            // an initial sample that misses the concentrated vorticity
            double hi = std::min(rho, p.support_radius());
            double mid = std::min(hi, 4.0);
            auto f = [&](double s) { return s * p.omega(s); };
            double ref = (oracle::adaptive_quad(f, 0.0, mid) +
                          oracle::adaptive_quad(f, mid, hi)) /
                         (rho * rho);
            CHECK(std::abs(p.zeta(rho) - ref) < 1e-8 * (1.0 + std::abs(ref)));
        }
        // omega' and zeta' agree with finite differences of the closed forms
        for (double rho : {0.4, 0.9, 1.3, 3.0}) {
            CHECK(p.omega_p(rho) ==
                  doctest::Approx(fd1([&](double s) { return p.omega(s); }, rho))
                      .epsilon(1e-6));
            CHECK(p.zeta_p(rho) ==
                  doctest::Approx(fd1([&](double s) { return p.zeta(s); }, rho))
                      .epsilon(1e-6));
        }
        // near-axis limits
        CHECK(p.zeta(1e-9) == doctest::Approx(0.5 * p.omega(0.0)).epsilon(1e-9));
    }
}

TEST_CASE("concentrated ring: zeta rho^2 tends to the circulation constant") {
    VortexProfile p = make_annulus(1.0, 0.25, 1.0);
    double gamma_over_2pi =
        oracle::adaptive_quad_halfline([&](double s) { return s * p.omega(s); });
    for (double rho : {6.0, 10.0, 20.0}) {
        CHECK(std::abs(p.zeta(rho) * rho * rho - gamma_over_2pi) < 1e-6);
    }
    double pi = 3.14159265358979323846;
    CHECK(p.circulation() ==
          doctest::Approx(2.0 * pi * gamma_over_2pi).epsilon(1e-10));
}

TEST_CASE("top-hat table: exact interior angular velocity") {
    double c = 0.7;
    VortexProfile p = make_custom_table({0.0, 1.0}, {c, c});
    CHECK(p.omega(0.3) == c);
    CHECK(p.omega(0.99) == c);
    CHECK(p.omega(1.01) == 0.0);
    CHECK(p.zeta(1.0) == doctest::Approx(0.5 * c).epsilon(1e-14));
    CHECK(p.zeta(2.0) == doctest::Approx(c / 8.0).epsilon(1e-14));  // c/(2 rho^2)
    CHECK(p.support_radius() == 1.0);
}

TEST_CASE("zero amplitude gives the zero profile") {
    for (VortexProfile p : {make_tail_p2(0.0), make_annulus(0.0, 0.25, 1.0)}) {
        for (double rho : {0.0, 0.5, 2.0, 9.0}) {
            CHECK(p.omega(rho) == 0.0);
            CHECK(p.zeta(rho) == 0.0);
            CHECK(p.omega_p(rho) == 0.0);
        }
        CHECK(profile_certificate(p).decay_sup == 0.0);
    }
}

TEST_CASE("truncation: inert inside, compactly supported, zero net swirl") {
    // compactly supported parent well inside B_{R/2}: truncation is the identity
    VortexProfile hat = make_custom_table({0.0, 1.0}, {0.7, 0.7});
    TruncatedProfile th = truncate_profile(hat, 4.0);
    for (double rho : {0.2, 0.8, 1.5, 1.9})
        CHECK(th.omega(rho) == hat.omega(rho));

    VortexProfile ring = make_annulus(1.0, 0.25, 1.0);
    TruncatedProfile tr = truncate_profile(ring, 4.0);
    for (double rho : {0.1, 0.6, 1.0, 1.5, 1.99})
        CHECK(std::abs(tr.omega(rho) - ring.omega(rho)) < 1e-12);
    for (double rho : {4.0, 4.5, 8.0}) {
        CHECK(tr.omega(rho) == 0.0);
        CHECK(tr.zeta(rho) == 0.0);
    }
    // derivative closed form matches finite differences inside the cutoff band
    for (double rho : {2.3, 2.9, 3.4, 3.8}) {
        CHECK(tr.omega_p(rho) ==
              doctest::Approx(fd1([&](double s) { return tr.omega(s); }, rho))
                  .epsilon(1e-6));
    }
    // the cutoff-derivative term removes the circulation entirely
    double gam = oracle::adaptive_quad([&](double s) { return s * tr.omega(s); },
                                       0.0, 4.0, 1e-13);
    CHECK(std::abs(gam) < 1e-10);
    // truncated zeta is exactly the cutoff times the parent zeta
    for (double rho : {2.5, 3.1, 3.7}) {
        double ref = oracle::adaptive_quad(
                         [&](double s) { return s * tr.omega(s); }, 0.0, rho) /
                     (rho * rho);
        CHECK(std::abs(tr.zeta(rho) - ref) < 1e-10);
    }
}

TEST_CASE("truncation error of an algebraic tail decays like 1/R") {
    VortexProfile p = make_tail_p2(1.0);
    auto err = [&](double R) {
        TruncatedProfile t = truncate_profile(p, R);
        // difference lives on [R/2, R]; beyond R it is the parent tail, whose
        // squared norm is \int_R^inf s/(1+s^2)^2 ds = 1/(2(1+R^2))
        double e2 = oracle::adaptive_quad(
            [&](double s) {
                double d = t.omega(s) - p.omega(s);
                return s * d * d;
            },
            0.5 * R, R, 1e-15);
        e2 += 0.5 / (1.0 + R * R);
        return std::sqrt(e2);
    };
    double e10 = err(10.0), e20 = err(20.0), e40 = err(40.0);
    CHECK(e20 < e10);
    CHECK(e40 < e20);
    CHECK(e20 * 20.0 < 2.0 * e10 * 10.0);  // ~ C / R
    CHECK(e40 * 40.0 < 2.0 * e10 * 10.0);
    // difference supported outside B_{R/2}
    TruncatedProfile t = truncate_profile(p, 10.0);
    for (double rho : {0.5, 2.0, 4.9}) CHECK(t.omega(rho) == p.omega(rho));
}

TEST_CASE("truncation requires the grid to resolve the cutoff band") {
    RadialGrid fine = build_radial_grid(96, 30.0, "algebraic");
    RadialGrid coarse = build_radial_grid(12, 30.0, "algebraic");
    VortexProfile p = make_tail_p2(1.0);
    CHECK_NOTHROW(truncate_profile(p, 10.0, fine));
    CHECK_THROWS(truncate_profile(p, 10.0, coarse));
}

TEST_CASE("decay certificate: sampled envelope and scaling in amplitude") {
    ProfileCertificate c1 = profile_certificate(make_tail_p2(1.0));
    // independent dense sampling of <rho>^2 (|omega| + rho |omega'|)
    double sup = 0.0;
    VortexProfile p = make_tail_p2(1.0);
    for (int i = 0; i <= 20000; ++i) {
        double rho = std::pow(10.0, -3.0 + 7.5 * i / 20000.0);  // up to ~3e4
        double v = (1.0 + rho * rho) *
                   (std::abs(p.omega(rho)) + rho * std::abs(p.omega_p(rho)));
        sup = std::max(sup, v);
    }
    CHECK(std::abs(c1.decay_sup - sup) < 1e-6);
    // analytic envelope: |om|<rho>^2 = 1, rho|om'|<rho>^2 = 2 rho^2/(1+rho^2) -> 2
    CHECK(c1.decay_sup < 3.0 + 1e-12);
    CHECK(c1.decay_sup > 3.0 - 1e-6);
    ProfileCertificate c2 = profile_certificate(make_tail_p2(2.0));
    CHECK(c2.decay_sup == doctest::Approx(2.0 * c1.decay_sup).epsilon(1e-13));
    ProfileCertificate ca = profile_certificate(make_annulus(1.0, 0.25, 1.0));
    double gamma = 2.0 * 3.14159265358979323846 *
                   oracle::adaptive_quad_halfline(
                       [&](double s) { return s * std::exp(-std::pow((s - 1.0) / 0.25, 2)); });
    CHECK(ca.circulation == doctest::Approx(gamma).epsilon(1e-10));
}

TEST_CASE("divergence correction: exactness, support and offset scaling") {
    VortexProfile ring = make_annulus(1.0, 0.25, 1.0);
    TruncatedProfile t = truncate_profile(ring, 4.0);
    Grid1d gx = make_cheb_grid(-4.0, 4.0, 56);
    double Rbar = t.Rbar;

    MeridionalGrid g16 = make_meridional_grid(gx, gx, 4.0 * Rbar);
    DivergenceCorrection d16 = divergence_correction(t, 4.0 * Rbar, g16);

    // without the correction the cylindrical divergence of the planar field
    // is genuinely nonzero (negative control for the residual check)
    Field2 u = sample_truncated_velocity(t, g16);
    double raw = (u.r.array() / g16.radius.array()).abs().maxCoeff();
    CHECK(raw > 1e-3 * d16.scale);
    CHECK(d16.residual < 1e-8 * d16.scale);

    // support: w vanishes at grid nodes outside B_R (box corners reach rho ~ 5.6)
    double wmax = 0.0, wout = 0.0;
    for (int i = 0; i < g16.n; ++i) {
        double a = std::hypot(d16.w.r[i], d16.w.z[i]);
        wmax = std::max(wmax, a);
        if (std::hypot(g16.r[i], g16.z[i]) > t.R + 1e-12) wout = std::max(wout, a);
    }
    CHECK(wmax > 0.0);
    CHECK(wout < 1e-13 * wmax);

    // (r+ell) v is independent of ell on the same grid
    MeridionalGrid g32 = make_meridional_grid(gx, gx, 8.0 * Rbar);
    DivergenceCorrection d32 = divergence_correction(t, 8.0 * Rbar, g32);
    CHECK((d16.w.r - d32.w.r).cwiseAbs().maxCoeff() < 1e-12 * wmax);
    CHECK((d16.w.z - d32.w.z).cwiseAbs().maxCoeff() < 1e-12 * wmax);
    CHECK(d32.residual < 1e-8 * d32.scale);

    // max |v| (ell - Rbar) is constant within 10% over ell in {4,8,16} Rbar
    MeridionalGrid g64 = make_meridional_grid(gx, gx, 16.0 * Rbar);
    DivergenceCorrection d64 = divergence_correction(t, 16.0 * Rbar, g64);
    double c16 = d16.vmax * (4.0 * Rbar - Rbar);
    double c32 = d32.vmax * (8.0 * Rbar - Rbar);
    double c64 = d64.vmax * (16.0 * Rbar - Rbar);
    CHECK(std::abs(c32 - c16) < 0.1 * c16);
    CHECK(std::abs(c64 - c16) < 0.1 * c16);
    // doubling the offset at least halves the amplitude, up to 10%
    CHECK(d32.vmax <= 0.5 * 1.1 * d16.vmax);
    CHECK(d32.vmax >= 0.3 * d16.vmax);

    // the grid's own divergence operator applied to u~ + v converges to zero
    // as the grid is refined (the field is divergence-free as a function)
    auto grid_res = [&](int n) {
        Grid1d gg = make_cheb_grid(-4.0, 4.0, n);
        MeridionalGrid gm = make_meridional_grid(gg, gg, 4.0 * Rbar);
        DivergenceCorrection d = divergence_correction(t, 4.0 * Rbar, gm);
        Field2 uu = sample_truncated_velocity(t, gm);
        Eigen::VectorXd fr = uu.r + d.v.r, fz = uu.z + d.v.z;
        Eigen::VectorXd div = gm.Dr() * fr + gm.Dz() * fz +
                              (fr.array() / gm.radius.array()).matrix();
        return div.cwiseAbs().maxCoeff();
    };
    CHECK(grid_res(48) < 0.5 * grid_res(32));

    // a zero profile needs no correction
    TruncatedProfile t0 = truncate_profile(make_annulus(0.0, 0.25, 1.0), 4.0);
    DivergenceCorrection d0 = divergence_correction(t0, 4.0 * Rbar, g16);
    CHECK(d0.vmax == 0.0);
    CHECK(d0.residual == 0.0);
}

TEST_CASE("columnar table export/import round trip") {
    VortexProfile p = make_tail_p2(1.25, 3);
    std::vector<double> rho;
    for (int i = 1; i <= 1200; ++i) rho.push_back(30.0 * i / 1200.0);
    const char* path = "profile_roundtrip.txt";
    write_profile_table(path, p, rho);
    VortexProfile q = read_profile_table(path);
    std::remove(path);

    CHECK(q.m == 3);
    CHECK(q.family == "custom_table");
    // exact at the written nodes
    for (double x : {0.025, 1.0, 7.5, 30.0})
        CHECK(q.omega(x) == doctest::Approx(p.omega(x)).epsilon(1e-15));
    // piecewise-linear between nodes: second-order in the spacing
    for (double x : {0.51, 2.013, 11.7})
        CHECK(q.omega(x) == doctest::Approx(p.omega(x)).epsilon(1e-3));
    // the reconstructed angular velocity still satisfies its defining moment
    for (double x : {1.1, 6.3}) {
        double ref = oracle::adaptive_quad(
                         [&](double s) { return s * q.omega(s); }, 0.0, x) /
                     (x * x);
        CHECK(std::abs(q.zeta(x) - ref) < 1e-8);
    }
}
