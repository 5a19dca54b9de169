#include "vring/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "vring/quadutil.hpp"

namespace vring {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;
}  // namespace

// Two-sided exponential mollifier on the transition variable y = 2x - 1:
// bump = 1/(1 + e^g) with g(y) = 1/(1-y) - 1/y, so every derivative vanishes
// at both junctions x = 1/2 and x = 1.
namespace {
struct BumpEval {
    double phi, u, gp, gpp;  // value, phi(1-phi), g', g''
};
BumpEval bump_eval(double x) {
    double y = 2.0 * x - 1.0;
    double g = 1.0 / (1.0 - y) - 1.0 / y;
    double phi = 1.0 / (1.0 + std::exp(std::min(g, 700.0)));
    double omy = 1.0 - y;
    return {phi, phi * (1.0 - phi), 1.0 / (omy * omy) + 1.0 / (y * y),
            2.0 / (omy * omy * omy) - 2.0 / (y * y * y)};
}
}  // namespace

double bump(double x) {
    if (x <= 0.5) return 1.0;
    if (x >= 1.0) return 0.0;
    return bump_eval(x).phi;
}

double bump_d1(double x) {
    if (x <= 0.5 || x >= 1.0) return 0.0;
    BumpEval e = bump_eval(x);
    return -2.0 * e.u * e.gp;
}

double bump_d2(double x) {
    if (x <= 0.5 || x >= 1.0) return 0.0;
    BumpEval e = bump_eval(x);
    return 4.0 * e.u * ((1.0 - 2.0 * e.phi) * e.gp * e.gp - e.gpp);
}

double VortexProfile::omega(double rho) const {
    if (family == "tail_p2") return amp / (1.0 + rho * rho);
    if (family == "annulus") {
        double u = (rho - center) / width;
        double d = 1.0 + rho * rho;
        return amp * (std::exp(-u * u) + beta_tail / (d * d));
    }
    // custom_table: constant head, piecewise linear, zero tail.
    if (tab_rho.empty()) return 0.0;
    if (rho <= tab_rho.front()) return amp * tab_om.front();
    if (rho > tab_rho.back()) return 0.0;
    if (rho == tab_rho.back()) return amp * tab_om.back();
    auto it = std::upper_bound(tab_rho.begin(), tab_rho.end(), rho);
    size_t j = static_cast<size_t>(it - tab_rho.begin());
    double a = tab_rho[j - 1], b = tab_rho[j];
    double fa = tab_om[j - 1], fb = tab_om[j];
    return amp * (fa + (fb - fa) * (rho - a) / (b - a));
}

double VortexProfile::omega_p(double rho) const {
    if (family == "tail_p2") {
        double d = 1.0 + rho * rho;
        return -2.0 * amp * rho / (d * d);
    }
    if (family == "annulus") {
        double u = (rho - center) / width;
        double d = 1.0 + rho * rho;
        return amp * (-2.0 * u / width * std::exp(-u * u) -
                      beta_tail * 4.0 * rho / (d * d * d));
    }
    if (tab_rho.empty() || rho <= tab_rho.front() || rho >= tab_rho.back())
        return 0.0;
    auto it = std::upper_bound(tab_rho.begin(), tab_rho.end(), rho);
    size_t j = static_cast<size_t>(it - tab_rho.begin());
    return amp * (tab_om[j] - tab_om[j - 1]) / (tab_rho[j] - tab_rho[j - 1]);
}

double VortexProfile::cumulative(double rho) const {
    if (rho <= 0.0) return 0.0;
    if (family == "tail_p2") return 0.5 * amp * std::log1p(rho * rho);
    if (family == "annulus") {
        // \int s e^{-((s-c)/w)^2} ds has the antiderivative
        // -(w^2/2) e^{-((s-c)/w)^2} + c (w sqrt(pi)/2) erf((s-c)/w).
        auto F = [&](double s) {
            double u = (s - center) / width;
            return -0.5 * width * width * std::exp(-u * u) +
                   0.5 * center * width * std::sqrt(kPi) * std::erf(u);
        };
        // skirt: \int_0^rho s/(1+s^2)^2 ds = rho^2 / (2 (1+rho^2))
        return amp * (F(rho) - F(0.0) +
                      beta_tail * 0.5 * rho * rho / (1.0 + rho * rho));
    }
    if (tab_rho.empty()) return 0.0;
    double acc = 0.0;
    double r0 = tab_rho.front();
    double head = std::min(rho, r0);
    acc += tab_om.front() * 0.5 * head * head;  // constant head segment
    for (size_t j = 0; j + 1 < tab_rho.size() && rho > tab_rho[j]; ++j) {
        double a = tab_rho[j], b = std::min(rho, tab_rho[j + 1]);
        double slope = (tab_om[j + 1] - tab_om[j]) / (tab_rho[j + 1] - a);
        // omega(s) = om_j + slope (s - a) on [a, b]
        acc += tab_om[j] * 0.5 * (b * b - a * a) +
               slope * ((b * b * b - a * a * a) / 3.0 - a * 0.5 * (b * b - a * a));
    }
    return amp * acc;
}

double VortexProfile::zeta(double rho) const {
    if (rho < 1e-6) {
        if (family == "tail_p2") {
            double u = rho * rho;
            return 0.5 * amp * (1.0 - 0.5 * u + u * u / 3.0);
        }
        return 0.5 * omega(0.0);
    }
    return cumulative(rho) / (rho * rho);
}

double VortexProfile::zeta_p(double rho) const {
    if (rho < 1e-6) return omega_p(rho) / 3.0;
    return (omega(rho) - 2.0 * zeta(rho)) / rho;
}

double VortexProfile::circulation() const {
    if (family == "tail_p2") return amp == 0.0 ? 0.0 : kInf;
    if (family == "annulus") {
        double u0 = -center / width;
        double Finf = 0.5 * center * width * std::sqrt(kPi);
        double F0 = -0.5 * width * width * std::exp(-u0 * u0) +
                    0.5 * center * width * std::sqrt(kPi) * std::erf(u0);
        return 2.0 * kPi * amp * (Finf - F0 + 0.5 * beta_tail);
    }
    return 2.0 * kPi * cumulative(support_radius());
}

double VortexProfile::support_radius() const {
    if (family == "custom_table")
        return tab_rho.empty() ? 0.0 : tab_rho.back();
    return kInf;
}

VortexProfile make_tail_p2(double amp, int m) {
    VortexProfile p;
    p.family = "tail_p2";
    p.amp = amp;
    p.m = m;
    return p;
}

VortexProfile make_annulus(double amp, double width, double center, int m,
                           double beta_tail) {
    VortexProfile p;
    p.family = "annulus";
    p.amp = amp;
    p.width = width;
    p.center = center;
    p.m = m;
    p.beta_tail = beta_tail;
    return p;
}

VortexProfile make_custom_table(std::vector<double> rho, std::vector<double> om,
                                int m) {
    if (rho.size() != om.size() || rho.size() < 2)
        throw std::invalid_argument("custom_table needs >= 2 matching samples");
    if (!std::is_sorted(rho.begin(), rho.end()))
        throw std::invalid_argument("custom_table abscissae must be increasing");
    VortexProfile p;
    p.family = "custom_table";
    p.amp = 1.0;
    p.m = m;
    p.tab_rho = std::move(rho);
    p.tab_om = std::move(om);
    return p;
}

double TruncatedProfile::zeta(double rho) const {
    return bump(rho / R) * base.zeta(rho);
}

double TruncatedProfile::omega(double rho) const {
    double x = rho / R;
    return bump(x) * base.omega(rho) + bump_d1(x) / R * base.zeta(rho) * rho;
}

double TruncatedProfile::omega_p(double rho) const {
    double x = rho / R;
    return bump(x) * base.omega_p(rho) +
           bump_d1(x) / R * (2.0 * base.omega(rho) - base.zeta(rho)) +
           bump_d2(x) / (R * R) * base.zeta(rho) * rho;
}

TruncatedProfile truncate_profile(const VortexProfile& p, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("truncation radius must be > 0");
    TruncatedProfile t;
    t.base = p;
    t.R = R;
    t.Rbar = R;
    return t;
}

TruncatedProfile truncate_profile(const VortexProfile& p, double R,
                                  const RadialGrid& grid) {
    int count = 0;
    for (int i = 0; i < grid.g.x.size(); ++i)
        if (grid.g.x[i] >= 0.5 * R && grid.g.x[i] <= R) ++count;
    if (count < 8)
        throw std::invalid_argument(
            "grid resolves the cutoff band [R/2, R] with fewer than 8 nodes");
    return truncate_profile(p, R);
}

ProfileCertificate profile_certificate(const VortexProfile& p) {
    ProfileCertificate c;
    c.amp = p.amp;
    c.circulation = p.circulation();
    double sup = 0.0;
    auto probe = [&](double rho) {
        double jap2 = 1.0 + rho * rho;
        double v = jap2 * (std::abs(p.omega(rho)) + rho * std::abs(p.omega_p(rho)));
        sup = std::max(sup, v);
    };
    double hi = std::isfinite(p.support_radius())
                    ? p.support_radius()
                    : std::max(1e5, 16.0 * p.center);
    probe(0.0);
    for (int i = 0; i <= 6000; ++i)  // linear sweep of the core
        probe(std::min(hi, 12.0 + 4.0 * p.center) * i / 6000.0);
    for (int i = 0; i <= 6000; ++i)  // log sweep of the tail
        probe(std::pow(10.0, -3.0 + (std::log10(hi) + 3.0) * i / 6000.0));
    c.decay_sup = sup;
    return c;
}

Field2 sample_truncated_velocity(const TruncatedProfile& t,
                                 const MeridionalGrid& g) {
    Field2 u;
    u.r.resize(g.n);
    u.z.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        double zr = t.zeta(std::hypot(g.r[i], g.z[i]));
        u.r[i] = -zr * g.z[i];
        u.z[i] = zr * g.r[i];
    }
    return u;
}

namespace {
// Composite Gauss-Legendre quadrature for smooth integrands: fixed cost,
// machine accuracy once the panels resolve the features.
double gl_panels(const std::function<double(double)>& f, double a, double b,
                 int panels = 8, int order = 24) {
    static Eigen::VectorXd tn, tw;
    static int cached = 0;
    if (cached != order) {
        gauss_legendre(order, tn, tw);
        cached = order;
    }
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        double pa = a + (b - a) * p / panels, pb = a + (b - a) * (p + 1) / panels;
        double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
        for (int j = 0; j < order; ++j) acc += half * tw[j] * f(mid + half * tn[j]);
    }
    return acc;
}

// Barycentric evaluation of the Chebyshev interpolant of smooth radial data.
double cheb_eval(const Grid1d& g, const Eigen::VectorXd& bary,
                 const Eigen::VectorXd& vals, double x) {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g.n(); ++j) {
        double d = x - g.x[j];
        if (d == 0.0) return vals[j];
        double c = bary[j] / d;
        num += c * vals[j];
        den += c;
    }
    return num / den;
}
}  // namespace

CorrectionField make_correction_field(const TruncatedProfile& t) {
    CorrectionField f;
    f.R = t.R;
    f.C3 = gl_panels([&](double s) { return s * s * s * t.zeta(s); }, 0.0, t.R, 16);

    // Smooth 1-D building blocks, precomputed as Chebyshev interpolants:
    //   F1(rho) = rho^{-4} \int_0^rho s^3 zeta ds = \int_0^1 t^3 zeta(rho t) dt
    //   J(rho)  = \int_rho^R s zeta ds
    // (the scaled form of F1 avoids the 0/0 cancellation at the axis).
    f.cg = make_cheb_grid(0.0, t.R, 181);
    f.cb = barycentric_weights(f.cg.x);
    f.F1.resize(f.cg.n());
    f.J.resize(f.cg.n());
    for (int j = 0; j < f.cg.n(); ++j) {
        double rho = f.cg.x[j];
        f.F1[j] = gl_panels([&](double s) { return s * s * s * t.zeta(rho * s); },
                            0.0, 1.0, 12);
        f.J[j] = gl_panels([&](double s) { return s * t.zeta(s); }, rho, t.R, 12);
    }
    return f;
}

// w(r,z) from the potential/curl-potential pair; smooth on all of R^2 and
// identically zero outside B_R (the exterior dipole cancels its curl twin).
void CorrectionField::eval(double r, double z, double& wr, double& wz) const {
    double rho = std::hypot(r, z);
    if (rho >= R) {
        wr = wz = 0.0;
        return;
    }
    double qp_rho = cheb_eval(cg, cb, F1, rho);  // Q'(rho)/rho
    double Q = -0.5 * (rho * rho * qp_rho + cheb_eval(cg, cb, J, rho));
    wr = qp_rho * r * z;
    wz = qp_rho * z * z + Q;
    if (rho > 0.4 * R) {  // curl-potential twin of the exterior dipole
        double chi = bump(rho / R);
        double chip = bump_d1(rho / R) / R;
        double rho2 = rho * rho, rho3 = rho2 * rho, rho4 = rho2 * rho2;
        double dgr = (1.0 - chi) * (z * z - r * r) / rho4 - chip * r * r / rho3;
        double dgz = -(1.0 - chi) * 2.0 * r * z / rho4 - chip * r * z / rho3;
        wr += 0.5 * C3 * dgz;
        wz -= 0.5 * C3 * dgr;
    }
}

DivergenceCorrection divergence_correction(const TruncatedProfile& t, double ell,
                                           const MeridionalGrid& g) {
    if (ell < 2.0 * t.Rbar)
        throw std::invalid_argument("offset ell must be >= 2 * support radius");
    CorrectionField cf = make_correction_field(t);
    auto eval_w = [&](double r, double z, double& wr, double& wz) {
        cf.eval(r, z, wr, wz);
    };

    DivergenceCorrection out;
    out.ell = ell;
    out.v.r.setZero(g.n);
    out.v.z.setZero(g.n);
    out.w.r.setZero(g.n);
    out.w.z.setZero(g.n);
    for (int i = 0; i < g.n; ++i) {
        double wr, wz;
        eval_w(g.r[i], g.z[i], wr, wz);
        out.w.r[i] = wr;
        out.w.z[i] = wz;
        out.v.r[i] = wr / g.radius[i];
        out.v.z[i] = wz / g.radius[i];
    }

    // Residual of the corrected field: div(u~ + v) evaluated from the closed
    // forms by fourth-order central differences at every grid node.  This
    // measures the construction itself; how well a given collocation grid
    // reproduces it is a separate (convergence) question.
    auto total = [&](double r, double z, double& fr, double& fz) {
        double wr, wz;
        eval_w(r, z, wr, wz);
        double zr = t.zeta(std::hypot(r, z));
        fr = (-zr * z + wr / (r + ell));
        fz = (zr * r + wz / (r + ell));
    };
    const double h = 2e-3;
    double residual = 0.0, scale = 0.0, vmax = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double r = g.r[i], z = g.z[i];
        double a1r, a1z, a2r, a2z, b1r, b1z, b2r, b2z, fr, fz, dum;
        total(r - 2 * h, z, a2r, dum);
        total(r - h, z, a1r, dum);
        total(r + h, z, b1r, dum);
        total(r + 2 * h, z, b2r, dum);
        total(r, z - 2 * h, dum, a2z);
        total(r, z - h, dum, a1z);
        total(r, z + h, dum, b1z);
        total(r, z + 2 * h, dum, b2z);
        total(r, z, fr, fz);
        double dfr = (a2r - 8.0 * a1r + 8.0 * b1r - b2r) / (12.0 * h);
        double dfz = (a2z - 8.0 * a1z + 8.0 * b1z - b2z) / (12.0 * h);
        residual = std::max(residual, std::abs(dfr + fr / (r + ell) + dfz));
        scale = std::max(scale, std::abs(t.zeta(std::hypot(r, z)) * z));
        vmax = std::max(vmax, std::hypot(out.v.r[i], out.v.z[i]));
    }
    out.residual = residual;
    out.scale = scale;
    out.vmax = vmax;
    return out;
}

void write_profile_table(const std::string& path, const VortexProfile& p,
                         const std::vector<double>& rho) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    char buf[256];
    f << "# family " << p.family << "\n";
    std::snprintf(buf, sizeof buf,
                  "# amp %.17g\n# center %.17g\n# width %.17g\n# beta_tail %.17g\n",
                  p.amp, p.center, p.width, p.beta_tail);
    f << buf << "# m " << p.m << "\n";
    f << "# columns rho omega omega_p zeta\n";
    for (double x : rho) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", x, p.omega(x),
                      p.omega_p(x), p.zeta(x));
        f << buf;
    }
}

VortexProfile read_profile_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    VortexProfile meta;
    std::vector<double> rho, om;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string key;
            ss >> key;
            if (key == "family") ss >> meta.family;
            else if (key == "amp") ss >> meta.amp;
            else if (key == "center") ss >> meta.center;
            else if (key == "width") ss >> meta.width;
            else if (key == "beta_tail") ss >> meta.beta_tail;
            else if (key == "m") ss >> meta.m;
            continue;
        }
        std::istringstream ss(line);
        double x, w, wp, zt;
        if (ss >> x >> w >> wp >> zt) {
            rho.push_back(x);
            om.push_back(w);
        }
    }
    if (rho.size() < 2) throw std::runtime_error("profile table too short: " + path);
    VortexProfile p = make_custom_table(std::move(rho), std::move(om), meta.m);
    // Imported tables are stored unscaled; keep the original metadata alongside.
    p.center = meta.center;
    p.width = meta.width;
    p.beta_tail = meta.beta_tail;
    return p;
}

}  // namespace vring
