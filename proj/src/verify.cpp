#include "orbizeta/verify.hpp"

#include <cmath>
#include <random>

#include "orbizeta/geodesics.hpp"
#include "orbizeta/heattrace.hpp"
#include "orbizeta/specfun.hpp"
#include "orbizeta/zetafactors.hpp"

namespace orbizeta::verify {

namespace {

constexpr double kPi = 3.14159265358979323846;

using orbifold::OrbifoldSignature;
using orbifold::RepresentationData;

double reduce_mod_2pi(double x) {
    double r = std::remainder(x, 2.0 * kPi);
    return r;
}

CheckResult check(const std::string& name, double residual, double tol) {
    return {name, residual, tol, residual <= tol};
}

// Fixture battery shared by several checks.
struct Config {
    OrbifoldSignature sig;
    RepresentationData rep;
    const char* name;
};

std::vector<Config> elliptic_configs() {
    OrbifoldSignature s237(0, {2, 3, 7});
    OrbifoldSignature s12(1, {2});
    std::vector<Config> cfgs;
    cfgs.push_back({s237, RepresentationData::trivial(s237), "(0;2,3,7) trivial"});
    cfgs.push_back({s12, RepresentationData::trivial(s12), "(1;2) trivial"});
    cfgs.push_back({s237, zetafactors::yamaguchi_rep(s237, 1), "(0;2,3,7) dim-2 m=1"});
    cfgs.push_back({s12, zetafactors::yamaguchi_rep(s12, 1), "(1;2) dim-2 m=1"});
    return cfgs;
}

double digamma_identity_residual(const quadrature::QuadratureSpec& q) {
    double worst = 0.0;
    for (double s : {2.0, 3.0, 5.0, 10.0, 20.0})
        for (double m : {0.0, 0.25, -0.25, 0.75, -0.75, 1.0}) {
            auto [lhs, rhs] = heattrace::identity_digamma_check(s, m, q);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    return worst;
}

double elliptic_identity_residual(const quadrature::QuadratureSpec& q) {
    double worst = 0.0;
    for (const auto& cfg : elliptic_configs()) {
        for (double s : {2.0, 3.5}) {
            auto sides = heattrace::elliptic_series_check(s, cfg.sig, cfg.rep, q);
            Complex a = sides.integral_side + sides.m1_boundary;
            worst = std::max(worst, std::abs(a - sides.series_side));
            worst = std::max(worst, std::abs(a - sides.zell0_derivative));
            worst = std::max(worst, std::abs(sides.series_side - sides.zell0_derivative));
        }
    }
    return worst;
}

double barnes_recursion_residual() {
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> re(1.0, 10.0), im(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        Complex s(re(rng), im(rng));
        Complex lhs = specfun::log_barnes_g(s).value;  // log G(s+1)
        Complex rhs = specfun::log_gamma(s).value + specfun::log_barnes_g(s - 1.0).value;
        Complex d = lhs - rhs;
        worst = std::max(worst, std::hypot(d.real(), reduce_mod_2pi(d.imag())));
    }
    return worst;
}

double barnes_asymptotic_vs_product_residual() {
    double worst = 0.0;
    for (double s : {5.0, 10.0, 20.0}) {
        Complex asym = specfun::log_barnes_g_asymptotic(Complex(s, 0), 4).value;
        // Richardson extrapolation of the partial products in 1/n.
        const int levels = 5;
        const long long n0 = 60000;
        Complex row[levels];
        for (int i = 0; i < levels; ++i)
            row[i] = specfun::log_barnes_g_product(Complex(s, 0), n0 << i).value;
        for (int j = 1; j < levels; ++j) {
            double f = std::pow(2.0, j);
            for (int i = levels - 1; i >= j; --i)
                row[i] = (f * row[i] - row[i - 1]) / (f - 1.0);
        }
        worst = std::max(worst, std::abs(asym - row[levels - 1]));
    }
    return worst;
}

double constant_term_residual(const quadrature::QuadratureSpec& q, double delta) {
    // At large s, log(Z_I Z_ell e^C) + 2 a0 a^2 log a - a0 a^2 - 2 a1 log a -> 0
    // with a0 = C_rho and a1 the t^0 heat coefficient.  s = 2000 leaves the
    // o(1) tail near 1e-8 for C_rho = O(1) signatures while a 1e-6 shift of
    // zeta'(-1) moves the constant by 4 C_rho 1e-6; tiny-C_rho signatures
    // cannot separate the two and live in the s=60 acceptance check instead.
    OrbifoldSignature g2(2, {});
    OrbifoldSignature s12(1, {2});
    std::vector<Config> cfgs;
    cfgs.push_back({g2, RepresentationData::trivial(g2), "g2"});
    cfgs.push_back({s12, RepresentationData::trivial(s12), "(1;2)"});
    double worst = 0.0;
    for (const auto& cfg : cfgs) {
        double s = 2000.0, a = s - 0.5;
        double alpha0 = orbifold::c_rho(cfg.sig, cfg.rep);
        double alpha1 = heattrace::alpha1_analytic(cfg.sig, cfg.rep, q);
        double lhs = zetafactors::log_z_identity(Complex(s, 0), cfg.sig, cfg.rep).value.real() +
                     zetafactors::log_z_elliptic(Complex(s, 0), cfg.sig, cfg.rep).value.real() +
                     zetafactors::det_constant(cfg.sig, cfg.rep) +
                     4.0 * orbifold::c_rho(cfg.sig, cfg.rep) * delta;
        double bracket = 2.0 * alpha0 * a * a * std::log(a) - alpha0 * a * a -
                         2.0 * alpha1 * std::log(a);
        worst = std::max(worst, std::abs(lhs + bracket));
    }
    return worst;
}

double yamaguchi_equivalence_residual() {
    double worst = 0.0;
    for (int nu = 2; nu <= 12; ++nu) {
        OrbifoldSignature sig(1, {nu});
        for (int N = 1; N <= 24; ++N) {
            double def = zetafactors::torsion_factor(sig, zetafactors::yamaguchi_rep(sig, N));
            double closed = zetafactors::yamaguchi_torsion_closed_form(sig, N);
            worst = std::max(worst, std::abs(def - closed));
        }
    }
    return worst;
}

double yamaguchi_trig_residual() {
    double worst = 0.0;
    for (int nu = 2; nu <= 50; ++nu) {
        for (int r = 0; r < nu; ++r) {
            Complex sum = 0.0;
            for (int k = 1; k < nu; ++k) {
                double sn = std::sin(kPi * k / nu);
                sum += std::exp(Complex(0, 2.0 * kPi * r * k / nu)) / (sn * sn);
            }
            Rational closed(1LL * nu * nu - 6LL * nu * r + 6LL * r * r - 1, 3);
            worst = std::max(worst, std::abs(sum - Complex(closed.to_double(), 0)));
        }
    }
    return worst;
}

double cyclic_collapse_residual() {
    double worst = 0.0;
    OrbifoldSignature sig(0, {2, 3, 7});
    auto rep = RepresentationData::trivial(sig);
    for (double s : {1.5, 2.0, 3.0, 5.0, 10.0}) {
        Complex a = zetafactors::log_z_identity(Complex(s, 0), sig, rep).value;
        Complex b = zetafactors::log_z_identity_cyclic(Complex(s, 0), sig, rep).value;
        worst = std::max(worst, std::abs(a - b));
    }
    // C_0 + C~_0 = -(1/nu) sum_k Tr(rho^k) sin(pi k(2l+1)/nu)/sin(pi k/nu).
    for (int j = 0; j < sig.num_elliptic_classes(); ++j) {
        int nu = sig.elliptic_orders()[j];
        for (int l = 0; l < nu; ++l) {
            auto cm = orbifold::c_m_coeffs(sig, rep, j, l);
            double sine_form = 0.0;
            for (int k = 1; k < nu; ++k)
                sine_form += std::sin(kPi * k * (2 * l + 1) / nu) / std::sin(kPi * k / nu);
            sine_form = -sine_form / nu;
            worst = std::max(worst,
                             std::abs(cm.c_m.to_double() + cm.c_m_tilde.to_double() - sine_form));
        }
    }
    return worst;
}

double gamma_sum_identity_residual() {
    double worst = 0.0;
    for (int nu = 2; nu <= 30; ++nu)
        for (int k = 1; k < nu; ++k) {
            double lhs = 0.0;
            for (int l = 0; l < nu; ++l) lhs += l * std::sin(kPi * k * (2 * l + 1) / nu);
            worst = std::max(worst, std::abs(lhs + nu / (2.0 * std::sin(kPi * k / nu))));
        }
    return worst;
}

double cm_sum_rule_residual() {
    double worst = 0.0;
    for (const auto& cfg : elliptic_configs()) {
        auto table = orbifold::elliptic_coefficients(cfg.sig, cfg.rep);
        worst = std::max(worst, table.max_imag_residual);
        worst = std::max(worst, table.max_float_deviation);
        // The exact rational sums vanish by construction of the table; assert
        // through the float view as well.
        for (int j = 0; j < cfg.sig.num_elliptic_classes(); ++j) {
            double sp = 0.0, sm = 0.0;
            for (const auto& e : table.entries)
                if (e.j == j) {
                    sp += (e.c_m + e.c_m_tilde).to_double();
                    sm += (e.c_m - e.c_m_tilde).to_double();
                }
            worst = std::max({worst, std::abs(sp), std::abs(sm)});
        }
    }
    return worst;
}

double npm_integrality_residual() {
    OrbifoldSignature sig(0, {2, 3, 7});
    auto rep = RepresentationData::trivial(sig);
    double worst = 0.0;
    for (int n = 0; n <= 5; ++n)
        for (int sign : {+1, -1}) {
            Complex v = zetafactors::predicted_multiplicity(sig, rep, n, sign);
            worst = std::max(worst, std::abs(v.real() - std::round(v.real())));
            worst = std::max(worst, std::abs(v.imag()));
        }
    return worst;
}

double torsion_limit_residual() {
    OrbifoldSignature sig(0, {2, 3, 7});
    // K_N = N |C~/2N - limit| must stay below the crude closed-form bound
    // sum_j log(nu)(nu^2-1)/12.
    double bound = 0.0;
    for (int nu : sig.elliptic_orders())
        bound += std::log(double(nu)) * (nu * nu - 1.0) / 12.0;
    double limit = zetafactors::torsion_limit_value(sig);
    double worst = 0.0;
    for (int N : {6, 12, 24, 48, 96}) {
        double dev = std::abs(zetafactors::yamaguchi_torsion_closed_form(sig, N) / (2.0 * N) -
                              limit);
        worst = std::max(worst, N * dev / bound);
    }
    return worst;
}

double spectrum_smoke_residual() {
    // One hyperbolic generator with displacement 2: spectrum is exactly the
    // powers 2k with n_gamma = k.
    geodesics::GroupPresentation grp;
    double e1 = std::exp(1.0);
    grp.generators.push_back({{{e1, 0.0}, {0.0, 1.0 / e1}}});
    auto rep = geodesics::generate_spectrum(grp, 8.0, 2);
    double worst = 0.0;
    if (rep.spectrum.records.size() != 4) return 1.0;
    for (std::size_t i = 0; i < rep.spectrum.records.size(); ++i) {
        const auto& r = rep.spectrum.records[i];
        worst = std::max(worst, std::abs(r.length - 2.0 * double(i + 1)));
        worst = std::max(worst, std::abs(r.primitive_length - 2.0));
        if (r.n_gamma != (long long)(i + 1)) worst = std::max(worst, 1.0);
    }
    return worst;
}

double det_cross_check_light(const quadrature::QuadratureSpec& q) {
    // (1;2) trivial, empty spectrum, s = 5: the Laplace-Mellin route must
    // cancel the closed-form assembly.
    OrbifoldSignature sig(1, {2});
    auto rep = RepresentationData::trivial(sig);
    geodesics::LengthSpectrum empty;
    empty.l_max = 0.0;
    auto lm = heattrace::lm_log_det_numeric(5.0, sig, rep, empty, q);
    auto breakdown = zetafactors::log_det(Complex(5.0, 0), sig, rep, empty);
    return std::abs(lm.value + breakdown.log_det);
}

}  // namespace

std::vector<CheckResult> run_all(const Options& opts) {
    const auto& q = opts.quadrature;
    std::vector<CheckResult> out;
    out.push_back(check("digamma_identity", digamma_identity_residual(q), 1e-8));
    out.push_back(check("elliptic_identity", elliptic_identity_residual(q), 1e-6));
    out.push_back(check("barnes_recursion", barnes_recursion_residual(), 1e-9));
    out.push_back(check("barnes_asymptotic_vs_product", barnes_asymptotic_vs_product_residual(),
                        1e-9));
    out.push_back(check("constant_term_vanishing",
                        constant_term_residual(q, opts.zeta_prime_minus1_delta), 1e-7));
    out.push_back(check("yamaguchi_equivalence", yamaguchi_equivalence_residual(), 1e-9));
    out.push_back(check("yamaguchi_trig_closed_form", yamaguchi_trig_residual(), 1e-9));
    out.push_back(check("cyclic_collapse_m0", cyclic_collapse_residual(), 1e-10));
    out.push_back(check("gamma_sum_identity", gamma_sum_identity_residual(), 1e-9));
    out.push_back(check("cm_sum_rules", cm_sum_rule_residual(), 1e-10));
    out.push_back(check("n_pm_integrality", npm_integrality_residual(), 1e-9));
    out.push_back(check("torsion_limit_bound", torsion_limit_residual(), 1.0));
    out.push_back(check("spectrum_generator", spectrum_smoke_residual(), 1e-9));
    out.push_back(check("determinant_cross_check", det_cross_check_light(q), 1e-4));
    return out;
}

bool all_pass(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

}  // namespace orbizeta::verify
