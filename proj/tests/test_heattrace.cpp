#include "doctest.h"

#include <cmath>

#include "orbizeta/heattrace.hpp"
#include "orbizeta/specfun.hpp"
#include "orbizeta/zetafactors.hpp"
#include "oracles.hpp"

using namespace orbizeta;
using namespace orbizeta::heattrace;
using orbifold::OrbifoldSignature;
using orbifold::RepresentationData;

namespace {

constexpr double kPi = 3.14159265358979323846;

QuadratureSpec spec() { return QuadratureSpec{}; }

geodesics::LengthSpectrum empty_spectrum() {
    geodesics::LengthSpectrum sp;
    sp.l_max = 0.0;
    return sp;
}

geodesics::LengthSpectrum single_record(double l) {
    geodesics::LengthSpectrum sp;
    sp.l_max = l + 0.5;
    geodesics::GeodesicRecord r;
    r.length = l;
    r.primitive_length = l;
    r.n_gamma = 1;
    r.class_count = 1;
    sp.records.push_back(r);
    return sp;
}

}  // namespace

TEST_CASE("identity term reduces to lambda tanh(pi lambda) at m=0") {
    OrbifoldSignature g2(2, {});
    auto triv = RepresentationData::trivial(g2);
    double t = 1.0;
    // Independent Simpson integration of the raw tanh form over R (even).
    double oracle = 2.0 * oracles::simpson(
                              [&](double l) {
                                  return std::exp(-t * l * l) * l * std::tanh(kPi * l);
                              },
                              0.0, 14.0, 6000);
    double cr = orbifold::c_rho(g2, triv);
    CHECK(std::abs(identity_term(t, g2, triv, spec()) - cr * oracle) < 1e-10);
}

TEST_CASE("identity term: small-t leading coefficient is C_rho") {
    OrbifoldSignature g2(2, {});
    auto triv = RepresentationData::trivial(g2);
    for (double t : {1e-2, 1e-3})
        CHECK(std::abs(t * identity_term(t, g2, triv, spec()) - 1.0) < 0.1 * t);
}

TEST_CASE("identity term: split form of f at m=1/2") {
    OrbifoldSignature g2(2, {});
    RepresentationData rep(g2, 1, Rational(1, 2), {});
    double t = 1.0, m = 0.5;
    // f(m,l) = 2/(1+e^{2 pi (l+im/2)}) + 2/(1+e^{2 pi (l-im/2)}).
    auto f_split = [&](double l) {
        Complex a = 2.0 / (1.0 + std::exp(2.0 * kPi * Complex(l, m / 2.0)));
        Complex b = 2.0 / (1.0 + std::exp(2.0 * kPi * Complex(l, -m / 2.0)));
        return (a + b).real();
    };
    double oracle = oracles::simpson(
        [&](double l) { return std::exp(-t * l * l) * l * f_split(l); }, 0.0, 10.0, 6000);
    double cr = orbifold::c_rho(g2, rep);
    double expected = cr * (1.0 / t - oracle);
    CHECK(std::abs(identity_term(t, g2, rep, spec()) - expected) < 1e-10);
}

TEST_CASE("elliptic term") {
    OrbifoldSignature g2(2, {});
    auto triv2 = RepresentationData::trivial(g2);
    CHECK(elliptic_term(1.0, g2, triv2, spec()) == Complex(0, 0));

    OrbifoldSignature sig(0, {2, 3, 7});
    auto triv = RepresentationData::trivial(sig);
    Complex v = elliptic_term(1.0, sig, triv, spec());
    CHECK(std::abs(v.imag()) < 1e-12);  // conjugate-symmetric classes
    QuadratureSpec loose;
    loose.rel_tol = 1e-6;
    loose.abs_tol = 1e-8;
    CHECK(std::abs(elliptic_term(1.0, sig, triv, loose) - v) < 1e-9);
}

TEST_CASE("hyperbolic term") {
    OrbifoldSignature g2(2, {});
    auto triv = RepresentationData::trivial(g2);
    CHECK(hyperbolic_term(1.0, empty_spectrum(), triv) == 0.0);

    double expected = 1.0 / (2.0 * std::sqrt(4.0 * kPi)) * 2.0 / std::sinh(1.0) * std::exp(-1.0);
    CHECK(std::abs(hyperbolic_term(1.0, single_record(2.0), triv) - expected) < 1e-15);

    // Gaussian factor crushes everything as t -> 0.
    CHECK(std::abs(hyperbolic_term(1e-3, single_record(2.0), triv)) < 1e-300);
}

TEST_CASE("theta_geometric composition and additivity") {
    OrbifoldSignature g2(2, {});
    auto triv = RepresentationData::trivial(g2);
    double t = 0.7;
    CHECK(theta_geometric(t, g2, triv, empty_spectrum(), spec()) ==
          Complex(identity_term(t, g2, triv, spec()), 0));

    auto sp1 = single_record(2.0), sp2 = single_record(3.0);
    geodesics::LengthSpectrum both = sp1;
    both.records.push_back(sp2.records[0]);
    both.l_max = 3.5;
    Complex lhs = theta_geometric(t, g2, triv, both, spec());
    Complex rhs = theta_geometric(t, g2, triv, sp1, spec()) +
                  theta_geometric(t, g2, triv, sp2, spec()) -
                  Complex(identity_term(t, g2, triv, spec()), 0);
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("alpha coefficients: fit vs analytic") {
    OrbifoldSignature g2(2, {});
    auto triv = RepresentationData::trivial(g2);
    auto [a0, a1] = alpha_coefficients(g2, triv, spec());
    CHECK(std::abs(a0 - 1.0) < 1e-7);
    // Analytic alpha_1 at m=0, r=0 is -C_rho/12 (the eta(2) moment of f).
    CHECK(std::abs(alpha1_analytic(g2, triv, spec()) + 1.0 / 12.0) < 1e-10);
    CHECK(std::abs(a1 + 1.0 / 12.0) < 1e-6);

    // Doubling the dimension doubles alpha_0.
    RepresentationData dim2(g2, 2, Rational(0), {});
    auto [b0, b1] = alpha_coefficients(g2, dim2, spec());
    CHECK(std::abs(b0 - 2.0 * a0) < 1e-6);
    CHECK(std::abs(b1 - 2.0 * a1) < 1e-5);

    // Elliptic configuration: fit against the analytic reading.
    OrbifoldSignature sig(0, {2, 3, 7});
    auto trivE = RepresentationData::trivial(sig);
    auto [c0, c1] = alpha_coefficients(sig, trivE, spec());
    CHECK(std::abs(c0 - orbifold::c_rho(sig, trivE)) < 1e-7);
    CHECK(std::abs(c1 - alpha1_analytic(sig, trivE, spec())) < 1e-5);
}

TEST_CASE("digamma identity across m, including m=1") {
    for (double m : {0.0, 1.0}) {
        auto [lhs, rhs] = identity_digamma_check(3.0, m, spec());
        CHECK(std::abs(lhs - rhs) < 1e-8);
    }
    auto [lhs, rhs] = identity_digamma_check(2.5, 1.0, spec());
    CHECK(std::abs(lhs - rhs) < 1e-8);
    // Both sides approach 2 log s for large s.
    auto [l2, r2] = identity_digamma_check(500.0, 0.5, spec());
    CHECK(std::abs(l2 - 2.0 * std::log(500.0)) < 0.01);
    CHECK(std::abs(r2 - 2.0 * std::log(500.0)) < 0.01);
}

TEST_CASE("elliptic identity sides agree") {
    OrbifoldSignature sig(0, {2, 3, 7});
    auto triv = RepresentationData::trivial(sig);
    auto sides = elliptic_series_check(2.0, sig, triv, spec());
    CHECK(std::abs(sides.m1_boundary) == 0.0);
    CHECK(std::abs(sides.integral_side - sides.series_side) < 1e-7);
    CHECK(std::abs(sides.integral_side - sides.zell0_derivative) < 1e-7);

    OrbifoldSignature s12(1, {2});
    auto sides2 = elliptic_series_check(2.0, s12, RepresentationData::trivial(s12), spec());
    CHECK(std::abs(sides2.integral_side - sides2.series_side) < 1e-7);
    CHECK(std::abs(sides2.integral_side - sides2.zell0_derivative) < 1e-7);

    // r=0 degenerates to zero.
    OrbifoldSignature g2(2, {});
    auto z = elliptic_series_check(2.0, g2, RepresentationData::trivial(g2), spec());
    CHECK(z.integral_side == Complex(0, 0));
    CHECK(z.series_side == Complex(0, 0));
}

TEST_CASE("elliptic identity at m=1 carries the boundary term") {
    // Non-Yamaguchi m=1 representation: angles {0,0} on nu=3, so the
    // coefficient sum S_ell does not vanish and the quadrature side differs
    // from the series by exactly i S_ell/(s-1/2)^2.
    OrbifoldSignature s3(1, {3});
    RepresentationData rep(s3, 2, Rational(1), {{0, 0}});
    auto sides = elliptic_series_check(2.5, s3, rep, spec());
    CHECK(std::abs(sides.m1_boundary) > 1e-3);
    CHECK(std::abs(sides.integral_side + sides.m1_boundary - sides.series_side) < 1e-8);

    // The Yamaguchi rep has S_ell = 0, so all three sides agree directly.
    auto yam = zetafactors::yamaguchi_rep(s3, 1);
    auto ys = elliptic_series_check(2.5, s3, yam, spec());
    CHECK(std::abs(ys.m1_boundary) < 1e-14);
    CHECK(std::abs(ys.integral_side - ys.series_side) < 1e-7);
    CHECK(std::abs(ys.integral_side - ys.zell0_derivative) < 1e-6);
}

TEST_CASE("lm route matches the closed forms with no geodesics") {
    OrbifoldSignature g2(2, {});
    auto triv = RepresentationData::trivial(g2);
    auto lm = lm_log_det_numeric(5.0, g2, triv, empty_spectrum(), spec());
    double closed = zetafactors::log_z_identity(Complex(5, 0), g2, triv).value.real() +
                    zetafactors::det_constant(g2, triv);
    CHECK(std::abs(lm.value.real() + closed) < 1e-4);
    CHECK(std::abs(lm.value.real() + closed) < lm.abs_err_estimate + 1e-6);

    // Linear in dim for r=0.
    RepresentationData dim2(g2, 2, Rational(0), {});
    auto lm2 = lm_log_det_numeric(5.0, g2, dim2, empty_spectrum(), spec());
    CHECK(std::abs(lm2.value.real() - 2.0 * lm.value.real()) < 1e-6);
}

TEST_CASE("error budget tightens with l_max for generated spectra") {
    geodesics::GroupPresentation grp;
    double e1 = std::exp(1.0);
    grp.generators.push_back({{{e1, 0.0}, {0.0, 1.0 / e1}}});
    OrbifoldSignature g2(2, {});
    auto triv = RepresentationData::trivial(g2);
    auto sp4 = geodesics::generate_spectrum(grp, 4.0, 2).spectrum;
    auto sp8 = geodesics::generate_spectrum(grp, 8.0, 2).spectrum;
    auto lm4 = lm_log_det_numeric(4.0, g2, triv, sp4, spec());
    auto lm8 = lm_log_det_numeric(4.0, g2, triv, sp8, spec());
    CHECK(lm8.abs_err_estimate < lm4.abs_err_estimate);
}

TEST_CASE("hyperbolic transform in K-Bessel form equals -log Z") {
    // K_{-1/2}(x) = sqrt(pi/2x) e^{-x}: the z=0 derivative of the hyperbolic
    // Laplace-Mellin transform, summed record by record, must reproduce
    // -log Z(s) from the Euler-product route.
    OrbifoldSignature g2(2, {});
    auto triv = RepresentationData::trivial(g2);
    geodesics::LengthSpectrum sp;
    sp.l_max = 10.3;
    auto add = [&sp](double l0, int n) {
        geodesics::GeodesicRecord r;
        r.primitive_length = l0;
        r.n_gamma = n;
        r.length = l0 * n;
        r.class_count = 1;
        sp.records.push_back(r);
    };
    add(3.0, 1);
    add(3.4, 1);
    add(4.1, 1);
    add(3.0, 2);
    add(3.4, 2);
    add(3.0, 3);
    for (double s : {3.0, 5.0}) {
        double a = s - 0.5;
        double bessel_sum = 0.0;
        for (const auto& r : sp.records) {
            double k_half = std::sqrt(kPi / (2.0 * a * r.length)) * std::exp(-a * r.length);
            bessel_sum += r.class_count * (r.length / double(r.n_gamma)) /
                          std::sinh(r.length / 2.0) / std::sqrt(4.0 * kPi) *
                          std::sqrt((2.0 * s - 1.0) / r.length) * k_half;
        }
        double logz = zetafactors::log_selberg_zeta(Complex(s, 0), sp, triv, 256).value.real();
        CHECK(std::abs(bessel_sum + logz) < 1e-8);
    }
}

TEST_CASE("halved tolerances move results by less than the reported error") {
    OrbifoldSignature s12(1, {2});
    auto triv = RepresentationData::trivial(s12);
    geodesics::LengthSpectrum empty;
    empty.l_max = 0.0;
    QuadratureSpec loose;
    loose.rel_tol = 1e-8;
    loose.abs_tol = 1e-9;
    QuadratureSpec tight = loose;
    tight.rel_tol /= 2.0;
    tight.abs_tol /= 2.0;
    auto a = lm_log_det_numeric(4.0, s12, triv, empty, loose);
    auto b = lm_log_det_numeric(4.0, s12, triv, empty, tight);
    CHECK(std::abs(a.value - b.value) <= a.abs_err_estimate + 1e-15);

    double ia = identity_term(0.3, s12, triv, loose);
    double ib = identity_term(0.3, s12, triv, tight);
    CHECK(std::abs(ia - ib) <= std::max(loose.abs_tol, 1e-12));
}

TEST_CASE("quadrature spec validation") {
    QuadratureSpec bad;
    bad.abs_tol = 0.0;
    OrbifoldSignature g2(2, {});
    CHECK_THROWS_AS(identity_term(1.0, g2, RepresentationData::trivial(g2), bad), DomainError);
}
