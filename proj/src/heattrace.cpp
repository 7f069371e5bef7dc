#include "orbizeta/heattrace.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "orbizeta/specfun.hpp"
#include "orbizeta/zetafactors.hpp"

namespace orbizeta::heattrace {

namespace {

constexpr double kPi = 3.14159265358979323846;

using orbifold::EllipticClass;
using orbifold::c_rho;
using orbifold::elliptic_classes;

bool is_m_one(const RepresentationData& rep) { return rep.m() == Rational(1); }

// The sums over odd 1 <= ell < |m| in the trace formula.  Provably empty for
// m in (-1, 1]; looped anyway so the structure matches the formula.
template <typename F>
Complex odd_ell_sum(double m, F&& term) {
    Complex sum = 0.0;
    for (long long ell = 1; ell < std::ceil(std::abs(m)); ell += 2)
        if (double(ell) < std::abs(m)) sum += term(ell);
    return sum;
}

QuadratureSpec inner_spec(const QuadratureSpec& spec, double scale = 1.0) {
    QuadratureSpec s = spec;
    s.abs_tol = std::max(spec.abs_tol * scale, 1e-300);
    return s;
}

double f_decay_cutoff(const QuadratureSpec& spec) {
    return spec.decay_cutoff > 0.0 ? spec.decay_cutoff
                                   : quadrature::exp_decay_cutoff(64.0, 2.0 * kPi, spec.abs_tol);
}

double class_cutoff(const EllipticClass& cls, const QuadratureSpec& spec) {
    if (spec.decay_cutoff > 0.0) return spec.decay_cutoff;
    double rate = 2.0 * std::min(cls.theta, kPi - cls.theta);
    return quadrature::exp_decay_cutoff(16.0, rate, spec.abs_tol);
}

}  // namespace

double lambda_f(double m, double lambda) {
    if (lambda == 0.0) return (m == 1.0 || m == -1.0) ? -2.0 / kPi : 0.0;
    double u = std::exp(-2.0 * kPi * lambda);
    double c = std::cos(kPi * m);
    if (m == 1.0 || m == -1.0) {
        // -4 lambda u / (1 - u), with 1 - u = -expm1(-2 pi lambda)
        return -4.0 * lambda * u / (-std::expm1(-2.0 * kPi * lambda));
    }
    return lambda * 4.0 * u * (u + c) / (1.0 + 2.0 * u * c + u * u);
}

Complex elliptic_ratio(double m, double theta, double lambda) {
    if (m == 1.0 || m == -1.0) {
        // (cosh(2(pi-th)l) - cosh(2 th l)) / (cosh 2 pi l - 1) = sinh((pi-2th)l)/sinh(pi l)
        if (lambda == 0.0) return (kPi - 2.0 * theta) / kPi;
        double a = kPi - 2.0 * theta;
        double num = std::exp((a - kPi) * std::abs(lambda)) *
                     (1.0 - std::exp(-2.0 * a * std::abs(lambda)));
        double den = 1.0 - std::exp(-2.0 * kPi * std::abs(lambda));
        return num / den;
    }
    double al = std::abs(lambda);
    double c = std::cos(kPi * m);
    Complex eipm = std::exp(Complex(0, kPi * m));
    // Scale numerator and denominator by 2 e^{-2 pi l}.
    double den = 1.0 + std::exp(-4.0 * kPi * al) + 2.0 * std::exp(-2.0 * kPi * al) * c;
    Complex num = std::exp(-2.0 * theta * al) + std::exp(-(4.0 * kPi - 2.0 * theta) * al) +
                  eipm * (std::exp(-(2.0 * kPi - 2.0 * theta) * al) +
                          std::exp(-(2.0 * kPi + 2.0 * theta) * al));
    return num / den;
}

double identity_term_subtracted(double t, const OrbifoldSignature& sig,
                                const RepresentationData& rep, const QuadratureSpec& spec) {
    double m = rep.m_value();
    double cutoff = f_decay_cutoff(spec);
    auto res = quadrature::integrate<double>(
        [&](double l) { return std::exp(-t * l * l) * lambda_f(m, l); }, 0.0, cutoff, spec);
    double value = -c_rho(sig, rep) * res.value;
    Complex disc = odd_ell_sum(m, [&](long long ell) {
        double d = std::abs(m) - double(ell);
        return Complex(d * std::exp(d * d / 4.0 * t), 0.0);
    });
    return value + c_rho(sig, rep) * disc.real();
}

double identity_term(double t, const OrbifoldSignature& sig, const RepresentationData& rep,
                     const QuadratureSpec& spec) {
    if (!(t > 0.0)) throw DomainError("identity_term: t > 0 required");
    return c_rho(sig, rep) / t + identity_term_subtracted(t, sig, rep, spec);
}

Complex elliptic_term(double t, const OrbifoldSignature& sig, const RepresentationData& rep,
                      const QuadratureSpec& spec) {
    if (!(t > 0.0)) throw DomainError("elliptic_term: t > 0 required");
    double m = rep.m_value();
    KahanSumC total;
    for (const auto& cls : elliptic_classes(sig, rep)) {
        double cutoff = class_cutoff(cls, spec);
        auto res = quadrature::integrate<Complex>(
            [&](double l) { return std::exp(-t * l * l) * elliptic_ratio(m, cls.theta, l); }, 0.0,
            cutoff, spec);
        Complex integral = 2.0 * res.value;  // even integrand
        Complex disc = odd_ell_sum(m, [&](long long ell) {
            double d = std::abs(m) - double(ell);
            double sgn = m >= 0 ? 1.0 : -1.0;
            return 2.0 * Complex(0, 1) * sgn *
                   std::exp(Complex(0, sgn * d * cls.theta)) * std::exp(d * d / 4.0 * t);
        });
        total.add(cls.trace / (4.0 * cls.order * std::sin(cls.theta)) * (integral + disc));
    }
    return total.value();
}

double hyperbolic_term(double t, const LengthSpectrum& spectrum, const RepresentationData& rep) {
    if (!(t > 0.0)) throw DomainError("hyperbolic_term: t > 0 required");
    KahanSumC sum;
    for (const auto& rec : spectrum.records) {
        Complex tr = 0.0;
        if (rep.geodesic_eigen_policy() == orbifold::GeodesicEigenPolicy::trivial) {
            tr = double(rep.dim());
        } else {
            if (int(rec.rho_eigenvalues.size()) != rep.dim())
                throw InvariantViolation("hyperbolic_term: record lacks rho eigenvalues");
            for (const Complex& lam : rec.rho_eigenvalues)
                tr += std::pow(lam, double(rec.n_gamma));
        }
        double l = rec.length;
        sum.add(double(rec.class_count) * rec.primitive_length * tr /
                std::sinh(l / 2.0) * std::exp(-l * l / (4.0 * t)));
    }
    Complex v = sum.value() / (2.0 * std::sqrt(4.0 * kPi * t));
    if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
        throw NonRealError("hyperbolic_term: non-real trace sum");
    return v.real();
}

Complex theta_geometric(double t, const OrbifoldSignature& sig, const RepresentationData& rep,
                        const LengthSpectrum& spectrum, const QuadratureSpec& spec) {
    return identity_term(t, sig, rep, spec) + hyperbolic_term(t, spectrum, rep) +
           elliptic_term(t, sig, rep, spec);
}

std::pair<double, double> alpha_coefficients(const OrbifoldSignature& sig,
                                             const RepresentationData& rep,
                                             const QuadratureSpec& spec) {
    // Fit t*(I(t)+E(t)) by a degree-6 polynomial in t on a small-t log grid;
    // alpha_0 and alpha_1 are the constant and linear coefficients.  The
    // window must stay small: the elliptic moments grow factorially, so the
    // expansion is asymptotic and the model error at t_hi = 0.012 sits near
    // 1e-8 on alpha_1.
    const int n_pts = 48;
    const double t_lo = 4e-4, t_hi = 0.012;
    const int deg = 6;
    QuadratureSpec tight = inner_spec(spec, 1e-2);

    std::vector<double> ts(n_pts), ys(n_pts);
    for (int i = 0; i < n_pts; ++i) {
        double t = t_lo * std::pow(t_hi / t_lo, double(i) / (n_pts - 1));
        Complex y = identity_term(t, sig, rep, tight) + elliptic_term(t, sig, rep, tight);
        if (std::abs(y.imag()) > 1e-8 * (1.0 + std::abs(y.real())))
            throw FitError("alpha_coefficients: non-real heat trace");
        ts[i] = t;
        ys[i] = t * y.real();
    }
    // Normal equations in the scaled variable tau = t/t_hi.
    long double A[deg + 1][deg + 1] = {};
    long double b[deg + 1] = {};
    for (int i = 0; i < n_pts; ++i) {
        long double tau = ts[i] / t_hi;
        long double pw[deg + 1];
        pw[0] = 1.0L;
        for (int k = 1; k <= deg; ++k) pw[k] = pw[k - 1] * tau;
        for (int r = 0; r <= deg; ++r) {
            b[r] += pw[r] * ys[i];
            for (int c = 0; c <= deg; ++c) A[r][c] += pw[r] * pw[c];
        }
    }
    // Gaussian elimination with partial pivoting.
    int n = deg + 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs((double)A[r][col]) > std::abs((double)A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < n; ++r) {
            long double f = A[r][col] / A[col][col];
            for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    long double q[deg + 1];
    for (int r = n - 1; r >= 0; --r) {
        long double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= A[r][c] * q[c];
        q[r] = s / A[r][r];
    }
    double alpha0 = double(q[0]);
    double alpha1 = double(q[1]) / t_hi;

    double max_res = 0.0;
    for (int i = 0; i < n_pts; ++i) {
        long double tau = ts[i] / t_hi, fit = 0.0L, pw = 1.0L;
        for (int k = 0; k <= deg; ++k) {
            fit += q[k] * pw;
            pw *= tau;
        }
        max_res = std::max(max_res, std::abs(double(fit) - ys[i]));
    }
    if (max_res > 1e-6 * std::max(1.0, std::abs(alpha0)))
        throw FitError("alpha_coefficients: fit residual " + std::to_string(max_res));
    return {alpha0, alpha1};
}

double alpha1_analytic(const OrbifoldSignature& sig, const RepresentationData& rep,
                       const QuadratureSpec& spec) {
    double m = rep.m_value();
    double cutoff = f_decay_cutoff(spec);
    auto id0 = quadrature::integrate<double>([&](double l) { return lambda_f(m, l); }, 0.0,
                                             cutoff, spec);
    Complex v = -c_rho(sig, rep) * id0.value;
    for (const auto& cls : elliptic_classes(sig, rep)) {
        auto res = quadrature::integrate<Complex>(
            [&](double l) { return elliptic_ratio(m, cls.theta, l); }, 0.0,
            class_cutoff(cls, spec), spec);
        v += cls.trace / (4.0 * cls.order * std::sin(cls.theta)) * 2.0 * res.value;
    }
    if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
        throw NonRealError("alpha1_analytic: imaginary residue");
    return v.real();
}

std::pair<double, double> identity_digamma_check(double s, double m, const QuadratureSpec& spec) {
    if (!(s - 0.5 > 0.0)) throw DomainError("identity_digamma_check: s > 1/2 required");
    if (!(m > -1.0 && m <= 1.0)) throw DomainError("identity_digamma_check: m in (-1,1]");
    double a = s - 0.5;
    double cutoff = f_decay_cutoff(spec);
    auto integral = quadrature::integrate<double>(
        [&](double l) { return lambda_f(m, l) / (l * l + a * a); }, 0.0, cutoff, spec);
    Complex disc = odd_ell_sum(m, [&](long long ell) {
        double d = std::abs(m) - double(ell);
        return Complex(d / (a * a - d * d / 4.0), 0.0);
    });
    double lhs = std::log(a * a) + integral.value - disc.real();
    double rhs = specfun::digamma(Complex(s + m / 2.0, 0)).value.real() +
                 specfun::digamma(Complex(s - m / 2.0, 0)).value.real();
    return {lhs, rhs};
}

EllipticIdentitySides elliptic_series_check(double s, const OrbifoldSignature& sig,
                                            const RepresentationData& rep,
                                            const QuadratureSpec& spec) {
    if (!(s > 1.0)) throw DomainError("elliptic_series_check: s > 1 required");
    double m = rep.m_value();
    double a = s - 0.5;
    EllipticIdentitySides out{};

    KahanSumC integral, series;
    for (const auto& cls : elliptic_classes(sig, rep)) {
        Complex coeff = cls.trace / (4.0 * cls.order * std::sin(cls.theta));
        auto quad = quadrature::integrate<Complex>(
            [&](double l) { return elliptic_ratio(m, cls.theta, l) / (l * l + a * a); }, 0.0,
            class_cutoff(cls, spec), spec);
        Complex disc = odd_ell_sum(m, [&](long long ell) {
            double d = std::abs(m) - double(ell);
            double sgn = m >= 0 ? 1.0 : -1.0;
            return 2.0 * Complex(0, 1) * sgn * std::exp(Complex(0, sgn * d * cls.theta)) /
                   (a * a - d * d / 4.0);
        });
        integral.add(coeff * (2.0 * quad.value + disc));

        // Hejhal-type sum over j >= 0, regrouped through residues mod nu into
        // digamma values: sum_j [A om^{-j}/(j+s-m/2) - B om^j/(j+s+m/2)]
        //   = -(1/nu) sum_l [A om^{-l} psi((s-m/2+l)/nu) - B om^l psi((s+m/2+l)/nu)].
        int nu = cls.order;
        Complex om = std::exp(Complex(0, 2.0 * cls.theta));
        Complex A = std::exp(Complex(0, -cls.theta * (1.0 - m)));
        Complex B = std::exp(Complex(0, cls.theta * (1.0 + m)));
        Complex T = 0.0;
        for (int l = 0; l < nu; ++l) {
            Complex psi_minus = specfun::digamma(Complex((s - m / 2.0 + l) / nu, 0)).value;
            Complex psi_plus = specfun::digamma(Complex((s + m / 2.0 + l) / nu, 0)).value;
            T += -(A * std::pow(om, -l) * psi_minus - B * std::pow(om, l) * psi_plus) /
                 double(nu);
        }
        series.add(coeff * Complex(0, 1) / a * T);
    }
    out.integral_side = integral.value();
    out.series_side = series.value();
    if (is_m_one(rep))
        out.m1_boundary = Complex(0, 1) / (a * a) *
                          zetafactors::elliptic_coefficient_sum(sig, rep);

    auto logzell0 = [&](double x) {
        return zetafactors::log_z_elliptic_zero(Complex(x, 0), sig, rep).value.real();
    };
    double d = zetafactors::central_derivative(logzell0, s, 1, 1e-2, 3);
    out.zell0_derivative = d / (2.0 * s - 1.0);
    return out;
}

EvalResult lm_log_det_numeric(double s, const OrbifoldSignature& sig,
                              const RepresentationData& rep, const LengthSpectrum& spectrum,
                              const QuadratureSpec& spec) {
    double a = s - 0.5;
    if (!(a * a > 1.0))
        throw DomainError("lm_log_det_numeric: (s-1/2)^2 > 1 required (s >= 3 recommended)");
    double m = rep.m_value();
    double alpha0 = c_rho(sig, rep);
    QuadratureSpec inner = inner_spec(spec, 1e-2);
    double alpha1 = alpha1_analytic(sig, rep, inner);

    auto classes = elliptic_classes(sig, rep);
    double f_cutoff = f_decay_cutoff(inner);

    double inner_err_budget = 0.0;
    // Theta(t) - alpha0/t - alpha1, with the t^0 parts cancelled inside the
    // lambda integrals through the expm1 weight.
    auto g = [&](double t) -> Complex {
        QuadratureSpec local = inner;
        local.abs_tol = inner.abs_tol * std::max(t, 1e-6);
        auto id = quadrature::integrate<double>(
            [&](double l) { return std::expm1(-t * l * l) * lambda_f(m, l); }, 0.0, f_cutoff,
            local);
        Complex val = -c_rho(sig, rep) * id.value;
        inner_err_budget = std::max(inner_err_budget, id.abs_err / std::max(t, 1e-6));
        for (const auto& cls : classes) {
            auto res = quadrature::integrate<Complex>(
                [&](double l) { return std::expm1(-t * l * l) * elliptic_ratio(m, cls.theta, l); },
                0.0, class_cutoff(cls, inner), local);
            val += cls.trace / (4.0 * cls.order * std::sin(cls.theta)) * 2.0 * res.value;
            inner_err_budget = std::max(inner_err_budget, res.abs_err / std::max(t, 1e-6));
        }
        if (!spectrum.records.empty()) val += hyperbolic_term(t, spectrum, rep);
        Complex disc = odd_ell_sum(m, [&](long long ell) {
            double d = std::abs(m) - double(ell);
            return Complex(c_rho(sig, rep) * d * std::exp(d * d / 4.0 * t), 0.0);
        });
        return val + disc;
    };

    double T = std::max(2.0, std::log((std::abs(alpha1) + 1.0) * 1e2 / spec.abs_tol) / (a * a));
    QuadratureSpec outer = spec;
    outer.abs_tol = std::max(spec.abs_tol, 1e-11);
    auto t_int = quadrature::integrate<Complex>(
        [&](double t) { return std::exp(-t * a * a) * g(t) / t; }, 0.0, T, outer);

    Complex value = t_int.value + 2.0 * alpha0 * a * a * std::log(a) - alpha0 * a * a -
                    2.0 * alpha1 * std::log(a);

    // Error budget: outer quadrature + propagated inner tolerances + the
    // neglected t > T tail + (generated spectra only) the geometric tail of
    // missing lengths.  File-sourced spectra are taken as formally complete.
    double err = t_int.abs_err + inner_err_budget * T + (std::abs(alpha1) + 1.0) *
                                                            std::exp(-T * a * a) / (T * a * a);
    if (spectrum.source == LengthSpectrum::Source::generated && spectrum.l_max > 0.0) {
        double L = spectrum.l_max;
        auto tail_bound = [&](double t) {
            return rep.dim() * std::exp(L - L * L / (4.0 * t)) /
                   (2.0 * std::sqrt(4.0 * kPi * t) * std::sinh(L / 2.0) * std::max(L, 1.0));
        };
        auto tail = quadrature::integrate<double>(
            [&](double t) { return std::exp(-t * a * a) * tail_bound(t) / t; }, 0.0, T, outer);
        err += tail.value;
    }
    return {value, err, Method::quadrature};
}

}  // namespace orbizeta::heattrace
