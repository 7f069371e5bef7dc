#include "orbizeta/specfun.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <vector>

namespace orbizeta::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2Pi = 1.8378770664093454836;

bool near_nonpositive_integer(Complex z, double tol = 1e-13) {
    if (std::abs(z.imag()) > tol) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) <= tol;
}

// Lanczos, g = 7, 9 coefficients.  ~1e-13 relative accuracy on Re(z) >= 1/2.
Complex lanczos_log_gamma(Complex z) {
    static const std::array<double, 9> c = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    Complex a(c[0], 0.0);
    for (int k = 1; k < 9; ++k) a += c[k] / (z - 1.0 + double(k));
    Complex t = z + 6.5;
    return 0.5 * kLog2Pi + (z - 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

EvalResult log_gamma(Complex z) {
    if (near_nonpositive_integer(z))
        throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()));
    if (z.real() >= 0.5)
        return {lanczos_log_gamma(z), 5e-13 * std::max(1.0, std::abs(z) * std::log(std::abs(z) + 2.0)),
                Method::series};
    // Shift right: log Gamma(z) = log Gamma(z+n) - sum log(z+k).  Each log is
    // principal; along a horizontal path off the cut this is the continuous
    // branch.
    Complex acc = 0.0;
    Complex w = z;
    int n = 0;
    while (w.real() < 0.5) {
        acc += std::log(w);
        w += 1.0;
        if (++n > 400) throw DomainError("log_gamma: argument too far left");
    }
    return {lanczos_log_gamma(w) - acc, 1e-12 * std::max(1.0, std::abs(acc)), Method::recursion};
}

EvalResult digamma(Complex z) {
    if (near_nonpositive_integer(z))
        throw PoleError("digamma: pole at z = " + std::to_string(z.real()));
    if (z.real() < 0.5) {
        // psi(z) = psi(1-z) - pi cot(pi z); cot is meromorphic, no branch care.
        EvalResult r = digamma(1.0 - z);
        Complex pz = kPi * z;
        r.value -= kPi * std::cos(pz) / std::sin(pz);
        r.method = Method::recursion;
        return r;
    }
    Complex acc = 0.0;
    Complex w = z;
    while (std::abs(w) < 16.0) {
        acc -= 1.0 / w;
        w += 1.0;
    }
    // psi(w) ~ log w - 1/(2w) - sum B_2k / (2k w^2k)
    Complex w2 = w * w;
    Complex term = std::log(w) - 0.5 / w;
    Complex p = 1.0;
    KahanSumC tail;
    for (int k = 1; k <= 7; ++k) {
        p /= w2;
        tail.add(-bernoulli_2k(k).to_double() / (2.0 * k) * p);
    }
    double err = std::abs(bernoulli_2k(8).to_double() / 16.0 * std::pow(std::abs(w), -16.0));
    return {acc + term + tail.value(), err + 1e-15 * std::abs(acc), Method::asymptotic};
}

EvalResult trigamma(Complex z) {
    if (near_nonpositive_integer(z))
        throw PoleError("trigamma: pole at z = " + std::to_string(z.real()));
    if (z.real() < 0.5) {
        EvalResult r = trigamma(1.0 - z);
        Complex s = std::sin(kPi * z);
        r.value = kPi * kPi / (s * s) - r.value;
        r.method = Method::recursion;
        return r;
    }
    Complex acc = 0.0;
    Complex w = z;
    while (std::abs(w) < 16.0) {
        acc += 1.0 / (w * w);
        w += 1.0;
    }
    // psi'(w) ~ 1/w + 1/(2w^2) + sum B_2k / w^{2k+1}
    Complex w2 = w * w;
    Complex sum = 1.0 / w + 0.5 / w2;
    Complex p = 1.0 / w;
    KahanSumC tail;
    for (int k = 1; k <= 7; ++k) {
        p /= w2;
        tail.add(bernoulli_2k(k).to_double() * p);
    }
    double err = std::abs(bernoulli_2k(8).to_double()) * std::pow(std::abs(w), -17.0);
    return {acc + sum + tail.value(), err + 1e-15 * std::abs(acc), Method::asymptotic};
}

EvalResult log_barnes_g_product(Complex s, long long n_terms) {
    if (near_nonpositive_integer(s) && s.real() <= -0.5)
        throw ZeroError("log_barnes_g_product: G(s+1) vanishes at s = " + std::to_string(s.real()));
    if (n_terms < 1) throw DomainError("log_barnes_g_product: n_terms >= 1 required");
    KahanSumC sum;
    Complex s2 = s * s;
    Complex last = 0.0;
    for (long long n = 1; n <= n_terms; ++n) {
        double dn = double(n);
        Complex u = s / dn;
        if (std::abs(u) > 0.1) {
            last = dn * std::log(1.0 + u) - s + s2 / (2.0 * dn);
        } else {
            // n(log(1+u) - u + u^2/2) = n(u^3/3 - u^4/4 + ...); summing the
            // series directly keeps the absolute error at eps * |term|, where
            // the log(1+u) route loses n * eps.
            Complex pw = u * u * u;
            Complex acc = 0.0;
            for (int j = 3; j < 60; ++j) {
                Complex t = ((j % 2) ? 1.0 : -1.0) * pw / double(j);
                acc += t;
                if (std::abs(t) < 1e-18 * std::abs(acc)) break;
                pw *= u;
            }
            last = dn * acc;
        }
        sum.add(last);
    }
    Complex head = 0.5 * s * kLog2Pi - 0.5 * ((1.0 + euler_gamma) * s2 + s);
    // The series tail decays like |s|^3/(3n^2); |last| * n_terms is the
    // matching integral-comparison bound.
    double err = std::abs(last) * double(n_terms);
    return {head + sum.value(), err, Method::series};
}

EvalResult log_barnes_g_asymptotic(Complex s, int order) {
    if (s.real() <= 0.0)
        throw DomainError("log_barnes_g_asymptotic: requires Re(s) > 0");
    if (order < 0) throw DomainError("log_barnes_g_asymptotic: order >= 0 required");
    auto zc = zeta_derivative_constants();
    Complex ls = std::log(s);
    Complex v = 0.5 * s * s * (ls - 1.5) - ls / 12.0 - s * zc.zeta_prime_0 + zc.zeta_prime_minus1;
    Complex s2 = s * s;
    Complex p = 1.0;
    KahanSumC corr;
    for (int k = 1; k <= order; ++k) {
        p /= s2;
        corr.add(bernoulli_even(k).to_double() / (4.0 * k * (k + 1.0)) * p);
    }
    v += corr.value();
    int k1 = order + 1;
    double err = std::abs(bernoulli_even(k1).to_double()) /
                 (4.0 * k1 * (k1 + 1.0) * std::pow(std::abs(s), 2.0 * k1));
    return {v, err, Method::asymptotic};
}

EvalResult log_barnes_g(Complex s) {
    if (near_nonpositive_integer(s) && s.real() <= -0.5)
        throw ZeroError("log_barnes_g: G(s+1) vanishes at s = " + std::to_string(s.real()));
    // f(s) := log G(s+1) satisfies f(s) = f(s+n) - sum_{k=1}^{n} log Gamma(s+k).
    Complex acc = 0.0;
    Complex w = s;
    int shifts = 0;
    while (w.real() < 12.0 || std::abs(w) < 12.0) {
        acc += log_gamma(w + 1.0).value;
        w += 1.0;
        if (++shifts > 300) throw DomainError("log_barnes_g: argument too far left");
    }
    EvalResult tail = log_barnes_g_asymptotic(w, 6);
    return {tail.value - acc, tail.abs_err_estimate + 1e-13 * std::max(1.0, std::abs(acc)),
            shifts > 0 ? Method::recursion : Method::asymptotic};
}

ZetaDerivatives zeta_derivative_constants() {
    // zeta'(0) = -log sqrt(2 pi); zeta'(-1) = 1/12 - log A with A the
    // Glaisher constant.  Both classical values, pinned to 17 digits.
    return {-0.5 * std::log(2.0 * kPi), -0.16542114370045093};
}

namespace {

// All Bernoulli numbers B_0..B_n via sum_{j<=n} C(n+1,j) B_j = 0, exact.
const std::vector<Rational>& bernoulli_table() {
    static std::vector<Rational> table;
    static std::once_flag once;
    std::call_once(once, [] {
        const int n_max = 34;
        table.resize(n_max + 1);
        table[0] = Rational(1);
        for (int n = 1; n <= n_max; ++n) {
            if (n > 1 && n % 2 == 1) {
                table[n] = Rational(0);
                continue;
            }
            Rational sum(0);
            Rational binom(1);  // C(n+1, j) built incrementally
            for (int j = 0; j < n; ++j) {
                sum += binom * table[j];
                binom = binom * Rational(n + 1 - j, j + 1);
            }
            table[n] = -sum / Rational(n + 1);
        }
    });
    return table;
}

}  // namespace

Rational bernoulli_even(int k) {
    if (k < 1) throw DomainError("bernoulli_even: k >= 1 required");
    int idx = 2 * k + 2;
    const auto& t = bernoulli_table();
    if (idx >= int(t.size())) throw DomainError("bernoulli_even: index beyond exact 64-bit range");
    return t[idx];
}

Rational bernoulli_2k(int k) {
    if (k < 1) throw DomainError("bernoulli_2k: k >= 1 required");
    int idx = 2 * k;
    const auto& t = bernoulli_table();
    if (idx >= int(t.size())) throw DomainError("bernoulli_2k: index beyond exact 64-bit range");
    return t[idx];
}

}  // namespace orbizeta::specfun
