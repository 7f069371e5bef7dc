// Test-only oracles, independent of the library's production paths.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "orbizeta/eval.hpp"
#include "orbizeta/rational.hpp"

namespace oracles {

using orbizeta::Complex;
using orbizeta::Rational;

inline constexpr double kPi = 3.14159265358979323846;

// Euler gamma through H_N - log N with the Euler-Maclaurin tail.
inline double euler_gamma_harmonic(long long N = 20000) {
    double h = 0.0;
    for (long long k = N; k >= 1; --k) h += 1.0 / double(k);
    return h - std::log(double(N)) - 0.5 / N + 1.0 / (12.0 * double(N) * double(N));
}

// Dual numbers give exact s-derivatives of the Euler-Maclaurin zeta formula.
struct Dual {
    double v, d;
    Dual(double value = 0, double deriv = 0) : v(value), d(deriv) {}
    friend Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
    friend Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
    friend Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
    friend Dual operator/(Dual a, Dual b) {
        return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
    }
};
inline Dual pow_dual(double base, Dual e) {
    // base^e = exp(e log base)
    double p = std::pow(base, e.v);
    return {p, p * std::log(base) * e.d};
}

// zeta(s) and zeta'(s) for real s via Euler-Maclaurin with J correction terms.
inline Dual zeta_em(Dual s, int N = 60, int J = 8) {
    Dual sum(0, 0);
    for (int n = 1; n < N; ++n) sum = sum + pow_dual(n, Dual(-s.v, -s.d));
    Dual Npow = pow_dual(N, Dual(1 - s.v, -s.d));
    sum = sum + Npow / (s - Dual(1, 0));
    sum = sum + pow_dual(N, Dual(-s.v, -s.d)) * Dual(0.5, 0);
    // + sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) N^{-s-2j+1}
    static const double b2j_over_fact[] = {0,
                                           1.0 / 12,
                                           -1.0 / 720,
                                           1.0 / 30240,
                                           -1.0 / 1209600,
                                           1.0 / 47900160,
                                           -691.0 / 1307674368000.0,
                                           1.0 / 74724249600.0,
                                           -3617.0 / 10670622842880000.0};
    for (int j = 1; j <= J; ++j) {
        Dual poch(1, 0);
        for (int i = 0; i <= 2 * j - 2; ++i) poch = poch * (s + Dual(i, 0));
        sum = sum + Dual(b2j_over_fact[j], 0) * poch * pow_dual(N, Dual(-s.v - 2 * j + 1, -s.d));
    }
    return sum;
}

inline double zeta_prime(double s) { return zeta_em(Dual(s, 1)).d; }

// psi'(z) by direct summation with an Euler-Maclaurin tail after K terms.
inline double trigamma_series(double z, long long K = 1000000) {
    double sum = 0.0;
    for (long long k = K - 1; k >= 0; --k) {
        double t = z + double(k);
        sum += 1.0 / (t * t);
    }
    double T = z + double(K);
    sum += 1.0 / T + 1.0 / (2.0 * T * T) + 1.0 / (6.0 * T * T * T);
    return sum;
}

// Bernoulli numbers by the Akiyama-Tanigawa algorithm, exact.
inline Rational bernoulli_akiyama_tanigawa(int n) {
    std::vector<Rational> a(n + 1);
    for (int m = 0; m <= n; ++m) {
        a[m] = Rational(1, m + 1);
        for (int j = m; j >= 1; --j) a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
    }
    Rational b = a[0];  // Akiyama-Tanigawa yields B_n with B_1 = +1/2
    if (n == 1) b = -b;
    return b;
}

// Composite Simpson, an integration path separate from the library's G7-K15.
template <typename F>
double simpson(F&& f, double a, double b, int n_half = 4000) {
    double h = (b - a) / (2.0 * n_half);
    double sum = f(a) + f(b);
    for (int i = 1; i < 2 * n_half; ++i) sum += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return sum * h / 3.0;
}

template <typename F>
Complex simpson_c(F&& f, double a, double b, int n_half = 4000) {
    double h = (b - a) / (2.0 * n_half);
    Complex sum = f(a) + f(b);
    for (int i = 1; i < 2 * n_half; ++i) sum += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace oracles
