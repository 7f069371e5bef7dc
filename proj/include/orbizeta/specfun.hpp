#pragma once

#include "orbizeta/eval.hpp"
#include "orbizeta/rational.hpp"

namespace orbizeta::specfun {

inline constexpr double euler_gamma = 0.57721566490153286061;

// Principal-branch log Gamma.  Lanczos on Re(z) >= 1/2, downward recursion
// otherwise; throws PoleError at non-positive integers.
EvalResult log_gamma(Complex z);

// psi(z) = Gamma'/Gamma(z).  Reflection for Re(z) < 1/2, recursion shift into
// the asymptotic region otherwise.
EvalResult digamma(Complex z);

// psi'(z) = sum_{k>=0} (z+k)^{-2}.
EvalResult trigamma(Complex z);

// log G(s+1) from the defining Weierstrass-type product, truncated after
// n_terms factors.  Converges like |s|^3/(3n); test oracle, not the fast path.
EvalResult log_barnes_g_product(Complex s, long long n_terms);

// log G(s+1) from the large-s expansion
//   (s^2/2)(log s - 3/2) - (log s)/12 - s zeta'(0) + zeta'(-1)
//     + sum_{k=1}^{order} B_{2k+2} / (4k(k+1) s^{2k}).
// Requires Re(s) > 0; documented validity |s| >= 5.  The reported error is the
// first omitted term, the usual proxy for an asymptotic series.
EvalResult log_barnes_g_asymptotic(Complex s, int order);

// log G(s+1) for general s: shift upward through G(s+1) = Gamma(s) G(s) until
// the asymptotic region, accumulating log Gamma increments so the branch stays
// continuous along the shift.
EvalResult log_barnes_g(Complex s);

struct ZetaDerivatives {
    double zeta_prime_0;        // -log sqrt(2 pi)
    double zeta_prime_minus1;   // 1/12 - log A (Glaisher)
};
ZetaDerivatives zeta_derivative_constants();

// B_{2k+2} as an exact rational, k >= 1 (so bernoulli_even(1) = B_4 = -1/30).
// Supported through B_34; larger indices overflow 64-bit numerators.
Rational bernoulli_even(int k);

// B_{2k} for internal asymptotic series (k >= 1).
Rational bernoulli_2k(int k);

}  // namespace orbizeta::specfun
