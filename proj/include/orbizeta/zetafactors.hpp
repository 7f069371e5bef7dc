#pragma once

#include <functional>
#include <vector>

#include "orbizeta/eval.hpp"
#include "orbizeta/geodesics.hpp"
#include "orbizeta/orbifold.hpp"

namespace orbizeta::zetafactors {

using orbifold::OrbifoldSignature;
using orbifold::RepresentationData;
using geodesics::LengthSpectrum;

// log Z_I(s;rho) = 2 C_rho(X) [ s log 2pi + s(1-s)
//   + ((1+m)/2) log Gamma(s+m/2) + ((1-m)/2) log Gamma(s-m/2)
//   - log G(s+m/2+1) - log G(s-m/2+1) ].
EvalResult log_z_identity(Complex s, const OrbifoldSignature& sig, const RepresentationData& rep);

// The m=0 specialization written as its own closed form,
// 2 C_rho [ s log 2pi + s(1-s) + log Gamma(s) - 2 log G(s+1) ];
// kept as an independent code path for the collapse checks.
EvalResult log_z_identity_cyclic(Complex s, const OrbifoldSignature& sig,
                                 const RepresentationData& rep);

// log Z_ell(s;rho) = sum_{j,l} [ C_m(j,l) log Gamma((s-m/2+l)/nu_j)
//                              + C~_m(j,l) log Gamma((s+m/2+l)/nu_j) ].
EvalResult log_z_elliptic(Complex s, const OrbifoldSignature& sig, const RepresentationData& rep);

// log Z_ell,0(s;rho): the alpha-exponent variant; differs from log Z_ell by
// the s-independent constant sum_j (dim (nu_j-1)/(2 nu_j)) log((2pi)^{nu_j-1} nu_j).
EvalResult log_z_elliptic_zero(Complex s, const OrbifoldSignature& sig,
                               const RepresentationData& rep);

// Torsion factor,
//   dim chi(X) (2 zeta'(-1) - log sqrt(2pi))
//     + sum_j (log nu_j / 2 nu_j) sum_k Tr(rho(gamma_j)^k) e^{i pi k m/nu_j} / sin^2(pi k/nu_j).
double torsion_factor(const OrbifoldSignature& sig, const RepresentationData& rep);

// The constant that actually closes det = Z * Z_I * Z_ell * e^C: same elliptic
// sum, topological part 2 C_rho (2 zeta'(-1) - log sqrt(2pi)) - C_rho/2.  Pinned
// against the independent Laplace-Mellin quadrature route in the tests.
double det_constant(const OrbifoldSignature& sig, const RepresentationData& rep);

// The 2N-dimensional m=1 family: angles are the residues of -p mod nu_j for
// p = -(N-1)..N, so that Tr(rho(gamma_j)^k) e^{i pi k/nu_j} = sum_p e^{2 pi i p k/nu_j}.
RepresentationData yamaguchi_rep(const OrbifoldSignature& sig, int N);

// Closed form 2N chi (2 zeta'(-1) - log sqrt(2pi))
//   + sum_j (log nu_j / 2 nu_j) sum_{r in A_j(N)} (nu_j^2 - 6 nu_j r + 6 r^2 - 1)/3.
double yamaguchi_torsion_closed_form(const OrbifoldSignature& sig, int N);

// (N, C~/2N) rows; converges to chi (2 zeta'(-1) - log sqrt(2pi)).
std::vector<std::pair<int, double>> torsion_limit_table(const OrbifoldSignature& sig,
                                                        const std::vector<int>& N_list);
double torsion_limit_value(const OrbifoldSignature& sig);

// Convergence abscissa estimate 1 + c + 0.1 with c fitted from the trace data.
double sigma_conv(const LengthSpectrum& spectrum, const RepresentationData& rep);

// Truncated log Z(s;rho) = sum over primitive records, k <= k_max, of
// sum_p log(1 - lambda_p e^{-(s+k) l0}); abs_err_estimate carries the k-tail
// plus the geometric bound for lengths beyond l_max.
EvalResult log_selberg_zeta(Complex s, const LengthSpectrum& spectrum,
                            const RepresentationData& rep, int k_max);

// L(s;rho) = sum over all records of l0 Tr(rho(gamma)) e^{-(s-1/2)l} / (2 sinh(l/2)).
Complex l_function(Complex s, const LengthSpectrum& spectrum, const RepresentationData& rep);

struct DeterminantBreakdown {
    Complex log_z{};
    Complex log_z_identity{};
    Complex log_z_elliptic{};
    double torsion_factor = 0.0;   // det_constant, the constant used in assembly
    Complex log_det{};             // sum of the four parts, exactly
    double truncation_tail_bound = 0.0;
};

DeterminantBreakdown log_det(Complex s, const OrbifoldSignature& sig,
                             const RepresentationData& rep, const LengthSpectrum& spectrum,
                             int k_max = 64);

struct DetAtOneResult {
    EvalResult result;
    bool diagnostic_only = false;  // zeta truncation not trusted at s=1
};

// det at s=1: the plain product for M_rho = 0, otherwise
// (1/M_rho!) d^{M_rho}Z/ds^{M_rho}(1) * Z_I(1) Z_ell(1) e^C via Richardson
// central differences (h = 1e-3, four levels).
DetAtOneResult det_at_one(const OrbifoldSignature& sig, const RepresentationData& rep,
                          const LengthSpectrum& spectrum, int m_rho, int k_max = 64);

// N_pm(m,n) from the meromorphic-continuation theorem; reported raw, with
// integrality left to the caller as a diagnostic.
Complex predicted_multiplicity(const OrbifoldSignature& sig, const RepresentationData& rep, int n,
                               int sign);

// sum over elliptic classes of Tr rho(gamma) / (4 M(gamma) sin theta(gamma));
// the m=1 boundary term of the elliptic identity is i/(s-1/2)^2 times this.
Complex elliptic_coefficient_sum(const OrbifoldSignature& sig, const RepresentationData& rep);

// M-th derivative by central differences with Richardson extrapolation.
double central_derivative(const std::function<double(double)>& f, double x, int order, double h,
                          int levels);

}  // namespace orbizeta::zetafactors
