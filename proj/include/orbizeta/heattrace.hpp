#pragma once

#include "orbizeta/eval.hpp"
#include "orbizeta/geodesics.hpp"
#include "orbizeta/orbifold.hpp"
#include "orbizeta/quadrature.hpp"

namespace orbizeta::heattrace {

using orbifold::OrbifoldSignature;
using orbifold::RepresentationData;
using geodesics::LengthSpectrum;
using quadrature::QuadratureSpec;

// lambda * f(m, lambda) with f(m,l) = 4(1 + e^{2 pi l} cos pi m) /
// (e^{4 pi l} + 2 e^{2 pi l} cos pi m + 1); cancellation-free at m = 1 where
// it degenerates to -4 lambda / (e^{2 pi lambda} - 1).
double lambda_f(double m, double lambda);

// [cosh(2(pi-theta)l) + e^{i pi m} cosh(2 theta l)] / (cosh 2 pi l + cos pi m),
// evaluated in scaled exponentials; sinh form at m = 1.
Complex elliptic_ratio(double m, double theta, double lambda);

// Identity contribution I(t) of the trace formula; the discrete odd-ell sum is
// structurally present but empty for m in (-1, 1].
double identity_term(double t, const OrbifoldSignature& sig, const RepresentationData& rep,
                     const QuadratureSpec& spec);

// I(t) - C_rho/t = -C_rho int_0^inf e^{-t l^2} lambda f(m,l) dl, the form the
// regularized integrals consume (no 1/t cancellation).
double identity_term_subtracted(double t, const OrbifoldSignature& sig,
                                const RepresentationData& rep, const QuadratureSpec& spec);

Complex elliptic_term(double t, const OrbifoldSignature& sig, const RepresentationData& rep,
                      const QuadratureSpec& spec);

double hyperbolic_term(double t, const LengthSpectrum& spectrum, const RepresentationData& rep);

// Tr(e^{-t A}) with A = Delta - 1/4: identity + hyperbolic + elliptic.
Complex theta_geometric(double t, const OrbifoldSignature& sig, const RepresentationData& rep,
                        const LengthSpectrum& spectrum, const QuadratureSpec& spec);

// (alpha_0, alpha_1) from a least-squares fit of t*(I(t)+E(t)) against a
// polynomial in t on a small-t log grid.
std::pair<double, double> alpha_coefficients(const OrbifoldSignature& sig,
                                             const RepresentationData& rep,
                                             const QuadratureSpec& spec);

// alpha_1 read off analytically: -C_rho int lambda f + elliptic t^0 moment.
double alpha1_analytic(const OrbifoldSignature& sig, const RepresentationData& rep,
                       const QuadratureSpec& spec);

// Both sides of log(s-1/2)^2 + int_0^inf lambda f/(lambda^2+(s-1/2)^2) dlambda
//   = psi(s+m/2) + psi(s-m/2).
std::pair<double, double> identity_digamma_check(double s, double m, const QuadratureSpec& spec);

struct EllipticIdentitySides {
    Complex integral_side;    // quadrature of the continued elliptic transform
    Complex series_side;      // Hejhal-type sum, digamma-accelerated
    Complex zell0_derivative; // (1/(2s-1)) d/ds log Z_ell,0 by central differences
    Complex m1_boundary;      // i S_ell/(s-1/2)^2 at m=1, else 0:
                              // integral_side + m1_boundary = series_side identically
};
EllipticIdentitySides elliptic_series_check(double s, const OrbifoldSignature& sig,
                                            const RepresentationData& rep,
                                            const QuadratureSpec& spec);

// -log det(Delta + s(s-1)) through the subtraction scheme
//   int_0^inf e^{-t(s-1/2)^2} (Theta(t) - a0/t - a1) dt/t
//     + 2 a0 (s-1/2)^2 log(s-1/2) - a0 (s-1/2)^2 - 2 a1 log(s-1/2),
// entirely independent of the closed-form factor route.
EvalResult lm_log_det_numeric(double s, const OrbifoldSignature& sig,
                              const RepresentationData& rep, const LengthSpectrum& spectrum,
                              const QuadratureSpec& spec);

}  // namespace orbizeta::heattrace
