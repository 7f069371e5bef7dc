#include "orbizeta/orbifold.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace orbizeta::orbifold {

namespace {
constexpr double kPi = 3.14159265358979323846;

long long residue_mod(long long a, long long nu) {
    long long r = a % nu;
    return r < 0 ? r + nu : r;
}
}  // namespace

OrbifoldSignature::OrbifoldSignature(int genus, std::vector<int> elliptic_orders)
    : genus_(genus), orders_(std::move(elliptic_orders)) {
    if (genus_ < 0) throw DomainError("OrbifoldSignature: genus >= 0 required");
    for (int nu : orders_)
        if (nu < 2) throw DomainError("OrbifoldSignature: elliptic orders must be >= 2");
    Rational chi = euler_characteristic(*this);
    if (!(chi.to_double() < 0.0))
        throw NonHyperbolicError("OrbifoldSignature: chi(X) = " + chi.str() + " is not negative");
}

Rational euler_characteristic(const OrbifoldSignature& sig) {
    Rational chi(2 - 2LL * sig.genus());
    for (int nu : sig.elliptic_orders()) chi += Rational(1, nu) - Rational(1);
    return chi;
}

double volume(const OrbifoldSignature& sig) {
    return -2.0 * kPi * euler_characteristic(sig).to_double();
}

RepresentationData::RepresentationData(const OrbifoldSignature& sig, int dim, Rational m,
                                       std::vector<std::vector<int>> elliptic_angles,
                                       GeodesicEigenPolicy policy)
    : dim_(dim), m_(std::move(m)), angles_(std::move(elliptic_angles)), policy_(policy) {
    if (dim_ < 1) throw DomainError("RepresentationData: dim >= 1 required");
    double mv = m_.to_double();
    if (!(mv > -1.0 && mv <= 1.0))
        throw DomainError("RepresentationData: m = " + m_.str() + " outside (-1, 1]");
    if (int(angles_.size()) != sig.num_elliptic_classes())
        throw DomainError("RepresentationData: one angle list per elliptic class required");
    for (int j = 0; j < int(angles_.size()); ++j) {
        int nu = sig.elliptic_orders()[j];
        if (int(angles_[j].size()) != dim_)
            throw DomainError("RepresentationData: angle list " + std::to_string(j) +
                              " must have dim entries");
        for (int a : angles_[j])
            if (a < 0 || a >= nu)
                throw DomainError("RepresentationData: alpha out of {0,...,nu-1}");
        // rho(gamma_j)^{nu_j} = e^{-i pi m} Id, checked numerically.
        for (int a : angles_[j]) {
            Complex lam = std::exp(Complex(0, -2.0 * kPi * (mv / 2.0 + a) / nu));
            Complex pw = std::pow(lam, nu);
            Complex target = std::exp(Complex(0, -kPi * mv));
            if (std::abs(pw - target) > 1e-12)
                throw DomainError("RepresentationData: rho(gamma)^nu != e^{-i pi m} Id");
        }
    }
}

RepresentationData RepresentationData::trivial(const OrbifoldSignature& sig) {
    std::vector<std::vector<int>> angles(sig.num_elliptic_classes(), std::vector<int>{0});
    return RepresentationData(sig, 1, Rational(0), std::move(angles));
}

double c_rho(const OrbifoldSignature& sig, const RepresentationData& rep) {
    return rep.dim() * volume(sig) / (4.0 * kPi);
}

Rational c_rho_exact(const OrbifoldSignature& sig, const RepresentationData& rep) {
    return -Rational(rep.dim()) * euler_characteristic(sig) / Rational(2);
}

Complex trace_power(const OrbifoldSignature& sig, const RepresentationData& rep, int j, int k) {
    if (j < 0 || j >= sig.num_elliptic_classes())
        throw IndexError("trace_power: class index out of range");
    int nu = sig.elliptic_orders()[j];
    if (k < 1 || k > nu - 1) throw IndexError("trace_power: k must lie in 1..nu-1");
    double mv = rep.m_value();
    Complex sum = 0.0;
    for (int a : rep.angles(j))
        sum += std::exp(Complex(0, -2.0 * kPi * k * (mv / 2.0 + a) / nu));
    return sum;
}

Complex trace_power_phase(const OrbifoldSignature& sig, const RepresentationData& rep, int j,
                          int k) {
    if (j < 0 || j >= sig.num_elliptic_classes())
        throw IndexError("trace_power_phase: class index out of range");
    int nu = sig.elliptic_orders()[j];
    if (k < 1 || k > nu - 1) throw IndexError("trace_power_phase: k must lie in 1..nu-1");
    Complex sum = 0.0;
    for (int a : rep.angles(j)) sum += std::exp(Complex(0, -2.0 * kPi * k * a / nu));
    return sum;
}

std::pair<long long, long long> alpha_coeffs(const OrbifoldSignature& sig,
                                             const RepresentationData& rep, int j, int l) {
    if (j < 0 || j >= sig.num_elliptic_classes())
        throw IndexError("alpha_coeffs: class index out of range");
    int nu = sig.elliptic_orders()[j];
    if (l < 0 || l > nu - 1) throw IndexError("alpha_coeffs: l must lie in 0..nu-1");
    long long alpha = 0, alpha_tilde = 0;
    for (int a : rep.angles(j)) {
        alpha += residue_mod(a + l, nu);
        alpha_tilde += residue_mod(-a + l, nu);
    }
    return {alpha, alpha_tilde};
}

CmPair c_m_coeffs(const OrbifoldSignature& sig, const RepresentationData& rep, int j, int l) {
    int nu = sig.elliptic_orders()[j];
    auto [alpha, alpha_tilde] = alpha_coeffs(sig, rep, j, l);
    long long n = rep.dim();
    // alpha_j(l) = n(nu-1)/2 + nu C_m(j,l) pins the exact rational.
    Rational c_exact = Rational(2 * alpha - n * (nu - 1), 2LL * nu);
    Rational ct_exact = Rational(2 * alpha_tilde - n * (nu - 1), 2LL * nu);

    double mv = rep.m_value();
    Complex c = 0.0, ct = 0.0;
    for (int k = 1; k < nu; ++k) {
        Complex tr = trace_power(sig, rep, j, k);
        Complex w = tr * Complex(0, 1) * std::exp(Complex(0, kPi * k * mv / nu)) /
                    (2.0 * std::sin(kPi * k / nu));
        c += -w * std::exp(Complex(0, -kPi * k * (2 * l + 1) / nu)) / double(nu);
        ct += w * std::exp(Complex(0, kPi * k * (2 * l + 1) / nu)) / double(nu);
    }
    CmPair out;
    out.c_m = c_exact;
    out.c_m_tilde = ct_exact;
    out.c_m_sum = c;
    out.c_m_tilde_sum = ct;
    out.imag_residual = std::max(std::abs(c.imag()), std::abs(ct.imag()));
    out.float_deviation = std::max(std::abs(c.real() - c_exact.to_double()),
                                   std::abs(ct.real() - ct_exact.to_double()));
    if (out.imag_residual > 1e-10)
        throw NonRealError("c_m_coeffs: imaginary residue " + std::to_string(out.imag_residual));
    if (out.float_deviation > 1e-9)
        throw InvariantViolation("c_m_coeffs: trig sum disagrees with exact alpha relation");
    return out;
}

EllipticCoefficients elliptic_coefficients(const OrbifoldSignature& sig,
                                           const RepresentationData& rep) {
    EllipticCoefficients table;
    for (int j = 0; j < sig.num_elliptic_classes(); ++j) {
        int nu = sig.elliptic_orders()[j];
        Rational sum_plus(0), sum_minus(0);
        for (int l = 0; l < nu; ++l) {
            auto [alpha, alpha_tilde] = alpha_coeffs(sig, rep, j, l);
            CmPair cm = c_m_coeffs(sig, rep, j, l);
            table.entries.push_back({j, l, alpha, alpha_tilde, cm.c_m, cm.c_m_tilde});
            table.max_imag_residual = std::max(table.max_imag_residual, cm.imag_residual);
            table.max_float_deviation = std::max(table.max_float_deviation, cm.float_deviation);
            sum_plus += cm.c_m + cm.c_m_tilde;
            sum_minus += cm.c_m - cm.c_m_tilde;
        }
        if (sum_plus != Rational(0) || sum_minus != Rational(0))
            throw InvariantViolation("elliptic_coefficients: sum rule over l failed for class " +
                                     std::to_string(j));
    }
    return table;
}

std::vector<EllipticClass> elliptic_classes(const OrbifoldSignature& sig,
                                            const RepresentationData& rep) {
    std::vector<EllipticClass> out;
    for (int j = 0; j < sig.num_elliptic_classes(); ++j) {
        int nu = sig.elliptic_orders()[j];
        for (int l = 1; l < nu; ++l)
            out.push_back({j, l, nu, kPi * l / nu, trace_power(sig, rep, j, l)});
    }
    return out;
}

double central_root_of_unity_residual(const OrbifoldSignature& sig,
                                      const RepresentationData& rep) {
    long long N = 1;
    for (int nu : sig.elliptic_orders()) N = std::lcm(N, (long long)nu);
    Rational exponent = Rational(N) * Rational(rep.dim()) * euler_characteristic(sig);
    if (!exponent.is_integer()) return 1.0;  // cannot be a root-of-unity relation
    double mv = rep.m_value();
    Complex lam_pow = std::exp(Complex(0, -kPi * mv * exponent.to_double()));
    return std::abs(lam_pow - Complex(1.0, 0.0));
}

}  // namespace orbizeta::orbifold
