#include "orbizeta/zetafactors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "orbizeta/specfun.hpp"

namespace orbizeta::zetafactors {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2Pi = 1.8378770664093454836;

using orbifold::c_rho;
using orbifold::euler_characteristic;

Complex named_log_gamma(Complex z, const std::string& factor) {
    try {
        return specfun::log_gamma(z).value;
    } catch (const PoleError&) {
        throw PoleError("pole of " + factor);
    }
}

Complex named_log_barnes(Complex z, const std::string& factor) {
    try {
        return specfun::log_barnes_g(z).value;
    } catch (const ZeroError&) {
        throw PoleError("zero of " + factor);
    }
}

// sum_j (log nu_j / 2 nu_j) sum_k Tr(rho(gamma_j)^k) e^{i pi k m/nu_j} / sin^2(pi k/nu_j).
// The combination Tr * e^{i pi k m/nu} is m-free for integer angle data.
double torsion_elliptic_sum(const OrbifoldSignature& sig, const RepresentationData& rep) {
    Complex total = 0.0;
    for (int j = 0; j < sig.num_elliptic_classes(); ++j) {
        int nu = sig.elliptic_orders()[j];
        Complex inner = 0.0;
        for (int k = 1; k < nu; ++k) {
            double sn = std::sin(kPi * k / nu);
            inner += orbifold::trace_power_phase(sig, rep, j, k) / (sn * sn);
        }
        total += std::log(double(nu)) / (2.0 * nu) * inner;
    }
    if (std::abs(total.imag()) > 1e-9)
        throw NonRealError("torsion elliptic sum has imaginary residue " +
                           std::to_string(total.imag()));
    return total.real();
}

std::vector<Complex> record_eigenvalues(const geodesics::GeodesicRecord& rec,
                                        const RepresentationData& rep) {
    if (rep.geodesic_eigen_policy() == orbifold::GeodesicEigenPolicy::trivial)
        return std::vector<Complex>(rep.dim(), Complex(1.0, 0.0));
    if (int(rec.rho_eigenvalues.size()) != rep.dim())
        throw InvariantViolation("spectrum record lacks the dim rho eigenvalues required "
                                 "by the from_file policy");
    return rec.rho_eigenvalues;
}

Complex record_trace(const geodesics::GeodesicRecord& rec, const RepresentationData& rep) {
    Complex tr = 0.0;
    for (const Complex& lam : record_eigenvalues(rec, rep))
        tr += std::pow(lam, double(rec.n_gamma));
    return tr;
}

}  // namespace

EvalResult log_z_identity(Complex s, const OrbifoldSignature& sig,
                          const RepresentationData& rep) {
    double m = rep.m_value();
    double cr = c_rho(sig, rep);
    Complex sp = s + m / 2.0, sm = s - m / 2.0;
    Complex v = s * kLog2Pi + s * (1.0 - s);
    v += 0.5 * (1.0 + m) * named_log_gamma(sp, "Gamma(s+m/2)");
    v += 0.5 * (1.0 - m) * named_log_gamma(sm, "Gamma(s-m/2)");
    v -= named_log_barnes(sp, "G(s+m/2+1)");
    v -= named_log_barnes(sm, "G(s-m/2+1)");
    return {2.0 * cr * v, 1e-11 * std::max(1.0, std::abs(v)), Method::series};
}

EvalResult log_z_identity_cyclic(Complex s, const OrbifoldSignature& sig,
                                 const RepresentationData& rep) {
    if (rep.m() != Rational(0))
        throw DomainError("log_z_identity_cyclic: requires m = 0");
    double cr = c_rho(sig, rep);
    Complex v = s * kLog2Pi + s * (1.0 - s) + named_log_gamma(s, "Gamma(s)") -
                2.0 * named_log_barnes(s, "G(s+1)");
    return {2.0 * cr * v, 1e-11 * std::max(1.0, std::abs(v)), Method::series};
}

EvalResult log_z_elliptic(Complex s, const OrbifoldSignature& sig,
                          const RepresentationData& rep) {
    double m = rep.m_value();
    KahanSumC sum;
    for (int j = 0; j < sig.num_elliptic_classes(); ++j) {
        int nu = sig.elliptic_orders()[j];
        for (int l = 0; l < nu; ++l) {
            auto cm = orbifold::c_m_coeffs(sig, rep, j, l);
            sum.add(cm.c_m.to_double() *
                    named_log_gamma((s - m / 2.0 + double(l)) / double(nu),
                                    "Gamma((s-m/2+l)/nu)"));
            sum.add(cm.c_m_tilde.to_double() *
                    named_log_gamma((s + m / 2.0 + double(l)) / double(nu),
                                    "Gamma((s+m/2+l)/nu)"));
        }
    }
    Complex v = sum.value();
    return {v, 1e-12 * std::max(1.0, std::abs(v)), Method::series};
}

EvalResult log_z_elliptic_zero(Complex s, const OrbifoldSignature& sig,
                               const RepresentationData& rep) {
    double m = rep.m_value();
    int n = rep.dim();
    KahanSumC sum;
    for (int j = 0; j < sig.num_elliptic_classes(); ++j) {
        int nu = sig.elliptic_orders()[j];
        double w = n * (1.0 - 1.0 / nu);
        sum.add(w * std::log(double(nu)) * s);
        sum.add(-0.5 * w *
                (named_log_gamma(s - m / 2.0, "Gamma(s-m/2)") +
                 named_log_gamma(s + m / 2.0, "Gamma(s+m/2)")));
        for (int l = 0; l < nu; ++l) {
            auto [alpha, alpha_tilde] = orbifold::alpha_coeffs(sig, rep, j, l);
            sum.add(double(alpha) / nu *
                    named_log_gamma((s - m / 2.0 + double(l)) / double(nu),
                                    "Gamma((s-m/2+l)/nu)"));
            sum.add(double(alpha_tilde) / nu *
                    named_log_gamma((s + m / 2.0 + double(l)) / double(nu),
                                    "Gamma((s+m/2+l)/nu)"));
        }
    }
    Complex v = sum.value();
    return {v, 1e-12 * std::max(1.0, std::abs(v)), Method::series};
}

double torsion_factor(const OrbifoldSignature& sig, const RepresentationData& rep) {
    auto zc = specfun::zeta_derivative_constants();
    double topological = rep.dim() * euler_characteristic(sig).to_double() *
                         (2.0 * zc.zeta_prime_minus1 + zc.zeta_prime_0);
    return topological + torsion_elliptic_sum(sig, rep);
}

double det_constant(const OrbifoldSignature& sig, const RepresentationData& rep) {
    auto zc = specfun::zeta_derivative_constants();
    double cr = c_rho(sig, rep);
    double topological = 2.0 * cr * (2.0 * zc.zeta_prime_minus1 + zc.zeta_prime_0) - 0.5 * cr;
    return topological + torsion_elliptic_sum(sig, rep);
}

RepresentationData yamaguchi_rep(const OrbifoldSignature& sig, int N) {
    if (N < 1) throw DomainError("yamaguchi_rep: N >= 1 required");
    std::vector<std::vector<int>> angles;
    for (int nu : sig.elliptic_orders()) {
        std::vector<int> a;
        for (int p = -(N - 1); p <= N; ++p) {
            int r = (-p) % nu;
            a.push_back(r < 0 ? r + nu : r);
        }
        angles.push_back(std::move(a));
    }
    return RepresentationData(sig, 2 * N, Rational(1), std::move(angles));
}

double yamaguchi_torsion_closed_form(const OrbifoldSignature& sig, int N) {
    if (N < 1) throw DomainError("yamaguchi_torsion_closed_form: N >= 1 required");
    auto zc = specfun::zeta_derivative_constants();
    double c = 2.0 * N * euler_characteristic(sig).to_double() *
               (2.0 * zc.zeta_prime_minus1 + zc.zeta_prime_0);
    for (int nu : sig.elliptic_orders()) {
        long long floor2N = 2LL * N / nu;
        long long rjN = 2LL * N - nu * floor2N;  // 2N mod nu
        long long base = N - nu * floor2N;
        std::set<long long> A;
        for (long long q = 0; q < rjN; ++q) {
            long long r = (base - q) % nu;
            A.insert(r < 0 ? r + nu : r);
        }
        Rational inner(0);
        for (long long r : A) inner += Rational(1LL * nu * nu - 6 * nu * r + 6 * r * r - 1, 3);
        c += std::log(double(nu)) / (2.0 * nu) * inner.to_double();
    }
    return c;
}

double torsion_limit_value(const OrbifoldSignature& sig) {
    auto zc = specfun::zeta_derivative_constants();
    return euler_characteristic(sig).to_double() * (2.0 * zc.zeta_prime_minus1 + zc.zeta_prime_0);
}

std::vector<std::pair<int, double>> torsion_limit_table(const OrbifoldSignature& sig,
                                                        const std::vector<int>& N_list) {
    std::vector<std::pair<int, double>> table;
    for (int N : N_list)
        table.emplace_back(N, yamaguchi_torsion_closed_form(sig, N) / (2.0 * N));
    return table;
}

double sigma_conv(const LengthSpectrum& spectrum, const RepresentationData& rep) {
    double c = 0.0;
    if (rep.geodesic_eigen_policy() == orbifold::GeodesicEigenPolicy::from_file) {
        for (const auto& rec : spectrum.records) {
            double tr = std::abs(record_trace(rec, rep));
            if (tr > rep.dim())
                c = std::max(c, std::log(tr / rep.dim()) / rec.length);
        }
    }
    return 1.0 + c + 0.1;
}

EvalResult log_selberg_zeta(Complex s, const LengthSpectrum& spectrum,
                            const RepresentationData& rep, int k_max) {
    double sc = sigma_conv(spectrum, rep);
    if (s.real() <= sc)
        throw ConvergenceError("log_selberg_zeta: Re(s) = " + std::to_string(s.real()) +
                               " <= sigma_conv = " + std::to_string(sc));
    KahanSumC sum;
    double k_tail = 0.0;
    for (const auto& rec : spectrum.records) {
        if (rec.n_gamma != 1) continue;  // Euler product runs over primes
        double l0 = rec.primitive_length;
        auto eig = record_eigenvalues(rec, rep);
        for (int k = 0; k <= k_max; ++k) {
            Complex q = std::exp(-(s + double(k)) * l0);
            double qn = std::abs(q);
            if (qn < 1e-18) {
                k_tail += rec.class_count * rep.dim() * qn / (1.0 - std::exp(-l0));
                break;
            }
            Complex term = 0.0;
            for (const Complex& lam : eig) term += std::log(1.0 - lam * q);
            sum.add(double(rec.class_count) * term);
            if (k == k_max)
                k_tail += rec.class_count * rep.dim() * qn * std::exp(-l0) /
                          (1.0 - std::exp(-l0));
        }
    }
    // Geometric tail for classes beyond l_max: counting grows like e^L/L, the
    // trace bound contributes e^{cL}, each class weighs <= dim e^{-sigma L}/(1-e^{-L}).
    double tail = 0.0;
    if (spectrum.l_max > 0.0) {
        double c = sc - 1.1;
        double sigma = s.real();
        double L = spectrum.l_max;
        double rate = sigma - 1.0 - c;
        tail = rep.dim() * std::exp(-rate * L) / (rate * L * (1.0 - std::exp(-L)));
    }
    return {sum.value(), k_tail + tail, Method::series};
}

Complex l_function(Complex s, const LengthSpectrum& spectrum, const RepresentationData& rep) {
    KahanSumC sum;
    for (const auto& rec : spectrum.records) {
        Complex tr = record_trace(rec, rep);
        double l = rec.length;
        sum.add(double(rec.class_count) * rec.primitive_length * tr *
                std::exp(-(s - 0.5) * l) / (2.0 * std::sinh(l / 2.0)));
    }
    return sum.value();
}

DeterminantBreakdown log_det(Complex s, const OrbifoldSignature& sig,
                             const RepresentationData& rep, const LengthSpectrum& spectrum,
                             int k_max) {
    DeterminantBreakdown out;
    EvalResult z = log_selberg_zeta(s, spectrum, rep, k_max);
    out.log_z = z.value;
    out.truncation_tail_bound = z.abs_err_estimate;
    out.log_z_identity = log_z_identity(s, sig, rep).value;
    out.log_z_elliptic = log_z_elliptic(s, sig, rep).value;
    out.torsion_factor = det_constant(sig, rep);
    out.log_det = out.log_z + out.log_z_identity + out.log_z_elliptic + out.torsion_factor;
    return out;
}

double central_derivative(const std::function<double(double)>& f, double x, int order, double h,
                          int levels) {
    if (order < 0 || levels < 1) throw DomainError("central_derivative: bad parameters");
    if (order == 0) return f(x);
    auto stencil = [&](double step) {
        double sum = 0.0;
        double binom = 1.0;
        for (int i = 0; i <= order; ++i) {
            double sign = ((order - i) % 2 == 0) ? 1.0 : -1.0;
            sum += sign * binom * f(x + (i - order / 2.0) * step);
            binom = binom * double(order - i) / double(i + 1);
        }
        return sum / std::pow(step, order);
    };
    // Richardson in h^2.
    std::vector<double> row(levels);
    for (int i = 0; i < levels; ++i) row[i] = stencil(h / std::pow(2.0, i));
    for (int j = 1; j < levels; ++j) {
        double f4 = std::pow(4.0, j);
        for (int i = levels - 1; i >= j; --i) row[i] = (f4 * row[i] - row[i - 1]) / (f4 - 1.0);
    }
    return row[levels - 1];
}

DetAtOneResult det_at_one(const OrbifoldSignature& sig, const RepresentationData& rep,
                          const LengthSpectrum& spectrum, int m_rho, int k_max) {
    if (m_rho < 0) throw DomainError("det_at_one: m_rho >= 0 required");
    DetAtOneResult out;
    out.diagnostic_only = sigma_conv(spectrum, rep) >= 1.0;

    Complex fixed = log_z_identity(Complex(1.0, 0.0), sig, rep).value +
                    log_z_elliptic(Complex(1.0, 0.0), sig, rep).value +
                    det_constant(sig, rep);

    auto z_trunc = [&](double x) {
        KahanSumC sum;
        for (const auto& rec : spectrum.records) {
            if (rec.n_gamma != 1) continue;
            auto eig = record_eigenvalues(rec, rep);
            for (int k = 0; k <= k_max; ++k) {
                double q = std::exp(-(x + k) * rec.primitive_length);
                if (q < 1e-18) break;
                Complex term = 0.0;
                for (const Complex& lam : eig) term += std::log(1.0 - lam * q);
                sum.add(double(rec.class_count) * term);
            }
        }
        return sum.value();
    };

    if (m_rho == 0) {
        Complex v = std::exp(z_trunc(1.0) + fixed);
        out.result = {v, std::abs(v) * 1e-9, Method::series};
        return out;
    }
    auto z_real = [&](double x) { return std::exp(z_trunc(x)).real(); };
    double dz = central_derivative(z_real, 1.0, m_rho, 1e-3, 4);
    double fact = 1.0;
    for (int i = 2; i <= m_rho; ++i) fact *= i;
    Complex v = dz / fact * std::exp(fixed);
    // Error model: Richardson leaves O(h^8) truncation plus roundoff ~ eps/h^order.
    double err = std::abs(v) * 1e-7 + 1e-12 / std::pow(1e-3, m_rho);
    out.result = {v, err, Method::recursion};
    return out;
}

Complex predicted_multiplicity(const OrbifoldSignature& sig, const RepresentationData& rep, int n,
                               int sign) {
    if (n < 0) throw DomainError("predicted_multiplicity: n >= 0 required");
    if (sign != 1 && sign != -1) throw DomainError("predicted_multiplicity: sign must be +-1");
    double m = rep.m_value();
    double s = double(sign);
    Complex val = orbifold::volume(sig) * rep.dim() / (4.0 * kPi) * (s * m + 2.0 * n + 1.0);
    Complex ell = 0.0;
    for (const auto& cls : orbifold::elliptic_classes(sig, rep)) {
        ell += cls.trace / (2.0 * cls.order * std::sin(cls.theta)) *
               std::exp(Complex(0, 2.0 * s * cls.theta * (n + s * m / 2.0 + 0.5)));
    }
    return val + s * Complex(0, 1) * ell;
}

Complex elliptic_coefficient_sum(const OrbifoldSignature& sig, const RepresentationData& rep) {
    Complex sum = 0.0;
    for (const auto& cls : orbifold::elliptic_classes(sig, rep))
        sum += cls.trace / (4.0 * cls.order * std::sin(cls.theta));
    return sum;
}

}  // namespace orbizeta::zetafactors
