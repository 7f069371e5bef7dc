#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace orbizeta {

using Complex = std::complex<double>;

enum class Method { series, asymptotic, recursion, quadrature };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::series: return "series";
        case Method::asymptotic: return "asymptotic";
        case Method::recursion: return "recursion";
        case Method::quadrature: return "quadrature";
    }
    return "?";
}

// Value + a priori error estimate + how it was obtained.
struct EvalResult {
    Complex value{};
    double abs_err_estimate = 0.0;
    Method method = Method::series;
};

struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};
struct ZeroError : std::domain_error {
    explicit ZeroError(const std::string& what) : std::domain_error(what) {}
};
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};
struct NonHyperbolicError : std::domain_error {
    explicit NonHyperbolicError(const std::string& what) : std::domain_error(what) {}
};
struct NonRealError : std::runtime_error {
    explicit NonRealError(const std::string& what) : std::runtime_error(what) {}
};
struct IndexError : std::out_of_range {
    explicit IndexError(const std::string& what) : std::out_of_range(what) {}
};
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};
struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};
struct TailError : std::runtime_error {
    explicit TailError(const std::string& what) : std::runtime_error(what) {}
};
struct FitError : std::runtime_error {
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};
struct AuditFailure : std::runtime_error {
    explicit AuditFailure(const std::string& what) : std::runtime_error(what) {}
};
struct EmptySpectrumError : std::runtime_error {
    explicit EmptySpectrumError(const std::string& what) : std::runtime_error(what) {}
};
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Compensated (Kahan) accumulator for long series near cancellation.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

class KahanSumC {
public:
    void add(Complex z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

}  // namespace orbizeta
