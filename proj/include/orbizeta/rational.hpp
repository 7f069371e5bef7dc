#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace orbizeta {

// Exact rational arithmetic on 128-bit integers.  Used for the Euler
// characteristic, Bernoulli numbers and the elliptic C_m coefficients,
// all of which the formulas require to be exact rationals.
class Rational {
public:
    using Int = __int128;

    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(Int n, Int d) : num_(n), den_(d) { normalize(); }

    Int num() const { return num_; }
    Int den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return Rational(-num_, den_, tag{}); }

    Rational operator+(const Rational& o) const {
        return Rational(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                        checked_mul(den_, o.den_));
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator*(const Rational& o) const {
        return Rational(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(checked_mul(num_, o.den_), checked_mul(den_, o.num_));
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool is_integer() const { return den_ == 1; }

    std::string str() const {
        std::string s = int_str(num_);
        if (den_ != 1) s += "/" + int_str(den_);
        return s;
    }

    // Parses "p", "-p", "p/q".
    static Rational parse(const std::string& text) {
        auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(text), 1LL);
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    }

private:
    struct tag {};
    Rational(Int n, Int d, tag) : num_(n), den_(d) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        Int g = gcd128(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    static Int gcd128(Int a, Int b) {
        while (b != 0) { Int t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    static Int checked_add(Int a, Int b) {
        Int r = a + b;
        if ((b > 0 && r < a) || (b < 0 && r > a)) throw std::overflow_error("Rational: add overflow");
        return r;
    }
    static Int checked_mul(Int a, Int b) {
        if (a == 0 || b == 0) return 0;
        Int r = a * b;
        if (r / b != a) throw std::overflow_error("Rational: mul overflow");
        return r;
    }

    static std::string int_str(Int v) {
        if (v == 0) return "0";
        bool neg = v < 0;
        unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
        std::string s;
        while (u) { s.insert(s.begin(), char('0' + int(u % 10))); u /= 10; }
        return neg ? "-" + s : s;
    }

    Int num_, den_;
};

}  // namespace orbizeta
