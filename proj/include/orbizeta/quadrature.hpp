#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "orbizeta/eval.hpp"

namespace orbizeta::quadrature {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;
    double decay_cutoff = 0.0;  // 0 = pick per integrand family

    void validate() const {
        if (rel_tol <= 0 || abs_tol <= 0)
            throw DomainError("QuadratureSpec: tolerances must be positive");
        if (max_subdivisions < 1)
            throw DomainError("QuadratureSpec: max_subdivisions >= 1 required");
    }
};

template <typename T>
struct QuadResult {
    T value{};
    double abs_err = 0.0;
    long evaluations = 0;
};

namespace detail {

// G7-K15 nodes/weights (positive half; node 0 first).
inline constexpr double kNodes[8] = {
    0.000000000000000, 0.405845151377397, 0.741531185599394, 0.949107912342759,
    0.207784955007898, 0.586087235467691, 0.864864423359769, 0.991455371120813};
inline constexpr double kWG[8] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870,
    0.0, 0.0, 0.0, 0.0};
inline constexpr double kWK[8] = {
    0.209482141084728, 0.190350578064785, 0.140653259715525, 0.063092092629979,
    0.204432940075298, 0.169004726639267, 0.104790010322250, 0.022935322010529};

template <typename F, typename T>
void gk15(const F& f, double a, double b, T& value, double& err) {
    const double mid = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T y0 = f(mid);
    T g7 = kWG[0] * y0;
    T k15 = kWK[0] * y0;
    for (int i = 1; i < 8; ++i) {
        double dx = h * kNodes[i];
        T yi = f(mid + dx) + f(mid - dx);
        k15 += kWK[i] * yi;
        if (i < 4) g7 += kWG[i] * yi;
    }
    g7 *= h;
    k15 *= h;
    value = k15;
    double d = std::abs(g7 - k15);
    err = (d > 0) ? std::min(d, 200.0 * d * std::sqrt(200.0 * d)) : 0.0;
}

}  // namespace detail

// Adaptive G7-K15 on [a,b].  Worst-interval-first with deterministic
// tie-breaking; summation in interval-creation order so results do not depend
// on scheduling.
template <typename T, typename F>
QuadResult<T> integrate(const F& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    struct Interval {
        double a, b, err;
        T val;
    };
    std::vector<Interval> ivs;
    Interval root;
    root.a = a;
    root.b = b;
    detail::gk15(f, a, b, root.val, root.err);
    ivs.push_back(root);
    long evals = 15;

    auto total = [&ivs] {
        T v{};
        double e = 0;
        for (const auto& iv : ivs) {
            v += iv.val;
            e += iv.err;
        }
        return std::pair<T, double>(v, e);
    };

    for (int pass = 0; pass < spec.max_subdivisions; ++pass) {
        auto [v, e] = total();
        if (e <= std::max(spec.abs_tol, spec.rel_tol * std::abs(v))) return {v, e, evals};
        std::size_t worst = 0;
        for (std::size_t i = 1; i < ivs.size(); ++i)
            if (ivs[i].err > ivs[worst].err) worst = i;
        Interval left, right;
        double mid = 0.5 * (ivs[worst].a + ivs[worst].b);
        left.a = ivs[worst].a;
        left.b = mid;
        right.a = mid;
        right.b = ivs[worst].b;
        detail::gk15(f, left.a, left.b, left.val, left.err);
        detail::gk15(f, right.a, right.b, right.val, right.err);
        evals += 30;
        ivs[worst] = left;
        ivs.push_back(right);
    }
    auto [v, e] = total();
    if (e > 10.0 * std::max(spec.abs_tol, spec.rel_tol * std::abs(v)))
        throw QuadratureError("integrate: failed to reach tolerance (err=" + std::to_string(e) + ")");
    return {v, e, evals};
}

// Cutoff L with bound_scale * exp(-rate * L) < abs_tol / 100, floored at 5.
inline double exp_decay_cutoff(double bound_scale, double rate, double abs_tol) {
    if (rate <= 0) throw DomainError("exp_decay_cutoff: rate must be positive");
    double L = std::log(std::max(bound_scale, 1e-300) / (abs_tol * 1e-2)) / rate;
    return std::max(5.0, L);
}

}  // namespace orbizeta::quadrature
