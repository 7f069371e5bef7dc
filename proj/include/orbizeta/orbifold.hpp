#pragma once

#include <utility>
#include <vector>

#include "orbizeta/eval.hpp"
#include "orbizeta/rational.hpp"

namespace orbizeta::orbifold {

// (g; nu_1, ..., nu_r).  Construction rejects non-hyperbolic signatures.
class OrbifoldSignature {
public:
    OrbifoldSignature(int genus, std::vector<int> elliptic_orders);

    int genus() const { return genus_; }
    const std::vector<int>& elliptic_orders() const { return orders_; }
    int num_elliptic_classes() const { return int(orders_.size()); }

private:
    int genus_;
    std::vector<int> orders_;
};

// chi(X) = 2 - 2g + sum_j (1/nu_j - 1), exact.
Rational euler_characteristic(const OrbifoldSignature& sig);

// Vol(X) = -2 pi chi(X)  (curvature -1 Gauss-Bonnet normalization; the
// trace-formula kernels fix this convention).
double volume(const OrbifoldSignature& sig);

enum class GeodesicEigenPolicy { trivial, from_file };

// Twist data: dimension, central parameter m in (-1,1], and for each elliptic
// class the integer angle data alpha_{jp} in {0,...,nu_j-1}.  The eigenvalues
// of rho(gamma_j) are exp(-2 pi i (m/2 + alpha_{jp}) / nu_j); the relation
// rho(gamma_j)^{nu_j} = e^{-i pi m} Id is verified at construction.
class RepresentationData {
public:
    RepresentationData(const OrbifoldSignature& sig, int dim, Rational m,
                       std::vector<std::vector<int>> elliptic_angles,
                       GeodesicEigenPolicy policy = GeodesicEigenPolicy::trivial);

    static RepresentationData trivial(const OrbifoldSignature& sig);

    int dim() const { return dim_; }
    const Rational& m() const { return m_; }
    double m_value() const { return m_.to_double(); }
    const std::vector<int>& angles(int j) const { return angles_.at(j); }
    GeodesicEigenPolicy geodesic_eigen_policy() const { return policy_; }

private:
    int dim_;
    Rational m_;
    std::vector<std::vector<int>> angles_;
    GeodesicEigenPolicy policy_;
};

// C_rho(X) = dim(V_rho) Vol(X) / (4 pi); equals -dim * chi / 2 exactly.
double c_rho(const OrbifoldSignature& sig, const RepresentationData& rep);
Rational c_rho_exact(const OrbifoldSignature& sig, const RepresentationData& rep);

// Tr(rho(gamma_j)^k), 1 <= k <= nu_j - 1.
Complex trace_power(const OrbifoldSignature& sig, const RepresentationData& rep, int j, int k);

// Tr(rho(gamma_j)^k) e^{i pi k m / nu_j} = sum_p e^{-2 pi i k alpha_{jp}/nu_j};
// the m-phases cancel, so this is a function of the angle data alone.
Complex trace_power_phase(const OrbifoldSignature& sig, const RepresentationData& rep, int j, int k);

// (alpha_j(l), alpha~_j(l)): sums over p of the residues of alpha_{jp}+l,
// resp. -alpha_{jp}+l, modulo nu_j.
std::pair<long long, long long> alpha_coeffs(const OrbifoldSignature& sig,
                                             const RepresentationData& rep, int j, int l);

struct CmPair {
    Rational c_m, c_m_tilde;     // exact values via alpha_j(l) = n(nu-1)/2 + nu C_m
    Complex c_m_sum, c_m_tilde_sum;  // the defining trig sums, unrounded
    double imag_residual;        // largest imaginary residue of the defining sums
    double float_deviation;      // |trig-sum value - exact value|
};

// C_m(j,l;rho) and C~_m(j,l;rho): evaluated from the defining finite trig sums
// and cross-checked against the exact rationals forced by the alpha relation.
CmPair c_m_coeffs(const OrbifoldSignature& sig, const RepresentationData& rep, int j, int l);

struct EllipticCoefficients {
    struct Entry {
        int j, l;
        long long alpha, alpha_tilde;
        Rational c_m, c_m_tilde;
    };
    std::vector<Entry> entries;  // ordered by (j, l)
    double max_imag_residual = 0.0;
    double max_float_deviation = 0.0;
};
EllipticCoefficients elliptic_coefficients(const OrbifoldSignature& sig,
                                           const RepresentationData& rep);

// One elliptic conjugacy class gamma_j^l (theta in (0,pi)).
struct EllipticClass {
    int j;
    int power;      // l in 1..nu_j-1
    int order;      // M(gamma) = nu_j
    double theta;   // pi l / nu_j
    Complex trace;  // Tr rho(gamma_j^l)
};
std::vector<EllipticClass> elliptic_classes(const OrbifoldSignature& sig,
                                            const RepresentationData& rep);

// Informational: lambda = e^{-i pi m} should satisfy lambda^{N n chi} = 1 with
// N = lcm(1, nu_1, ..., nu_r).  Returns |lambda^{N n chi} - 1|.
double central_root_of_unity_residual(const OrbifoldSignature& sig, const RepresentationData& rep);

}  // namespace orbizeta::orbifold
