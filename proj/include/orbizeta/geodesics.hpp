#pragma once

#include <array>
#include <string>
#include <vector>

#include "orbizeta/eval.hpp"

namespace orbizeta::geodesics {

// One merged conjugacy-class record: gamma = gamma_0^{n_gamma} with
// length = n_gamma * primitive_length; class_count conjugacy classes share it.
struct GeodesicRecord {
    double length = 0.0;
    double primitive_length = 0.0;
    long long n_gamma = 1;
    long long class_count = 1;
    std::vector<Complex> rho_eigenvalues;  // eigenvalues of rho(gamma_0); may be empty
};

struct LengthSpectrum {
    enum class Source { file, generated };
    std::vector<GeodesicRecord> records;  // sorted by length
    double l_max = 0.0;
    Source source = Source::file;
};

using Mat2 = std::array<std::array<double, 2>, 2>;

struct GroupPresentation {
    std::vector<Mat2> generators;        // det = 1 within 1e-12
    std::vector<std::string> relators;   // informational only
};

struct GenerationReport {
    LengthSpectrum spectrum;
    std::vector<int> detected_elliptic_orders;  // from generator traces 2cos(pi/nu)
    std::vector<std::string> warnings;
    int base_depth = 0;
    int audit_depth = 0;
};

LengthSpectrum load_spectrum(const std::string& path);
void save_spectrum(const LengthSpectrum& spectrum, const std::string& path);

GroupPresentation load_group(const std::string& path);

// Breadth-first enumeration of reduced words up to a depth inferred from
// l_max, classified by trace; conjugacy dedup via canonical cyclic words with
// trace/length merging.  The completeness criterion is the audit: the run is
// repeated audit_margin letters deeper and the record sets below l_max must
// coincide.
GenerationReport generate_spectrum(const GroupPresentation& grp, double l_max, int audit_margin,
                                   double length_tol = 1e-9);

double systole(const LengthSpectrum& spectrum);

}  // namespace orbizeta::geodesics
