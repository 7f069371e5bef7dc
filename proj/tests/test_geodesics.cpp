#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orbizeta/geodesics.hpp"

using namespace orbizeta;
using namespace orbizeta::geodesics;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string tmp_path(const std::string& name) { return "/tmp/orbizeta_test_" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Mat2 rotation(double theta) {
    return Mat2{{{std::cos(theta), std::sin(theta)}, {-std::sin(theta), std::cos(theta)}}};
}

Mat2 translation(double t) {
    return Mat2{{{std::exp(t / 2.0), 0.0}, {0.0, std::exp(-t / 2.0)}}};
}

Mat2 mul(const Mat2& a, const Mat2& b) {
    Mat2 c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return c;
}

Mat2 conj_by(const Mat2& g, const Mat2& h) {
    Mat2 hinv{{{h[1][1], -h[0][1]}, {-h[1][0], h[0][0]}}};
    return mul(mul(h, g), hinv);
}

// Regular-octagon (genus 2) side-pairing translations: axes through i at
// angles k pi/4, common displacement 2 arccosh(1 + sqrt 2).
GroupPresentation octagon_group() {
    GroupPresentation grp;
    double ell = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
    for (int k = 0; k < 4; ++k)
        grp.generators.push_back(conj_by(translation(ell), rotation(k * kPi / 8.0)));
    return grp;
}

GroupPresentation one_generator_group(double t) {
    GroupPresentation grp;
    grp.generators.push_back(translation(t));
    return grp;
}

}  // namespace

TEST_CASE("spectrum JSON round trip is byte-exact") {
    LengthSpectrum sp;
    sp.l_max = 7.25;
    GeodesicRecord r;
    r.length = 2.0 * std::acosh(1.7);
    r.primitive_length = r.length;
    r.n_gamma = 1;
    r.class_count = 2;
    r.rho_eigenvalues = {Complex(0.6, 0.8), Complex(0.6, -0.8)};
    sp.records.push_back(r);
    GeodesicRecord r2;
    r2.primitive_length = r.length;
    r2.n_gamma = 2;
    r2.length = 2.0 * r.length;
    r2.class_count = 2;
    r2.rho_eigenvalues = {Complex(0.6, 0.8), Complex(0.6, -0.8)};
    sp.records.push_back(r2);

    auto p1 = tmp_path("spectrum1.json"), p2 = tmp_path("spectrum2.json");
    save_spectrum(sp, p1);
    auto loaded = load_spectrum(p1);
    save_spectrum(loaded, p2);
    CHECK(slurp(p1) == slurp(p2));
    REQUIRE(loaded.records.size() == 2);
    CHECK(loaded.records[0].length == sp.records[0].length);  // bit-exact
    CHECK(loaded.records[0].rho_eigenvalues[1].imag() == -0.8);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("spectrum validation") {
    auto path = tmp_path("bad_spectrum.json");
    {
        std::ofstream f(path);
        f << R"({"l_max": 3.0, "records": [{"length": 2.0, "primitive_length": 1.1,)"
          << R"( "n_gamma": 2, "class_count": 1}]})";
    }
    CHECK_THROWS_AS(load_spectrum(path), InvariantViolation);
    {
        std::ofstream f(path);
        f << R"({"l_max": 3.0, "records": [{"length": 2.0, "primitive_length": 1.0,)"
          << R"( "n_gamma": 2, "class_count": 1, "bogus": 1}]})";
    }
    CHECK_THROWS_AS(load_spectrum(path), ParseError);
    {
        std::ofstream f(path);
        f << R"({"l_max": 0.0, "records": []})";
    }
    auto empty = load_spectrum(path);
    CHECK(empty.records.empty());
    CHECK(empty.l_max == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("one-generator group yields the exact power spectrum") {
    auto rep = generate_spectrum(one_generator_group(2.0), 9.0, 2);
    const auto& recs = rep.spectrum.records;
    REQUIRE(recs.size() == 4);
    for (int k = 1; k <= 4; ++k) {
        CHECK(recs[k - 1].length == doctest::Approx(2.0 * k).epsilon(1e-12));
        CHECK(recs[k - 1].primitive_length == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(recs[k - 1].n_gamma == k);
        CHECK(recs[k - 1].class_count == 2);  // the word and its inverse
    }
    CHECK(systole(rep.spectrum) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("octagon group: audit stability and power bookkeeping") {
    auto grp = octagon_group();
    double sys = 2.0 * std::acosh(1.0 + std::sqrt(2.0));

    GenerationReport runs[3];
    for (int margin : {1, 2, 3}) runs[margin - 1] = generate_spectrum(grp, 6.0, margin);
    for (int i = 1; i < 3; ++i) {
        REQUIRE(runs[i].spectrum.records.size() == runs[0].spectrum.records.size());
        for (std::size_t k = 0; k < runs[0].spectrum.records.size(); ++k) {
            CHECK(std::abs(runs[i].spectrum.records[k].length -
                           runs[0].spectrum.records[k].length) < 1e-9);
            CHECK(runs[i].spectrum.records[k].class_count ==
                  runs[0].spectrum.records[k].class_count);
            CHECK(runs[i].spectrum.records[k].n_gamma == runs[0].spectrum.records[k].n_gamma);
        }
    }
    CHECK(systole(runs[0].spectrum) == doctest::Approx(sys).epsilon(1e-9));

    // Powers of the systole appear with the right n_gamma.
    auto wide = generate_spectrum(grp, 6.5, 2);
    bool found_square = false;
    for (const auto& r : wide.spectrum.records)
        if (std::abs(r.length - 2.0 * sys) < 1e-6 && r.n_gamma == 2) {
            found_square = true;
            CHECK(r.primitive_length == doctest::Approx(sys).epsilon(1e-9));
        }
    CHECK(found_square);
}

TEST_CASE("spectrum is invariant under conjugation of the generators") {
    auto grp = octagon_group();
    Mat2 h = mul(rotation(0.37), translation(0.81));
    GroupPresentation conj;
    for (const auto& g : grp.generators) conj.generators.push_back(conj_by(g, h));
    auto a = generate_spectrum(grp, 6.0, 2);
    auto b = generate_spectrum(conj, 6.0, 2);
    REQUIRE(a.spectrum.records.size() == b.spectrum.records.size());
    for (std::size_t i = 0; i < a.spectrum.records.size(); ++i) {
        CHECK(std::abs(a.spectrum.records[i].length - b.spectrum.records[i].length) < 1e-9);
        CHECK(a.spectrum.records[i].class_count == b.spectrum.records[i].class_count);
    }
}

TEST_CASE("larger l_max extends rather than alters the record set") {
    auto grp = octagon_group();
    auto small = generate_spectrum(grp, 5.0, 2);
    auto large = generate_spectrum(grp, 6.0, 2);
    REQUIRE(large.spectrum.records.size() >= small.spectrum.records.size());
    for (std::size_t i = 0; i < small.spectrum.records.size(); ++i) {
        CHECK(std::abs(small.spectrum.records[i].length - large.spectrum.records[i].length) <
              1e-9);
        CHECK(small.spectrum.records[i].class_count == large.spectrum.records[i].class_count);
    }
}

TEST_CASE("elliptic generators are detected, not recorded") {
    GroupPresentation grp;
    grp.generators.push_back(rotation(kPi / 3.0));  // trace 2cos(pi/3) = 1 -> order 3
    auto rep = generate_spectrum(grp, 4.0, 1);
    CHECK(rep.spectrum.records.empty());
    REQUIRE(rep.detected_elliptic_orders.size() == 1);
    CHECK(rep.detected_elliptic_orders[0] == 3);
}

TEST_CASE("systole of an empty spectrum throws") {
    LengthSpectrum empty;
    CHECK_THROWS_AS(systole(empty), EmptySpectrumError);
}
