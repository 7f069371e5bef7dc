#include "orbizeta/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace orbizeta::geodesics {

namespace {

constexpr double kPi = 3.14159265358979323846;

using json = nlohmann::ordered_json;

void check_known_keys(const json& obj, std::initializer_list<const char*> keys,
                      const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            if (it.key() == k) known = true;
        if (!known) throw ParseError(where + ": unknown key '" + it.key() + "'");
    }
}

void validate_spectrum(LengthSpectrum& sp) {
    std::stable_sort(sp.records.begin(), sp.records.end(),
                     [](const GeodesicRecord& a, const GeodesicRecord& b) {
                         return a.length < b.length;
                     });
    for (std::size_t i = 0; i < sp.records.size(); ++i) {
        const auto& r = sp.records[i];
        if (!(r.length > 0.0) || !(r.primitive_length > 0.0))
            throw InvariantViolation("spectrum record " + std::to_string(i) +
                                     ": lengths must be positive");
        if (r.n_gamma < 1 || r.class_count < 1)
            throw InvariantViolation("spectrum record " + std::to_string(i) +
                                     ": n_gamma and class_count must be >= 1");
        if (std::abs(r.length - r.n_gamma * r.primitive_length) > 1e-9)
            throw InvariantViolation("spectrum record " + std::to_string(i) +
                                     ": length != n_gamma * primitive_length");
        if (r.length > sp.l_max + 1e-9)
            throw InvariantViolation("spectrum record " + std::to_string(i) +
                                     ": length exceeds l_max");
    }
}

Mat2 mul(const Mat2& a, const Mat2& b) {
    Mat2 c;
    c[0][0] = a[0][0] * b[0][0] + a[0][1] * b[1][0];
    c[0][1] = a[0][0] * b[0][1] + a[0][1] * b[1][1];
    c[1][0] = a[1][0] * b[0][0] + a[1][1] * b[1][0];
    c[1][1] = a[1][0] * b[0][1] + a[1][1] * b[1][1];
    return c;
}

Mat2 inverse(const Mat2& a) {
    // det = 1
    return Mat2{{{a[1][1], -a[0][1]}, {-a[1][0], a[0][0]}}};
}

double trace(const Mat2& a) { return a[0][0] + a[1][1]; }

// Letters 0..k-1 are generators, k..2k-1 their inverses.
int letter_inverse(int letter, int k) { return letter < k ? letter + k : letter - k; }

bool is_canonical_rotation(const std::vector<int>& w) {
    // w must be the lexicographically smallest among its rotations.
    const std::size_t n = w.size();
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            int a = w[i];
            int b = w[(i + r) % n];
            if (a != b) {
                if (b < a) return false;
                break;
            }
        }
    }
    return true;
}

// Smallest period p dividing |w| with w = v^{|w|/p}.
int word_power(const std::vector<int>& w) {
    const int n = int(w.size());
    for (int p = 1; p <= n / 2; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (int i = p; i < n && periodic; ++i)
            if (w[i] != w[i - p]) periodic = false;
        if (periodic) return n / p;
    }
    return 1;
}

struct Candidate {
    double length;
    int n_gamma;
    std::vector<int> word;
};

void enumerate_classes(const std::vector<Mat2>& letters, double l_max, int depth,
                       std::vector<Candidate>& out) {
    const int nletters = int(letters.size());
    const int k = nletters / 2;
    std::vector<int> word;
    std::vector<Mat2> stack;  // matrix products along the current word

    // Depth-first over reduced words; classification at every node.
    auto visit = [&](auto&& self, int last_letter) -> void {
        if (int(word.size()) >= depth) return;
        for (int letter = 0; letter < nletters; ++letter) {
            if (last_letter >= 0 && letter == letter_inverse(last_letter, k)) continue;
            word.push_back(letter);
            Mat2 m = stack.empty() ? letters[letter] : mul(stack.back(), letters[letter]);
            stack.push_back(m);
            // Cyclically reduced and canonical under rotation?
            if (word.front() != letter_inverse(word.back(), k) && is_canonical_rotation(word)) {
                double t = std::abs(trace(m));
                if (t > 2.0 + 1e-9) {
                    double len = 2.0 * std::acosh(t / 2.0);
                    if (len <= l_max + 1e-9) out.push_back({len, word_power(word), word});
                }
            }
            self(self, letter);
            word.pop_back();
            stack.pop_back();
        }
    };
    visit(visit, -1);
}

// Same (length, n_gamma) within tolerance -> one record.  Longer reduced
// words can repeat a class through relator conjugations the cyclic reduction
// cannot see, so only canonical words of the minimal word length in a group
// are counted as classes; the extras are surfaced as warnings.
std::vector<GeodesicRecord> merge_candidates(std::vector<Candidate> cands, double length_tol,
                                             std::vector<std::string>* warnings) {
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.length != b.length) return a.length < b.length;
        if (a.n_gamma != b.n_gamma) return a.n_gamma < b.n_gamma;
        return a.word < b.word;
    });
    std::vector<GeodesicRecord> records;
    std::size_t i = 0;
    while (i < cands.size()) {
        std::size_t j = i + 1;
        while (j < cands.size() && cands[j].length - cands[i].length <= length_tol &&
               cands[j].n_gamma == cands[i].n_gamma)
            ++j;
        std::size_t min_word = cands[i].word.size();
        for (std::size_t k = i + 1; k < j; ++k)
            min_word = std::min(min_word, cands[k].word.size());
        long long count = 0;
        for (std::size_t k = i; k < j; ++k)
            if (cands[k].word.size() == min_word) ++count;
        GeodesicRecord r;
        r.length = cands[i].length;
        r.n_gamma = cands[i].n_gamma;
        r.primitive_length = r.length / double(r.n_gamma);
        r.class_count = count;
        records.push_back(r);
        if (warnings && (long long)(j - i) > count)
            warnings->push_back("length " + std::to_string(r.length) + ": " +
                                std::to_string(j - i - count) +
                                " longer canonical words share trace and length; counted only "
                                "the minimal-word-length classes");
        i = j;
    }
    return records;
}

bool record_sets_match(const std::vector<GeodesicRecord>& a, const std::vector<GeodesicRecord>& b,
                       double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i].length - b[i].length) > tol) return false;
        if (a[i].n_gamma != b[i].n_gamma) return false;
        if (a[i].class_count != b[i].class_count) return false;
    }
    return true;
}

}  // namespace

LengthSpectrum load_spectrum(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_spectrum: cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ParseError("load_spectrum: " + std::string(e.what()));
    }
    check_known_keys(doc, {"l_max", "records"}, "spectrum");
    LengthSpectrum sp;
    sp.source = LengthSpectrum::Source::file;
    sp.l_max = doc.value("l_max", 0.0);
    if (doc.contains("records")) {
        for (const auto& rec : doc["records"]) {
            check_known_keys(rec,
                             {"length", "primitive_length", "n_gamma", "class_count",
                              "rho_eigenvalues"},
                             "spectrum record");
            GeodesicRecord r;
            r.length = rec.at("length").get<double>();
            r.primitive_length = rec.at("primitive_length").get<double>();
            r.n_gamma = rec.at("n_gamma").get<long long>();
            r.class_count = rec.value("class_count", 1LL);
            if (rec.contains("rho_eigenvalues"))
                for (const auto& ev : rec["rho_eigenvalues"])
                    r.rho_eigenvalues.emplace_back(ev.at(0).get<double>(), ev.at(1).get<double>());
            sp.records.push_back(std::move(r));
        }
    }
    validate_spectrum(sp);
    return sp;
}

void save_spectrum(const LengthSpectrum& spectrum, const std::string& path) {
    json doc;
    doc["l_max"] = spectrum.l_max;
    doc["records"] = json::array();
    for (const auto& r : spectrum.records) {
        json rec;
        rec["length"] = r.length;
        rec["primitive_length"] = r.primitive_length;
        rec["n_gamma"] = r.n_gamma;
        rec["class_count"] = r.class_count;
        if (!r.rho_eigenvalues.empty()) {
            json evs = json::array();
            for (const auto& ev : r.rho_eigenvalues) evs.push_back({ev.real(), ev.imag()});
            rec["rho_eigenvalues"] = evs;
        }
        doc["records"].push_back(rec);
    }
    std::ofstream out(path);
    if (!out) throw ParseError("save_spectrum: cannot open " + path);
    out << doc.dump(2) << "\n";
}

GroupPresentation load_group(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_group: cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ParseError("load_group: " + std::string(e.what()));
    }
    check_known_keys(doc, {"generators", "relators"}, "group");
    GroupPresentation grp;
    for (const auto& g : doc.at("generators")) {
        Mat2 m{{{g.at(0).at(0).get<double>(), g.at(0).at(1).get<double>()},
                {g.at(1).at(0).get<double>(), g.at(1).at(1).get<double>()}}};
        grp.generators.push_back(m);
    }
    if (doc.contains("relators"))
        for (const auto& r : doc["relators"]) grp.relators.push_back(r.get<std::string>());
    return grp;
}

GenerationReport generate_spectrum(const GroupPresentation& grp, double l_max, int audit_margin,
                                   double length_tol) {
    if (grp.generators.empty()) throw DomainError("generate_spectrum: no generators");
    if (audit_margin < 1) throw DomainError("generate_spectrum: audit_margin >= 1 required");
    GenerationReport report;

    std::vector<Mat2> letters;
    double min_disp = 0.0;
    for (const auto& g : grp.generators) {
        double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        if (std::abs(det - 1.0) > 1e-12)
            throw InvariantViolation("generate_spectrum: generator determinant != 1");
        double t = std::abs(trace(g));
        if (t > 2.0 + 1e-9) {
            double disp = 2.0 * std::acosh(t / 2.0);
            min_disp = (min_disp == 0.0) ? disp : std::min(min_disp, disp);
        } else if (t < 2.0 - 1e-9) {
            int nu = int(std::lround(kPi / std::acos(t / 2.0)));
            report.detected_elliptic_orders.push_back(nu);
        } else {
            report.warnings.push_back("generator with |trace| = 2 (parabolic or identity)");
        }
    }
    for (const auto& g : grp.generators) letters.push_back(g);
    for (const auto& g : grp.generators) letters.push_back(inverse(g));

    // Word-depth heuristic: per-letter displacement at least min_disp would
    // need ceil(l_max/min_disp) letters; short products can still be short,
    // so the audit below is the actual completeness criterion.
    int base_depth = (min_disp > 0.0) ? int(std::ceil(l_max / min_disp)) + 1 : 6;
    base_depth = std::max(base_depth, 2);
    int audit_depth = base_depth + audit_margin;
    report.base_depth = base_depth;
    report.audit_depth = audit_depth;

    std::vector<Candidate> base_cands, audit_cands;
    enumerate_classes(letters, l_max, base_depth, base_cands);
    enumerate_classes(letters, l_max, audit_depth, audit_cands);
    auto base_records = merge_candidates(std::move(base_cands), length_tol, nullptr);
    auto audit_records = merge_candidates(std::move(audit_cands), length_tol, &report.warnings);

    if (!record_sets_match(base_records, audit_records, length_tol))
        throw AuditFailure("generate_spectrum: record set changed between depth " +
                           std::to_string(base_depth) + " and " + std::to_string(audit_depth) +
                           "; increase depth or audit margin");

    report.spectrum.records = std::move(audit_records);
    report.spectrum.l_max = l_max;
    report.spectrum.source = LengthSpectrum::Source::generated;
    return report;
}

double systole(const LengthSpectrum& spectrum) {
    if (spectrum.records.empty()) throw EmptySpectrumError("systole: empty spectrum");
    double best = spectrum.records.front().primitive_length;
    for (const auto& r : spectrum.records) best = std::min(best, r.primitive_length);
    return best;
}

}  // namespace orbizeta::geodesics
