// Command-line surface: info | factors | verify | spectrum | torsion.
// Configuration comes from a JSON file (--config); outputs are deterministic
// CSV or JSON with 17-significant-digit floats.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "orbizeta/geodesics.hpp"
#include "orbizeta/heattrace.hpp"
#include "orbizeta/specfun.hpp"
#include "orbizeta/verify.hpp"
#include "orbizeta/zetafactors.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace orbizeta;
using orbifold::OrbifoldSignature;
using orbifold::RepresentationData;

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> keys,
                    const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": object expected");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            if (it.key() == k) known = true;
        if (!known) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

Rational parse_rational(const json& v, const std::string& where) {
    try {
        if (v.is_string()) return Rational::parse(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
    } catch (const std::exception&) {
    }
    throw ConfigError(where + ": expected integer or rational string like \"1/2\"");
}

struct SpectrumRequest {
    std::optional<std::string> path;
    std::optional<std::string> group_path;
    double l_max = 0.0;
    int audit_margin = 2;
};

struct JobConfig {
    std::optional<OrbifoldSignature> signature;
    std::string rep_spec = "trivial";  // "trivial" | "yamaguchi:N" | inline object
    json rep_inline;
    std::optional<SpectrumRequest> spectrum;
    std::vector<Complex> s_grid;
    quadrature::QuadratureSpec quadrature;
    std::string format = "csv";
    std::string out_path = "-";
};

JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigError("config parse: " + std::string(e.what()));
    }
    reject_unknown(doc, {"signature", "representation", "spectrum", "s_grid", "quadrature",
                         "output"},
                   "config");
    JobConfig cfg;
    if (doc.contains("signature")) {
        const auto& s = doc["signature"];
        reject_unknown(s, {"genus", "elliptic_orders"}, "signature");
        std::vector<int> orders;
        if (s.contains("elliptic_orders"))
            for (const auto& nu : s["elliptic_orders"]) orders.push_back(nu.get<int>());
        cfg.signature.emplace(s.at("genus").get<int>(), orders);
    }
    if (doc.contains("representation")) {
        const auto& r = doc["representation"];
        if (r.is_string()) {
            cfg.rep_spec = r.get<std::string>();
        } else {
            reject_unknown(r, {"dim", "m", "elliptic_angles", "geodesic_eigen_policy"},
                           "representation");
            cfg.rep_spec = "inline";
            cfg.rep_inline = r;
        }
    }
    if (doc.contains("spectrum") && !doc["spectrum"].is_null()) {
        const auto& sp = doc["spectrum"];
        reject_unknown(sp, {"path", "generate"}, "spectrum");
        SpectrumRequest req;
        if (sp.contains("path")) req.path = sp["path"].get<std::string>();
        if (sp.contains("generate")) {
            const auto& g = sp["generate"];
            reject_unknown(g, {"group_path", "l_max", "audit_margin"}, "spectrum.generate");
            req.group_path = g.at("group_path").get<std::string>();
            req.l_max = g.at("l_max").get<double>();
            req.audit_margin = g.value("audit_margin", 2);
        }
        cfg.spectrum = req;
    }
    if (doc.contains("s_grid"))
        for (const auto& p : doc["s_grid"])
            cfg.s_grid.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    if (doc.contains("quadrature")) {
        const auto& q = doc["quadrature"];
        reject_unknown(q, {"rel_tol", "abs_tol", "max_subdivisions", "decay_cutoff"},
                       "quadrature");
        cfg.quadrature.rel_tol = q.value("rel_tol", cfg.quadrature.rel_tol);
        cfg.quadrature.abs_tol = q.value("abs_tol", cfg.quadrature.abs_tol);
        cfg.quadrature.max_subdivisions =
            q.value("max_subdivisions", cfg.quadrature.max_subdivisions);
        cfg.quadrature.decay_cutoff = q.value("decay_cutoff", cfg.quadrature.decay_cutoff);
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        reject_unknown(o, {"format", "path"}, "output");
        cfg.format = o.value("format", cfg.format);
        cfg.out_path = o.value("path", cfg.out_path);
        if (cfg.format != "csv" && cfg.format != "json")
            throw ConfigError("output.format must be csv or json");
    }
    return cfg;
}

RepresentationData build_rep_inner(const JobConfig& cfg, const OrbifoldSignature& sig);

RepresentationData build_rep(const JobConfig& cfg, const OrbifoldSignature& sig) {
    try {
        return build_rep_inner(cfg, sig);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("representation: ") + e.what());
    }
}

RepresentationData build_rep_inner(const JobConfig& cfg, const OrbifoldSignature& sig) {
    if (cfg.rep_spec == "trivial") return RepresentationData::trivial(sig);
    if (cfg.rep_spec.rfind("yamaguchi:", 0) == 0) {
        int N = std::atoi(cfg.rep_spec.c_str() + 10);
        if (N < 1) throw ConfigError("representation: yamaguchi:N needs N >= 1");
        return zetafactors::yamaguchi_rep(sig, N);
    }
    if (cfg.rep_spec == "inline") {
        const auto& r = cfg.rep_inline;
        int dim = r.at("dim").get<int>();
        Rational m = parse_rational(r.at("m"), "representation.m");
        std::vector<std::vector<int>> angles;
        for (const auto& row : r.at("elliptic_angles")) {
            std::vector<int> a;
            for (const auto& v : row) a.push_back(v.get<int>());
            angles.push_back(a);
        }
        auto policy = orbifold::GeodesicEigenPolicy::trivial;
        if (r.contains("geodesic_eigen_policy")) {
            std::string p = r["geodesic_eigen_policy"].get<std::string>();
            if (p == "from_file")
                policy = orbifold::GeodesicEigenPolicy::from_file;
            else if (p != "trivial")
                throw ConfigError("representation.geodesic_eigen_policy: trivial|from_file");
        }
        return RepresentationData(sig, dim, m, angles, policy);
    }
    throw ConfigError("representation: expected trivial, yamaguchi:N, or an object");
}

geodesics::LengthSpectrum build_spectrum(const JobConfig& cfg) {
    if (!cfg.spectrum) {
        geodesics::LengthSpectrum empty;
        empty.l_max = 0.0;
        return empty;
    }
    if (cfg.spectrum->path) return geodesics::load_spectrum(*cfg.spectrum->path);
    if (cfg.spectrum->group_path) {
        auto grp = geodesics::load_group(*cfg.spectrum->group_path);
        return geodesics::generate_spectrum(grp, cfg.spectrum->l_max,
                                            cfg.spectrum->audit_margin)
            .spectrum;
    }
    throw ConfigError("spectrum: needs path or generate");
}

int thread_cap() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ORBIZETA_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) hw = std::min<unsigned>(hw, unsigned(v));
    }
    return int(hw);
}

// Rows-of-named-columns emitter: csv or json array, byte-stable.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void emit(const std::string& format, const std::string& out_path) const {
        std::ostringstream os;
        if (format == "csv") {
            for (std::size_t c = 0; c < columns.size(); ++c)
                os << columns[c] << (c + 1 < columns.size() ? "," : "\n");
            for (const auto& row : rows)
                for (std::size_t c = 0; c < row.size(); ++c)
                    os << row[c] << (c + 1 < row.size() ? "," : "\n");
        } else {
            json arr = json::array();
            for (const auto& row : rows) {
                json obj;
                for (std::size_t c = 0; c < columns.size(); ++c) obj[columns[c]] = row[c];
                arr.push_back(obj);
            }
            os << arr.dump(2) << "\n";
        }
        if (out_path == "-") {
            std::cout << os.str();
        } else {
            std::ofstream f(out_path);
            if (!f) throw ConfigError("cannot open output " + out_path);
            f << os.str();
        }
    }
};

int cmd_info(const JobConfig& cfg) {
    if (!cfg.signature) throw ConfigError("info: config needs a signature");
    const auto& sig = *cfg.signature;
    auto rep = build_rep(cfg, sig);
    auto chi = orbifold::euler_characteristic(sig);

    std::cout << "chi(X) = " << chi.str() << " = " << fmt17(chi.to_double()) << "\n";
    std::cout << "Vol(X) = " << fmt17(orbifold::volume(sig)) << "\n";
    std::cout << "C_rho(X) = " << orbifold::c_rho_exact(sig, rep).str() << " = "
              << fmt17(orbifold::c_rho(sig, rep)) << "\n";
    std::cout << "dim = " << rep.dim() << ", m = " << rep.m().str() << "\n";
    std::cout << "central lambda^(N n chi) residual = "
              << fmt17(orbifold::central_root_of_unity_residual(sig, rep)) << "\n";

    Table t;
    t.columns = {"j", "nu", "l", "alpha", "alpha_tilde", "c_m", "c_m_tilde", "sum_rule_residual"};
    auto table = orbifold::elliptic_coefficients(sig, rep);
    // Per-class residual of sum_l (C_m +- C~_m) = 0 evaluated on the raw
    // trig sums; the exact rationals vanish identically.
    std::vector<double> residual(sig.num_elliptic_classes(), 0.0);
    for (int j = 0; j < sig.num_elliptic_classes(); ++j) {
        Complex plus = 0.0, minus = 0.0;
        for (int l = 0; l < sig.elliptic_orders()[j]; ++l) {
            auto cm = orbifold::c_m_coeffs(sig, rep, j, l);
            plus += cm.c_m_sum + cm.c_m_tilde_sum;
            minus += cm.c_m_sum - cm.c_m_tilde_sum;
        }
        residual[j] = std::max(std::abs(plus), std::abs(minus));
    }
    for (const auto& e : table.entries) {
        t.rows.push_back({std::to_string(e.j), std::to_string(sig.elliptic_orders()[e.j]),
                          std::to_string(e.l), std::to_string(e.alpha),
                          std::to_string(e.alpha_tilde), e.c_m.str(), e.c_m_tilde.str(),
                          fmt17(residual[e.j])});
    }
    t.emit(cfg.format, cfg.out_path);
    return 0;
}

int cmd_factors(const JobConfig& cfg, bool at_one, int m_rho) {
    if (!cfg.signature) throw ConfigError("factors: config needs a signature");
    const auto& sig = *cfg.signature;
    auto rep = build_rep(cfg, sig);
    auto spectrum = build_spectrum(cfg);
    if (cfg.s_grid.empty() && !at_one) throw ConfigError("factors: empty s_grid");

    Table t;
    t.columns = {"s_re", "s_im", "log_z_re", "log_z_im", "zeta_tail_bound", "log_z_identity_re",
                 "log_z_identity_im", "log_z_elliptic_re", "log_z_elliptic_im", "det_constant",
                 "log_det_re", "log_det_im", "error"};
    t.rows.resize(cfg.s_grid.size());

    auto run_row = [&](std::size_t i) {
        Complex s = cfg.s_grid[i];
        std::vector<std::string>& row = t.rows[i];
        try {
            auto b = zetafactors::log_det(s, sig, rep, spectrum);
            row = {fmt17(s.real()), fmt17(s.imag()), fmt17(b.log_z.real()),
                   fmt17(b.log_z.imag()), fmt17(b.truncation_tail_bound),
                   fmt17(b.log_z_identity.real()), fmt17(b.log_z_identity.imag()),
                   fmt17(b.log_z_elliptic.real()), fmt17(b.log_z_elliptic.imag()),
                   fmt17(b.torsion_factor), fmt17(b.log_det.real()), fmt17(b.log_det.imag()),
                   ""};
        } catch (const std::exception& e) {
            row.assign(t.columns.size(), "");
            row[0] = fmt17(s.real());
            row[1] = fmt17(s.imag());
            row.back() = std::string("error: ") + e.what();
        }
    };

    int nthreads = std::min<std::size_t>(thread_cap(), std::max<std::size_t>(cfg.s_grid.size(), 1));
    if (nthreads > 1) {
        std::vector<std::thread> pool;
        std::size_t chunk = (cfg.s_grid.size() + nthreads - 1) / nthreads;
        for (int w = 0; w < nthreads; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w * chunk;
                     i < std::min(cfg.s_grid.size(), (w + 1) * chunk); ++i)
                    run_row(i);
            });
        for (auto& th : pool) th.join();
    } else {
        for (std::size_t i = 0; i < cfg.s_grid.size(); ++i) run_row(i);
    }

    if (at_one) {
        auto d = zetafactors::det_at_one(sig, rep, spectrum, m_rho);
        std::vector<std::string> row(t.columns.size(), "");
        row[0] = fmt17(1.0);
        row[1] = fmt17(0.0);
        row[10] = fmt17(d.result.value.real());
        row[11] = fmt17(d.result.value.imag());
        row.back() = d.diagnostic_only ? "diagnostic-only: zeta truncation untrusted at s=1" : "";
        t.rows.push_back(row);
    }
    t.emit(cfg.format, cfg.out_path);
    return 0;
}

int cmd_verify(const JobConfig& cfg, double zeta_delta) {
    verify::Options opts;
    opts.quadrature = cfg.quadrature;
    opts.zeta_prime_minus1_delta = zeta_delta;
    auto checks = verify::run_all(opts);

    json report;
    report["checks"] = json::array();
    for (const auto& c : checks) {
        json item;
        item["name"] = c.name;
        item["residual"] = fmt17(c.residual);
        item["tolerance"] = fmt17(c.tolerance);
        item["pass"] = c.pass;
        report["checks"].push_back(item);
        std::cout << (c.pass ? "PASS" : "FAIL") << " " << c.name << " residual=" << fmt17(c.residual)
                  << " tol=" << fmt17(c.tolerance) << "\n";
    }
    bool ok = verify::all_pass(checks);
    report["all_pass"] = ok;
    if (cfg.out_path != "-") {
        std::ofstream f(cfg.out_path);
        if (!f) throw ConfigError("cannot open output " + cfg.out_path);
        f << report.dump(2) << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_spectrum(const JobConfig& cfg, int audit_override) {
    if (!cfg.spectrum) throw ConfigError("spectrum: config needs a spectrum section");
    geodesics::LengthSpectrum sp;
    if (cfg.spectrum->group_path) {
        auto grp = geodesics::load_group(*cfg.spectrum->group_path);
        int margin = audit_override > 0 ? audit_override : cfg.spectrum->audit_margin;
        auto rep = geodesics::generate_spectrum(grp, cfg.spectrum->l_max, margin);
        sp = rep.spectrum;
        std::cout << "audit: ok (depths " << rep.base_depth << " -> " << rep.audit_depth << ")\n";
        for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
        if (!rep.detected_elliptic_orders.empty()) {
            std::cout << "detected elliptic generator orders:";
            for (int nu : rep.detected_elliptic_orders) std::cout << " " << nu;
            std::cout << "\n";
        }
    } else if (cfg.spectrum->path) {
        sp = geodesics::load_spectrum(*cfg.spectrum->path);
    }
    if (!sp.records.empty()) {
        std::cout << "systole = " << fmt17(geodesics::systole(sp)) << "\n";
        std::map<int, long long> bins;
        for (const auto& r : sp.records) bins[int(r.length)] += r.class_count;
        for (const auto& [bin, count] : bins)
            std::cout << "classes with length in [" << bin << "," << bin + 1 << ") : " << count
                      << "\n";
    }
    if (cfg.out_path != "-") geodesics::save_spectrum(sp, cfg.out_path);
    return 0;
}

int cmd_torsion(const JobConfig& cfg) {
    if (!cfg.signature) throw ConfigError("torsion: config needs a signature");
    const auto& sig = *cfg.signature;
    Table t;
    t.columns = {"N", "torsion_definition", "torsion_closed_form", "per_2N", "limit",
                 "deviation"};
    double limit = zetafactors::torsion_limit_value(sig);
    if (cfg.rep_spec.rfind("yamaguchi:", 0) == 0) {
        int N_max = std::atoi(cfg.rep_spec.c_str() + 10);
        if (N_max < 1) throw ConfigError("torsion: yamaguchi:N needs N >= 1");
        for (int N = 1; N <= N_max; ++N) {
            double def = zetafactors::torsion_factor(sig, zetafactors::yamaguchi_rep(sig, N));
            double closed = zetafactors::yamaguchi_torsion_closed_form(sig, N);
            t.rows.push_back({std::to_string(N), fmt17(def), fmt17(closed),
                              fmt17(closed / (2.0 * N)), fmt17(limit),
                              fmt17(std::abs(closed / (2.0 * N) - limit))});
        }
    } else {
        auto rep = build_rep(cfg, sig);
        double def = zetafactors::torsion_factor(sig, rep);
        t.rows.push_back({"-", fmt17(def), "", fmt17(def / (2.0 * rep.dim())), fmt17(limit),
                          fmt17(std::abs(def / (2.0 * rep.dim()) - limit))});
    }
    t.emit(cfg.format, cfg.out_path);
    return 0;
}

std::vector<Complex> parse_s_list(const std::string& text) {
    std::vector<Complex> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double re = 0, im = 0;
        char sign = '+';
        std::size_t pos = item.find_first_of("+-", 1);
        if (pos != std::string::npos && (item.find('i') != std::string::npos)) {
            re = std::stod(item.substr(0, pos));
            sign = item[pos];
            std::string imtxt = item.substr(pos + 1);
            imtxt.erase(imtxt.find('i'));
            im = imtxt.empty() ? 1.0 : std::stod(imtxt);
            if (sign == '-') im = -im;
        } else {
            re = std::stod(item);
        }
        out.emplace_back(re, im);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted Selberg zeta / determinant toolkit"};
    app.require_subcommand(1);

    std::string config_path, s_list, out_path, format;
    double tol = 0.0, zeta_delta = 0.0;
    int m_rho = 0, audit = 0;
    bool at_one = false;

    app.add_option("--config", config_path, "job config JSON");
    app.add_option("--s", s_list, "comma-separated s values, e.g. 3,5,2+1i");
    app.add_option("--tol", tol, "quadrature tolerance override");
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--format", format, "csv|json");
    app.add_option("--m-rho", m_rho, "multiplicity of the zero eigenvalue at s=1");
    app.add_option("--audit", audit, "audit margin override for spectrum generation");
    app.add_option("--perturb-zeta-prime-minus1", zeta_delta,
                   "diagnostic offset applied to zeta'(-1) in the constant-term check");
    app.add_flag("--at-one", at_one, "append the s=1 determinant row (factors)");

    auto* c_info = app.add_subcommand("info", "signature/representation tables");
    auto* c_factors = app.add_subcommand("factors", "closed-form factors on the s grid");
    auto* c_verify = app.add_subcommand("verify", "run the identity suite");
    auto* c_spectrum = app.add_subcommand("spectrum", "load or generate a length spectrum");
    auto* c_torsion = app.add_subcommand("torsion", "torsion factor tables");
    for (auto* sub : {c_info, c_factors, c_verify, c_spectrum, c_torsion}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        JobConfig cfg = config_path.empty() ? JobConfig{} : load_config(config_path);
        if (!s_list.empty()) cfg.s_grid = parse_s_list(s_list);
        if (tol > 0.0) {
            cfg.quadrature.abs_tol = tol;
            cfg.quadrature.rel_tol = tol;
        }
        if (!out_path.empty()) cfg.out_path = out_path;
        if (!format.empty()) {
            if (format != "csv" && format != "json")
                throw ConfigError("--format must be csv or json");
            cfg.format = format;
        }
        if (c_info->parsed()) return cmd_info(cfg);
        if (c_factors->parsed()) return cmd_factors(cfg, at_one, m_rho);
        if (c_verify->parsed()) return cmd_verify(cfg, zeta_delta);
        if (c_spectrum->parsed()) return cmd_spectrum(cfg, audit);
        if (c_torsion->parsed()) return cmd_torsion(cfg);
    } catch (const AuditFailure& e) {
        std::cerr << "error: AuditFailure: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: ConfigError: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
