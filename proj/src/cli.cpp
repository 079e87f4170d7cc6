#include "lame/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <random>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lame/enclosure.hpp"
#include "lame/errors.hpp"
#include "lame/field_io.hpp"
#include "lame/fft.hpp"
#include "lame/helmholtz.hpp"
#include "lame/lame_operator.hpp"
#include "lame/norms.hpp"
#include "lame/potential.hpp"
#include "lame/report.hpp"
#include "lame/spectra.hpp"

namespace lame::cli {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * M_PI;

struct Config {
    json raw = json::object();
    Grid grid{2, 8, kTwoPi};
    LameParams lame{-1.0, 1.0};
    PotentialSpec potential;
    std::uint64_t seed = 0;

    Config() {
        potential.family = PotentialFamily::gaussian_scalar;
        potential.amplitude = 0.05;
        potential.width = 1.0;
    }
};

PotentialSpec parse_potential(const json& j) {
    PotentialSpec spec;
    spec.family = potential_family_from_string(j.value("family", "gaussian_scalar"));
    spec.amplitude = j.value("amplitude", 1.0);
    spec.width = j.value("width", 0.5);
    if (j.contains("center")) spec.center = j.at("center").get<std::vector<double>>();
    spec.epsilon = j.value("epsilon", 0.1);
    spec.theta = j.value("theta", 0.0);
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.path = j.value("path", std::string{});
    if (j.contains("base"))
        spec.base = std::make_shared<PotentialSpec>(parse_potential(j.at("base")));
    return spec;
}

json potential_to_json(const PotentialSpec& s) {
    json j{{"family", to_string(s.family)}, {"amplitude", s.amplitude}, {"width", s.width},
           {"epsilon", s.epsilon},          {"theta", s.theta},         {"seed", s.seed}};
    if (!s.center.empty()) j["center"] = s.center;
    if (!s.path.empty()) j["path"] = s.path;
    if (s.base) j["base"] = potential_to_json(*s.base);
    return j;
}

json load_raw(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: malformed JSON: " + std::string(e.what()));
    }
}

Config config_from_raw(json raw, std::optional<std::uint64_t> seed_override) {
    Config cfg;
    cfg.raw = std::move(raw);
    if (cfg.raw.contains("grid")) {
        const auto& g = cfg.raw.at("grid");
        cfg.grid = make_grid(g.value("d", 2), g.value("n", 8), g.value("L", kTwoPi));
    }
    if (cfg.raw.contains("lame")) {
        const auto& l = cfg.raw.at("lame");
        cfg.lame = LameParams(l.value("lambda", -1.0), l.value("mu", 1.0));
    }
    if (cfg.raw.contains("potential")) cfg.potential = parse_potential(cfg.raw.at("potential"));
    cfg.seed = cfg.raw.value("seed", std::uint64_t{0});
    if (seed_override) cfg.seed = *seed_override;
    return cfg;
}

json grid_to_json(const Grid& g) {
    return json{{"d", g.d}, {"n", g.n}, {"L", g.L}};
}

json lame_to_json(const LameParams& p) {
    return json{{"lambda", p.lambda}, {"mu", p.mu}};
}

json zj(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

EnclosureAux parse_aux(const json& j) {
    EnclosureAux aux;
    aux.c_frank = j.value("c_frank", 1.0);
    aux.c_ks = j.value("c_ks", 1.0);
    aux.c_riesz = j.value("c_riesz", 1.0);
    return aux;
}

EnclosureSpec enclosure_from_config(const Config& cfg) {
    json e = cfg.raw.value("enclosure", json::object());
    const std::string kind = e.value("kind", "lebesgue");
    const double gamma = e.value("gamma", 0.0);
    const double p_mc = e.value("p", 0.0);
    const EnclosureAux aux = parse_aux(e.value("aux", json::object()));
    return make_enclosure_spec(enclosure_kind_from_string(kind), cfg.grid.d, gamma, cfg.lame,
                               p_mc, aux);
}

std::optional<double> constant_override_from_config(const Config& cfg) {
    json e = cfg.raw.value("enclosure", json::object());
    if (e.contains("constant_override") && !e.at("constant_override").is_null())
        return e.at("constant_override").get<double>();
    return std::nullopt;
}

// pointwise spectral-norm scalar field of the potential
ScalarField potential_modulus(const MatrixPotentialField& V) {
    return matrix_pointwise_norm(V, 2.0);
}

ScalarField pointwise_power(const ScalarField& f, double e) {
    ScalarField out = f;
    for (auto& z : out.v) z = std::pow(z.real(), e);
    return out;
}

// The family norm the disk formula consumes; for kerman_sawyer this is the
// composite Q_2/KS quantity.
struct FamilyNorm {
    double value = 0.0;
    json detail;
};
FamilyNorm family_norm(const EnclosureSpec& spec, const Config& cfg,
                       const MatrixPotentialField& V) {
    FamilyNorm out;
    json ncfg = cfg.raw.value("norms", json::object());
    switch (spec.kind) {
        case EnclosureKind::lebesgue: {
            NormReport rep = lp_norm(V, spec.gamma + spec.d / 2.0);
            out.value = rep.value;
            out.detail = rep.to_json();
            break;
        }
        case EnclosureKind::morrey_campanato: {
            std::vector<double> radii = dyadic_radii(cfg.grid);
            if (ncfg.contains("mc") && ncfg.at("mc").contains("radii") &&
                !ncfg.at("mc").at("radii").empty())
                radii = ncfg.at("mc").at("radii").get<std::vector<double>>();
            NormReport rep = morrey_campanato_norm(V, spec.alpha, spec.p, radii);
            out.value = rep.value;
            out.detail = rep.to_json();
            break;
        }
        case EnclosureKind::kerman_sawyer: {
            const int max_level = ncfg.value("ks", json::object()).value("max_level", cfg.grid.levels());
            ScalarField w = potential_modulus(V);
            NormReport q2 = a_p_constant(w, 2.0, max_level);
            NormReport ks = kerman_sawyer_norm(pointwise_power(w, spec.beta), spec.alpha, max_level);
            out.value = ks_composite_norm(q2.value, ks.value, spec);
            out.detail = json{{"q2", q2.to_json()}, {"ks_beta", ks.to_json()},
                              {"composite", out.value}};
            break;
        }
    }
    return out;
}

void ensure_out_dir(const std::string& out) {
    std::filesystem::create_directories(out);
}

// ---------------------------------------------------------------------------
// commands

int cmd_norms(const Config& cfg, const std::string& out) {
    ensure_out_dir(out);
    MatrixPotentialField V = sample_potential(cfg.potential, cfg.grid);
    json ncfg = cfg.raw.value("norms", json::object());

    json results = json::object();
    const double lp_p = ncfg.value("lp_p", 1.5);
    results["lp"] = lp_norm(V, lp_p).to_json();

    if (ncfg.contains("mc")) {
        const auto& mc = ncfg.at("mc");
        std::vector<double> radii = dyadic_radii(cfg.grid);
        if (mc.contains("radii") && !mc.at("radii").empty())
            radii = mc.at("radii").get<std::vector<double>>();
        results["morrey_campanato"] =
            morrey_campanato_norm(V, mc.value("alpha", 1.5), mc.value("p", 1.4), radii).to_json();
    }
    if (ncfg.contains("ks")) {
        const auto& ks = ncfg.at("ks");
        ScalarField w = potential_modulus(V);
        results["kerman_sawyer"] =
            kerman_sawyer_norm(w, ks.value("alpha", cfg.grid.d - 1.0),
                               ks.value("max_level", cfg.grid.levels()))
                .to_json();
    }
    if (ncfg.contains("ap")) {
        const auto& ap = ncfg.at("ap");
        ScalarField w = potential_modulus(V);
        results["muckenhoupt"] =
            a_p_constant(w, ap.value("p", 2.0), ap.value("max_level", cfg.grid.levels())).to_json();
    }
    if (ncfg.contains("hardy")) {
        HardyReport h = hardy_constant_estimate(V, ncfg.at("hardy").value("tol", 1e-8), 20000,
                                                cfg.seed + 99);
        results["hardy"] = {{"value", h.value}, {"iterations", h.iterations},
                            {"converged", h.converged}, {"seed", h.seed}};
    }

    json payload{{"grid", grid_to_json(cfg.grid)},
                 {"lame", lame_to_json(cfg.lame)},
                 {"potential", potential_to_json(cfg.potential)},
                 {"seed", cfg.seed},
                 {"results", results}};
    write_json(out + "/norms.json", make_report("norms", payload));
    return 0;
}

int cmd_enclose(const Config& cfg, const std::string& out) {
    ensure_out_dir(out);
    MatrixPotentialField V = sample_potential(cfg.potential, cfg.grid);
    EnclosureSpec spec = enclosure_from_config(cfg);
    FamilyNorm fam = family_norm(spec, cfg, V);
    EnclosureDisk disk = enclosure_disk(spec, fam.value, constant_override_from_config(cfg));

    const std::string conclusion =
        disk.absence_mode
            ? (disk.absence_holds
                   ? "absence condition satisfied: no eigenvalues outside [0, inf)"
                   : "absence condition NOT satisfied")
            : "eigenvalues are confined to the closed disk of the reported radius";
    json payload{{"grid", grid_to_json(cfg.grid)},
                 {"lame", lame_to_json(cfg.lame)},
                 {"potential", potential_to_json(cfg.potential)},
                 {"seed", cfg.seed},
                 {"enclosure",
                  {{"kind", to_string(spec.kind)},
                   {"gamma", spec.gamma},
                   {"d", spec.d},
                   {"p", spec.p},
                   {"alpha", spec.alpha},
                   {"beta", spec.beta},
                   {"norm_value", disk.norm_value},
                   {"norm_detail", fam.detail},
                   {"constant_used", disk.constant_used},
                   {"provenance", disk.provenance},
                   {"predicate_value", disk.predicate_value},
                   {"absence_mode", disk.absence_mode},
                   {"absence_holds", disk.absence_holds},
                   {"conclusion", conclusion},
                   {"radius", disk.radius}}}};
    write_json(out + "/enclose.json", make_report("enclose", payload));

    if (!disk.absence_mode) {
        std::vector<std::vector<double>> rows;
        for (int k = 0; k < 256; ++k) {
            const double a = kTwoPi * k / 256.0;
            rows.push_back({a, disk.radius * std::cos(a), disk.radius * std::sin(a)});
        }
        write_csv(out + "/disk_boundary.csv", "angle,re,im", rows);
    }
    return 0;
}

int cmd_bsnorm(const Config& cfg, const std::string& out) {
    ensure_out_dir(out);
    MatrixPotentialField V = sample_potential(cfg.potential, cfg.grid);
    json bcfg = cfg.raw.value("bsnorm", json::object());
    const double tol = bcfg.value("tol", 1e-6);
    const int halvings = bcfg.value("halvings", 6);

    std::vector<std::complex<double>> zs;
    if (bcfg.contains("z"))
        for (const auto& z : bcfg.at("z")) zs.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    if (zs.empty()) zs = {{-1.0, 0.0}, {-1.0, 1.0}};

    // theoretical right sides for the configured family
    EnclosureSpec spec = enclosure_from_config(cfg);
    std::map<std::string, double> norms;
    switch (spec.kind) {
        case EnclosureKind::lebesgue:
            norms["lp"] = lp_norm(V, spec.gamma + spec.d / 2.0).value;
            break;
        case EnclosureKind::morrey_campanato:
            norms["mc"] = family_norm(spec, cfg, V).value;
            break;
        case EnclosureKind::kerman_sawyer: {
            const int max_level = cfg.raw.value("norms", json::object())
                                      .value("ks", json::object())
                                      .value("max_level", cfg.grid.levels());
            ScalarField w = potential_modulus(V);
            norms["q2"] = a_p_constant(w, 2.0, max_level).value;
            norms["ks_beta"] =
                kerman_sawyer_norm(pointwise_power(w, spec.beta), spec.alpha, max_level).value;
            break;
        }
    }

    json entries = json::array();
    int curve_index = 0;
    for (const auto& z : zs) {
        BsNormReport est = bs_norm_estimate(z, V, cfg.lame, tol, 5000, cfg.seed + 7);
        BsBound bound = bs_bound_value(spec, z, norms, constant_override_from_config(cfg));
        json entry{{"z", zj(z)},
                   {"estimate", est.estimate},
                   {"iterations", est.iterations},
                   {"tol", est.tol},
                   {"seed", est.seed},
                   {"bound", bound.value},
                   {"bound_provenance", bound.provenance},
                   {"ratio", bound.value > 0.0 ? est.estimate / bound.value : 0.0}};

        // embedded parameter: shrink the shift toward the positive half-axis
        if (z.real() > 0.0 && z.imag() > 0.0) {
            json curve = json::array();
            std::vector<std::vector<double>> rows;
            double eps = z.imag();
            for (int k = 0; k < halvings; ++k) {
                BsNormReport e = bs_norm_estimate({z.real(), eps}, V, cfg.lame, tol, 5000, cfg.seed + 7);
                curve.push_back({{"epsilon", eps}, {"estimate", e.estimate},
                                 {"iterations", e.iterations}});
                rows.push_back({eps, e.estimate, static_cast<double>(e.iterations)});
                eps /= 2.0;
            }
            entry["epsilon_curve"] = curve;
            write_csv(out + "/eps_curve_" + std::to_string(curve_index) + ".csv",
                      "epsilon,estimate,iterations", rows);
            ++curve_index;
        }
        entries.push_back(entry);
    }

    json payload{{"grid", grid_to_json(cfg.grid)},
                 {"lame", lame_to_json(cfg.lame)},
                 {"potential", potential_to_json(cfg.potential)},
                 {"seed", cfg.seed},
                 {"family", to_string(spec.kind)},
                 {"norms", norms},
                 {"results", entries}};
    write_json(out + "/bsnorm.json", make_report("bsnorm", payload));
    return 0;
}

int cmd_spectrum(const Config& cfg, const std::string& out) {
    ensure_out_dir(out);
    MatrixPotentialField V = sample_potential(cfg.potential, cfg.grid);
    DiscreteHamiltonian H = make_hamiltonian(cfg.grid, cfg.lame, V);
    EigenReport eig = eigenvalues(H);

    EnclosureSpec spec = enclosure_from_config(cfg);
    FamilyNorm fam = family_norm(spec, cfg, V);
    EnclosureDisk disk = enclosure_disk(spec, fam.value, constant_override_from_config(cfg));

    json scfg = cfg.raw.value("spectrum", json::object());
    double margin = default_essential_margin(H);
    if (scfg.contains("essential_margin") && !scfg.at("essential_margin").is_null())
        margin = scfg.at("essential_margin").get<double>();
    const double inflation = scfg.value("inflation", 0.1);

    ContainmentReport cont = containment_check(eig, disk, margin, inflation);

    std::vector<std::string> verdict(eig.eigenvalues.size(), "essential");
    for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
        const auto z = eig.eigenvalues[k];
        const bool essential_like = std::abs(z.imag()) <= margin && z.real() >= -margin;
        if (!essential_like)
            verdict[k] = std::find(cont.violations.begin(), cont.violations.end(), k) !=
                                 cont.violations.end()
                             ? "violation"
                             : "contained";
    }
    {
        std::ofstream csv(out + "/eigenvalues.csv", std::ios::trunc);
        csv << "re,im,residual,verdict\n";
        char buf[96];
        for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,",
                          eig.eigenvalues[k].real(), eig.eigenvalues[k].imag(), eig.residuals[k]);
            csv << buf << verdict[k] << "\n";
        }
    }

    json payload{{"grid", grid_to_json(cfg.grid)},
                 {"lame", lame_to_json(cfg.lame)},
                 {"potential", potential_to_json(cfg.potential)},
                 {"seed", cfg.seed},
                 {"dimension", H.dim()},
                 {"max_residual", eig.max_residual},
                 {"scale", eig.scale},
                 {"disk",
                  {{"kind", to_string(spec.kind)},
                   {"gamma", spec.gamma},
                   {"norm_value", disk.norm_value},
                   {"constant_used", disk.constant_used},
                   {"provenance", disk.provenance},
                   {"absence_mode", disk.absence_mode},
                   {"absence_holds", disk.absence_holds},
                   {"radius", disk.radius}}},
                 {"containment",
                  {{"essential_margin", cont.essential_margin},
                   {"inflation", cont.inflation},
                   {"inflated_radius", cont.inflated_radius},
                   {"essential_count", cont.essential_count},
                   {"contained_count", cont.contained_count},
                   {"violations", cont.violations},
                   {"pass", cont.pass}}}};
    write_json(out + "/spectrum.json", make_report("spectrum", payload));
    return cont.pass ? 0 : 1;
}

int cmd_planewave(const Config& cfg, const std::string& out) {
    ensure_out_dir(out);
    json pcfg = cfg.raw.value("planewave", json::object());
    const double z = pcfg.value("z", cfg.lame.mu * std::pow(kTwoPi / cfg.grid.L, 2.0));
    const std::string mode = pcfg.value("mode", "S");
    const int axis = pcfg.value("axis", 0);

    VectorField u = plane_wave({z, 0.0}, mode.empty() ? 'S' : mode[0], axis, cfg.lame, cfg.grid);
    DiscreteHamiltonian H0{cfg.grid, cfg.lame, MatrixPotentialField(cfg.grid)};
    VectorField r = H0.apply(u);
    axpy(r, cplx(-z, 0.0), u);
    const double residual = norm2(r) / norm2(u);

    double max_dev = 0.0; // pointwise |u| deviation from 1
    for (std::size_t i = 0; i < cfg.grid.points(); ++i) {
        double s = 0.0;
        for (int c = 0; c < cfg.grid.d; ++c) s += std::norm(u.comp[static_cast<std::size_t>(c)].v[i]);
        max_dev = std::max(max_dev, std::abs(std::sqrt(s) - 1.0));
    }

    save_field(u, out + "/planewave_field.lfd");
    json payload{{"grid", grid_to_json(cfg.grid)},
                 {"lame", lame_to_json(cfg.lame)},
                 {"seed", cfg.seed},
                 {"z", z},
                 {"mode", mode},
                 {"axis", axis},
                 {"residual", residual},
                 {"max_modulus_deviation", max_dev},
                 {"field_file", "planewave_field.lfd"}};
    write_json(out + "/planewave.json", make_report("planewave", payload));
    return 0;
}

// ---------------------------------------------------------------------------
// verify suites

struct SuiteResult {
    std::string name;
    bool pass = false;
    json detail;
};

SuiteResult suite_free_spectrum(const Grid& g, const LameParams& params, std::uint64_t) {
    SuiteResult res{"free-spectrum", false, {}};
    DiscreteHamiltonian H{g, params, MatrixPotentialField(g)};
    EigenReport eig = eigenvalues(H);

    // exact spectrum: per lattice frequency, mu|xi|^2 with multiplicity d-1
    // and (lambda+2mu)|xi|^2 once
    std::vector<double> expected;
    for (std::size_t i = 0; i < g.points(); ++i) {
        auto idx = g.unflatten(i);
        double n2 = 0.0;
        for (int a = 0; a < g.d; ++a) {
            double xi = g.frequency(idx[a]);
            n2 += xi * xi;
        }
        for (int k = 0; k < g.d - 1; ++k) expected.push_back(params.mu * n2);
        expected.push_back((params.lambda + 2.0 * params.mu) * n2);
    }
    std::sort(expected.begin(), expected.end());
    std::vector<double> got;
    got.reserve(eig.eigenvalues.size());
    double max_imag = 0.0;
    for (const auto& z : eig.eigenvalues) {
        got.push_back(z.real());
        max_imag = std::max(max_imag, std::abs(z.imag()));
    }
    std::sort(got.begin(), got.end());
    double max_err = max_imag;
    for (std::size_t k = 0; k < got.size(); ++k)
        max_err = std::max(max_err, std::abs(got[k] - expected[k]));
    const double tol = 1e-9 * std::max(1.0, eig.scale);
    res.pass = max_err <= tol;
    res.detail = {{"max_error", max_err}, {"tol", tol}, {"dimension", H.dim()}};
    return res;
}

SuiteResult suite_helmholtz(const Grid& g, const LameParams&, std::uint64_t seed) {
    SuiteResult res{"helmholtz", false, {}};
    std::mt19937_64 rng(seed + 11);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        VectorField u(g);
        for (auto& c : u.comp)
            for (auto& v : c.v) v = cplx(gauss(rng), gauss(rng));
        HelmholtzSplit sp = helmholtz_split(u);

        // completeness
        VectorField sum = sp.S;
        axpy(sum, cplx(1.0, 0.0), sp.P);
        axpy(sum, cplx(-1.0, 0.0), u);
        worst = std::max(worst, norm2(sum) / norm2(u));

        // orthogonality (Pythagoras)
        const double n2u = norm2(u) * norm2(u);
        const double n2s = norm2(sp.S) * norm2(sp.S);
        const double n2p = norm2(sp.P) * norm2(sp.P);
        worst = std::max(worst, std::abs(n2s + n2p - n2u) / n2u);

        // idempotence
        HelmholtzSplit sp2 = helmholtz_split(sp.S);
        VectorField dS = sp2.S;
        axpy(dS, cplx(-1.0, 0.0), sp.S);
        worst = std::max(worst, norm2(dS) / std::max(norm2(sp.S), 1e-300));
        worst = std::max(worst, norm2(sp2.P) / std::max(norm2(sp.S), 1e-300));
    }
    res.pass = worst <= 1e-12;
    res.detail = {{"worst_identity_error", worst}, {"tol", 1e-12}};
    return res;
}

SuiteResult suite_symbol(const Grid&, const LameParams&, std::uint64_t seed) {
    SuiteResult res{"symbol", false, {}};
    std::mt19937_64 rng(seed + 12);
    std::uniform_real_distribution<double> uni(0.25, 1.5);
    std::uniform_int_distribution<int> sign(0, 1);
    const std::vector<LameParams> mats = {{-1.0, 1.0}, {0.0, 1.0}, {1.0, 0.5}, {-0.5, 2.0}, {2.0, 0.25}};
    double worst = 0.0, worst_sparse = 0.0;
    for (int d = 2; d <= 3; ++d)
        for (int trial = 0; trial < 25; ++trial) {
            Eigen::VectorXd xi(d);
            for (int a = 0; a < d; ++a) xi[a] = (sign(rng) ? 1.0 : -1.0) * uni(rng);
            for (const auto& m : mats) {
                SymbolDiagonalization sd = diagonalize_symbol(xi, m);
                worst = std::max(worst, sd.residual);
                if (sd.has_sparse_P) worst_sparse = std::max(worst_sparse, sd.residual_sparse);
            }
        }
    res.pass = worst <= 1e-12 && worst_sparse <= 1e-10;
    res.detail = {{"worst_orthonormal", worst}, {"worst_sparse", worst_sparse}};
    return res;
}

SuiteResult suite_resolvent(const Grid& g, const LameParams& params, std::uint64_t seed) {
    SuiteResult res{"resolvent", false, {}};
    std::mt19937_64 rng(seed + 13);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::vector<std::complex<double>> zs = {{-1.0, 0.0}, {-2.5, 0.7}, {0.5, 1e-3}, {3.3, -2.0}};
    DiscreteHamiltonian H0{g, params, MatrixPotentialField(g)};
    double worst = 0.0;
    for (const auto& z : zs) {
        VectorField f(g);
        for (auto& c : f.comp)
            for (auto& v : c.v) v = cplx(gauss(rng), gauss(rng));
        VectorField u = free_resolvent_apply(f, z, params);
        VectorField r = H0.apply(u);
        axpy(r, -z, u);
        axpy(r, cplx(-1.0, 0.0), f);
        worst = std::max(worst, norm2(r) / norm2(f));
    }
    res.pass = worst <= 1e-10;
    res.detail = {{"worst_roundtrip", worst}, {"tol", 1e-10}};
    return res;
}

SuiteResult suite_planewave(const Grid& g, const LameParams& params, std::uint64_t) {
    SuiteResult res{"planewave", false, {}};
    double worst = 0.0;
    for (int m = 1; m <= 3; ++m) {
        const double k = kTwoPi * m / g.L;
        for (char mode : {'S', 'P'}) {
            if (mode == 'S' && g.d < 2) continue;
            const double speed2 = mode == 'S' ? params.mu : params.lambda + 2.0 * params.mu;
            const double z = speed2 * k * k;
            VectorField u = plane_wave({z, 0.0}, mode, 0, params, g);
            DiscreteHamiltonian H0{g, params, MatrixPotentialField(g)};
            VectorField r = H0.apply(u);
            axpy(r, cplx(-z, 0.0), u);
            worst = std::max(worst, norm2(r) / norm2(u));
        }
    }
    res.pass = worst <= 1e-12;
    res.detail = {{"worst_residual", worst}, {"tol", 1e-12}};
    return res;
}

int cmd_verify(const Config& cfg, const std::string& out, const std::string& suite,
               const std::string& grid_flag, int threads) {
    Grid g = cfg.grid;
    if (!grid_flag.empty()) {
        int d = g.d, n = g.n;
        double L = g.L;
        std::stringstream ss(grid_flag);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("verify: bad --grid token '" + tok + "'");
            const std::string key = tok.substr(0, eq);
            const std::string val = tok.substr(eq + 1);
            if (key == "d") d = std::stoi(val);
            else if (key == "n") n = std::stoi(val);
            else if (key == "L") L = std::stod(val);
            else throw std::invalid_argument("verify: unknown --grid key '" + key + "'");
        }
        g = make_grid(d, n, L);
    }

    using SuiteFn = SuiteResult (*)(const Grid&, const LameParams&, std::uint64_t);
    const std::vector<std::pair<std::string, SuiteFn>> all = {
        {"free-spectrum", suite_free_spectrum},
        {"helmholtz", suite_helmholtz},
        {"symbol", suite_symbol},
        {"resolvent", suite_resolvent},
        {"planewave", suite_planewave},
    };

    std::vector<std::pair<std::string, SuiteFn>> todo;
    for (const auto& s : all)
        if (suite == "all" || suite == s.first) todo.push_back(s);
    if (todo.empty())
        throw std::invalid_argument("verify: unknown suite '" + suite + "'");

    std::vector<SuiteResult> results(todo.size());
    if (threads > 1 && todo.size() > 1) {
        std::vector<std::future<SuiteResult>> futs;
        for (const auto& s : todo)
            futs.push_back(std::async(std::launch::async, s.second, g, cfg.lame, cfg.seed));
        for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < todo.size(); ++i)
            results[i] = todo[i].second(g, cfg.lame, cfg.seed);
    }

    bool all_pass = true;
    json items = json::array();
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "\n";
        all_pass = all_pass && r.pass;
        items.push_back({{"suite", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    if (!out.empty()) {
        ensure_out_dir(out);
        json payload{{"grid", grid_to_json(g)}, {"lame", lame_to_json(cfg.lame)},
                     {"seed", cfg.seed}, {"results", items}};
        write_json(out + "/verify.json", make_report("verify", payload));
    }
    return all_pass ? 0 : 1;
}

} // namespace

// Per-command overrides mirroring the config sections; only flags the user
// actually passed are written back into the raw config.
struct Overrides {
    std::optional<int> d, n;
    std::optional<double> L;
    std::optional<std::string> family, vfile;
    std::optional<double> amplitude, width, epsilon, theta;
    std::optional<std::uint64_t> vseed;
    std::optional<std::string> kind;
    std::optional<double> gamma, p, constant;
    std::optional<double> lp_p;
    std::optional<double> margin, inflation;
    std::optional<double> tol;
    std::optional<int> halvings;
    std::optional<double> pw_z;
    std::optional<std::string> pw_mode;
    std::optional<int> pw_axis;

    void add_model_flags(CLI::App* c) {
        c->add_option("--d", d, "grid dimension override");
        c->add_option("--n", n, "grid points per axis override");
        c->add_option("--L", L, "torus side length override");
        c->add_option("--family", family, "potential family override");
        c->add_option("--amplitude", amplitude, "potential amplitude override");
        c->add_option("--width", width, "potential width override");
        c->add_option("--epsilon", epsilon, "regularization epsilon override");
        c->add_option("--theta", theta, "complex rotation angle override");
        c->add_option("--vseed", vseed, "potential sample seed override");
        c->add_option("--vfile", vfile, "load the potential from an LFD1 file");
    }
    void add_enclosure_flags(CLI::App* c) {
        c->add_option("--kind", kind, "bound family: lebesgue, morrey_campanato, kerman_sawyer");
        c->add_option("--gamma", gamma, "disk exponent gamma (0 = absence predicate)");
        c->add_option("--p", p, "morrey_campanato integral exponent");
        c->add_option("--constant", constant, "override the enclosure constant");
    }

    void apply(json& raw) const {
        if (d) raw["grid"]["d"] = *d;
        if (n) raw["grid"]["n"] = *n;
        if (L) raw["grid"]["L"] = *L;
        if (family) raw["potential"]["family"] = *family;
        if (vfile) {
            raw["potential"]["family"] = "file";
            raw["potential"]["path"] = *vfile;
        }
        if (amplitude) raw["potential"]["amplitude"] = *amplitude;
        if (width) raw["potential"]["width"] = *width;
        if (epsilon) raw["potential"]["epsilon"] = *epsilon;
        if (theta) raw["potential"]["theta"] = *theta;
        if (vseed) raw["potential"]["seed"] = *vseed;
        if (kind) raw["enclosure"]["kind"] = *kind;
        if (gamma) raw["enclosure"]["gamma"] = *gamma;
        if (p) raw["enclosure"]["p"] = *p;
        if (constant) raw["enclosure"]["constant_override"] = *constant;
        if (lp_p) raw["norms"]["lp_p"] = *lp_p;
        if (margin) raw["spectrum"]["essential_margin"] = *margin;
        if (inflation) raw["spectrum"]["inflation"] = *inflation;
        if (tol) raw["bsnorm"]["tol"] = *tol;
        if (halvings) raw["bsnorm"]["halvings"] = *halvings;
        if (pw_z) raw["planewave"]["z"] = *pw_z;
        if (pw_mode) raw["planewave"]["mode"] = *pw_mode;
        if (pw_axis) raw["planewave"]["axis"] = *pw_axis;
    }
};

int run(const std::vector<std::string>& args) {
    CLI::App app{"eigenvalue enclosures and absence thresholds for perturbed Lame operators"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    std::optional<std::uint64_t> seed;
    int threads = 1;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "output directory for reports");
    app.add_option("--seed", seed, "seed override for stochastic estimators");
    app.add_option("--threads", threads, "worker threads for independent verify jobs");

    Overrides ov;
    auto* c_norms = app.add_subcommand("norms", "evaluate potential norms");
    ov.add_model_flags(c_norms);
    c_norms->add_option("--lp-p", ov.lp_p, "Lebesgue exponent for the lp entry");

    auto* c_enclose = app.add_subcommand("enclose", "compute the eigenvalue enclosure disk");
    ov.add_model_flags(c_enclose);
    ov.add_enclosure_flags(c_enclose);

    auto* c_bsnorm = app.add_subcommand("bsnorm", "estimate Birman-Schwinger norms vs bounds");
    ov.add_model_flags(c_bsnorm);
    ov.add_enclosure_flags(c_bsnorm);
    c_bsnorm->add_option("--tol", ov.tol, "power iteration tolerance");
    c_bsnorm->add_option("--halvings", ov.halvings, "epsilon halvings for embedded z");

    auto* c_spectrum = app.add_subcommand("spectrum", "discretized spectrum with containment check");
    ov.add_model_flags(c_spectrum);
    ov.add_enclosure_flags(c_spectrum);
    c_spectrum->add_option("--margin", ov.margin, "essential tube half-width");
    c_spectrum->add_option("--inflation", ov.inflation, "disk radius inflation fraction");

    auto* c_planewave = app.add_subcommand("planewave", "exact free plane-wave eigenvector");
    ov.add_model_flags(c_planewave);
    c_planewave->add_option("--z", ov.pw_z, "eigenvalue (positive real)");
    c_planewave->add_option("--mode", ov.pw_mode, "branch: S or P");
    c_planewave->add_option("--axis", ov.pw_axis, "propagation axis (0-based)");

    auto* c_verify = app.add_subcommand("verify", "run internal verification suites");
    std::string suite = "all", grid_flag;
    c_verify->add_option("--suite", suite, "suite name or 'all'");
    c_verify->add_option("--grid", grid_flag, "grid override, e.g. d=2,n=8 or d=3,n=8,L=6.28");

    // app-level flags (--out, --seed, ...) are accepted after the subcommand too
    for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        std::vector<const char*> argv;
        argv.push_back("lame-spectra");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        json raw = load_raw(config_path);
        ov.apply(raw);
        Config cfg = config_from_raw(std::move(raw), seed);
        if (c_norms->parsed()) return cmd_norms(cfg, out_dir);
        if (c_enclose->parsed()) return cmd_enclose(cfg, out_dir);
        if (c_bsnorm->parsed()) return cmd_bsnorm(cfg, out_dir);
        if (c_spectrum->parsed()) return cmd_spectrum(cfg, out_dir);
        if (c_planewave->parsed()) return cmd_planewave(cfg, out_dir);
        if (c_verify->parsed()) return cmd_verify(cfg, out_dir, suite, grid_flag, threads);
        return 2;
    } catch (const format_error& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config/usage error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace lame::cli
