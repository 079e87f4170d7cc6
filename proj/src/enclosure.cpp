#include "lame/enclosure.hpp"

#include <cmath>
#include <stdexcept>

namespace lame {

EnclosureKind enclosure_kind_from_string(const std::string& s) {
    if (s == "lebesgue") return EnclosureKind::lebesgue;
    if (s == "morrey_campanato") return EnclosureKind::morrey_campanato;
    if (s == "kerman_sawyer") return EnclosureKind::kerman_sawyer;
    throw std::invalid_argument("unknown enclosure kind: " + s);
}

std::string to_string(EnclosureKind k) {
    switch (k) {
        case EnclosureKind::lebesgue: return "lebesgue";
        case EnclosureKind::morrey_campanato: return "morrey_campanato";
        case EnclosureKind::kerman_sawyer: return "kerman_sawyer";
    }
    return "?";
}

EnclosureSpec make_enclosure_spec(EnclosureKind kind, int d, double gamma,
                                  const LameParams& params, double p_mc,
                                  const EnclosureAux& aux) {
    if (d < 2)
        throw std::invalid_argument("make_enclosure_spec: d must be >= 2");
    EnclosureSpec spec;
    spec.kind = kind;
    spec.d = d;
    spec.gamma = gamma;
    spec.params = params;
    spec.aux = aux;

    switch (kind) {
        case EnclosureKind::lebesgue:
        case EnclosureKind::morrey_campanato: {
            if (d == 2) {
                if (!(gamma > 0.0 && gamma <= 0.5))
                    throw std::invalid_argument("enclosure: d = 2 requires 0 < gamma <= 1/2");
            } else if (!(gamma >= 0.0 && gamma <= 0.5)) {
                throw std::invalid_argument("enclosure: d >= 3 requires 0 <= gamma <= 1/2");
            }
            if (kind == EnclosureKind::morrey_campanato) {
                const double lo = (d - 1.0) * (2.0 * gamma + d) / (2.0 * (d - 2.0 * gamma));
                const double hi = gamma + d / 2.0;
                if (!(p_mc > lo && p_mc <= hi))
                    throw std::invalid_argument(
                        "enclosure: morrey_campanato exponent must satisfy (d-1)(2gamma+d)/(2(d-2gamma)) < p <= gamma+d/2, i.e. " +
                        std::to_string(lo) + " < p <= " + std::to_string(hi));
                spec.p = p_mc;
                spec.alpha = 2.0 * d / (2.0 * gamma + d);
            }
            break;
        }
        case EnclosureKind::kerman_sawyer: {
            if (d == 2) {
                if (!(gamma >= 1.0 / 3.0 && gamma < 0.5))
                    throw std::invalid_argument("enclosure: d = 2 kerman_sawyer requires 1/3 <= gamma < 1/2");
            } else if (!(gamma >= 0.0 && gamma < 0.5)) {
                throw std::invalid_argument("enclosure: d >= 3 kerman_sawyer requires 0 <= gamma < 1/2");
            }
            spec.beta = (d + 2.0 * gamma) * (d - 1.0) / (2.0 * (d - 2.0 * gamma));
            spec.alpha = 2.0 * d * spec.beta / (2.0 * gamma + d);
            break;
        }
    }
    return spec;
}

double explicit_constant_d3(EnclosureKind kind, const LameParams& params, const EnclosureAux& aux) {
    const double mn = params.min_speed2();
    const double cot12 = 1.0 / std::tan(M_PI / 12.0); // 2 + sqrt(3)
    double prefactor = 0.0;
    switch (kind) {
        case EnclosureKind::lebesgue:
            prefactor = std::pow(2.0, 4.0 / 3.0) * (1.0 + 6.0 * cot12 * cot12) /
                        (3.0 * std::pow(M_PI, 4.0 / 3.0) * mn);
            break;
        case EnclosureKind::morrey_campanato:
            prefactor = aux.c_frank * (1.0 + 6.0 * aux.c_riesz * aux.c_riesz) / mn;
            break;
        case EnclosureKind::kerman_sawyer:
            prefactor = aux.c_ks * (1.0 + 6.0 * aux.c_riesz * aux.c_riesz) / mn;
            break;
    }
    return std::pow(prefactor, 1.5);
}

EnclosureDisk enclosure_disk(const EnclosureSpec& spec, double norm_value,
                             std::optional<double> constant_override) {
    if (!(norm_value >= 0.0))
        throw std::invalid_argument("enclosure_disk: norm value must be nonnegative");

    EnclosureDisk disk;
    disk.gamma = spec.gamma;
    disk.d = spec.d;
    disk.norm_value = norm_value;

    if (constant_override) {
        disk.constant_used = *constant_override;
        disk.provenance = "configured, not proven";
    } else if (spec.d == 3 && spec.gamma == 0.0) {
        disk.constant_used = explicit_constant_d3(spec.kind, spec.params, spec.aux);
        disk.provenance = spec.kind == EnclosureKind::lebesgue ? "explicit_d3"
                                                               : "explicit_d3 (configured aux constants)";
    } else {
        disk.constant_used = 1.0;
        disk.provenance = "configured, not proven";
    }

    const double power = spec.gamma + spec.d / 2.0;
    disk.predicate_value = disk.constant_used * std::pow(norm_value, power);
    if (spec.gamma == 0.0) {
        disk.absence_mode = true;
        disk.absence_holds = disk.predicate_value < 1.0;
    } else {
        disk.radius = std::pow(disk.predicate_value, 1.0 / spec.gamma);
    }
    return disk;
}

double ks_composite_norm(double q2, double ks_norm_of_v_beta, const EnclosureSpec& spec) {
    if (spec.kind != EnclosureKind::kerman_sawyer)
        throw std::invalid_argument("ks_composite_norm: spec kind must be kerman_sawyer");
    if (!(q2 >= 1.0))
        throw std::invalid_argument("ks_composite_norm: Q_2 value must be >= 1");
    if (!(ks_norm_of_v_beta >= 0.0))
        throw std::invalid_argument("ks_composite_norm: norm value must be nonnegative");
    const double power = spec.gamma + spec.d / 2.0;
    return std::pow(q2, (2.0 * spec.gamma + spec.d) / power) *
           std::pow(ks_norm_of_v_beta, 1.0 / spec.beta);
}

namespace {

double require_norm(const std::map<std::string, double>& norms, const std::string& key) {
    auto it = norms.find(key);
    if (it == norms.end())
        throw std::invalid_argument("bs_bound_value: missing required norm '" + key + "'");
    return it->second;
}

} // namespace

BsBound bs_bound_value(const EnclosureSpec& spec, std::complex<double> z,
                       const std::map<std::string, double>& norms,
                       std::optional<double> constant_override) {
    BsBound out;
    const double mn = spec.params.min_speed2();

    if (!constant_override && spec.d == 3 && spec.gamma == 0.0) {
        // z-independent explicit right sides
        const double cot12 = 1.0 / std::tan(M_PI / 12.0);
        switch (spec.kind) {
            case EnclosureKind::lebesgue:
                out.value = std::pow(2.0, 4.0 / 3.0) * (1.0 + 6.0 * cot12 * cot12) /
                            (3.0 * std::pow(M_PI, 4.0 / 3.0) * mn) * require_norm(norms, "lp");
                out.provenance = "explicit_d3";
                return out;
            case EnclosureKind::morrey_campanato:
                out.value = spec.aux.c_frank * (1.0 + 6.0 * spec.aux.c_riesz * spec.aux.c_riesz) /
                            mn * require_norm(norms, "mc");
                out.provenance = "explicit_d3 (configured aux constants)";
                return out;
            case EnclosureKind::kerman_sawyer: {
                const double c_v = spec.aux.c_riesz * require_norm(norms, "q2");
                out.value = spec.aux.c_ks * (1.0 + 6.0 * c_v * c_v) / mn * require_norm(norms, "ks_beta");
                out.provenance = "explicit_d3 (configured aux constants)";
                return out;
            }
        }
    }

    const double C = constant_override ? *constant_override : 1.0;
    const double zfac = std::pow(std::abs(z), -2.0 * spec.gamma / (2.0 * spec.gamma + spec.d));
    double X = 0.0;
    switch (spec.kind) {
        case EnclosureKind::lebesgue:
            X = require_norm(norms, "lp");
            break;
        case EnclosureKind::morrey_campanato:
            X = require_norm(norms, "mc");
            break;
        case EnclosureKind::kerman_sawyer: {
            const double q2 = require_norm(norms, "q2");
            X = q2 * q2 * std::pow(require_norm(norms, "ks_beta"), 1.0 / spec.beta);
            break;
        }
    }
    out.value = C * zfac * X;
    out.provenance = "configured, not proven";
    return out;
}

StabilityReport stability_check_d3(const std::string& condition, const StabilityInputs& in) {
    StabilityReport rep;
    rep.condition = condition;
    const double mn = in.params.min_speed2();

    if (condition == "fkv") {
        if (!in.hardy_a || !in.c_v)
            throw std::invalid_argument("stability_check_d3: fkv needs hardy_a and c_v");
        rep.lhs = *in.hardy_a;
        rep.rhs = mn / (1.0 + 6.0 * (*in.c_v) * (*in.c_v));
        rep.provenance = "form bound with empirical/configured c_V";
    } else if (condition == "mc") {
        if (!in.mc_norm || !in.c_v)
            throw std::invalid_argument("stability_check_d3: mc needs mc_norm and c_v");
        rep.lhs = in.aux.c_frank * (1.0 + 6.0 * (*in.c_v) * (*in.c_v)) / mn * (*in.mc_norm);
        rep.rhs = 1.0;
        rep.provenance = "configured c_frank, empirical/configured c_V";
    } else if (condition == "lp") {
        if (!in.lp_norm)
            throw std::invalid_argument("stability_check_d3: lp needs lp_norm (exponent 3/2)");
        const double cot12 = 1.0 / std::tan(M_PI / 12.0);
        rep.lhs = std::pow(2.0, 4.0 / 3.0) * (1.0 + 6.0 * cot12 * cot12) /
                  (3.0 * std::pow(M_PI, 4.0 / 3.0) * mn) * (*in.lp_norm);
        rep.rhs = 1.0;
        rep.provenance = "explicit_d3";
    } else {
        throw std::invalid_argument("stability_check_d3: condition must be fkv, mc or lp");
    }

    rep.satisfied = rep.lhs < rep.rhs;
    rep.margin = rep.rhs - rep.lhs;
    rep.conclusion = rep.satisfied
                         ? "spectrum is purely essential: sigma = sigma_c = [0, inf)"
                         : "condition not met; no spectral conclusion";
    return rep;
}

} // namespace lame
