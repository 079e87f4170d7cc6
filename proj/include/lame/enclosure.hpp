#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include "lame/params.hpp"

namespace lame {

enum class EnclosureKind { lebesgue, morrey_campanato, kerman_sawyer };

EnclosureKind enclosure_kind_from_string(const std::string& s);
std::string to_string(EnclosureKind k);

/// Constants that the underlying bounds leave implicit.  They enter the
/// Morrey-Campanato and Kerman-Sawyer routes and the weighted Riesz bound;
/// reports must mark any value derived from them "configured, not proven".
struct EnclosureAux {
    double c_frank = 1.0;  // Morrey-Campanato resolvent constant
    double c_ks = 1.0;     // Kerman-Sawyer form-bound equivalence constant
    double c_riesz = 1.0;  // weighted-L2 Riesz bound ||R_j|| <= C * Q_2(w)
};

/// Validated description of one enclosure family instance.
///   lebesgue:          0 < gamma <= 1/2 (d = 2), 0 <= gamma <= 1/2 (d >= 3);
///                      potentials measured in L^(gamma + d/2)
///   morrey_campanato:  same gamma range, exponent p with
///                      (d-1)(2gamma+d) / (2(d-2gamma)) < p <= gamma + d/2,
///                      scale alpha = 2d/(2gamma+d)
///   kerman_sawyer:     1/3 <= gamma < 1/2 (d = 2), 0 <= gamma < 1/2 (d >= 3),
///                      beta = (d+2gamma)(d-1) / (2(d-2gamma)),
///                      alpha = 2d*beta/(2gamma+d)
struct EnclosureSpec {
    EnclosureKind kind = EnclosureKind::lebesgue;
    int d = 3;
    double gamma = 0.0;
    LameParams params{0.0, 1.0};
    double p = 0.0;     // morrey_campanato only
    double alpha = 0.0; // derived
    double beta = 0.0;  // kerman_sawyer only, derived
    EnclosureAux aux;
};

/// Validates admissibility and fills the derived exponents.
EnclosureSpec make_enclosure_spec(EnclosureKind kind, int d, double gamma,
                                  const LameParams& params, double p_mc = 0.0,
                                  const EnclosureAux& aux = {});

/// Fully explicit gamma = 0, d = 3 disk constants:
///   lebesgue:          ( 2^(4/3) (1 + 6 cot^2(pi/12)) / (3 pi^(4/3) min{mu, lambda+2mu}) )^(3/2)
///   morrey_campanato:  ( c_frank (1 + 6 C^2) / min{mu, lambda+2mu} )^(3/2)
///   kerman_sawyer:     ( c_ks   (1 + 6 C^2) / min{mu, lambda+2mu} )^(3/2)
/// Only the lebesgue value is parameter-free; the others carry configured
/// constants.
double explicit_constant_d3(EnclosureKind kind, const LameParams& params,
                            const EnclosureAux& aux = {});

/// Eigenvalue enclosure for the given potential norm value:
/// gamma > 0 gives the closed disk |z| <= (C * norm^(gamma + d/2))^(1/gamma);
/// gamma = 0 turns into the absence predicate C * norm^(d/2) < 1 (no
/// eigenvalues at all when it holds).  For the kerman_sawyer kind the norm
/// value must be the composite ks_composite_norm(...) below.
struct EnclosureDisk {
    double radius = 0.0;       // gamma > 0 only
    bool absence_mode = false; // gamma == 0
    bool absence_holds = false;
    double predicate_value = 0.0; // C * norm^(gamma+d/2); < 1 in absence mode means empty point spectrum
    double constant_used = 0.0;
    double norm_value = 0.0;
    double gamma = 0.0;
    int d = 0;
    std::string provenance;    // "explicit_d3" or "configured, not proven"
};
EnclosureDisk enclosure_disk(const EnclosureSpec& spec, double norm_value,
                             std::optional<double> constant_override = std::nullopt);

/// The kerman_sawyer route bounds |z|^gamma by
///   c * Q_2(|V|)^(2gamma+d) * || |V|^beta ||_KS^((gamma+d/2)/beta),
/// which matches the disk formula with
///   norm_value = Q_2(|V|)^((2gamma+d)/(gamma+d/2)) * || |V|^beta ||_KS^(1/beta).
double ks_composite_norm(double q2, double ks_norm_of_v_beta, const EnclosureSpec& spec);

/// Theoretical Birman-Schwinger norm bound at spectral parameter z:
///   ||K_z|| <= C * |z|^(-2gamma/(2gamma+d)) * X
/// with X the family norm (lebesgue: norms["lp"]; morrey_campanato:
/// norms["mc"]; kerman_sawyer: norms["q2"]^2 * norms["ks_beta"]^(1/beta)).
/// At gamma = 0, d = 3 the explicit z-independent prefactors are used:
///   lebesgue: 2^(4/3)(1+6cot^2(pi/12)) / (3 pi^(4/3) min) * ||V||_{L^{3/2}}
///   mc:       c_frank (1+6C^2)/min * ||V||_mc
///   ks:       c_ks (1+6 c_V^2)/min * ||V||_ks, c_V = C * Q_2(|V|)
struct BsBound {
    double value = 0.0;
    std::string provenance;
};
BsBound bs_bound_value(const EnclosureSpec& spec, std::complex<double> z,
                       const std::map<std::string, double>& norms,
                       std::optional<double> constant_override = std::nullopt);

/// d = 3 spectral stability conditions; each implies that the spectrum is
/// purely essential and equals [0, inf).
///   fkv: a < min{mu, lambda+2mu} / (1 + 6 c_V^2)  (a = Hardy-type coupling)
///   mc:  c_frank (1+6 c_V^2)/min * ||V||_mc < 1
///   lp:  2^(4/3)(1+6cot^2(pi/12)) / (3 pi^(4/3) min) * ||V||_{L^{3/2}} < 1
struct StabilityInputs {
    LameParams params{0.0, 1.0};
    EnclosureAux aux;
    std::optional<double> hardy_a;  // fkv
    std::optional<double> c_v;      // fkv / mc: weighted Riesz constant for |V|
    std::optional<double> mc_norm;  // mc
    std::optional<double> lp_norm;  // lp, exponent 3/2
};
struct StabilityReport {
    std::string condition;
    bool satisfied = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; // rhs - lhs
    std::string conclusion;
    std::string provenance;
};
StabilityReport stability_check_d3(const std::string& condition, const StabilityInputs& in);

} // namespace lame
