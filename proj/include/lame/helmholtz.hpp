#pragma once

#include <cstdint>

#include "lame/field.hpp"

namespace lame {

/// c_p = cot(pi / (2*max(p, p'))), the L^p -> L^p norm of a single Riesz
/// transform; c_2 == 1.  Requires 1 < p < inf.
double riesz_constant(double p);

/// R_j f with Fourier symbol -i xi_j / |xi|; the xi = 0 coefficient maps to 0.
ScalarField riesz_apply(const ScalarField& f, int axis);

/// Solenoidal / potential splitting u = u_S + u_P:
///   (pi_S u)_j = u_j + sum_k R_j R_k u_k,  (pi_P u)_j = -sum_k R_j R_k u_k,
/// realized in Fourier space as the exact projector pair I - qq^t, qq^t with
/// q = xi/|xi|.  The xi = 0 mode is assigned to the S part.  Requires d >= 2.
struct HelmholtzSplit {
    VectorField S;
    VectorField P;
};
HelmholtzSplit helmholtz_split(const VectorField& u);

/// Spectral-domain form of the split: uhat holds forward Fourier
/// coefficients.  hatP(xi) = xi (xi . uhat) / |xi|^2 and hatS is the
/// complement uhat - hatP, one IEEE subtraction per coefficient, so
/// hatS + hatP = uhat holds exactly at the coefficient level; at xi = 0,
/// hatS = uhat and hatP = 0 bitwise.
void helmholtz_split_spectral(const VectorField& uhat, VectorField& hatS,
                              VectorField& hatP);

/// Checks ||g_S||_p + ||g_P||_p <= (1 + 2*d*c_p^2) * ||g||_p.
struct OrthogonalityReport {
    double p = 2.0;
    double c_p = 1.0;
    double norm_S = 0.0;
    double norm_P = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};
OrthogonalityReport orthogonality_report(const VectorField& g, double p);

/// Empirical operator norm of R_j on L^2(w dx) by power iteration on the
/// similarity-transformed composition (sqrt(w) R_j 1/sqrt(w))^* (...), with a
/// seeded start vector.  q2 is the caller-supplied Muckenhoupt A_2 value of w
/// and ratio = estimate / q2; the comparison constant is configured, not
/// proven, so the report carries the pieces rather than a verdict.
struct WeightedRieszReport {
    int axis = 0;
    double estimate = 0.0;
    int iterations = 0;
    bool converged = false;
    double q2 = 0.0;
    double ratio = 0.0;
    std::uint64_t seed = 0;
};
WeightedRieszReport weighted_riesz_norm_estimate(const ScalarField& w, int axis,
                                                 double q2, double tol = 1e-8,
                                                 int max_iter = 10000,
                                                 std::uint64_t seed = 1234);

} // namespace lame
