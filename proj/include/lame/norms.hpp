#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lame/field.hpp"

namespace lame {

/// One evaluated weighted-norm functional, with enough diagnostics to
/// reproduce it: which functional, its parameters, the attained value, the
/// argmax cube/ball, quadrature settings.  restricted_family marks suprema
/// taken over the torus-aligned dyadic family rather than all cubes.
struct NormReport {
    std::string kind;
    double value = 0.0;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json argmax = nlohmann::json::object();
    nlohmann::json settings = nlohmann::json::object();
    std::uint64_t seed = 0;
    bool restricted_family = false;

    nlohmann::json to_json() const;
};

/// Axis-aligned dyadic cube of the torus: side L/2^level, anchored at
/// index*side per axis, index in [0, 2^level).
struct DyadicCube {
    int level = 0;
    std::array<int, 3> index{0, 0, 0};
};

struct PointwiseNormInfo {
    bool exact = true;        // false => certified lower bound (ascent iteration)
    int max_iterations = 0;   // worst case over grid points when inexact
};

/// Pointwise induced matrix norm |V(x)|_p as a real scalar field.
/// Exact for p = 1 (max column sum), p = 2 (largest singular value) and
/// p = inf (max row sum); other p in (1, inf) returns a certified lower
/// bound from a dual-ascent power iteration with deterministic restarts.
/// p < 1 is a parameter error.
ScalarField matrix_pointwise_norm(const MatrixPotentialField& V, double p,
                                  PointwiseNormInfo* info = nullptr);

/// ||V||_{L^p} = ( h^d sum_i |V(x_i)|_p^p )^(1/p), p >= 1.
NormReport lp_norm(const MatrixPotentialField& V, double p);

/// Morrey-Campanato functional sup over grid-point centers x and radii r of
///   r^alpha * ( r^-d * integral_{B_r(x)} |V(y)|_p^p dy )^(1/p),
/// balls taken in the minimum-image metric, membership by sample distance.
/// radii must be nonempty and inside [h, L/2]; requires 1 <= p <= d/alpha.
NormReport morrey_campanato_norm(const MatrixPotentialField& V, double alpha, double p,
                                 const std::vector<double>& radii);

/// Kerman-Sawyer functional over dyadic cubes Q up to max_level:
///   sup_Q (int_Q W)^-1 int_Q int_Q W(x) W(y) |x-y|^(alpha-d) dx dy,
/// cell-midpoint quadrature; the coincident-cell pair uses the exact
/// cell-averaged kernel A(d,alpha)*h^(alpha-d).  W must be nonnegative and
/// not identically zero; cubes with zero mass are skipped.  The report's
/// settings carry diag_bound, the largest diagonal correction over cubes,
/// which brackets the difference against a diagonal-free double sum.
NormReport kerman_sawyer_norm(const ScalarField& W, double alpha, int max_level);

/// Muckenhoupt functional sup over dyadic cubes up to max_level (level 0 is
/// the full torus) of (avg_Q w) * (avg_Q w^(-1/(p-1)))^(p-1), p > 1.
/// Strictly positive real w required; value >= 1 by Jensen.
NormReport a_p_constant(const ScalarField& w, double p, int max_level);

/// Pointwise regularization W = (M V^p1)^(1/p1) where M is the maximal
/// average over the ball family {single cell} + {B_r : r in radii}; the
/// default ladder is dyadic_radii(grid), the same family used by
/// morrey_campanato_norm callers.  Guarantees W >= V pointwise.
ScalarField maximal_regularize(const ScalarField& V, double p1,
                               std::vector<double> radii = {});

/// Dyadic radius ladder {h, 2h, 4h, ..., L/2}.
std::vector<double> dyadic_radii(const Grid& grid);

/// Largest Rayleigh quotient of int |V(x)|_2 |f|^2 dx / int |grad f|^2 dx
/// over mean-zero scalar f, by power iteration on Lap^-1/2 |V| Lap^-1/2
/// restricted to the mean-zero subspace (the torus Laplacian kernel holds
/// the constants).  The quotient's supremum over R^d is the best Hardy-type
/// coupling constant of |V|.
struct HardyReport {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    std::uint64_t seed = 0;
};
HardyReport hardy_constant_estimate(const MatrixPotentialField& V, double tol = 1e-8,
                                    int max_iter = 20000, std::uint64_t seed = 99);

/// Mean of |x-y|^(alpha-d) over independent uniform x, y in a unit cell;
/// the coincident-cell kernel average is A(d,alpha)*h^(alpha-d).  Closed
/// form 2/(alpha*(alpha+1)) in d=1; graded dyadic-shell Gauss-Legendre
/// quadrature (deterministic) for d = 2, 3.
double diagonal_kernel_average(int d, double alpha);

} // namespace lame
