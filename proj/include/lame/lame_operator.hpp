#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "lame/field.hpp"
#include "lame/params.hpp"

namespace lame {

/// Fourier symbol L(xi) = mu*|xi|^2*I + (lambda+mu)*xi*xi^t of the free
/// operator (d x d, real symmetric, positive semidefinite).
Eigen::MatrixXd lame_symbol(const Eigen::VectorXd& xi, const LameParams& params);

/// Diagonalization L = P D P^-1 with D = diag(mu|xi|^2 (d-1 times),
/// (lambda+2mu)|xi|^2): the transverse branch first, the longitudinal
/// branch last.  P is an orthonormal basis (xi-orthogonal complement
/// columns, then xi/|xi|).  For d = 3 with xi_1 != 0 the classical sparse
/// transverse/longitudinal column matrix is also returned for cross-checks;
/// it is singular on the plane xi_1 = 0.
struct SymbolDiagonalization {
    Eigen::MatrixXd L;
    Eigen::MatrixXd D;
    Eigen::MatrixXd P;            // orthonormal, always valid for xi != 0
    bool has_sparse_P = false;
    Eigen::MatrixXd P_sparse;     // d = 3, xi_1 != 0 only
    double residual = 0.0;        // ||P^-1 L P - D||_max
    double residual_sparse = 0.0; // same for P_sparse when present
};
SymbolDiagonalization diagonalize_symbol(const Eigen::VectorXd& xi, const LameParams& params);

/// Frequency vector used by every spectral application of -Lap*.  The
/// magnitude is always the plain lattice value, so symbol eigenvalues are
/// untouched.  At transform indices that mix a Nyquist axis (m = -n/2,
/// which has no +n/2 partner on the even lattice) with nonzero non-Nyquist
/// components, the sign of the non-Nyquist part is canonicalized so the
/// reversal orbit {m, -m mod n} shares one longitudinal direction.  That
/// makes the assembled free matrix real symmetric, so complex conjugation
/// together with pointwise potential transposition is an exact antilinear
/// symmetry of H = -Lap* + V; without it the unpaired Nyquist sign breaks
/// the transpose identity at O(symbol) size.
void symbol_frequency(const Grid& grid, const std::array<int, 3>& idx, double xi_out[3]);

/// (-Lap* - z)^-1 g via the two scalar Helmholtz resolvents on the S/P
/// Fourier branches: ghat_S/(mu|xi|^2 - z) + ghat_P/((lambda+2mu)|xi|^2 - z).
/// The xi = 0 coefficient is divided by -z (both branches agree there).
/// Throws numerical_error if z is within 1e-12 of a discrete symbol value.
VectorField free_resolvent_apply(const VectorField& g, cplx z, const LameParams& params);

/// Scalar Helmholtz Green kernel in three dimensions,
/// exp(-sqrt(-zeta) r) / (4 pi r) with the principal square root, so
/// Re sqrt(-zeta) >= 0 and |G| <= 1/(4 pi r).  Requires r > 0.
cplx green_kernel_3d(double r, cplx zeta);

/// Pointwise factorization V = V_half * absV_sqrt with
/// absV = (V^H V)^(1/2), absV_sqrt = absV^(1/2) (Hermitian PSD) and
/// V_half = sgn(V) * absV_sqrt where sgn(V) = V absV^+ is the rank-r partial
/// isometry (pseudo-inverse on the range).  Singular values below
/// 1e-13 * sigma_max are treated as zero.
struct PolarFactors {
    MatrixPotentialField absV;
    MatrixPotentialField absV_sqrt;
    MatrixPotentialField V_half;
};
PolarFactors matrix_polar_factors(const MatrixPotentialField& V);

/// Birman-Schwinger operator K_z phi = absV_sqrt * (-Lap*-z)^-1 (V_half phi).
VectorField birman_schwinger_apply(const VectorField& phi, cplx z,
                                   const PolarFactors& factors, const LameParams& params);
VectorField birman_schwinger_apply_adjoint(const VectorField& phi, cplx z,
                                           const PolarFactors& factors, const LameParams& params);

/// ||K_z|| estimated by power iteration on K^* K with a seeded start.
struct BsNormReport {
    cplx z{0.0, 0.0};
    double estimate = 0.0;
    int iterations = 0;
    bool converged = false;
    double tol = 0.0;
    std::uint64_t seed = 0;
};
BsNormReport bs_norm_estimate(cplx z, const MatrixPotentialField& V, const LameParams& params,
                              double tol = 1e-6, int max_iter = 5000, std::uint64_t seed = 7);

} // namespace lame
