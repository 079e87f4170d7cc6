#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "lame/enclosure.hpp"
#include "lame/field.hpp"
#include "lame/params.hpp"

namespace lame {

/// H = -Lap* + V on the discrete torus: the free part acts as the exact
/// Fourier-symbol multiplier, the potential pointwise.  Flat vectors are
/// component-major: entry c*n^d + i is component c at grid point i.
struct DiscreteHamiltonian {
    Grid grid;
    LameParams params{0.0, 1.0};
    MatrixPotentialField V;

    std::size_t dim() const { return static_cast<std::size_t>(grid.d) * grid.points(); }

    VectorField apply(const VectorField& u) const;
    Eigen::VectorXcd apply_flat(const Eigen::VectorXcd& u) const;

    /// Dense matrix assembled column-by-column from unit vectors through the
    /// matrix-free apply.  Throws std::invalid_argument when dim() > cap.
    Eigen::MatrixXcd dense(std::size_t cap = 6000) const;
};

DiscreteHamiltonian make_hamiltonian(const Grid& grid, const LameParams& params,
                                     const MatrixPotentialField& V);

/// Dense spectrum with residual verification: every eigenpair (z, u) is
/// re-checked through the matrix-free application, residual
/// ||H u - z u|| / ||u|| <= 1e-8 * scale, scale = max |eigenvalue|
/// (spectral radius lower-bounds ||H||).  Violation is a numerical_error.
struct EigenReport {
    std::vector<cplx> eigenvalues;
    std::vector<double> residuals;
    double scale = 0.0;
    double max_residual = 0.0;
};
EigenReport eigenvalues(const DiscreteHamiltonian& H);

/// Same solver and residual policy on an arbitrary dense matrix; residuals
/// are checked against the matrix itself.
EigenReport eigenvalues_dense(const Eigen::MatrixXcd& A);

/// Classifies every eigenvalue against an enclosure disk.  A value is
/// essential-like if it sits in the half-plane tube around [0, inf):
/// |Im z| <= margin and Re z >= -margin; every other value must lie in the
/// inflated disk (gamma > 0) or is a violation outright in absence mode.
struct ContainmentReport {
    double essential_margin = 0.0;
    double inflation = 0.1;
    double inflated_radius = 0.0;
    int essential_count = 0;
    int contained_count = 0;
    std::vector<std::size_t> violations; // indices into the EigenReport
    bool pass = false;
};
ContainmentReport containment_check(const EigenReport& eig, const EnclosureDisk& disk,
                                    double essential_margin, double inflation = 0.1);

/// Default essential-tube half-width 10 * ||V||_inf / n.
double default_essential_margin(const DiscreteHamiltonian& H);

/// Exact discrete eigenvector of the free operator: u(x) = e^(i kappa x_axis) pol
/// with kappa = sqrt(z/mu) (mode 'S', polarization orthogonal to the axis)
/// or kappa = sqrt(z/(lambda+2mu)) (mode 'P', polarization along the axis).
/// z must be positive real and kappa must land on the frequency lattice
/// within 1e-9 relative, otherwise std::invalid_argument names the nearest
/// admissible z values.  The returned field has |u(x)| = 1 pointwise and
/// free-residual ||H0 u - z u|| / ||u|| <= 1e-12 (verified internally).
VectorField plane_wave(cplx z, char mode, int axis, const LameParams& params, const Grid& grid);

/// Truncated-wave residuals: psi_n = normalize(bump_n * u) where u is the
/// plane wave above and bump_n(x) = bump(dist(x, center) / (n r0)) is the
/// standard mollifier widened by n.  Residuals ||(H0 - z) psi_n|| decay
/// like 1/n until quadrature resolution saturates.  Scales are
/// {1, 2, 4, ..., n_scale}; the widest support n_scale * r0 must fit in the
/// torus (r0 = 0.45 L / n_scale by default).
struct WeylReport {
    cplx z{0.0, 0.0};
    std::vector<int> scales;
    std::vector<double> residuals;
    std::vector<double> norms; // all 1 by construction
    double r0 = 0.0;
};
WeylReport weyl_residual(cplx z, int n_scale, const LameParams& params, const Grid& grid,
                         char mode = 'S', int axis = 0, double r0 = 0.0);

/// Dense-assembly symmetry identities, max-abs entry errors:
///   adjoint_error   : H(V)^H      vs H(conj(V)^t)
///   transpose_error : H(V)^t      vs H(V^t)
///   conjugation_error: conj(H(V)) vs H(conj(V))
/// The last two compose to the first, which is the J-symmetry identity
/// realized on assembled matrices (conjugation together with the transpose
/// action on the potential).  pass requires all three <= tol.
struct SymmetryReport {
    double adjoint_error = 0.0;
    double transpose_error = 0.0;
    double conjugation_error = 0.0;
    double tol = 1e-11;
    bool pass = false;
};
SymmetryReport adjoint_symmetry_check(const MatrixPotentialField& V, const LameParams& params,
                                      double tol = 1e-11);

} // namespace lame
