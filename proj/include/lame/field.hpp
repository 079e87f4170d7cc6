#pragma once

#include <complex>
#include <vector>

#include "lame/grid.hpp"

namespace lame {

using cplx = std::complex<double>;

/// Complex scalar samples over the grid, row-major.
struct ScalarField {
    Grid grid;
    std::vector<cplx> v;

    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid(g), v(g.points(), cplx(0.0, 0.0)) {}
};

/// d-component field stored component-major: comp[c] is a contiguous
/// ScalarField, which keeps per-component transforms stride-1.
struct VectorField {
    Grid grid;
    std::vector<ScalarField> comp;

    VectorField() = default;
    explicit VectorField(const Grid& g) : grid(g), comp(static_cast<std::size_t>(g.d), ScalarField(g)) {}
};

/// d x d complex matrix per grid point, point-major with the matrix entries
/// innermost in row-major (j,k) order: entry(i,j,k) = a[(i*d + j)*d + k].
struct MatrixPotentialField {
    Grid grid;
    std::vector<cplx> a;

    MatrixPotentialField() = default;
    explicit MatrixPotentialField(const Grid& g)
        : grid(g), a(g.points() * static_cast<std::size_t>(g.d) * static_cast<std::size_t>(g.d), cplx(0.0, 0.0)) {}

    cplx& entry(std::size_t i, int j, int k) {
        const auto d = static_cast<std::size_t>(grid.d);
        return a[(i * d + static_cast<std::size_t>(j)) * d + static_cast<std::size_t>(k)];
    }
    const cplx& entry(std::size_t i, int j, int k) const {
        const auto d = static_cast<std::size_t>(grid.d);
        return a[(i * d + static_cast<std::size_t>(j)) * d + static_cast<std::size_t>(k)];
    }
};

// Discrete L2 machinery.  Quadrature weight is h^d per sample, so
// norm2(f)^2 = h^d * sum |f_i|^2 matches the continuum normalization.
double norm2(const ScalarField& f);
double norm2(const VectorField& u);
cplx inner(const ScalarField& f, const ScalarField& g);   // conjugate-linear in f
cplx inner(const VectorField& u, const VectorField& w);

/// L^p norm of a vector field with the l^p norm taken across components
/// pointwise: ( h^d * sum_i sum_j |u_j(x_i)|^p )^(1/p).
double lp_vector_norm(const VectorField& u, double p);

void scale(ScalarField& f, cplx s);
void scale(VectorField& u, cplx s);
void axpy(ScalarField& y, cplx alpha, const ScalarField& x); // y += alpha*x
void axpy(VectorField& y, cplx alpha, const VectorField& x);

/// Largest pointwise spectral norm max_i |V(x_i)|_2 (exact per point).
double sup_pointwise_norm(const MatrixPotentialField& V);

MatrixPotentialField conjugate(const MatrixPotentialField& V);  // entrywise conj
MatrixPotentialField transpose(const MatrixPotentialField& V);  // pointwise transpose
MatrixPotentialField adjoint(const MatrixPotentialField& V);    // pointwise conj-transpose

/// Pointwise matrix-vector product (V u)(x) = V(x) u(x).
VectorField matvec(const MatrixPotentialField& V, const VectorField& u);

} // namespace lame
