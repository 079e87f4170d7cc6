#include "lame/field.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace lame {

static double hd(const Grid& g) {
    return std::pow(g.h(), g.d);
}

double norm2(const ScalarField& f) {
    double s = 0.0;
    for (const auto& z : f.v) s += std::norm(z);
    return std::sqrt(s * hd(f.grid));
}

double norm2(const VectorField& u) {
    double s = 0.0;
    for (const auto& c : u.comp)
        for (const auto& z : c.v) s += std::norm(z);
    return std::sqrt(s * hd(u.grid));
}

cplx inner(const ScalarField& f, const ScalarField& g) {
    if (f.v.size() != g.v.size())
        throw std::invalid_argument("inner: size mismatch");
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < f.v.size(); ++i) s += std::conj(f.v[i]) * g.v[i];
    return s * hd(f.grid);
}

cplx inner(const VectorField& u, const VectorField& w) {
    if (u.comp.size() != w.comp.size())
        throw std::invalid_argument("inner: component mismatch");
    cplx s(0.0, 0.0);
    for (std::size_t c = 0; c < u.comp.size(); ++c)
        for (std::size_t i = 0; i < u.comp[c].v.size(); ++i)
            s += std::conj(u.comp[c].v[i]) * w.comp[c].v[i];
    return s * hd(u.grid);
}

double lp_vector_norm(const VectorField& u, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_vector_norm: p must be >= 1");
    double s = 0.0;
    for (const auto& c : u.comp)
        for (const auto& z : c.v) s += std::pow(std::abs(z), p);
    return std::pow(s * hd(u.grid), 1.0 / p);
}

void scale(ScalarField& f, cplx s) {
    for (auto& z : f.v) z *= s;
}

void scale(VectorField& u, cplx s) {
    for (auto& c : u.comp) scale(c, s);
}

void axpy(ScalarField& y, cplx alpha, const ScalarField& x) {
    if (y.v.size() != x.v.size())
        throw std::invalid_argument("axpy: size mismatch");
    for (std::size_t i = 0; i < y.v.size(); ++i) y.v[i] += alpha * x.v[i];
}

void axpy(VectorField& y, cplx alpha, const VectorField& x) {
    for (std::size_t c = 0; c < y.comp.size(); ++c) axpy(y.comp[c], alpha, x.comp[c]);
}

double sup_pointwise_norm(const MatrixPotentialField& V) {
    const int d = V.grid.d;
    Eigen::MatrixXcd M(d, d);
    double best = 0.0;
    for (std::size_t i = 0; i < V.grid.points(); ++i) {
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) M(j, k) = V.entry(i, j, k);
        // largest singular value through the Gram matrix; d <= 3 so exact cost is trivial
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M.adjoint() * M);
        best = std::max(best, std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff())));
    }
    return best;
}

MatrixPotentialField conjugate(const MatrixPotentialField& V) {
    MatrixPotentialField W = V;
    for (auto& z : W.a) z = std::conj(z);
    return W;
}

MatrixPotentialField transpose(const MatrixPotentialField& V) {
    MatrixPotentialField W(V.grid);
    const int d = V.grid.d;
    for (std::size_t i = 0; i < V.grid.points(); ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) W.entry(i, j, k) = V.entry(i, k, j);
    return W;
}

MatrixPotentialField adjoint(const MatrixPotentialField& V) {
    return conjugate(transpose(V));
}

VectorField matvec(const MatrixPotentialField& V, const VectorField& u) {
    if (V.grid.points() != u.grid.points() || V.grid.d != u.grid.d)
        throw std::invalid_argument("matvec: grid mismatch");
    const int d = V.grid.d;
    VectorField w(u.grid);
    for (std::size_t i = 0; i < u.grid.points(); ++i)
        for (int j = 0; j < d; ++j) {
            cplx s(0.0, 0.0);
            for (int k = 0; k < d; ++k)
                s += V.entry(i, j, k) * u.comp[static_cast<std::size_t>(k)].v[i];
            w.comp[static_cast<std::size_t>(j)].v[i] = s;
        }
    return w;
}

} // namespace lame
