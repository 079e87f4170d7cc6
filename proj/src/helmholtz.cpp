#include "lame/helmholtz.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "lame/errors.hpp"
#include "lame/fft.hpp"

namespace lame {

double riesz_constant(double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("riesz_constant: need 1 < p < inf");
    const double pc = p / (p - 1.0);
    const double m = std::max(p, pc);
    return 1.0 / std::tan(M_PI / (2.0 * m));
}

ScalarField riesz_apply(const ScalarField& f, int axis) {
    const Grid& g = f.grid;
    if (axis < 0 || axis >= g.d)
        throw std::invalid_argument("riesz_apply: axis out of range");
    ScalarField out = spectral_transform_copy(f, SpectralDirection::forward);
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        auto idx = g.unflatten(i);
        double norm2xi = 0.0;
        double xi_a = 0.0;
        for (int a = 0; a < g.d; ++a) {
            double xi = g.frequency(idx[a]);
            norm2xi += xi * xi;
            if (a == axis) xi_a = xi;
        }
        if (norm2xi == 0.0) {
            out.v[i] = 0.0;
        } else {
            out.v[i] *= cplx(0.0, -xi_a / std::sqrt(norm2xi));
        }
    }
    spectral_transform(out, SpectralDirection::inverse);
    return out;
}

void helmholtz_split_spectral(const VectorField& uhat, VectorField& hatS,
                              VectorField& hatP) {
    const Grid& g = uhat.grid;
    if (g.d < 2)
        throw std::invalid_argument("helmholtz_split: requires d >= 2");
    hatS = VectorField(g);
    hatP = VectorField(g);
    for (std::size_t i = 0; i < g.points(); ++i) {
        auto idx = g.unflatten(i);
        double xi[3] = {0.0, 0.0, 0.0};
        double norm2xi = 0.0;
        for (int a = 0; a < g.d; ++a) {
            xi[a] = g.frequency(idx[a]);
            norm2xi += xi[a] * xi[a];
        }
        if (norm2xi == 0.0) {
            for (int a = 0; a < g.d; ++a) {
                hatS.comp[static_cast<std::size_t>(a)].v[i] = uhat.comp[static_cast<std::size_t>(a)].v[i];
                hatP.comp[static_cast<std::size_t>(a)].v[i] = 0.0;
            }
            continue;
        }
        cplx dot(0.0, 0.0);
        for (int a = 0; a < g.d; ++a) dot += xi[a] * uhat.comp[static_cast<std::size_t>(a)].v[i];
        for (int a = 0; a < g.d; ++a) {
            const cplx lon = xi[a] * dot / norm2xi;
            hatP.comp[static_cast<std::size_t>(a)].v[i] = lon;
            hatS.comp[static_cast<std::size_t>(a)].v[i] = uhat.comp[static_cast<std::size_t>(a)].v[i] - lon;
        }
    }
}

HelmholtzSplit helmholtz_split(const VectorField& u) {
    VectorField hat = spectral_transform_copy(u, SpectralDirection::forward);
    VectorField hatS(u.grid), hatP(u.grid);
    helmholtz_split_spectral(hat, hatS, hatP);
    spectral_transform(hatS, SpectralDirection::inverse);
    spectral_transform(hatP, SpectralDirection::inverse);
    return HelmholtzSplit{std::move(hatS), std::move(hatP)};
}

OrthogonalityReport orthogonality_report(const VectorField& g, double p) {
    OrthogonalityReport rep;
    rep.p = p;
    rep.c_p = riesz_constant(p);
    HelmholtzSplit split = helmholtz_split(g);
    rep.norm_S = lp_vector_norm(split.S, p);
    rep.norm_P = lp_vector_norm(split.P, p);
    rep.lhs = rep.norm_S + rep.norm_P;
    rep.rhs = (1.0 + 2.0 * g.grid.d * rep.c_p * rep.c_p) * lp_vector_norm(g, p);
    rep.satisfied = rep.lhs <= rep.rhs * (1.0 + 1e-12);
    return rep;
}

WeightedRieszReport weighted_riesz_norm_estimate(const ScalarField& w, int axis,
                                                 double q2, double tol,
                                                 int max_iter, std::uint64_t seed) {
    const Grid& g = w.grid;
    if (axis < 0 || axis >= g.d)
        throw std::invalid_argument("weighted_riesz_norm_estimate: axis out of range");
    std::vector<double> sqw(w.v.size());
    for (std::size_t i = 0; i < w.v.size(); ++i) {
        if (!(w.v[i].real() > 0.0) || w.v[i].imag() != 0.0)
            throw std::invalid_argument("weighted_riesz_norm_estimate: weight must be strictly positive real");
        sqw[i] = std::sqrt(w.v[i].real());
    }

    // A = M_sqrt(w) R_j M_1/sqrt(w); ||R_j||_{L2(w)} = ||A||_{L2}.  Power
    // iteration on A^* A; R_j^* = -R_j as a Fourier multiplier.
    auto applyA = [&](const ScalarField& f) {
        ScalarField t = f;
        for (std::size_t i = 0; i < t.v.size(); ++i) t.v[i] /= sqw[i];
        t = riesz_apply(t, axis);
        for (std::size_t i = 0; i < t.v.size(); ++i) t.v[i] *= sqw[i];
        return t;
    };
    auto applyAstar = [&](const ScalarField& f) {
        ScalarField t = f;
        for (std::size_t i = 0; i < t.v.size(); ++i) t.v[i] *= sqw[i];
        t = riesz_apply(t, axis);
        for (std::size_t i = 0; i < t.v.size(); ++i) t.v[i] = -t.v[i] / sqw[i];
        return t;
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ScalarField x(g);
    for (auto& z : x.v) z = cplx(gauss(rng), gauss(rng));
    double nx = norm2(x);
    scale(x, 1.0 / nx);

    WeightedRieszReport rep;
    rep.axis = axis;
    rep.q2 = q2;
    rep.seed = seed;
    double lambda = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        ScalarField y = applyAstar(applyA(x));
        double ny = norm2(y);
        rep.iterations = it;
        if (ny == 0.0) {
            lambda = 0.0;
            rep.converged = true;
            break;
        }
        double next = inner(x, y).real(); // Rayleigh quotient, ||x|| == 1
        scale(y, 1.0 / ny);
        x = std::move(y);
        if (it > 1 && std::abs(next - lambda) <= tol * std::max(next, 1e-300)) {
            lambda = next;
            rep.converged = true;
            break;
        }
        lambda = next;
    }
    if (!rep.converged)
        throw numerical_error("weighted_riesz_norm_estimate: power iteration did not converge in " +
                              std::to_string(max_iter) + " iterations");
    rep.estimate = std::sqrt(std::max(0.0, lambda));
    rep.ratio = q2 > 0.0 ? rep.estimate / q2 : 0.0;
    return rep;
}

} // namespace lame
