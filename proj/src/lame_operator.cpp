#include "lame/lame_operator.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "lame/errors.hpp"
#include "lame/fft.hpp"

namespace lame {

Eigen::MatrixXd lame_symbol(const Eigen::VectorXd& xi, const LameParams& params) {
    const int d = static_cast<int>(xi.size());
    if (d < 1 || d > 3)
        throw std::invalid_argument("lame_symbol: xi must have 1 to 3 entries");
    return params.mu * xi.squaredNorm() * Eigen::MatrixXd::Identity(d, d) +
           (params.lambda + params.mu) * xi * xi.transpose();
}

SymbolDiagonalization diagonalize_symbol(const Eigen::VectorXd& xi, const LameParams& params) {
    const int d = static_cast<int>(xi.size());
    const double norm2xi = xi.squaredNorm();
    if (norm2xi == 0.0)
        throw std::invalid_argument("diagonalize_symbol: xi must be nonzero");

    SymbolDiagonalization out;
    out.L = lame_symbol(xi, params);
    out.D = Eigen::MatrixXd::Zero(d, d);
    for (int j = 0; j < d - 1; ++j) out.D(j, j) = params.mu * norm2xi;
    out.D(d - 1, d - 1) = (params.lambda + 2.0 * params.mu) * norm2xi;

    const Eigen::VectorXd q = xi / std::sqrt(norm2xi);
    out.P = Eigen::MatrixXd::Zero(d, d);
    if (d == 1) {
        out.P(0, 0) = 1.0;
    } else {
        // transverse columns: Gram-Schmidt of the axis least aligned with q
        int a = 0;
        for (int k = 1; k < d; ++k)
            if (std::abs(q[k]) < std::abs(q[a])) a = k;
        Eigen::VectorXd v1 = Eigen::VectorXd::Zero(d);
        v1[a] = 1.0;
        v1 -= v1.dot(q) * q;
        v1.normalize();
        out.P.col(0) = v1;
        if (d == 3) {
            Eigen::Vector3d q3 = q, w3 = v1;
            out.P.col(1) = q3.cross(w3);
        }
        out.P.col(d - 1) = q;
    }
    out.residual = (out.P.inverse() * out.L * out.P - out.D).cwiseAbs().maxCoeff();

    if (d == 3 && xi[0] != 0.0) {
        // transverse pair and longitudinal column assembled directly from xi;
        // det = xi_1 * |xi|^2, hence the xi_1 != 0 restriction
        out.has_sparse_P = true;
        out.P_sparse.resize(3, 3);
        out.P_sparse << -xi[1], -xi[2], xi[0],
                         xi[0],    0.0, xi[1],
                           0.0,  xi[0], xi[2];
        out.residual_sparse =
            (out.P_sparse.inverse() * out.L * out.P_sparse - out.D).cwiseAbs().maxCoeff();
    }
    return out;
}

void symbol_frequency(const Grid& grid, const std::array<int, 3>& idx, double xi_out[3]) {
    const int nyq = -grid.n / 2;
    bool has_nyquist = false;
    for (int a = 0; a < grid.d; ++a) {
        xi_out[a] = grid.frequency(idx[a]);
        if (grid.freq_index(idx[a]) == nyq) has_nyquist = true;
    }
    if (!has_nyquist) return;
    // first nonzero non-Nyquist index decides the orbit representative
    int lead = 0;
    for (int a = 0; a < grid.d && lead == 0; ++a) {
        const int m = grid.freq_index(idx[a]);
        if (m != nyq && m != 0) lead = (m > 0) ? 1 : -1;
    }
    if (lead >= 0) return;
    for (int a = 0; a < grid.d; ++a)
        if (grid.freq_index(idx[a]) != nyq) xi_out[a] = -xi_out[a];
}

VectorField free_resolvent_apply(const VectorField& g, cplx z, const LameParams& params) {
    const Grid& grid = g.grid;
    const double cs = params.mu;
    const double cp = params.lambda + 2.0 * params.mu;

    // refuse z on top of the discrete symbol range
    for (std::size_t i = 0; i < grid.points(); ++i) {
        auto idx = grid.unflatten(i);
        double n2 = 0.0;
        for (int a = 0; a < grid.d; ++a) {
            double xi = grid.frequency(idx[a]);
            n2 += xi * xi;
        }
        if (std::abs(cs * n2 - z) < 1e-12 || std::abs(cp * n2 - z) < 1e-12)
            throw numerical_error("free_resolvent_apply: z within 1e-12 of discrete symbol value " +
                                  std::to_string(cs * n2) + " / " + std::to_string(cp * n2) +
                                  " at lattice point " + std::to_string(i));
    }

    VectorField hat = spectral_transform_copy(g, SpectralDirection::forward);
    for (std::size_t i = 0; i < grid.points(); ++i) {
        auto idx = grid.unflatten(i);
        double xi[3] = {0.0, 0.0, 0.0};
        symbol_frequency(grid, idx, xi);
        double n2 = 0.0;
        for (int a = 0; a < grid.d; ++a) n2 += xi[a] * xi[a];
        if (n2 == 0.0) {
            for (int a = 0; a < grid.d; ++a)
                hat.comp[static_cast<std::size_t>(a)].v[i] /= -z;
            continue;
        }
        cplx dot(0.0, 0.0);
        for (int a = 0; a < grid.d; ++a) dot += xi[a] * hat.comp[static_cast<std::size_t>(a)].v[i];
        for (int a = 0; a < grid.d; ++a) {
            const cplx lon = xi[a] * dot / n2;
            const cplx tra = hat.comp[static_cast<std::size_t>(a)].v[i] - lon;
            hat.comp[static_cast<std::size_t>(a)].v[i] = tra / (cs * n2 - z) + lon / (cp * n2 - z);
        }
    }
    spectral_transform(hat, SpectralDirection::inverse);
    return hat;
}

cplx green_kernel_3d(double r, cplx zeta) {
    if (!(r > 0.0))
        throw std::invalid_argument("green_kernel_3d: r must be positive");
    const cplx k = std::sqrt(-zeta); // principal branch, Re k >= 0
    return std::exp(-k * r) / (4.0 * M_PI * r);
}

PolarFactors matrix_polar_factors(const MatrixPotentialField& V) {
    const Grid& g = V.grid;
    const int d = g.d;
    PolarFactors f{MatrixPotentialField(g), MatrixPotentialField(g), MatrixPotentialField(g)};

    Eigen::MatrixXcd M(d, d);
    for (std::size_t i = 0; i < g.points(); ++i) {
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) M(j, k) = V.entry(i, j, k);

        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Eigen::VectorXd s = svd.singularValues();
        const double cutoff = 1e-13 * (s.size() > 0 ? s[0] : 0.0);

        Eigen::VectorXd s_half(d), s_sel(d);
        for (int k = 0; k < d; ++k) {
            const bool live = s[k] > cutoff && s[k] > 0.0;
            s_half[k] = std::sqrt(s[k]);
            s_sel[k] = live ? std::sqrt(s[k]) : 0.0;
        }
        const Eigen::MatrixXcd U = svd.matrixU();
        const Eigen::MatrixXcd W = svd.matrixV();

        // absV = W s W^H, absV_sqrt = W sqrt(s) W^H,
        // V_half = sgn(V) absV_sqrt = U sqrt(s)|_range W^H
        const Eigen::MatrixXcd absV = W * s.asDiagonal() * W.adjoint();
        const Eigen::MatrixXcd absV_sqrt = W * s_half.asDiagonal() * W.adjoint();
        const Eigen::MatrixXcd v_half = U * s_sel.asDiagonal() * W.adjoint();

        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                f.absV.entry(i, j, k) = absV(j, k);
                f.absV_sqrt.entry(i, j, k) = absV_sqrt(j, k);
                f.V_half.entry(i, j, k) = v_half(j, k);
            }
    }
    return f;
}

VectorField birman_schwinger_apply(const VectorField& phi, cplx z,
                                   const PolarFactors& factors, const LameParams& params) {
    VectorField t = matvec(factors.V_half, phi);
    t = free_resolvent_apply(t, z, params);
    return matvec(factors.absV_sqrt, t);
}

VectorField birman_schwinger_apply_adjoint(const VectorField& phi, cplx z,
                                           const PolarFactors& factors, const LameParams& params) {
    // K^* = (V_half)^H (-Lap*-zbar)^-1 absV_sqrt; absV_sqrt is Hermitian
    VectorField t = matvec(factors.absV_sqrt, phi);
    t = free_resolvent_apply(t, std::conj(z), params);
    return matvec(adjoint(factors.V_half), t);
}

BsNormReport bs_norm_estimate(cplx z, const MatrixPotentialField& V, const LameParams& params,
                              double tol, int max_iter, std::uint64_t seed) {
    const Grid& g = V.grid;
    PolarFactors factors = matrix_polar_factors(V);
    const MatrixPotentialField v_half_adj = adjoint(factors.V_half);

    auto applyK = [&](const VectorField& x) {
        VectorField t = matvec(factors.V_half, x);
        t = free_resolvent_apply(t, z, params);
        return matvec(factors.absV_sqrt, t);
    };
    auto applyKstar = [&](const VectorField& x) {
        VectorField t = matvec(factors.absV_sqrt, x);
        t = free_resolvent_apply(t, std::conj(z), params);
        return matvec(v_half_adj, t);
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    VectorField x(g);
    for (auto& c : x.comp)
        for (auto& v : c.v) v = cplx(gauss(rng), gauss(rng));
    scale(x, 1.0 / norm2(x));

    BsNormReport rep;
    rep.z = z;
    rep.tol = tol;
    rep.seed = seed;
    double lambda = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        VectorField y = applyKstar(applyK(x));
        rep.iterations = it;
        const double ny = norm2(y);
        if (ny == 0.0) {
            rep.estimate = 0.0;
            rep.converged = true;
            return rep;
        }
        const double next = inner(x, y).real(); // ||x|| == 1, K*K is PSD
        scale(y, 1.0 / ny);
        x = std::move(y);
        if (it > 1 && std::abs(next - lambda) <= tol * std::max(next, 1e-300)) {
            rep.estimate = std::sqrt(std::max(0.0, next));
            rep.converged = true;
            return rep;
        }
        lambda = next;
    }
    throw numerical_error("bs_norm_estimate: power iteration did not converge in " +
                          std::to_string(max_iter) + " iterations (last estimate " +
                          std::to_string(std::sqrt(std::max(0.0, lambda))) + ")");
}

} // namespace lame
