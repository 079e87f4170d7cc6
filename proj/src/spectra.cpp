#include "lame/spectra.hpp"

#include <cmath>
#include <stdexcept>

#include "lame/errors.hpp"
#include "lame/fft.hpp"
#include "lame/lame_operator.hpp"

namespace lame {

VectorField DiscreteHamiltonian::apply(const VectorField& u) const {
    const Grid& g = grid;
    VectorField hat = spectral_transform_copy(u, SpectralDirection::forward);
    const double cs = params.mu;
    const double cp = params.lambda + 2.0 * params.mu;
    for (std::size_t i = 0; i < g.points(); ++i) {
        auto idx = g.unflatten(i);
        double xi[3] = {0.0, 0.0, 0.0};
        symbol_frequency(g, idx, xi); // orbit-canonical at Nyquist-mixed modes
        double n2 = 0.0;
        for (int a = 0; a < g.d; ++a) n2 += xi[a] * xi[a];
        if (n2 == 0.0) {
            for (int a = 0; a < g.d; ++a) hat.comp[static_cast<std::size_t>(a)].v[i] = 0.0;
            continue;
        }
        cplx dot(0.0, 0.0);
        for (int a = 0; a < g.d; ++a) dot += xi[a] * hat.comp[static_cast<std::size_t>(a)].v[i];
        for (int a = 0; a < g.d; ++a) {
            const cplx lon = xi[a] * dot / n2;
            const cplx tra = hat.comp[static_cast<std::size_t>(a)].v[i] - lon;
            hat.comp[static_cast<std::size_t>(a)].v[i] = cs * n2 * tra + cp * n2 * lon;
        }
    }
    spectral_transform(hat, SpectralDirection::inverse);
    VectorField Vu = matvec(V, u);
    axpy(hat, cplx(1.0, 0.0), Vu);
    return hat;
}

Eigen::VectorXcd DiscreteHamiltonian::apply_flat(const Eigen::VectorXcd& u) const {
    const std::size_t np = grid.points();
    VectorField x(grid);
    for (int c = 0; c < grid.d; ++c)
        for (std::size_t i = 0; i < np; ++i)
            x.comp[static_cast<std::size_t>(c)].v[i] = u[static_cast<Eigen::Index>(c * np + i)];
    VectorField y = apply(x);
    Eigen::VectorXcd out(dim());
    for (int c = 0; c < grid.d; ++c)
        for (std::size_t i = 0; i < np; ++i)
            out[static_cast<Eigen::Index>(c * np + i)] = y.comp[static_cast<std::size_t>(c)].v[i];
    return out;
}

Eigen::MatrixXcd DiscreteHamiltonian::dense(std::size_t cap) const {
    const std::size_t N = dim();
    if (N > cap)
        throw std::invalid_argument("DiscreteHamiltonian::dense: dimension " + std::to_string(N) +
                                    " exceeds cap " + std::to_string(cap) +
                                    "; use the matrix-free apply instead");
    Eigen::MatrixXcd H(N, N);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(N));
    for (std::size_t k = 0; k < N; ++k) {
        e[static_cast<Eigen::Index>(k)] = 1.0;
        H.col(static_cast<Eigen::Index>(k)) = apply_flat(e);
        e[static_cast<Eigen::Index>(k)] = 0.0;
    }
    return H;
}

DiscreteHamiltonian make_hamiltonian(const Grid& grid, const LameParams& params,
                                     const MatrixPotentialField& V) {
    if (V.grid.d != grid.d || V.grid.n != grid.n || V.grid.L != grid.L)
        throw std::invalid_argument("make_hamiltonian: potential grid does not match");
    return DiscreteHamiltonian{grid, params, V};
}

namespace {

template <typename Apply>
EigenReport eigen_with_residuals(const Eigen::MatrixXcd& M, Apply&& apply) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw numerical_error("eigenvalues: dense eigensolver did not converge");

    EigenReport rep;
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    rep.eigenvalues.assign(vals.data(), vals.data() + vals.size());
    rep.scale = 0.0;
    for (const auto& z : rep.eigenvalues) rep.scale = std::max(rep.scale, std::abs(z));

    rep.residuals.resize(rep.eigenvalues.size());
    for (Eigen::Index k = 0; k < vals.size(); ++k) {
        const Eigen::VectorXcd u = vecs.col(k);
        const double r = (apply(u) - vals[k] * u).norm() / u.norm();
        rep.residuals[static_cast<std::size_t>(k)] = r;
        rep.max_residual = std::max(rep.max_residual, r);
    }
    const double bound = 1e-8 * std::max(rep.scale, 1e-300);
    if (rep.max_residual > bound)
        throw numerical_error("eigenvalues: residual verification failed: " +
                              std::to_string(rep.max_residual) + " > " + std::to_string(bound));
    return rep;
}

} // namespace

EigenReport eigenvalues(const DiscreteHamiltonian& H) {
    const Eigen::MatrixXcd M = H.dense();
    // residuals go through the matrix-free path, independent of the assembly
    return eigen_with_residuals(M, [&H](const Eigen::VectorXcd& u) { return H.apply_flat(u); });
}

EigenReport eigenvalues_dense(const Eigen::MatrixXcd& A) {
    return eigen_with_residuals(A, [&A](const Eigen::VectorXcd& u) -> Eigen::VectorXcd { return A * u; });
}

ContainmentReport containment_check(const EigenReport& eig, const EnclosureDisk& disk,
                                    double essential_margin, double inflation) {
    if (!(essential_margin >= 0.0))
        throw std::invalid_argument("containment_check: margin must be nonnegative");
    ContainmentReport rep;
    rep.essential_margin = essential_margin;
    rep.inflation = inflation;
    rep.inflated_radius = disk.absence_mode ? 0.0 : disk.radius * (1.0 + inflation);

    for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
        const cplx z = eig.eigenvalues[k];
        const bool essential_like = std::abs(z.imag()) <= essential_margin &&
                                    z.real() >= -essential_margin;
        if (essential_like) {
            ++rep.essential_count;
            continue;
        }
        if (disk.absence_mode) {
            // predicate true means no point spectrum at all
            if (disk.absence_holds)
                rep.violations.push_back(k);
            else
                ++rep.contained_count; // nothing to check against
        } else if (std::abs(z) <= rep.inflated_radius) {
            ++rep.contained_count;
        } else {
            rep.violations.push_back(k);
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

double default_essential_margin(const DiscreteHamiltonian& H) {
    return 10.0 * sup_pointwise_norm(H.V) / H.grid.n;
}

VectorField plane_wave(cplx z, char mode, int axis, const LameParams& params, const Grid& grid) {
    if (mode != 'S' && mode != 'P')
        throw std::invalid_argument("plane_wave: mode must be 'S' or 'P'");
    if (axis < 0 || axis >= grid.d)
        throw std::invalid_argument("plane_wave: axis out of range");
    if (mode == 'S' && grid.d < 2)
        throw std::invalid_argument("plane_wave: transverse mode needs d >= 2");
    if (!(z.real() > 0.0) || std::abs(z.imag()) > 1e-14 * std::abs(z))
        throw std::invalid_argument("plane_wave: z must be positive real");

    const double speed2 = mode == 'S' ? params.mu : params.lambda + 2.0 * params.mu;
    const double kappa = std::sqrt(z.real() / speed2);
    const double m_real = kappa * grid.L / (2.0 * M_PI);
    const double m_round = std::round(m_real);
    if (std::abs(m_real - m_round) > 1e-9 * std::max(1.0, std::abs(m_real)) || m_round < 1.0 ||
        m_round > grid.n / 2 - 1) {
        auto z_of = [&](double m) { return speed2 * std::pow(2.0 * M_PI * m / grid.L, 2.0); };
        const double lo = std::max(1.0, std::floor(m_real));
        throw std::invalid_argument(
            "plane_wave: wavenumber off the frequency lattice; nearest admissible z: " +
            std::to_string(z_of(lo)) + " and " + std::to_string(z_of(lo + 1.0)));
    }
    const double kq = 2.0 * M_PI * m_round / grid.L;

    int pol = axis;
    if (mode == 'S') pol = (axis + 1) % grid.d;

    VectorField u(grid);
    for (std::size_t i = 0; i < grid.points(); ++i) {
        const double x = grid.coord(i, axis);
        u.comp[static_cast<std::size_t>(pol)].v[i] = std::exp(cplx(0.0, kq * x));
    }

    // internal verification against the free operator
    DiscreteHamiltonian H0{grid, params, MatrixPotentialField(grid)};
    VectorField r = H0.apply(u);
    axpy(r, -z, u);
    const double residual = norm2(r) / norm2(u);
    if (residual > 1e-12)
        throw numerical_error("plane_wave: free residual " + std::to_string(residual) +
                              " exceeds 1e-12");
    return u;
}

WeylReport weyl_residual(cplx z, int n_scale, const LameParams& params, const Grid& grid,
                         char mode, int axis, double r0) {
    if (n_scale < 1 || (n_scale & (n_scale - 1)) != 0)
        throw std::invalid_argument("weyl_residual: n_scale must be a power of two >= 1");
    if (r0 == 0.0) r0 = 0.45 * grid.L / n_scale;
    if (!(r0 > 0.0) || n_scale * r0 > grid.L / 2.0)
        throw std::invalid_argument("weyl_residual: bump support exceeds the torus");

    VectorField u = plane_wave(z, mode, axis, params, grid);
    DiscreteHamiltonian H0{grid, params, MatrixPotentialField(grid)};

    std::vector<double> center(static_cast<std::size_t>(grid.d), grid.L / 2.0);

    WeylReport rep;
    rep.z = z;
    rep.r0 = r0;
    for (int s = 1; s <= n_scale; s *= 2) {
        VectorField psi(grid);
        const double radius = s * r0;
        for (std::size_t i = 0; i < grid.points(); ++i) {
            const double t = grid.torus_distance_to(i, center) / radius;
            if (t >= 1.0) continue;
            const double bump = std::exp(1.0 - 1.0 / (1.0 - t * t));
            for (int c = 0; c < grid.d; ++c)
                psi.comp[static_cast<std::size_t>(c)].v[i] =
                    bump * u.comp[static_cast<std::size_t>(c)].v[i];
        }
        const double nrm = norm2(psi);
        if (nrm == 0.0)
            throw std::invalid_argument("weyl_residual: bump support resolves to no grid points");
        scale(psi, 1.0 / nrm);

        VectorField r = H0.apply(psi);
        axpy(r, -z, psi);
        rep.scales.push_back(s);
        rep.residuals.push_back(norm2(r));
        rep.norms.push_back(norm2(psi));
    }
    return rep;
}

SymmetryReport adjoint_symmetry_check(const MatrixPotentialField& V, const LameParams& params,
                                      double tol) {
    const Grid& g = V.grid;
    DiscreteHamiltonian HV{g, params, V};
    DiscreteHamiltonian Hadj{g, params, adjoint(V)};
    DiscreteHamiltonian Htra{g, params, transpose(V)};
    DiscreteHamiltonian Hconj{g, params, conjugate(V)};

    const Eigen::MatrixXcd A = HV.dense();
    const Eigen::MatrixXcd B_adj = Hadj.dense();
    const Eigen::MatrixXcd B_tra = Htra.dense();
    const Eigen::MatrixXcd B_conj = Hconj.dense();

    SymmetryReport rep;
    rep.tol = tol;
    rep.adjoint_error = (A.adjoint() - B_adj).cwiseAbs().maxCoeff();
    rep.transpose_error = (A.transpose() - B_tra).cwiseAbs().maxCoeff();
    rep.conjugation_error = (A.conjugate() - B_conj).cwiseAbs().maxCoeff();
    rep.pass = rep.adjoint_error <= tol && rep.transpose_error <= tol &&
               rep.conjugation_error <= tol;
    return rep;
}

} // namespace lame
