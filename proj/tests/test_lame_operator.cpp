#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "lame/enclosure.hpp"
#include "lame/errors.hpp"
#include "lame/lame_operator.hpp"
#include "lame/norms.hpp"
#include "lame/potential.hpp"
#include "lame/spectra.hpp"

using namespace lame;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// single Fourier mode u(x) = pol * exp(i k . x) for integer frequency k
VectorField plane_mode(const Grid& g, const std::array<int, 3>& k, const Eigen::VectorXcd& pol) {
    VectorField u(g);
    for (std::size_t i = 0; i < g.points(); ++i) {
        double phase = 0.0;
        for (int a = 0; a < g.d; ++a)
            phase += (kTwoPi * k[a] / g.L) * g.coord(i, a);
        const cplx e = std::exp(cplx(0.0, phase));
        for (int c = 0; c < g.d; ++c) u.comp[c].v[i] = pol[c] * e;
    }
    return u;
}

double max_pointwise_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (int c = 0; c < a.grid.d; ++c)
        for (std::size_t i = 0; i < a.grid.points(); ++i)
            m = std::max(m, std::abs(a.comp[c].v[i] - b.comp[c].v[i]));
    return m;
}

MatrixPotentialField random_matrix_field(const Grid& g, std::uint64_t seed, double amp = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    MatrixPotentialField V(g);
    for (auto& z : V.a) z = amp * cplx(gauss(rng), gauss(rng));
    return V;
}

Eigen::MatrixXcd point_matrix(const MatrixPotentialField& V, std::size_t i) {
    const int d = V.grid.d;
    Eigen::MatrixXcd M(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) M(j, k) = V.entry(i, j, k);
    return M;
}

} // namespace

TEST_CASE("symbol at a unit axis frequency") {
    LameParams prm(0.0, 1.0);
    Eigen::VectorXd xi(3);
    xi << 1.0, 0.0, 0.0;
    Eigen::MatrixXd L = lame_symbol(xi, prm);
    Eigen::MatrixXd want(3, 3);
    want << 2.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0;
    CHECK((L - want).cwiseAbs().maxCoeff() == 0.0);

    Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
    CHECK(lame_symbol(zero, prm).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("symbol eigenvalues are the two wave branches with the right multiplicities") {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<LameParams> cases{{0.0, 1.0}, {1.0, 1.0}, {-1.0, 1.0}, {2.5, 0.3}, {-0.4, 0.7}};
    for (int d = 2; d <= 3; ++d) {
        for (const auto& prm : cases) {
            for (int trial = 0; trial < 10; ++trial) {
                Eigen::VectorXd xi(d);
                for (int a = 0; a < d; ++a) xi[a] = gauss(rng);
                Eigen::MatrixXd L = lame_symbol(xi, prm);
                CHECK((L - L.transpose()).cwiseAbs().maxCoeff() <=
                      1e-15 * std::max(1.0, L.cwiseAbs().maxCoeff()));
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
                const double n2 = xi.squaredNorm();
                std::vector<double> want(static_cast<std::size_t>(d - 1), prm.mu * n2);
                want.push_back((prm.lambda + 2.0 * prm.mu) * n2);
                std::sort(want.begin(), want.end());
                for (int j = 0; j < d; ++j)
                    CHECK(std::abs(es.eigenvalues()[j] - want[static_cast<std::size_t>(j)]) <=
                          1e-12 * std::max(1.0, n2));
            }
        }
    }
}

TEST_CASE("symbol diagonalization: ordering, orthonormality, sparse cross-check") {
    LameParams prm(1.0, 1.0);
    Eigen::VectorXd xi(3);
    xi << 1.0, 2.0, 3.0;
    SymbolDiagonalization diag = diagonalize_symbol(xi, prm);
    const double n2 = 14.0;
    CHECK(diag.D(0, 0) == doctest::Approx(prm.mu * n2).epsilon(1e-13));
    CHECK(diag.D(1, 1) == doctest::Approx(prm.mu * n2).epsilon(1e-13));
    CHECK(diag.D(2, 2) == doctest::Approx((prm.lambda + 2.0 * prm.mu) * n2).epsilon(1e-13));
    CHECK((diag.P.transpose() * diag.P - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(diag.residual <= 1e-12 * n2);
    CHECK(diag.has_sparse_P);
    CHECK(diag.residual_sparse <= 1e-10 * n2);
    // last column is the longitudinal direction xi/|xi|
    Eigen::VectorXd lon = xi / xi.norm();
    CHECK(std::min((diag.P.col(2) - lon).norm(), (diag.P.col(2) + lon).norm()) <= 1e-12);

    Eigen::VectorXd e2(3);
    e2 << 0.0, 1.0, 0.0;
    CHECK_FALSE(diagonalize_symbol(e2, prm).has_sparse_P);

    Eigen::VectorXd xi2(2);
    xi2 << 3.0, -1.0;
    SymbolDiagonalization d2 = diagonalize_symbol(xi2, prm);
    CHECK(d2.D(0, 0) == doctest::Approx(prm.mu * 10.0).epsilon(1e-13));
    CHECK(d2.D(1, 1) == doctest::Approx((prm.lambda + 2.0 * prm.mu) * 10.0).epsilon(1e-13));
    CHECK_FALSE(d2.has_sparse_P);

    Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
    CHECK_THROWS_AS(diagonalize_symbol(zero, prm), std::invalid_argument);
}

TEST_CASE("free resolvent inverts single transverse and longitudinal modes") {
    Grid g = make_grid(3, 8, kTwoPi);
    LameParams prm(-0.5, 1.2);
    const std::array<int, 3> k{2, -1, 1};
    Eigen::VectorXd xi(3);
    xi << 2.0, -1.0, 1.0; // frequencies are integers at L = 2 pi
    const double n2 = xi.squaredNorm();
    const cplx z(-0.7, 0.4);

    // transverse: pol orthogonal to xi
    Eigen::VectorXcd pol_s(3);
    pol_s << 1.0, 1.0, -1.0; // (2,-1,1).(1,1,-1) = 0
    VectorField us = plane_mode(g, k, pol_s);
    VectorField rs = free_resolvent_apply(us, z, prm);
    VectorField want_s = us;
    const cplx fac_s = 1.0 / (prm.mu * n2 - z);
    for (int c = 0; c < 3; ++c)
        for (auto& v : want_s.comp[c].v) v *= fac_s;
    CHECK(max_pointwise_diff(rs, want_s) <= 1e-12);

    // longitudinal: pol parallel to xi
    Eigen::VectorXcd pol_p = xi.cast<cplx>();
    VectorField up = plane_mode(g, k, pol_p);
    VectorField rp = free_resolvent_apply(up, z, prm);
    VectorField want_p = up;
    const cplx fac_p = 1.0 / ((prm.lambda + 2.0 * prm.mu) * n2 - z);
    for (int c = 0; c < 3; ++c)
        for (auto& v : want_p.comp[c].v) v *= fac_p;
    CHECK(max_pointwise_diff(rp, want_p) <= 1e-12);
}

TEST_CASE("free resolvent round trip through the hamiltonian") {
    Grid g = make_grid(2, 8, kTwoPi);
    LameParams prm(0.3, 0.9);
    std::mt19937_64 rng(88);
    std::normal_distribution<double> gauss(0.0, 1.0);
    VectorField f(g);
    for (int c = 0; c < 2; ++c)
        for (auto& v : f.comp[c].v) v = cplx(gauss(rng), gauss(rng));
    const cplx z(0.3, 0.7);
    VectorField u = free_resolvent_apply(f, z, prm);
    DiscreteHamiltonian H0 = make_hamiltonian(g, prm, MatrixPotentialField(g));
    VectorField r = H0.apply(u);
    for (int c = 0; c < 2; ++c)
        for (std::size_t i = 0; i < g.points(); ++i)
            r.comp[c].v[i] -= z * u.comp[c].v[i] + f.comp[c].v[i];
    double worst = 0.0;
    for (int c = 0; c < 2; ++c)
        for (const auto& v : r.comp[c].v) worst = std::max(worst, std::abs(v));
    CHECK(worst <= 1e-10 * norm2(f));
}

TEST_CASE("free resolvent rejects spectral parameters on the discrete symbol lattice") {
    Grid g = make_grid(2, 8, kTwoPi);
    LameParams prm(0.0, 1.0);
    VectorField f(g);
    f.comp[0].v[3] = 1.0;
    CHECK_THROWS_AS(free_resolvent_apply(f, cplx(0.0, 0.0), prm), numerical_error);
    CHECK_THROWS_AS(free_resolvent_apply(f, cplx(1.0, 0.0), prm), numerical_error); // mu*|e1|^2
    // just off the lattice is fine
    VectorField ok = free_resolvent_apply(f, cplx(1.0, 1e-3), prm);
    CHECK(norm2(ok) > 0.0);
}

TEST_CASE("helmholtz green kernel closed-form values and uniform domination") {
    CHECK(green_kernel_3d(1.0, cplx(-1.0, 0.0)).real() ==
          doctest::Approx(std::exp(-1.0) / (4.0 * M_PI)).epsilon(1e-14));
    CHECK(std::abs(green_kernel_3d(1.0, cplx(-1.0, 0.0)).imag()) <= 1e-16);
    CHECK(green_kernel_3d(2.0, cplx(0.0, 0.0)).real() ==
          doctest::Approx(1.0 / (8.0 * M_PI)).epsilon(1e-14));

    // |G_zeta(r)| <= G_0(r) = 1/(4 pi r) everywhere off the positive axis
    for (double rr : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 60.0, 130.0, 300.0}) {
        int idx = 0;
        for (cplx zeta : {cplx(-4.0, 0.0), cplx(-1.0, 0.5), cplx(0.0, 1.0), cplx(2.0, 3.0),
                          cplx(5.0, -2.0), cplx(9.0, 1e-6), cplx(1e4, 1.0), cplx(-1e4, 0.0),
                          cplx(0.25, 0.0), cplx(1e-8, 1e-8)}) {
            (void)idx++;
            CHECK(std::abs(green_kernel_3d(rr, zeta)) <= 1.0 / (4.0 * M_PI * rr) * (1.0 + 1e-13));
        }
    }
    // on the essential spectrum the modulus is exactly the free envelope
    CHECK(std::abs(green_kernel_3d(3.0, cplx(4.0, 0.0))) ==
          doctest::Approx(1.0 / (12.0 * M_PI)).epsilon(1e-13));

    CHECK_THROWS_AS(green_kernel_3d(0.0, cplx(-1.0, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(green_kernel_3d(-1.0, cplx(-1.0, 0.0)), std::invalid_argument);
}

TEST_CASE("polar factors of a scalar matrix and of a zero point") {
    Grid g = make_grid(2, 4, 1.0);
    const cplx c(0.6, -0.8); // modulus 1
    MatrixPotentialField V(g);
    for (std::size_t i = 0; i < g.points(); ++i)
        for (int j = 0; j < 2; ++j) V.entry(i, j, j) = c;
    // leave one point zero
    const std::size_t hole = 5;
    for (int j = 0; j < 2; ++j) V.entry(hole, j, j) = 0.0;

    PolarFactors f = matrix_polar_factors(V);
    for (std::size_t i = 0; i < g.points(); ++i) {
        const cplx want_abs = i == hole ? cplx(0.0, 0.0) : cplx(1.0, 0.0);
        const cplx want_half = i == hole ? cplx(0.0, 0.0) : c;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                const cplx wa = j == k ? want_abs : cplx(0.0, 0.0);
                const cplx wh = j == k ? want_half : cplx(0.0, 0.0);
                CHECK(std::abs(f.absV.entry(i, j, k) - wa) <= 1e-13);
                CHECK(std::abs(f.absV_sqrt.entry(i, j, k) - wa) <= 1e-13);
                CHECK(std::abs(f.V_half.entry(i, j, k) - wh) <= 1e-13);
            }
    }
}

TEST_CASE("polar factors reproduce the potential and the square root is hermitian psd") {
    Grid g = make_grid(3, 4, 1.0);
    MatrixPotentialField V = random_matrix_field(g, 99);
    PolarFactors f = matrix_polar_factors(V);
    for (std::size_t i = 0; i < g.points(); ++i) {
        Eigen::MatrixXcd Vh = point_matrix(f.V_half, i);
        Eigen::MatrixXcd As = point_matrix(f.absV_sqrt, i);
        Eigen::MatrixXcd A = point_matrix(f.absV, i);
        Eigen::MatrixXcd M = point_matrix(V, i);
        CHECK((Vh * As - M).cwiseAbs().maxCoeff() <= 1e-10 * M.cwiseAbs().maxCoeff());
        CHECK((As - As.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((As * As - A).cwiseAbs().maxCoeff() <= 1e-10);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(As);
        CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    }
}

TEST_CASE("birman-schwinger operator: zero potential, diagonal action, linearity, adjoint") {
    Grid g = make_grid(3, 8, kTwoPi);
    LameParams prm(0.0, 1.0);
    const cplx z(-1.0, 0.3);

    PolarFactors zf = matrix_polar_factors(MatrixPotentialField(g));
    VectorField phi(g);
    phi.comp[1].v[7] = 1.0;
    CHECK(norm2(birman_schwinger_apply(phi, z, zf, prm)) == 0.0);

    // constant scalar potential: a transverse mode is an exact eigenvector
    const cplx c(0.2, -0.1);
    MatrixPotentialField V(g);
    for (std::size_t i = 0; i < g.points(); ++i)
        for (int j = 0; j < 3; ++j) V.entry(i, j, j) = c;
    PolarFactors f = matrix_polar_factors(V);
    Eigen::VectorXcd pol(3);
    pol << 1.0, 1.0, -1.0;
    VectorField us = plane_mode(g, {2, -1, 1}, pol);
    VectorField Ku = birman_schwinger_apply(us, z, f, prm);
    const cplx lam = c / (prm.mu * 6.0 - z);
    VectorField want = us;
    for (int cc = 0; cc < 3; ++cc)
        for (auto& v : want.comp[cc].v) v *= lam;
    CHECK(max_pointwise_diff(Ku, want) <= 1e-12);

    // linearity and adjoint pairing on a random potential
    MatrixPotentialField W = random_matrix_field(g, 101, 0.3);
    PolarFactors fw = matrix_polar_factors(W);
    std::mt19937_64 rng(102);
    std::normal_distribution<double> gauss(0.0, 1.0);
    VectorField x(g), y(g);
    for (int cc = 0; cc < 3; ++cc)
        for (std::size_t i = 0; i < g.points(); ++i) {
            x.comp[cc].v[i] = cplx(gauss(rng), gauss(rng));
            y.comp[cc].v[i] = cplx(gauss(rng), gauss(rng));
        }
    const cplx al(0.7, 0.2), be(-0.4, 1.1);
    VectorField xy(g);
    for (int cc = 0; cc < 3; ++cc)
        for (std::size_t i = 0; i < g.points(); ++i)
            xy.comp[cc].v[i] = al * x.comp[cc].v[i] + be * y.comp[cc].v[i];
    VectorField k_xy = birman_schwinger_apply(xy, z, fw, prm);
    VectorField kx = birman_schwinger_apply(x, z, fw, prm);
    VectorField ky = birman_schwinger_apply(y, z, fw, prm);
    VectorField lin(g);
    for (int cc = 0; cc < 3; ++cc)
        for (std::size_t i = 0; i < g.points(); ++i)
            lin.comp[cc].v[i] = al * kx.comp[cc].v[i] + be * ky.comp[cc].v[i];
    CHECK(max_pointwise_diff(k_xy, lin) <= 1e-12);

    VectorField kay = birman_schwinger_apply_adjoint(y, z, fw, prm);
    const cplx lhs = inner(y, k_xy);
    const cplx rhs = inner(kay, xy);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("birman-schwinger norm estimate scales linearly in the potential") {
    Grid g = make_grid(3, 8, kTwoPi);
    LameParams prm(-1.0, 1.0);
    PotentialSpec spec;
    spec.family = PotentialFamily::gaussian_scalar;
    spec.amplitude = 0.4;
    spec.width = 1.0;
    MatrixPotentialField V = sample_potential(spec, g);
    BsNormReport a = bs_norm_estimate(cplx(-1.0, 0.0), V, prm, 1e-8);
    CHECK(a.converged);
    MatrixPotentialField V3 = V;
    for (auto& v : V3.a) v *= 3.0;
    BsNormReport b = bs_norm_estimate(cplx(-1.0, 0.0), V3, prm, 1e-8);
    CHECK(b.estimate == doctest::Approx(3.0 * a.estimate).epsilon(1e-9));
}

TEST_CASE("birman-schwinger norm estimate respects the explicit lebesgue bound") {
    Grid g = make_grid(3, 8, kTwoPi);
    LameParams prm(-1.0, 1.0);
    PotentialSpec spec;
    spec.family = PotentialFamily::gaussian_scalar;
    spec.amplitude = 0.05;
    spec.width = 1.0;
    MatrixPotentialField V = sample_potential(spec, g);
    BsNormReport est = bs_norm_estimate(cplx(-1.0, 0.0), V, prm, 1e-8);
    CHECK(est.converged);
    EnclosureSpec es = make_enclosure_spec(EnclosureKind::lebesgue, 3, 0.0, prm);
    const double lp = lp_norm(V, 1.5).value;
    BsBound bound = bs_bound_value(es, cplx(-1.0, 0.0), {{"lp", lp}});
    CHECK(bound.provenance == "explicit_d3");
    CHECK(est.estimate <= bound.value);
}
