#include "lame/potential.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "lame/field_io.hpp"

namespace lame {

PotentialFamily potential_family_from_string(const std::string& s) {
    if (s == "gaussian_scalar") return PotentialFamily::gaussian_scalar;
    if (s == "step_scalar") return PotentialFamily::step_scalar;
    if (s == "inverse_square_regularized") return PotentialFamily::inverse_square_regularized;
    if (s == "complex_rotation") return PotentialFamily::complex_rotation;
    if (s == "matrix_dense_random") return PotentialFamily::matrix_dense_random;
    if (s == "file") return PotentialFamily::file;
    throw std::invalid_argument("unknown potential family: " + s);
}

std::string to_string(PotentialFamily f) {
    switch (f) {
        case PotentialFamily::gaussian_scalar: return "gaussian_scalar";
        case PotentialFamily::step_scalar: return "step_scalar";
        case PotentialFamily::inverse_square_regularized: return "inverse_square_regularized";
        case PotentialFamily::complex_rotation: return "complex_rotation";
        case PotentialFamily::matrix_dense_random: return "matrix_dense_random";
        case PotentialFamily::file: return "file";
    }
    return "?";
}

namespace {

std::vector<double> resolve_center(const PotentialSpec& spec, const Grid& g) {
    if (spec.center.empty())
        return std::vector<double>(static_cast<std::size_t>(g.d), g.L / 2.0);
    if (spec.center.size() != static_cast<std::size_t>(g.d))
        throw std::invalid_argument("potential center must have d entries");
    return spec.center;
}

void fill_scalar_diag(MatrixPotentialField& V, const Grid& g, const std::vector<cplx>& s) {
    for (std::size_t i = 0; i < g.points(); ++i)
        for (int j = 0; j < g.d; ++j) V.entry(i, j, j) = s[i];
}

} // namespace

MatrixPotentialField sample_potential(const PotentialSpec& spec, const Grid& grid) {
    MatrixPotentialField V(grid);
    const std::size_t np = grid.points();

    switch (spec.family) {
        case PotentialFamily::gaussian_scalar: {
            if (!(spec.width > 0.0))
                throw std::invalid_argument("gaussian_scalar: width must be positive");
            auto c = resolve_center(spec, grid);
            std::vector<cplx> s(np);
            for (std::size_t i = 0; i < np; ++i) {
                double r = grid.torus_distance_to(i, c);
                s[i] = spec.amplitude * std::exp(-r * r / (spec.width * spec.width));
            }
            fill_scalar_diag(V, grid, s);
            break;
        }
        case PotentialFamily::step_scalar: {
            if (!(spec.width > 0.0))
                throw std::invalid_argument("step_scalar: width must be positive");
            auto c = resolve_center(spec, grid);
            std::vector<cplx> s(np);
            for (std::size_t i = 0; i < np; ++i)
                s[i] = grid.torus_distance_to(i, c) <= spec.width ? spec.amplitude : 0.0;
            fill_scalar_diag(V, grid, s);
            break;
        }
        case PotentialFamily::inverse_square_regularized: {
            if (!(spec.epsilon > 0.0))
                throw std::invalid_argument("inverse_square_regularized: epsilon must be positive");
            auto c = resolve_center(spec, grid);
            std::vector<cplx> s(np);
            for (std::size_t i = 0; i < np; ++i) {
                double r = grid.torus_distance_to(i, c);
                s[i] = spec.amplitude / (r * r + spec.epsilon * spec.epsilon);
            }
            fill_scalar_diag(V, grid, s);
            break;
        }
        case PotentialFamily::complex_rotation: {
            PotentialSpec inner = spec.base ? *spec.base : spec;
            if (!spec.base) inner.family = PotentialFamily::gaussian_scalar;
            if (inner.family == PotentialFamily::complex_rotation)
                throw std::invalid_argument("complex_rotation: base must be a real family");
            V = sample_potential(inner, grid);
            const cplx phase = std::exp(cplx(0.0, spec.theta));
            for (auto& z : V.a) z *= phase;
            break;
        }
        case PotentialFamily::matrix_dense_random: {
            std::mt19937_64 rng(spec.seed);
            std::normal_distribution<double> gauss(0.0, 1.0);
            auto c = resolve_center(spec, grid);
            const int d = grid.d;
            // fixed traversal: points outer, entries row-major; envelope applied after draw
            for (std::size_t i = 0; i < np; ++i) {
                double env = 1.0;
                if (spec.width > 0.0) {
                    double r = grid.torus_distance_to(i, c);
                    env = std::exp(-r * r / (spec.width * spec.width));
                }
                for (int j = 0; j < d; ++j)
                    for (int k = 0; k < d; ++k) {
                        double re = gauss(rng), im = gauss(rng);
                        V.entry(i, j, k) = spec.amplitude * env * cplx(re, im) / std::sqrt(2.0);
                    }
            }
            break;
        }
        case PotentialFamily::file: {
            MatrixPotentialField W = load_matrix_field(spec.path);
            if (W.grid.d != grid.d || W.grid.n != grid.n || W.grid.L != grid.L)
                throw std::invalid_argument("file potential: stored grid does not match requested grid");
            V = std::move(W);
            break;
        }
    }
    return V;
}

} // namespace lame
