#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lame/field.hpp"

namespace lame {

enum class PotentialFamily {
    gaussian_scalar,            // A * exp(-dist(x,x0)^2 / width^2) * I
    step_scalar,                // A * 1[dist(x,x0) <= width] * I
    inverse_square_regularized, // A / (dist(x,x0)^2 + epsilon^2) * I
    complex_rotation,           // exp(i*theta) * base family (default base: gaussian_scalar)
    matrix_dense_random,        // seeded iid complex Gaussian entries, optional Gaussian envelope
    file                        // load a matrix field from an LFD1 file
};

PotentialFamily potential_family_from_string(const std::string& s);
std::string to_string(PotentialFamily f);

/// Declarative description of a potential sample.  Distances are
/// minimum-image torus distances; center defaults to the torus midpoint.
struct PotentialSpec {
    PotentialFamily family = PotentialFamily::gaussian_scalar;
    double amplitude = 1.0;
    double width = 0.5;
    std::vector<double> center;   // size d or empty
    double epsilon = 0.1;         // inverse_square_regularized only
    double theta = 0.0;           // complex_rotation only
    std::uint64_t seed = 0;       // matrix_dense_random only
    std::string path;             // file only
    std::shared_ptr<PotentialSpec> base; // complex_rotation only
};

/// Samples the potential onto the grid as a (possibly scalar-multiple-of-I)
/// matrix field.  Sampling a given spec twice yields identical bits; random
/// entries are drawn from mt19937_64(seed) in a fixed traversal order.
MatrixPotentialField sample_potential(const PotentialSpec& spec, const Grid& grid);

} // namespace lame
