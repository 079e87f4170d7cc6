#pragma once

#include <string>
#include <variant>

#include "lame/field.hpp"

namespace lame {

/// Binary field container, little-endian:
///   offset 0  : magic "LFD1"
///   offset 4  : kind byte (0 scalar, 1 vector, 2 matrix)
///   offset 5  : dimension d
///   offset 6-7: zero padding
///   offset 8  : u32 n (points per axis)
///   offset 12 : f64 L (torus side)
///   offset 20 : complex samples, interleaved (re, im) f64, row-major over
///               grid points, innermost over components (vector j = 0..d-1;
///               matrix row-major (j,k)).
/// Malformed input throws format_error naming the byte offset.
using FieldVariant = std::variant<ScalarField, VectorField, MatrixPotentialField>;

void save_field(const ScalarField& f, const std::string& path);
void save_field(const VectorField& u, const std::string& path);
void save_field(const MatrixPotentialField& V, const std::string& path);

FieldVariant load_field(const std::string& path);

// Typed loaders; a kind-byte mismatch is a format_error (shape error).
ScalarField load_scalar_field(const std::string& path);
VectorField load_vector_field(const std::string& path);
MatrixPotentialField load_matrix_field(const std::string& path);

} // namespace lame
