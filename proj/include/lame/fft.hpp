#pragma once

#include "lame/field.hpp"

namespace lame {

enum class SpectralDirection { forward, inverse };

/// In-place discrete Fourier transform over all d axes.  Normalization:
/// forward divides by n^d, inverse is the bare conjugate sum, so
/// inverse(forward(f)) == f and Parseval reads
///   sum |f|^2 h^d == sum |fhat|^2 L^d.
/// Plans are cached per (d, n, direction) and creation is serialized, so
/// concurrent transforms from worker threads are safe.  If the environment
/// variable LAME_SPECTRA_CACHE names a directory, planner wisdom is loaded
/// from and saved to <dir>/fftw.wisdom.
void spectral_transform(ScalarField& f, SpectralDirection dir);
void spectral_transform(VectorField& u, SpectralDirection dir);

ScalarField spectral_transform_copy(const ScalarField& f, SpectralDirection dir);
VectorField spectral_transform_copy(const VectorField& u, SpectralDirection dir);

} // namespace lame
