#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace lame {

/// Uniform periodic grid on the torus [0,L)^d.  n is the number of points
/// per axis (power of two, >= 4) so every dyadic cube hierarchy down to
/// single cells aligns with the sample lattice.  Samples sit at x_i = i*h,
/// h = L/n.  Storage convention everywhere: row-major over the multi-index,
/// axis 0 outermost, axis d-1 innermost.
struct Grid {
    int d = 0;
    int n = 0;
    double L = 0.0;

    double h() const { return L / n; }
    std::size_t points() const;          // n^d
    int levels() const;                  // log2(n): finest dyadic level with >=1 sample per cell

    std::size_t flatten(const std::array<int, 3>& idx) const;
    std::array<int, 3> unflatten(std::size_t i) const;

    /// Coordinate of sample i along axis a, in [0, L).
    double coord(std::size_t i, int a) const;

    /// Angular frequency of transform index k along one axis: 2*pi*m/L with
    /// m = k for k < n/2 and m = k - n otherwise, so m in [-n/2, n/2).
    double frequency(int k) const;
    int freq_index(int k) const;         // the integer m above

    /// Signed minimum-image displacement a-b wrapped into [-L/2, L/2).
    double wrap(double delta) const;
    /// Euclidean minimum-image distance between samples i and j.
    double torus_distance(std::size_t i, std::size_t j) const;
    /// Minimum-image distance from sample i to a point y (size d).
    double torus_distance_to(std::size_t i, const std::vector<double>& y) const;
};

/// Validates and builds a grid.  Throws std::invalid_argument unless
/// d in {1,2,3}, n is a power of two >= 4, and L > 0.
Grid make_grid(int d, int n, double L);

} // namespace lame
