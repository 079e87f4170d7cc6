#include "lame/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace lame {

std::size_t Grid::points() const {
    std::size_t p = 1;
    for (int a = 0; a < d; ++a) p *= static_cast<std::size_t>(n);
    return p;
}

int Grid::levels() const {
    int lv = 0;
    for (int m = n; m > 1; m >>= 1) ++lv;
    return lv;
}

std::size_t Grid::flatten(const std::array<int, 3>& idx) const {
    std::size_t i = 0;
    for (int a = 0; a < d; ++a) i = i * n + static_cast<std::size_t>(idx[a]);
    return i;
}

std::array<int, 3> Grid::unflatten(std::size_t i) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = d - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(i % n);
        i /= n;
    }
    return idx;
}

double Grid::coord(std::size_t i, int a) const {
    return unflatten(i)[a] * h();
}

int Grid::freq_index(int k) const {
    return k < n / 2 ? k : k - n;
}

double Grid::frequency(int k) const {
    return 2.0 * M_PI * freq_index(k) / L;
}

double Grid::wrap(double delta) const {
    delta = std::fmod(delta, L);
    if (delta < -L / 2.0) delta += L;
    if (delta >= L / 2.0) delta -= L;
    return delta;
}

double Grid::torus_distance(std::size_t i, std::size_t j) const {
    auto a = unflatten(i), b = unflatten(j);
    double s = 0.0;
    for (int k = 0; k < d; ++k) {
        double w = wrap((a[k] - b[k]) * h());
        s += w * w;
    }
    return std::sqrt(s);
}

double Grid::torus_distance_to(std::size_t i, const std::vector<double>& y) const {
    auto a = unflatten(i);
    double s = 0.0;
    for (int k = 0; k < d; ++k) {
        double w = wrap(a[k] * h() - y[static_cast<std::size_t>(k)]);
        s += w * w;
    }
    return std::sqrt(s);
}

Grid make_grid(int d, int n, double L) {
    if (d < 1 || d > 3)
        throw std::invalid_argument("make_grid: d must be 1, 2 or 3");
    if (n < 4 || (n & (n - 1)) != 0)
        throw std::invalid_argument("make_grid: n must be a power of two >= 4");
    if (!(L > 0.0))
        throw std::invalid_argument("make_grid: L must be positive");
    return Grid{d, n, L};
}

} // namespace lame
