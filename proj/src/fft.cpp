#include "lame/fft.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <string>

#include <fftw3.h>

namespace lame {

namespace {

struct PlanKey {
    int d;
    int n;
    int sign;
    bool operator<(const PlanKey& o) const {
        if (d != o.d) return d < o.d;
        if (n != o.n) return n < o.n;
        return sign < o.sign;
    }
};

std::mutex g_plan_mutex;
std::map<PlanKey, fftw_plan> g_plans;
bool g_wisdom_loaded = false;

std::string wisdom_path() {
    const char* dir = std::getenv("LAME_SPECTRA_CACHE");
    if (!dir || !*dir) return {};
    return std::string(dir) + "/fftw.wisdom";
}

// Plans are created UNALIGNED so fftw_execute_dft may run on any caller
// buffer; execution through an existing plan is thread-safe by FFTW's
// documented contract, only creation needs the lock.
fftw_plan get_plan(int d, int n, int sign) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    PlanKey key{d, n, sign};
    auto it = g_plans.find(key);
    if (it != g_plans.end()) return it->second;

    const std::string wp = wisdom_path();
    if (!g_wisdom_loaded && !wp.empty()) {
        fftw_import_wisdom_from_filename(wp.c_str());
        g_wisdom_loaded = true;
    }

    int dims[3] = {n, n, n};
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(n);
    fftw_complex* buf = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(d, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);

    if (!wp.empty()) fftw_export_wisdom_to_filename(wp.c_str());
    g_plans.emplace(key, plan);
    return plan;
}

} // namespace

void spectral_transform(ScalarField& f, SpectralDirection dir) {
    const Grid& g = f.grid;
    const int sign = dir == SpectralDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = get_plan(g.d, g.n, sign);
    auto* data = reinterpret_cast<fftw_complex*>(f.v.data());
    fftw_execute_dft(plan, data, data);
    if (dir == SpectralDirection::forward) {
        const double inv = 1.0 / static_cast<double>(g.points());
        for (auto& z : f.v) z *= inv;
    }
}

void spectral_transform(VectorField& u, SpectralDirection dir) {
    for (auto& c : u.comp) spectral_transform(c, dir);
}

ScalarField spectral_transform_copy(const ScalarField& f, SpectralDirection dir) {
    ScalarField out = f;
    spectral_transform(out, dir);
    return out;
}

VectorField spectral_transform_copy(const VectorField& u, SpectralDirection dir) {
    VectorField out = u;
    spectral_transform(out, dir);
    return out;
}

} // namespace lame
