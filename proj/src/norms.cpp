#include "lame/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "lame/errors.hpp"
#include "lame/fft.hpp"

namespace lame {

nlohmann::json NormReport::to_json() const {
    return nlohmann::json{{"kind", kind},
                          {"value", value},
                          {"params", params},
                          {"argmax", argmax},
                          {"settings", settings},
                          {"seed", seed},
                          {"restricted_family", restricted_family}};
}

namespace {

double hd(const Grid& g) { return std::pow(g.h(), g.d); }

Eigen::MatrixXcd point_matrix(const MatrixPotentialField& V, std::size_t i) {
    const int d = V.grid.d;
    Eigen::MatrixXcd M(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) M(j, k) = V.entry(i, j, k);
    return M;
}

double lp_vec(const Eigen::VectorXcd& v, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (int i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
        return m;
    }
    double s = 0.0;
    for (int i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p);
    return std::pow(s, 1.0 / p);
}

// Duality map for the l^p norm: psi(y)_i = |y_i|^(p-1) * y_i/|y_i|.
Eigen::VectorXcd lp_dual(const Eigen::VectorXcd& y, double p) {
    Eigen::VectorXcd z(y.size());
    for (int i = 0; i < y.size(); ++i) {
        const double a = std::abs(y[i]);
        z[i] = a == 0.0 ? cplx(0.0, 0.0) : std::pow(a, p - 1.0) * (y[i] / a);
    }
    return z;
}

// Boyd ascent on ||Mx||_p / ||x||_p.  Monotone in the objective, so the
// returned value is a certified lower bound of the induced norm; exact for
// diagonal M from the coordinate starts.
double induced_norm_lower_bound(const Eigen::MatrixXcd& M, double p, int* iterations) {
    const double pc = p / (p - 1.0);
    const int d = static_cast<int>(M.rows());

    std::vector<Eigen::VectorXcd> starts;
    for (int k = 0; k < d; ++k) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
        e[k] = 1.0;
        starts.push_back(e);
    }
    starts.push_back(Eigen::VectorXcd::Ones(d));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinV);
    starts.push_back(svd.matrixV().col(0));

    double best = 0.0;
    int used = 0;
    for (auto x : starts) {
        double nx = lp_vec(x, p);
        if (nx == 0.0) continue;
        x /= nx;
        double est = 0.0;
        for (int it = 0; it < 200; ++it) {
            ++used;
            Eigen::VectorXcd y = M * x;
            est = lp_vec(y, p);
            if (est == 0.0) break;
            Eigen::VectorXcd z = M.adjoint() * lp_dual(y, p);
            const double zn = lp_vec(z, pc);
            const double zx = (z.adjoint() * x)(0).real();
            if (zn <= zx * (1.0 + 1e-13) + 1e-300) break;
            x = lp_dual(z, pc);
            x /= lp_vec(x, p);
        }
        best = std::max(best, est);
    }
    if (iterations) *iterations = used;
    return best;
}

} // namespace

ScalarField matrix_pointwise_norm(const MatrixPotentialField& V, double p, PointwiseNormInfo* info) {
    if (!(p >= 1.0))
        throw std::invalid_argument("matrix_pointwise_norm: p must satisfy p >= 1");
    const Grid& g = V.grid;
    const int d = g.d;
    ScalarField out(g);
    PointwiseNormInfo local;

    for (std::size_t i = 0; i < g.points(); ++i) {
        double value = 0.0;
        if (p == 1.0) {
            for (int k = 0; k < d; ++k) {
                double col = 0.0;
                for (int j = 0; j < d; ++j) col += std::abs(V.entry(i, j, k));
                value = std::max(value, col);
            }
        } else if (std::isinf(p)) {
            for (int j = 0; j < d; ++j) {
                double row = 0.0;
                for (int k = 0; k < d; ++k) row += std::abs(V.entry(i, j, k));
                value = std::max(value, row);
            }
        } else if (p == 2.0) {
            Eigen::MatrixXcd M = point_matrix(V, i);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M.adjoint() * M);
            value = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
        } else {
            local.exact = false;
            int its = 0;
            value = induced_norm_lower_bound(point_matrix(V, i), p, &its);
            local.max_iterations = std::max(local.max_iterations, its);
        }
        out.v[i] = value;
    }
    if (info) *info = local;
    return out;
}

NormReport lp_norm(const MatrixPotentialField& V, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm: p must satisfy p >= 1");
    PointwiseNormInfo info;
    ScalarField s = matrix_pointwise_norm(V, p, &info);
    double acc = 0.0;
    for (const auto& z : s.v) acc += std::pow(z.real(), p);
    NormReport rep;
    rep.kind = "lp";
    rep.value = std::pow(acc * hd(V.grid), 1.0 / p);
    rep.params = {{"p", p}};
    rep.settings = {{"pointwise_exact", info.exact}, {"pointwise_iterations", info.max_iterations}};
    return rep;
}

// ---------------------------------------------------------------------------
// ball stencils (shared by Morrey-Campanato and the maximal regularization)

namespace {

// Displacement stencil of samples within torus distance r.  Offsets are the
// same for every center on a uniform periodic grid.
std::vector<std::array<int, 3>> ball_stencil(const Grid& g, double r) {
    std::vector<std::array<int, 3>> st;
    const double h = g.h();
    const int n = g.n;
    std::array<int, 3> delta{0, 0, 0};
    auto dist = [&](const std::array<int, 3>& dd) {
        double s = 0.0;
        for (int a = 0; a < g.d; ++a) {
            double w = g.wrap(dd[a] * h);
            s += w * w;
        }
        return std::sqrt(s);
    };
    if (g.d == 1) {
        for (delta[0] = -n / 2; delta[0] < n / 2; ++delta[0])
            if (dist(delta) <= r) st.push_back(delta);
    } else if (g.d == 2) {
        for (delta[0] = -n / 2; delta[0] < n / 2; ++delta[0])
            for (delta[1] = -n / 2; delta[1] < n / 2; ++delta[1])
                if (dist(delta) <= r) st.push_back(delta);
    } else {
        for (delta[0] = -n / 2; delta[0] < n / 2; ++delta[0])
            for (delta[1] = -n / 2; delta[1] < n / 2; ++delta[1])
                for (delta[2] = -n / 2; delta[2] < n / 2; ++delta[2])
                    if (dist(delta) <= r) st.push_back(delta);
    }
    return st;
}

double stencil_sum(const Grid& g, const std::vector<double>& s,
                   const std::array<int, 3>& center, const std::vector<std::array<int, 3>>& st) {
    const int n = g.n;
    double acc = 0.0;
    std::array<int, 3> j{0, 0, 0};
    for (const auto& delta : st) {
        for (int a = 0; a < g.d; ++a) j[a] = ((center[a] + delta[a]) % n + n) % n;
        acc += s[g.flatten(j)];
    }
    return acc;
}

} // namespace

NormReport morrey_campanato_norm(const MatrixPotentialField& V, double alpha, double p,
                                 const std::vector<double>& radii) {
    const Grid& g = V.grid;
    if (!(alpha > 0.0))
        throw std::invalid_argument("morrey_campanato_norm: alpha must be positive");
    if (!(p >= 1.0) || !(p <= g.d / alpha))
        throw std::invalid_argument("morrey_campanato_norm: need 1 <= p <= d/alpha");
    if (radii.empty())
        throw std::invalid_argument("morrey_campanato_norm: radii set must be nonempty");
    const double h = g.h();
    for (double r : radii)
        if (!(r >= h * (1.0 - 1e-9)) || !(r <= g.L / 2.0 * (1.0 + 1e-9)))
            throw std::invalid_argument("morrey_campanato_norm: radii must lie in [h, L/2]");

    PointwiseNormInfo info;
    ScalarField pw = matrix_pointwise_norm(V, p, &info);
    std::vector<double> s(pw.v.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::pow(pw.v[i].real(), p);

    double best = 0.0;
    std::array<int, 3> best_center{0, 0, 0};
    double best_r = radii.front();
    for (double r : radii) {
        auto st = ball_stencil(g, r);
        const double pref = std::pow(r, alpha) * std::pow(std::pow(r, -g.d) * hd(g), 1.0 / p);
        for (std::size_t i = 0; i < g.points(); ++i) {
            auto c = g.unflatten(i);
            double val = pref * std::pow(stencil_sum(g, s, c, st), 1.0 / p);
            if (val > best) {
                best = val;
                best_center = c;
                best_r = r;
            }
        }
    }

    NormReport rep;
    rep.kind = "morrey_campanato";
    rep.value = best;
    rep.params = {{"alpha", alpha}, {"p", p}, {"radii", radii}};
    // center reported in torus coordinates, not sample indices
    rep.argmax = {{"center", {best_center[0] * h, best_center[1] * h, best_center[2] * h}},
                  {"radius", best_r}};
    rep.settings = {{"ball_membership", "sample_distance"},
                    {"pointwise_exact", info.exact}};
    rep.restricted_family = true; // grid centers and the supplied radii only
    return rep;
}

// ---------------------------------------------------------------------------
// dyadic cubes

namespace {

// Members (flat sample indices) of the dyadic cube; cells per axis m = n>>level.
std::vector<std::size_t> cube_members(const Grid& g, const DyadicCube& q) {
    const int m = g.n >> q.level;
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(std::pow(m, g.d)));
    std::array<int, 3> idx{0, 0, 0};
    if (g.d == 1) {
        for (int a = 0; a < m; ++a) {
            idx[0] = q.index[0] * m + a;
            out.push_back(g.flatten(idx));
        }
    } else if (g.d == 2) {
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                idx[0] = q.index[0] * m + a;
                idx[1] = q.index[1] * m + b;
                out.push_back(g.flatten(idx));
            }
    } else {
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c) {
                    idx[0] = q.index[0] * m + a;
                    idx[1] = q.index[1] * m + b;
                    idx[2] = q.index[2] * m + c;
                    out.push_back(g.flatten(idx));
                }
    }
    return out;
}

template <typename F>
void for_each_cube(const Grid& g, int max_level, F&& f) {
    const int cap = std::min(max_level, g.levels());
    for (int level = 0; level <= cap; ++level) {
        const int cubes = 1 << level;
        DyadicCube q;
        q.level = level;
        if (g.d == 1) {
            for (q.index[0] = 0; q.index[0] < cubes; ++q.index[0]) f(q);
        } else if (g.d == 2) {
            for (q.index[0] = 0; q.index[0] < cubes; ++q.index[0])
                for (q.index[1] = 0; q.index[1] < cubes; ++q.index[1]) f(q);
        } else {
            for (q.index[0] = 0; q.index[0] < cubes; ++q.index[0])
                for (q.index[1] = 0; q.index[1] < cubes; ++q.index[1])
                    for (q.index[2] = 0; q.index[2] < cubes; ++q.index[2]) f(q);
        }
    }
}

std::vector<double> real_nonnegative_samples(const ScalarField& W, const char* who) {
    std::vector<double> w(W.v.size());
    bool any = false;
    for (std::size_t i = 0; i < W.v.size(); ++i) {
        if (W.v[i].imag() != 0.0 || W.v[i].real() < 0.0)
            throw std::invalid_argument(std::string(who) + ": field must be real and nonnegative");
        w[i] = W.v[i].real();
        if (w[i] > 0.0) any = true;
    }
    if (!any)
        throw std::invalid_argument(std::string(who) + ": field is identically zero");
    return w;
}

} // namespace

double diagonal_kernel_average(int d, double alpha) {
    if (d < 1 || d > 3)
        throw std::invalid_argument("diagonal_kernel_average: d must be 1, 2 or 3");
    if (!(alpha > 0.0) || !(alpha < static_cast<double>(d)))
        throw std::invalid_argument("diagonal_kernel_average: need 0 < alpha < d");
    if (d == 1) return 2.0 / (alpha * (alpha + 1.0));

    static std::mutex cache_mutex;
    static std::map<std::pair<int, long long>, double> cache;
    const auto key = std::make_pair(d, static_cast<long long>(std::llround(alpha * 1e12)));
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    // Gauss-Legendre nodes on [0,1]; Newton on the Legendre recurrence.
    constexpr int q = 16;
    double xs[q], ws[q];
    for (int i = 0; i < q; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int sweep = 0; sweep < 100; ++sweep) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < q; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            dp = q * (t * p0 - p1) / (t * t - 1.0);
            double step = p0 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        xs[i] = 0.5 * (1.0 + t);
        ws[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }

    // Mean over the difference density: 2^d * int_{[0,1]^d} prod(1-w_j)|w|^(alpha-d) dw,
    // integrated over L-inf dyadic shells so the integrand stays smooth per box.
    auto box_integral = [&](const double* lo, const double* hi) {
        double acc = 0.0;
        double w0[3], x0[3];
        const int qd = d == 2 ? q * q : q * q * q;
        for (int flat = 0; flat < qd; ++flat) {
            int rem = flat;
            double wt = 1.0;
            for (int a = 0; a < d; ++a) {
                int i = rem % q;
                rem /= q;
                x0[a] = lo[a] + (hi[a] - lo[a]) * xs[i];
                w0[a] = (hi[a] - lo[a]) * ws[i];
                wt *= w0[a];
            }
            double r2 = 0.0, dens = 1.0;
            for (int a = 0; a < d; ++a) {
                r2 += x0[a] * x0[a];
                dens *= (1.0 - x0[a]);
            }
            acc += wt * dens * std::pow(r2, 0.5 * (alpha - d));
        }
        return acc;
    };

    double unit = 0.0;
    double t = 1.0;
    const double ratio = std::pow(2.0, -alpha);
    for (int k = 0; k < 200; ++k) {
        double shell = 0.0;
        const int boxes = (1 << d) - 1;
        for (int mask = 1; mask <= boxes; ++mask) {
            double lo[3], hi[3];
            for (int a = 0; a < d; ++a) {
                if (mask & (1 << a)) {
                    lo[a] = t / 2.0;
                    hi[a] = t;
                } else {
                    lo[a] = 0.0;
                    hi[a] = t / 2.0;
                }
            }
            shell += box_integral(lo, hi);
        }
        unit += shell;
        const double tail = shell * ratio / (1.0 - ratio);
        if (tail < 1e-15 * unit) {
            unit += tail;
            break;
        }
        t /= 2.0;
    }

    const double A = std::pow(2.0, d) * unit;
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[key] = A;
    return A;
}

NormReport kerman_sawyer_norm(const ScalarField& W, double alpha, int max_level) {
    const Grid& g = W.grid;
    if (!(alpha > 0.0) || !(alpha < static_cast<double>(g.d)))
        throw std::invalid_argument("kerman_sawyer_norm: need 0 < alpha < d");
    if (max_level < 0)
        throw std::invalid_argument("kerman_sawyer_norm: max_level must be >= 0");
    std::vector<double> w = real_nonnegative_samples(W, "kerman_sawyer_norm");

    const double h = g.h();
    const double cellw = hd(g);
    const double Adiag = diagonal_kernel_average(g.d, alpha);
    const double diag_kernel = Adiag * std::pow(h, alpha - g.d);

    double best = 0.0, diag_bound = 0.0;
    DyadicCube best_cube;
    std::vector<std::array<int, 3>> midx(g.points());
    for (std::size_t i = 0; i < g.points(); ++i) midx[i] = g.unflatten(i);

    for_each_cube(g, max_level, [&](const DyadicCube& q) {
        auto cells = cube_members(g, q);
        double mass = 0.0;
        for (auto i : cells) mass += w[i];
        mass *= cellw;
        if (mass <= 0.0) return;

        double dbl = 0.0, diag_part = 0.0;
        for (std::size_t a = 0; a < cells.size(); ++a) {
            const double wa = w[cells[a]];
            if (wa == 0.0) continue;
            diag_part += wa * wa * diag_kernel;
            dbl += wa * wa * diag_kernel;
            const auto& ia = midx[cells[a]];
            for (std::size_t b = a + 1; b < cells.size(); ++b) {
                const double wb = w[cells[b]];
                if (wb == 0.0) continue;
                const auto& ib = midx[cells[b]];
                double r2 = 0.0;
                for (int ax = 0; ax < g.d; ++ax) {
                    double dd = g.wrap((ia[ax] - ib[ax]) * h);
                    r2 += dd * dd;
                }
                dbl += 2.0 * wa * wb * std::pow(r2, 0.5 * (alpha - g.d));
            }
        }
        const double val = dbl * cellw * cellw / mass;
        const double diag_term = diag_part * cellw * cellw / mass;
        diag_bound = std::max(diag_bound, diag_term);
        if (val > best) {
            best = val;
            best_cube = q;
        }
    });

    NormReport rep;
    rep.kind = "kerman_sawyer";
    rep.value = best;
    rep.params = {{"alpha", alpha}, {"max_level", max_level}};
    rep.argmax = {{"level", best_cube.level},
                  {"index", {best_cube.index[0], best_cube.index[1], best_cube.index[2]}}};
    rep.settings = {{"quadrature", "cell_midpoint"},
                    {"diag_constant", Adiag},
                    {"diag_bound", diag_bound},
                    {"max_level_used", std::min(max_level, g.levels())}};
    rep.restricted_family = true; // torus-aligned dyadic cubes only
    return rep;
}

NormReport a_p_constant(const ScalarField& w, double p, int max_level) {
    const Grid& g = w.grid;
    if (!(p > 1.0))
        throw std::invalid_argument("a_p_constant: p must be > 1");
    if (max_level < 0)
        throw std::invalid_argument("a_p_constant: max_level must be >= 0");
    std::vector<double> wv(w.v.size());
    for (std::size_t i = 0; i < w.v.size(); ++i) {
        if (w.v[i].imag() != 0.0 || !(w.v[i].real() > 0.0))
            throw std::invalid_argument("a_p_constant: weight must be strictly positive real");
        wv[i] = w.v[i].real();
    }

    const double e = 1.0 / (p - 1.0);
    double best = 0.0;
    DyadicCube best_cube;
    for_each_cube(g, max_level, [&](const DyadicCube& q) {
        auto cells = cube_members(g, q);
        double s1 = 0.0, s2 = 0.0;
        for (auto i : cells) {
            s1 += wv[i];
            s2 += std::pow(wv[i], -e);
        }
        const double m = static_cast<double>(cells.size());
        const double val = (s1 / m) * std::pow(s2 / m, p - 1.0);
        if (val > best) {
            best = val;
            best_cube = q;
        }
    });

    NormReport rep;
    rep.kind = "muckenhoupt";
    rep.value = best;
    rep.params = {{"p", p}, {"max_level", max_level}};
    rep.argmax = {{"level", best_cube.level},
                  {"index", {best_cube.index[0], best_cube.index[1], best_cube.index[2]}}};
    rep.settings = {{"max_level_used", std::min(max_level, g.levels())}};
    rep.restricted_family = true;
    return rep;
}

std::vector<double> dyadic_radii(const Grid& grid) {
    std::vector<double> out;
    for (double r = grid.h(); r <= grid.L / 2.0 * (1.0 + 1e-12); r *= 2.0) out.push_back(r);
    return out;
}

ScalarField maximal_regularize(const ScalarField& V, double p1, std::vector<double> radii) {
    const Grid& g = V.grid;
    if (!(p1 > 1.0))
        throw std::invalid_argument("maximal_regularize: p1 must be > 1");
    std::vector<double> v(V.v.size());
    for (std::size_t i = 0; i < V.v.size(); ++i) {
        if (V.v[i].imag() != 0.0 || V.v[i].real() < 0.0)
            throw std::invalid_argument("maximal_regularize: field must be real and nonnegative");
        v[i] = std::pow(V.v[i].real(), p1);
    }
    if (radii.empty()) radii = dyadic_radii(g);

    // single-cell average is V^p1 itself, which is what makes W >= V pointwise
    std::vector<double> best(v);
    for (double r : radii) {
        auto st = ball_stencil(g, r);
        const double inv = 1.0 / static_cast<double>(st.size());
        for (std::size_t i = 0; i < g.points(); ++i) {
            auto c = g.unflatten(i);
            best[i] = std::max(best[i], stencil_sum(g, v, c, st) * inv);
        }
    }

    ScalarField out(g);
    for (std::size_t i = 0; i < v.size(); ++i) out.v[i] = std::pow(best[i], 1.0 / p1);
    return out;
}

HardyReport hardy_constant_estimate(const MatrixPotentialField& V, double tol,
                                    int max_iter, std::uint64_t seed) {
    const Grid& g = V.grid;
    ScalarField pw = matrix_pointwise_norm(V, 2.0);
    std::vector<double> s(pw.v.size());
    double smax = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = pw.v[i].real();
        smax = std::max(smax, s[i]);
    }
    if (smax == 0.0)
        throw std::invalid_argument("hardy_constant_estimate: potential is identically zero");

    // multiplier 1/|xi| with the constant mode removed (torus Laplacian kernel)
    auto half_inv_lap = [&](ScalarField f) {
        spectral_transform(f, SpectralDirection::forward);
        for (std::size_t i = 0; i < f.v.size(); ++i) {
            auto idx = g.unflatten(i);
            double n2 = 0.0;
            for (int a = 0; a < g.d; ++a) {
                double xi = g.frequency(idx[a]);
                n2 += xi * xi;
            }
            f.v[i] = n2 == 0.0 ? cplx(0.0, 0.0) : f.v[i] / std::sqrt(n2);
        }
        spectral_transform(f, SpectralDirection::inverse);
        return f;
    };
    auto applyB = [&](const ScalarField& f) {
        ScalarField t = half_inv_lap(f);
        for (std::size_t i = 0; i < t.v.size(); ++i) t.v[i] *= s[i];
        return half_inv_lap(t);
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ScalarField x(g);
    for (auto& z : x.v) z = cplx(gauss(rng), gauss(rng));
    scale(x, 1.0 / norm2(x));

    HardyReport rep;
    rep.seed = seed;
    double lambda = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        ScalarField y = applyB(x);
        rep.iterations = it;
        const double ny = norm2(y);
        if (ny == 0.0) {
            rep.value = 0.0;
            rep.converged = true;
            return rep;
        }
        const double next = inner(x, y).real();
        scale(y, 1.0 / ny);
        x = std::move(y);
        if (it > 1 && std::abs(next - lambda) <= tol * std::max(std::abs(next), 1e-300)) {
            rep.value = next;
            rep.converged = true;
            return rep;
        }
        lambda = next;
    }
    throw numerical_error("hardy_constant_estimate: power iteration did not converge in " +
                          std::to_string(max_iter) + " iterations (last value " +
                          std::to_string(lambda) + ")");
}

} // namespace lame
