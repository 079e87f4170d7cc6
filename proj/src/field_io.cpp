#include "lame/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "lame/errors.hpp"

namespace lame {

namespace {

constexpr char kMagic[4] = {'L', 'F', 'D', '1'};
constexpr std::size_t kHeaderBytes = 20;

// Samples are written as raw IEEE f64 pairs; the build targets little-endian
// hosts, which is what the format mandates.
static_assert(sizeof(double) == 8, "f64 samples");

std::size_t component_count(int kind, int d) {
    if (kind == 0) return 1;
    if (kind == 1) return static_cast<std::size_t>(d);
    return static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
}

void write_all(const std::string& path, int kind, const Grid& g, const std::vector<double>& payload) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw format_error("save_field: cannot open '" + path + "' for writing");
    out.write(kMagic, 4);
    unsigned char head[4] = {static_cast<unsigned char>(kind), static_cast<unsigned char>(g.d), 0, 0};
    out.write(reinterpret_cast<const char*>(head), 4);
    std::uint32_t n = static_cast<std::uint32_t>(g.n);
    out.write(reinterpret_cast<const char*>(&n), 4);
    double L = g.L;
    out.write(reinterpret_cast<const char*>(&L), 8);
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(double)));
    if (!out)
        throw format_error("save_field: short write to '" + path + "'");
}

struct RawFile {
    int kind;
    Grid grid;
    std::vector<double> payload; // 2 * points * components doubles
};

RawFile read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw format_error("load_field: cannot open '" + path + "'");
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (bytes.size() < kHeaderBytes)
        throw format_error("load_field: truncated header at byte offset " + std::to_string(bytes.size()));
    if (std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw format_error("load_field: bad magic at byte offset 0");
    const int kind = static_cast<unsigned char>(bytes[4]);
    if (kind > 2)
        throw format_error("load_field: unknown kind byte at byte offset 4");
    const int d = static_cast<unsigned char>(bytes[5]);
    if (d < 1 || d > 3)
        throw format_error("load_field: unsupported dimension at byte offset 5");
    if (bytes[6] != 0 || bytes[7] != 0)
        throw format_error("load_field: nonzero padding at byte offset 6");
    std::uint32_t n = 0;
    std::memcpy(&n, bytes.data() + 8, 4);
    if (n < 4 || (n & (n - 1)) != 0)
        throw format_error("load_field: n is not a power of two >= 4 at byte offset 8");
    double L = 0.0;
    std::memcpy(&L, bytes.data() + 12, 8);
    if (!(L > 0.0))
        throw format_error("load_field: nonpositive torus side at byte offset 12");

    Grid g{d, static_cast<int>(n), L};
    const std::size_t values = 2 * g.points() * component_count(kind, d);
    const std::size_t expect = kHeaderBytes + values * sizeof(double);
    if (bytes.size() != expect)
        throw format_error("load_field: payload size mismatch, file ends at byte offset " +
                           std::to_string(bytes.size()) + ", expected " + std::to_string(expect));

    RawFile rf;
    rf.kind = kind;
    rf.grid = g;
    rf.payload.resize(values);
    std::memcpy(rf.payload.data(), bytes.data() + kHeaderBytes, values * sizeof(double));
    return rf;
}

} // namespace

void save_field(const ScalarField& f, const std::string& path) {
    std::vector<double> payload;
    payload.reserve(2 * f.v.size());
    for (const auto& z : f.v) {
        payload.push_back(z.real());
        payload.push_back(z.imag());
    }
    write_all(path, 0, f.grid, payload);
}

void save_field(const VectorField& u, const std::string& path) {
    const Grid& g = u.grid;
    std::vector<double> payload;
    payload.reserve(2 * g.points() * static_cast<std::size_t>(g.d));
    for (std::size_t i = 0; i < g.points(); ++i)
        for (int j = 0; j < g.d; ++j) {
            const cplx z = u.comp[static_cast<std::size_t>(j)].v[i];
            payload.push_back(z.real());
            payload.push_back(z.imag());
        }
    write_all(path, 1, g, payload);
}

void save_field(const MatrixPotentialField& V, const std::string& path) {
    std::vector<double> payload;
    payload.reserve(2 * V.a.size());
    for (const auto& z : V.a) {
        payload.push_back(z.real());
        payload.push_back(z.imag());
    }
    write_all(path, 2, V.grid, payload);
}

FieldVariant load_field(const std::string& path) {
    RawFile rf = read_all(path);
    const Grid& g = rf.grid;
    if (rf.kind == 0) {
        ScalarField f(g);
        for (std::size_t i = 0; i < f.v.size(); ++i)
            f.v[i] = cplx(rf.payload[2 * i], rf.payload[2 * i + 1]);
        return f;
    }
    if (rf.kind == 1) {
        VectorField u(g);
        std::size_t k = 0;
        for (std::size_t i = 0; i < g.points(); ++i)
            for (int j = 0; j < g.d; ++j) {
                u.comp[static_cast<std::size_t>(j)].v[i] = cplx(rf.payload[k], rf.payload[k + 1]);
                k += 2;
            }
        return u;
    }
    MatrixPotentialField V(g);
    for (std::size_t i = 0; i < V.a.size(); ++i)
        V.a[i] = cplx(rf.payload[2 * i], rf.payload[2 * i + 1]);
    return V;
}

ScalarField load_scalar_field(const std::string& path) {
    FieldVariant v = load_field(path);
    if (auto* f = std::get_if<ScalarField>(&v)) return std::move(*f);
    throw format_error("load_field: kind byte at offset 4 is not a scalar field");
}

VectorField load_vector_field(const std::string& path) {
    FieldVariant v = load_field(path);
    if (auto* u = std::get_if<VectorField>(&v)) return std::move(*u);
    throw format_error("load_field: kind byte at offset 4 is not a vector field");
}

MatrixPotentialField load_matrix_field(const std::string& path) {
    FieldVariant v = load_field(path);
    if (auto* V = std::get_if<MatrixPotentialField>(&v)) return std::move(*V);
    throw format_error("load_field: kind byte at offset 4 is not a matrix field");
}

} // namespace lame
