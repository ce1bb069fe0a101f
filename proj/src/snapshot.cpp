// snapshot.cpp
// Little-endian binary snapshots with a bit-exact round trip.

#include "acon/snapshot.hpp"

#include <cstring>
#include <fstream>

namespace acon {

namespace {

static_assert(sizeof(double) == 8, "snapshot format assumes 64-bit doubles");

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v),
                          static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double x) {
    std::uint64_t v;
    std::memcpy(&v, &x, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& in, const std::string& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw IoError("snapshot '" + path + "': truncated file");
    return static_cast<std::uint32_t>(b[0]) |
           (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

double get_f64(std::istream& in, const std::string& path) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8))
        throw IoError("snapshot '" + path + "': truncated file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double x;
    std::memcpy(&x, &v, 8);
    return x;
}

} // namespace

void write_snapshot(const std::string& path, const ScalarField& phi1,
                    const ScalarField& phi2) {
    if (!phi1.grid().same_layout(phi2.grid()))
        throw ConfigError("write_snapshot: fields on different grids");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    const PeriodicGrid& grid = phi1.grid();
    out.write("ACON", 4);
    put_u32(out, kSnapshotVersion);
    put_u32(out, static_cast<std::uint32_t>(grid.dim()));
    for (int n : grid.points_per_axis())
        put_u32(out, static_cast<std::uint32_t>(n));
    for (double x : grid.box_half_lengths()) put_f64(out, x);
    for (double v : phi1.values()) put_f64(out, v);
    for (double v : phi2.values()) put_f64(out, v);
    if (!out) throw IoError("failed writing snapshot '" + path + "'");
}

void write_snapshot(const std::string& path, const PhaseState& state) {
    write_snapshot(path, state.phi1, state.phi2);
}

SnapshotData read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot '" + path + "'");

    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "ACON", 4) != 0)
        throw IoError("snapshot '" + path + "': bad magic bytes");
    const std::uint32_t version = get_u32(in, path);
    if (version != kSnapshotVersion)
        throw IoError("snapshot '" + path + "': unsupported format version " +
                      std::to_string(version));
    const std::uint32_t dim = get_u32(in, path);
    if (dim != 2 && dim != 3)
        throw IoError("snapshot '" + path + "': dimension must be 2 or 3");

    std::vector<int> points(dim);
    for (auto& n : points) n = static_cast<int>(get_u32(in, path));
    std::vector<double> half_lengths(dim);
    for (auto& x : half_lengths) x = get_f64(in, path);

    PeriodicGrid grid(points, half_lengths);
    ScalarField phi1(grid), phi2(grid);
    for (double& v : phi1.values()) v = get_f64(in, path);
    for (double& v : phi2.values()) v = get_f64(in, path);

    // The payload must end exactly here.
    char extra;
    if (in.read(&extra, 1))
        throw IoError("snapshot '" + path + "': trailing bytes after payload");
    return SnapshotData{std::move(phi1), std::move(phi2)};
}

} // namespace acon
