// snapshot.hpp
// Binary state snapshots, little-endian, bit-exact round trip:
//   magic "ACON", u32 format version, u32 dim, u32 sizes per axis,
//   f64 half-lengths per axis, then phi1 values, then phi2 values,
//   f64 row-major.

#ifndef ACON_SNAPSHOT_HPP
#define ACON_SNAPSHOT_HPP

#include <string>

#include "acon/energy.hpp"

namespace acon {

inline constexpr std::uint32_t kSnapshotVersion = 1;

struct SnapshotData {
    ScalarField phi1;
    ScalarField phi2;

    const PeriodicGrid& grid() const { return phi1.grid(); }
};

void write_snapshot(const std::string& path, const PhaseState& state);
void write_snapshot(const std::string& path, const ScalarField& phi1,
                    const ScalarField& phi2);

/// Throws IoError on missing/short files or a bad magic/version.
SnapshotData read_snapshot(const std::string& path);

} // namespace acon

#endif
