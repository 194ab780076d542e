#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparsetrace/surface.hpp"

namespace sparsetrace {
namespace wang {

// Face order: west, east, south, north, down, up. Coordinates here are
// (x = south-north, y = west-east, z = vertical): the cluster cuboid has
// extents 6 x 2 x 4 in this order and the north neighbor sits at +6 along x.
enum Face : int { FWest = 0, FEast, FSouth, FNorth, FDown, FUp };

struct FaceColor {
    bool zero = true;
    std::uint64_t digest = 0;

    friend bool operator==(const FaceColor& a, const FaceColor& b) {
        return a.zero == b.zero && (a.zero || a.digest == b.digest);
    }
    friend bool operator!=(const FaceColor& a, const FaceColor& b) { return !(a == b); }
    std::string str() const;
};

struct WangCube {
    std::array<FaceColor, 6> faces;
    bool blank() const {
        for (const auto& f : faces)
            if (!f.zero) return false;
        return true;
    }
};

// One cube slot of a cluster layout: offset within the bounding cuboid, the
// half it belongs to, and whether the cube is hidden in the figure and
// reconstructed from the surface-through-the-spine rule.
struct ClusterCubeSpec {
    int sn, we, z;
    bool spine;     // west half spine; false = east half wing
    bool inferred;  // not directly visible in the rendering
};

// Fixed transcription of the three cluster shapes, slope_diff in {1,2,3}.
const std::vector<ClusterCubeSpec>& cluster_layout(int slope_diff);

struct Cluster {
    int slope_diff = 1;
    std::uint64_t payload = 0;
    std::vector<ClusterCubeSpec> cubes;

    static constexpr int extent_sn = 6, extent_we = 2, extent_z = 4;
};

Cluster build_cluster(int slope_diff, std::uint64_t payload);

struct CubePatch {
    std::map<Vec3, WangCube> cubes;
};

// One cluster per surface cell of a sheared lift; cluster bases at
// (6*y, x, z). Cubes shared between a spine and a neighboring wing are
// emitted once with both roles folded into their face colors.
CubePatch emit_patch(const TileConfig& sheared_surface);

struct FaceMismatch {
    Vec3 at;
    int face;
    std::string detail;
};

// Valid iff all touching faces match and every face toward an empty position
// carries the zero color.
std::optional<FaceMismatch> verify_patch(const CubePatch& patch);

struct ColumnStats {
    std::int64_t max_count = 0;
    std::optional<std::pair<std::int64_t, std::int64_t>> witness;  // (sn, we)
};

ColumnStats cube_column_counts(const CubePatch& patch);

} // namespace wang
} // namespace sparsetrace
