#include "sparsetrace/wang.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sparsetrace {
namespace wang {

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Transcribed cluster shapes. The spine follows the surface that enters the
// cuboid at height 1/2 and exits at slope_diff + 1/2, flats on even units and
// rises on the trailing odd units; cubes under a rise are hidden in the
// figure and marked inferred. Wings sit on the east half at even positions,
// at the same heights as the corresponding spine cubes.
const std::vector<ClusterCubeSpec> kDiff1 = {
    {0, 0, 0, true, false}, {1, 0, 0, true, false}, {2, 0, 0, true, false},
    {3, 0, 0, true, false}, {4, 0, 0, true, false}, {5, 0, 0, true, true},
    {5, 0, 1, true, false},
    {0, 1, 0, false, false}, {2, 1, 0, false, false}, {4, 1, 0, false, false},
};
const std::vector<ClusterCubeSpec> kDiff2 = {
    {0, 0, 0, true, false}, {1, 0, 0, true, false}, {2, 0, 0, true, false},
    {3, 0, 0, true, true},  {3, 0, 1, true, false}, {4, 0, 1, true, false},
    {5, 0, 1, true, true},  {5, 0, 2, true, false},
    {0, 1, 0, false, false}, {2, 1, 0, false, false}, {4, 1, 1, false, false},
};
const std::vector<ClusterCubeSpec> kDiff3 = {
    {0, 0, 0, true, false}, {1, 0, 0, true, true},  {1, 0, 1, true, false},
    {2, 0, 1, true, false}, {3, 0, 1, true, true},  {3, 0, 2, true, false},
    {4, 0, 2, true, false}, {5, 0, 2, true, true},  {5, 0, 3, true, false},
    {0, 1, 0, false, false}, {2, 1, 1, false, false}, {4, 1, 2, false, false},
};

} // namespace

const std::vector<ClusterCubeSpec>& cluster_layout(int slope_diff) {
    switch (slope_diff) {
        case 1: return kDiff1;
        case 2: return kDiff2;
        case 3: return kDiff3;
    }
    throw std::invalid_argument("slope difference must be 1, 2 or 3");
}

Cluster build_cluster(int slope_diff, std::uint64_t payload) {
    Cluster c;
    c.slope_diff = slope_diff;
    c.payload = payload;
    c.cubes = cluster_layout(slope_diff);
    for (const auto& cube : c.cubes)
        if (cube.sn < 0 || cube.sn >= Cluster::extent_sn || cube.we < 0 ||
            cube.we >= Cluster::extent_we || cube.z < 0 || cube.z >= Cluster::extent_z)
            throw std::logic_error("cluster cube outside the bounding cuboid");
    bool base = false;
    for (const auto& cube : c.cubes)
        if (cube.sn == 0 && cube.we == 0 && cube.z == 0) base = true;
    if (!base) throw std::logic_error("cluster base cube missing");
    return c;
}

std::string FaceColor::str() const {
    if (zero) return "0";
    std::ostringstream os;
    os << std::hex << digest;
    return os.str();
}

namespace {

const std::array<Vec3, 6> kDirs = {Vec3{0, -1, 0}, Vec3{0, 1, 0}, Vec3{-1, 0, 0},
                                   Vec3{1, 0, 0},  Vec3{0, 0, -1}, Vec3{0, 0, 1}};

int opposite(int f) {
    switch (f) {
        case FWest: return FEast;
        case FEast: return FWest;
        case FSouth: return FNorth;
        case FNorth: return FSouth;
        case FDown: return FUp;
        default: return FDown;
    }
}

} // namespace

CubePatch emit_patch(const TileConfig& sheared_surface) {
    // cell payload digests: the tile letter plus the letters of every cell
    // within graph distance 3 in the neighbor relation
    struct CellInfo {
        Vec3 pos;
        Tile tile;
        std::uint64_t digest = 0;
        int diff = 2;
    };
    std::vector<CellInfo> cells;
    std::multimap<std::pair<std::int64_t, std::int64_t>, size_t> by_col;
    for (const auto& [p, t] : sheared_surface.cells()) {
        by_col.emplace(std::make_pair(p.x, p.y), cells.size());
        cells.push_back(CellInfo{p, t, 0, slope_value(t.slope) + 2});
    }
    // x runs west-east, y south-north; the neighbor relation is west-east at
    // equal height across non-jagged edges and south-north within the sheared
    // slope window; stacked components never fall in each other's windows
    auto neighbor = [&](size_t i, int dx, int dy) -> std::optional<size_t> {
        auto range = by_col.equal_range(std::make_pair(cells[i].pos.x + dx, cells[i].pos.y + dy));
        for (auto it = range.first; it != range.second; ++it) {
            const CellInfo& other = cells[it->second];
            std::int64_t dz = other.pos.z - cells[i].pos.z;
            if (dy == 0) {
                if (dz != 0) continue;
                if (dx == 1 && (cells[i].tile.jagged_east || other.tile.jagged_west)) continue;
                if (dx == -1 && (cells[i].tile.jagged_west || other.tile.jagged_east)) continue;
            } else {
                if (dy == 1 && (dz < 1 || dz > 3)) continue;
                if (dy == -1 && (dz < -3 || dz > -1)) continue;
            }
            return it->second;
        }
        return std::nullopt;
    };
    auto graph_neighbors = [&](size_t i) {
        std::vector<size_t> out;
        for (auto [dx, dy] : {std::pair<int, int>{1, 0}, {-1, 0}, {0, 1}, {0, -1}})
            if (auto n = neighbor(i, dx, dy)) out.push_back(*n);
        return out;
    };
    std::map<std::uint64_t, std::string> digest_src;
    for (size_t i = 0; i < cells.size(); ++i) {
        // BFS to distance 3
        std::map<size_t, int> dist{{i, 0}};
        std::vector<size_t> frontier{i};
        for (int d = 1; d <= 3; ++d) {
            std::vector<size_t> next;
            for (size_t u : frontier)
                for (size_t v : graph_neighbors(u))
                    if (!dist.count(v)) {
                        dist[v] = d;
                        next.push_back(v);
                    }
            frontier = std::move(next);
        }
        std::ostringstream desc;
        desc << cells[i].tile.code();
        for (const auto& [j, d] : dist)
            if (j != i)
                desc << ";" << (cells[j].pos.x - cells[i].pos.x) << ","
                     << (cells[j].pos.y - cells[i].pos.y) << ","
                     << (cells[j].pos.z - cells[i].pos.z) << "=" << cells[j].tile.code();
        cells[i].digest = fnv1a(desc.str());
        auto [it, fresh] = digest_src.emplace(cells[i].digest, desc.str());
        if (!fresh && it->second != desc.str())
            throw std::runtime_error("payload digest collision; widen the digest");
    }

    // cube membership: position -> sorted role descriptions
    std::map<Vec3, std::set<std::string>> members;
    for (const auto& c : cells) {
        Vec3 base{6 * c.pos.y, c.pos.x, c.pos.z};
        std::ostringstream tag;
        tag << std::hex << c.digest;
        for (const auto& spec : cluster_layout(c.diff)) {
            Vec3 at{base.x + spec.sn, base.y + spec.we, base.z + spec.z};
            members[at].insert(tag.str() + (spec.spine ? ":spine:" : ":wing:") +
                               std::to_string(spec.sn) + "," + std::to_string(spec.we) + "," +
                               std::to_string(spec.z));
        }
    }
    auto descriptor = [&](const Vec3& p) {
        std::ostringstream os;
        for (const auto& m : members.at(p)) os << "|" << m;
        return os.str();
    };

    CubePatch patch;
    for (const auto& [p, roles] : members) {
        WangCube cube;
        for (int f = 0; f < 6; ++f) {
            Vec3 q = p + kDirs[(size_t)f];
            if (!members.count(q)) continue;  // outward faces stay zero
            // both sides derive the same color: order the descriptors by the
            // positive axis direction and tag with the axis
            std::string a = descriptor(p), b = descriptor(q);
            if (f == FEast || f == FNorth || f == FUp) std::swap(a, b);
            cube.faces[(size_t)f] = FaceColor{false, fnv1a(a + "#" + b + "#" + std::to_string(f / 2))};
        }
        patch.cubes.emplace(p, cube);
    }
    return patch;
}

std::optional<FaceMismatch> verify_patch(const CubePatch& patch) {
    for (const auto& [p, cube] : patch.cubes) {
        for (int f = 0; f < 6; ++f) {
            Vec3 q = p + kDirs[(size_t)f];
            auto it = patch.cubes.find(q);
            if (it == patch.cubes.end()) {
                if (!cube.faces[(size_t)f].zero)
                    return FaceMismatch{p, f, "non-zero face toward an empty position"};
            } else if (cube.faces[(size_t)f] != it->second.faces[(size_t)opposite(f)]) {
                return FaceMismatch{p, f, "adjacent faces disagree"};
            }
        }
    }
    return std::nullopt;
}

ColumnStats cube_column_counts(const CubePatch& patch) {
    ColumnStats st;
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> counts;
    for (const auto& [p, cube] : patch.cubes) {
        if (cube.blank()) continue;
        auto& c = counts[std::make_pair(p.x, p.y)];
        ++c;
        if (c > st.max_count) {
            st.max_count = c;
            st.witness = {p.x, p.y};
        }
    }
    return st;
}

} // namespace wang
} // namespace sparsetrace
