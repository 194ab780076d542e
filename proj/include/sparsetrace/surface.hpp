#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sparsetrace/config3d.hpp"
#include "sparsetrace/subst.hpp"
#include "sparsetrace/tiles.hpp"

namespace sparsetrace {

// Height-field lift of a tile configuration: at most one z per (x,y).
// A cell's z is the height of its south edge; moving north across a cell
// adds its slope, east-west neighbors across a non-jagged edge share z.
struct Surface {
    TileConfig config;

    std::optional<Vec3> cell_at(std::int64_t x, std::int64_t y) const;
    std::int64_t min_z() const;
    std::int64_t max_z() const;
};

struct SurfaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Lifts a connected, slope-consistent pattern; the pattern cell (0,0) lands
// at the anchor. Throws SurfaceError naming a violating edge cycle when the
// slopes are inconsistent, or on input disconnected by jagged edges.
Surface surf(const Pattern2D& pattern, const Vec3& anchor);

// Default anchor for a level-n geometric macrotile: southwest cell at the
// origin for n = 0 and at z = -a * (2a)^(n-1) for n >= 1 (a = seed-row count).
Vec3 default_anchor(const SubstSystem& sys, int level);

// Fast macrotile lift through column profiles; identical to
// surf(macrotile(...), default_anchor(...)).
Surface surf_macrotile(const SubstSystem& sys, const Tile& seed, int level,
                       std::int64_t max_cells = (1 << 26));

struct HeightBounds {
    int n = 0;
    std::int64_t r_n = 0;  // (2a)^n
    std::int64_t h_n = 0;  // (b+c)((2a)^n - 1)/(2a - 1), h_0 = 1 by convention
};

HeightBounds height_bounds(const SubstParams& params, int n);

// Window of the limit configuration around its fixed center, as a surface
// translated so the center cell is at the origin. The center is pinned to
// the interior flat letter (jagged on both sides) at the in-image address
// (2, a+b+c+floor(d/2)), which maps to itself under the substitution.
struct WindowBox {
    std::int64_t x_lo = 0, x_hi = -1;  // inclusive; empty when x_lo > x_hi
    std::int64_t y_lo = 0, y_hi = -1;
};

Surface limit_patch(const SubstParams& params, int level, const WindowBox& window);

// The lattice shear (x,y,z) -> (x,y,z+2y) and its inverse.
template <typename Sym>
Config3D<Sym> shear(const Config3D<Sym>& c, bool inverse = false) {
    Config3D<Sym> out;
    for (const auto& [p, s] : c.cells())
        out.set(Vec3{p.x, p.y, inverse ? p.z - 2 * p.y : p.z + 2 * p.y}, s);
    return out;
}

DeltaConfig to_delta(const TileConfig& c);

struct TraceWord {
    std::int64_t z_lo = 0;          // z of bits[0]; meaningless when empty
    std::vector<bool> bits;

    std::string str() const {
        std::string s;
        for (bool b : bits) s += b ? '1' : '0';
        return s;
    }
    int ones() const {
        int n = 0;
        for (bool b : bits) n += b ? 1 : 0;
        return n;
    }
};

// Column occupancy over the support's z-extent at (x,y).
template <typename Sym>
TraceWord extract_trace(const Config3D<Sym>& c, std::int64_t x, std::int64_t y) {
    std::vector<std::int64_t> zs;
    for (const auto& [p, s] : c.cells())
        if (p.x == x && p.y == y) zs.push_back(p.z);
    TraceWord w;
    if (zs.empty()) return w;
    auto [lo, hi] = std::minmax_element(zs.begin(), zs.end());
    w.z_lo = *lo;
    w.bits.assign((size_t)(*hi - *lo + 1), false);
    for (auto z : zs) w.bits[(size_t)(z - *lo)] = true;
    return w;
}

// Pairs of positions with identical contents on the sheared determinism
// window E = [-1,1] x {-1} x [-3,-1] but different centers. When
// support_only is set, centers compare by occupancy instead of by symbol.
struct DeterminismViolation {
    Vec3 first, second;
    std::string first_center, second_center;
};

template <typename Sym>
std::optional<DeterminismViolation> determinism_check(const Config3D<Sym>& c, bool support_only,
                                                      std::string (*code)(const Sym&));

std::optional<DeterminismViolation> determinism_check_tiles(const TileConfig& c, bool support_only);
std::optional<DeterminismViolation> determinism_check_delta(const DeltaConfig& c, bool support_only);

} // namespace sparsetrace
