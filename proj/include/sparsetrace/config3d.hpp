#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "sparsetrace/tiles.hpp"

namespace sparsetrace {

struct Vec3 {
    std::int64_t x = 0, y = 0, z = 0;
    friend bool operator==(const Vec3& a, const Vec3& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
    friend bool operator<(const Vec3& a, const Vec3& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    }
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
};

inline std::int64_t linf(const Vec3& a, const Vec3& b) {
    auto ax = a.x - b.x, ay = a.y - b.y, az = a.z - b.z;
    if (ax < 0) ax = -ax;
    if (ay < 0) ay = -ay;
    if (az < 0) az = -az;
    return std::max(ax, std::max(ay, az));
}

// Finite sparse configuration: cells at integer positions, ordered map for
// deterministic iteration and serialization.
template <typename Sym>
class Config3D {
public:
    using Map = std::map<Vec3, Sym>;

    void set(const Vec3& p, const Sym& s) { cells_[p] = s; }
    std::optional<Sym> get(const Vec3& p) const {
        auto it = cells_.find(p);
        if (it == cells_.end()) return std::nullopt;
        return it->second;
    }
    bool occupied(const Vec3& p) const { return cells_.count(p) != 0; }
    size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    const Map& cells() const { return cells_; }

    Config3D translated(const Vec3& d) const {
        Config3D out;
        for (const auto& [p, s] : cells_) out.cells_.emplace(p + d, s);
        return out;
    }

    void merge(const Config3D& other) {
        for (const auto& [p, s] : other.cells_) cells_[p] = s;
    }

    friend bool operator==(const Config3D& a, const Config3D& b) {
        return a.cells_ == b.cells_;
    }

private:
    Map cells_;
};

using TileConfig = Config3D<Tile>;
using DeltaConfig = Config3D<DeltaSymbol>;
using BitConfig = Config3D<bool>;  // only 1-cells stored

} // namespace sparsetrace
