#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sparsetrace/tiles.hpp"

namespace sparsetrace {

// Dense rectangle of tiles. Row 0 is the SOUTH row; y grows northward.
class Pattern2D {
public:
    Pattern2D() = default;
    Pattern2D(std::int64_t width, std::int64_t height)
        : width_(width), height_(height), cells_(check_size(width, height)) {}

    std::int64_t width() const { return width_; }
    std::int64_t height() const { return height_; }

    const Tile& at(std::int64_t x, std::int64_t y) const {
        return cells_[index(x, y)];
    }
    Tile& at(std::int64_t x, std::int64_t y) { return cells_[index(x, y)]; }

    friend bool operator==(const Pattern2D& a, const Pattern2D& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.cells_ == b.cells_;
    }

private:
    std::int64_t width_ = 0, height_ = 0;
    std::vector<Tile> cells_;

    static size_t check_size(std::int64_t w, std::int64_t h) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("pattern dimensions must be positive");
        return (size_t)w * (size_t)h;
    }
    size_t index(std::int64_t x, std::int64_t y) const {
        if (x < 0 || x >= width_ || y < 0 || y >= height_)
            throw std::out_of_range("pattern index out of range");
        return (size_t)y * (size_t)width_ + (size_t)x;
    }
};

// East-west adjacency carries a height constraint only when the shared edge
// is jagged on neither side.
inline bool edge_connected(const Tile& west, const Tile& east) {
    return !west.jagged_east && !east.jagged_west;
}

} // namespace sparsetrace
