#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace sparsetrace {

enum class Slope : std::uint8_t { Flat = 0, Up = 1, Down = 2 };

inline int slope_value(Slope s) {
    switch (s) {
        case Slope::Flat: return 0;
        case Slope::Up: return 1;
        case Slope::Down: return -1;
    }
    return 0;
}

// One letter of the 12-letter surface alphabet: a slope together with
// jaggedness flags for the west and east tile edges. Jagged edges carry no
// height constraint to the neighbor on that side.
struct Tile {
    Slope slope = Slope::Flat;
    bool jagged_west = false;
    bool jagged_east = false;

    friend bool operator==(const Tile& a, const Tile& b) {
        return a.slope == b.slope && a.jagged_west == b.jagged_west &&
               a.jagged_east == b.jagged_east;
    }
    friend bool operator!=(const Tile& a, const Tile& b) { return !(a == b); }
    friend bool operator<(const Tile& a, const Tile& b) {
        return a.index() < b.index();
    }

    int index() const {
        return (int)slope * 4 + (jagged_west ? 2 : 0) + (jagged_east ? 1 : 0);
    }

    Tile plain() const { return Tile{slope, false, false}; }

    // Two-character code: slope in {f,u,d}, jags in {n,w,e,b}.
    std::string code() const {
        static const char slope_ch[3] = {'f', 'u', 'd'};
        char jag = jagged_west ? (jagged_east ? 'b' : 'w') : (jagged_east ? 'e' : 'n');
        return std::string{slope_ch[(int)slope], jag};
    }

    static Tile from_code(const std::string& s) {
        if (s.size() != 2) throw std::invalid_argument("tile code must be 2 chars: " + s);
        Tile t;
        switch (s[0]) {
            case 'f': t.slope = Slope::Flat; break;
            case 'u': t.slope = Slope::Up; break;
            case 'd': t.slope = Slope::Down; break;
            default: throw std::invalid_argument("bad slope char in tile code: " + s);
        }
        switch (s[1]) {
            case 'n': case 'f': break;  // 'f' tolerated as alias for none
            case 'w': t.jagged_west = true; break;
            case 'e': t.jagged_east = true; break;
            case 'b': t.jagged_west = t.jagged_east = true; break;
            default: throw std::invalid_argument("bad jag char in tile code: " + s);
        }
        return t;
    }

    static std::array<Tile, 12> all() {
        std::array<Tile, 12> out{};
        int i = 0;
        for (int s = 0; s < 3; ++s)
            for (int jw = 0; jw < 2; ++jw)
                for (int je = 0; je < 2; ++je)
                    out[i++] = Tile{(Slope)s, jw != 0, je != 0};
        return out;
    }
};

// Four-letter projected alphabet: slope classes plus a blank with no surface.
enum class DeltaSymbol : std::uint8_t { Blank = 0, FlatBottom = 1, Ascending = 2, Descending = 3 };

inline DeltaSymbol psi_project(const Tile& t) {
    switch (t.slope) {
        case Slope::Flat: return DeltaSymbol::FlatBottom;
        case Slope::Up: return DeltaSymbol::Ascending;
        case Slope::Down: return DeltaSymbol::Descending;
    }
    return DeltaSymbol::Blank;
}

inline int slope_value(DeltaSymbol d) {
    switch (d) {
        case DeltaSymbol::FlatBottom: return 0;
        case DeltaSymbol::Ascending: return 1;
        case DeltaSymbol::Descending: return -1;
        case DeltaSymbol::Blank: break;
    }
    throw std::invalid_argument("blank symbol has no slope");
}

inline std::string delta_code(DeltaSymbol d) {
    switch (d) {
        case DeltaSymbol::FlatBottom: return "F";
        case DeltaSymbol::Ascending: return "A";
        case DeltaSymbol::Descending: return "D";
        case DeltaSymbol::Blank: return "_";
    }
    return "_";
}

inline DeltaSymbol delta_from_code(const std::string& s) {
    if (s == "F") return DeltaSymbol::FlatBottom;
    if (s == "A") return DeltaSymbol::Ascending;
    if (s == "D") return DeltaSymbol::Descending;
    if (s == "_") return DeltaSymbol::Blank;
    throw std::invalid_argument("bad delta code: " + s);
}

} // namespace sparsetrace

template <>
struct std::hash<sparsetrace::Tile> {
    size_t operator()(const sparsetrace::Tile& t) const noexcept {
        return (size_t)t.index();
    }
};
