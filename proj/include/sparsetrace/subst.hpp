#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsetrace/params.hpp"
#include "sparsetrace/pattern.hpp"

namespace sparsetrace {

// The two substitution systems: the parameterized 5 x e system and the fixed
// 3 x 4 variant.
class SubstSystem {
public:
    enum class Kind { Tau, TauPrime };

    static SubstSystem tau(const SubstParams& p) { return SubstSystem(Kind::Tau, p); }
    static SubstSystem tau_prime() { return SubstSystem(Kind::TauPrime, SubstParams{1, 1, 0, 0}); }

    Kind kind() const { return kind_; }
    const SubstParams& params() const { return params_; }

    std::int64_t cell_width() const { return kind_ == Kind::Tau ? 5 : 3; }
    std::int64_t cell_height() const { return kind_ == Kind::Tau ? params_.e() : 4; }

    // Vertical growth per level: the net south-north rise of a sloped seed's
    // image equals rise_factor() times the seed slope.
    std::int64_t rise_factor() const { return kind_ == Kind::Tau ? 2 * params_.a : 2; }

    // Single image cell, O(1); the whole image is never materialized here.
    Tile image_cell(const Tile& seed, std::int64_t p, std::int64_t q) const;

    Pattern2D image(const Tile& seed) const;

    // n-fold image of the seed. Refuses to allocate more than max_cells.
    Pattern2D macrotile(const Tile& seed, int level, std::int64_t max_cells = (1 << 26)) const;

    // Content of tau^n(seed) at (p,q) by peeling mixed-radix digits, O(n).
    Tile lazy_lookup(const Tile& seed, int level, std::int64_t p, std::int64_t q) const;

    // Height of the cell (p,q) of the level-n surface relative to the cell at
    // (0,0), accumulated blockwise, O(n).
    std::int64_t rel_height(const Tile& seed, int level, std::int64_t p, std::int64_t q) const;

    // Height profile of one column of tau^n(seed) as slope-run breakpoints:
    // pairs (y, z) with integer coordinates, z(y) linear between consecutive
    // breakpoints, y in [0, cell_height()^n], z relative to the cell at (p,0).
    std::vector<std::pair<std::int64_t, std::int64_t>> column_profile(
        const Tile& seed, int level, std::int64_t p) const;

    std::int64_t width_at(int level) const { return ipow(cell_width(), level); }
    std::int64_t height_at(int level) const { return ipow(cell_height(), level); }

    static std::int64_t ipow(std::int64_t base, int exp);

private:
    SubstSystem(Kind k, const SubstParams& p) : kind_(k), params_(p) {
        if (k == Kind::Tau && (p.a < 1 || p.b < 1 || p.c < 1 || p.d < 1))
            throw std::invalid_argument("tau requires positive parameters");
    }

    Kind kind_;
    SubstParams params_;
};

struct OccurrenceVerdict {
    bool found = false;
    int level = 0;  // minimal level when found; the searched bound otherwise
};

// Scans tau^k(s) for all 12 seeds and k = 0..max_level for an occurrence of
// the pattern. Windows are probed through lazy lookup with early mismatch.
OccurrenceVerdict pattern_occurs(const SubstSystem& sys, const Pattern2D& pattern, int max_level);

// Occurrence check for a sparse cell set with optional jag masking and exact
// relative heights; used by the zero-gluing checker, where outward-facing jag
// flags of a component cannot be read off the projected symbols.
struct MaskedCell {
    std::int64_t x = 0, y = 0;
    std::int64_t z = 0;       // height relative to the first cell
    Slope slope = Slope::Flat;
    bool know_west = false, jagged_west = false;
    bool know_east = false, jagged_east = false;
};

OccurrenceVerdict masked_occurs(const SubstSystem& sys, const std::vector<MaskedCell>& cells,
                                int max_level);

} // namespace sparsetrace
