#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsetrace/surface.hpp"

namespace sparsetrace {

struct SparsityReport {
    std::int64_t max_column_count = 0;
    std::optional<std::pair<std::int64_t, std::int64_t>> witness_column;
};

template <typename Sym>
SparsityReport column_counts(const Config3D<Sym>& c) {
    SparsityReport r;
    std::int64_t run = 0;
    const Vec3* prev = nullptr;
    for (const auto& [p, s] : c.cells()) {
        if (prev && prev->x == p.x && prev->y == p.y) ++run;
        else run = 1;
        if (run > r.max_column_count) {
            r.max_column_count = run;
            r.witness_column = {p.x, p.y};
        }
        prev = &p;
    }
    return r;
}

// Minimal number of length-(2r+1) intervals covering the set; greedy from the
// left is optimal for interval covering.
std::int64_t essential_sparseness(std::vector<std::int64_t> zs, std::int64_t r);

struct ComponentSet {
    std::int64_t r = 1;
    std::vector<std::vector<Vec3>> components;
};

ComponentSet connected_components_of(const std::vector<Vec3>& support, std::int64_t r);

template <typename Sym>
ComponentSet connected_components(const Config3D<Sym>& c, std::int64_t r) {
    std::vector<Vec3> support;
    support.reserve(c.size());
    for (const auto& [p, s] : c.cells()) support.push_back(p);
    return connected_components_of(support, r);
}

enum class GluingVerdict { Accept, Reject, Inconclusive };

struct GluingResult {
    GluingVerdict verdict = GluingVerdict::Accept;
    int component = -1;
    std::string reason;
};

// Validity of a projected configuration under 1-zero-gluing: per 1-connected
// component, the function-graph property, slope-consistent heights, and a
// bounded occurrence check of the lifted letter pattern. Outward jag flags
// are not recoverable from projected symbols and stay masked.
GluingResult zero_gluing_check(const DeltaConfig& c, const SubstSystem& sys, int max_depth);

// Places b above a with l-infinity separation >= min_gap everywhere and at
// least one shared projected column; nullopt when the projections never meet
// or the needed lift exceeds max_lift.
std::optional<TileConfig> stack_two(const Surface& a, const Surface& b, std::int64_t min_gap,
                                    std::int64_t max_lift = (std::int64_t)1 << 40);

// ---- overlay search -------------------------------------------------------

// Full-rectangle macrotile surface in compressed form: per-column height
// profiles with integer breakpoints. Cell (x,y) sits at z = profile_x(y),
// anchored like surf_macrotile.
struct Patch {
    std::int64_t width = 0, height = 0;
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> columns;
    std::int64_t z_min = 0, z_max = 0;  // over cells
    std::string id;

    std::int64_t cell_z(std::int64_t x, std::int64_t y) const;
    bool in_footprint(std::int64_t x, std::int64_t y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
};

Patch make_patch(const SubstSystem& sys, const Tile& seed, int level);

// South-north triple of level-n macrotiles, the overlay analogue of the
// three-tile unions in the sparseness argument: a translated copy always
// contains a full period of the bridge pattern, so plateau overlaps cannot
// be dodged by shifting.
Patch make_patch_triple(const SubstSystem& sys, const std::array<Slope, 3>& seeds, int level);

struct PatchPlacement {
    size_t patch = 0;
    Vec3 offset;
};

// Exact check that all placed patches keep pairwise l-infinity distance
// >= min_gap; integer arithmetic over merged column breakpoints.
bool placements_separated(const std::vector<Patch>& patches,
                          const std::vector<PatchPlacement>& placements, std::int64_t min_gap);

struct OverlayWitness {
    std::vector<PatchPlacement> placements;
    std::int64_t col_x = 0, col_y = 0;
    int count = 0;
    std::int64_t candidate_index = 0;
};

// Searches translations of the given patches for a column holding >= target
// cells from pairwise-separated components. Structured candidates first
// (flat borders over flat borders, bridge extrema brought under or over the
// shared column), then seeded random placements. Witness columns are
// confined to a z-window of max_span (default: tallest patch height + 1),
// the regime where finite windows faithfully represent the subshift;
// unbounded vertical stacking of finite windows is a windowing artifact.
std::optional<OverlayWitness> overlay_search(const std::vector<Patch>& patches, int target,
                                             std::int64_t budget, std::uint64_t seed,
                                             std::optional<std::int64_t> max_span = std::nullopt,
                                             int threads = 1);

} // namespace sparsetrace
