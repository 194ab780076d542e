#include "sparsetrace/analysis.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace sparsetrace {

std::int64_t essential_sparseness(std::vector<std::int64_t> zs, std::int64_t r) {
    if (r < 0) throw std::invalid_argument("radius must be >= 0");
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
    std::int64_t k = 0;
    size_t i = 0;
    while (i < zs.size()) {
        std::int64_t cover_end = zs[i] + 2 * r;
        ++k;
        while (i < zs.size() && zs[i] <= cover_end) ++i;
    }
    return k;
}

namespace {

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    size_t find(size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

} // namespace

ComponentSet connected_components_of(const std::vector<Vec3>& support, std::int64_t r) {
    if (r < 1) throw std::invalid_argument("component radius must be >= 1");
    ComponentSet out;
    out.r = r;
    if (support.empty()) return out;

    std::vector<Vec3> cells = support;
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end(),
                            [](const Vec3& a, const Vec3& b) { return a == b; }),
                cells.end());

    // bucket by r-sized grid boxes; neighbors live in adjacent boxes
    auto box_of = [r](const Vec3& p) {
        auto fl = [r](std::int64_t v) { return v >= 0 ? v / r : -((-v + r - 1) / r); };
        return Vec3{fl(p.x), fl(p.y), fl(p.z)};
    };
    std::map<Vec3, std::vector<size_t>> boxes;
    for (size_t i = 0; i < cells.size(); ++i) boxes[box_of(cells[i])].push_back(i);

    UnionFind uf(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
        Vec3 b = box_of(cells[i]);
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                for (std::int64_t dz = -1; dz <= 1; ++dz) {
                    auto it = boxes.find(Vec3{b.x + dx, b.y + dy, b.z + dz});
                    if (it == boxes.end()) continue;
                    for (size_t j : it->second)
                        if (j > i && linf(cells[i], cells[j]) <= r) uf.unite(i, j);
                }
    }
    std::map<size_t, size_t> root_to_comp;
    for (size_t i = 0; i < cells.size(); ++i) {
        size_t root = uf.find(i);
        auto [it, fresh] = root_to_comp.emplace(root, out.components.size());
        if (fresh) out.components.emplace_back();
        out.components[it->second].push_back(cells[i]);
    }
    return out;
}

GluingResult zero_gluing_check(const DeltaConfig& c, const SubstSystem& sys, int max_depth) {
    if (c.empty()) return {GluingVerdict::Accept, -1, "empty configuration"};
    for (const auto& [p, s] : c.cells())
        if (s == DeltaSymbol::Blank)
            return {GluingVerdict::Reject, -1, "blank symbol stored explicitly"};

    ComponentSet comps = connected_components(c, 1);
    bool inconclusive = false;
    for (size_t ci = 0; ci < comps.components.size(); ++ci) {
        const auto& comp = comps.components[ci];
        // function-graph property
        std::map<std::pair<std::int64_t, std::int64_t>, Vec3> column;
        for (const Vec3& p : comp) {
            auto [it, fresh] = column.emplace(std::make_pair(p.x, p.y), p);
            if (!fresh)
                return {GluingVerdict::Reject, (int)ci, "two cells share a column"};
        }
        // slope-consistent heights between vertically adjacent columns
        for (const Vec3& p : comp) {
            DeltaSymbol sym = *c.get(p);
            auto north = column.find(std::make_pair(p.x, p.y + 1));
            if (north != column.end() &&
                north->second.z != p.z + slope_value(sym))
                return {GluingVerdict::Reject, (int)ci, "slope mismatch with the north neighbor"};
        }
        // masked lift: jaggedness only known where neighbor heights differ
        std::vector<MaskedCell> cells;
        cells.reserve(comp.size());
        for (const Vec3& p : comp) {
            MaskedCell mc;
            mc.x = p.x;
            mc.y = p.y;
            mc.z = p.z;
            DeltaSymbol sym = *c.get(p);
            mc.slope = sym == DeltaSymbol::Ascending
                           ? Slope::Up
                           : (sym == DeltaSymbol::Descending ? Slope::Down : Slope::Flat);
            auto west = column.find(std::make_pair(p.x - 1, p.y));
            if (west != column.end() && west->second.z != p.z) {
                mc.know_west = true;
                mc.jagged_west = true;
            }
            auto east = column.find(std::make_pair(p.x + 1, p.y));
            if (east != column.end() && east->second.z != p.z) {
                mc.know_east = true;
                mc.jagged_east = true;
            }
            cells.push_back(mc);
        }
        auto verdict = masked_occurs(sys, cells, max_depth);
        if (!verdict.found) inconclusive = true;
    }
    if (inconclusive)
        return {GluingVerdict::Inconclusive, -1,
                "some component pattern not found up to the depth bound"};
    return {GluingVerdict::Accept, -1, "all components verified"};
}

std::optional<TileConfig> stack_two(const Surface& a, const Surface& b, std::int64_t min_gap,
                                    std::int64_t max_lift) {
    if (min_gap < 2) throw std::invalid_argument("min_gap must be >= 2");
    bool shared = false;
    std::int64_t need = std::numeric_limits<std::int64_t>::min();
    for (const auto& [p, t] : a.config.cells()) {
        for (std::int64_t dx = -(min_gap - 1); dx <= min_gap - 1; ++dx)
            for (std::int64_t dy = -(min_gap - 1); dy <= min_gap - 1; ++dy) {
                auto q = b.cell_at(p.x + dx, p.y + dy);
                if (!q) continue;
                if (dx == 0 && dy == 0) shared = true;
                need = std::max(need, p.z - q->z + min_gap);
            }
    }
    if (!shared) return std::nullopt;  // no shared projected column
    if (need > max_lift) return std::nullopt;
    TileConfig out = a.config;
    out.merge(b.config.translated(Vec3{0, 0, need}));
    return out;
}

// ---- overlay search -------------------------------------------------------

std::int64_t Patch::cell_z(std::int64_t x, std::int64_t y) const {
    const auto& bps = columns[(size_t)x];
    auto it = std::upper_bound(bps.begin(), bps.end(), y,
                               [](std::int64_t v, const auto& bp) { return v < bp.first; });
    --it;
    auto next = it + 1;
    std::int64_t slope = (next->second - it->second) / (next->first - it->first);
    return it->second + slope * (y - it->first);
}

Patch make_patch(const SubstSystem& sys, const Tile& seed, int level) {
    Patch p;
    p.width = sys.width_at(level);
    p.height = sys.height_at(level);
    std::int64_t anchor = default_anchor(sys, level).z;
    p.z_min = std::numeric_limits<std::int64_t>::max();
    p.z_max = std::numeric_limits<std::int64_t>::min();
    for (std::int64_t x = 0; x < p.width; ++x) {
        auto bps = sys.column_profile(seed, level, x);
        for (auto& [y, z] : bps) z += anchor;
        // cell extrema: profiles are integer-sloped, so cells attain extremes
        // next to breakpoints
        for (size_t i = 0; i + 1 < bps.size(); ++i) {
            std::int64_t slope = (bps[i + 1].second - bps[i].second) /
                                 (bps[i + 1].first - bps[i].first);
            std::int64_t last_cell = bps[i + 1].second - slope;  // z at y = next-1
            p.z_min = std::min({p.z_min, bps[i].second, last_cell});
            p.z_max = std::max({p.z_max, bps[i].second, last_cell});
        }
        p.columns.push_back(std::move(bps));
    }
    p.id = std::string(sys.kind() == SubstSystem::Kind::Tau ? "tau" : "tau-prime") + ":level=" +
           std::to_string(level) + ":seed=" + seed.code();
    return p;
}

Patch make_patch_triple(const SubstSystem& sys, const std::array<Slope, 3>& seeds, int level) {
    Patch p;
    p.width = sys.width_at(level);
    const std::int64_t H = sys.height_at(level);
    p.height = 3 * H;
    std::int64_t anchor = default_anchor(sys, level).z;
    p.z_min = std::numeric_limits<std::int64_t>::max();
    p.z_max = std::numeric_limits<std::int64_t>::min();
    for (std::int64_t x = 0; x < p.width; ++x) {
        std::vector<std::pair<std::int64_t, std::int64_t>> chain;
        std::int64_t off = anchor;
        for (int blk = 0; blk < 3; ++blk) {
            auto bps = sys.column_profile(Tile{seeds[(size_t)blk], false, false}, level, x);
            for (const auto& [by, bz] : bps) {
                std::int64_t y = by + blk * H, z = bz + off;
                if (!chain.empty() && chain.back().first == y) continue;
                if (chain.size() >= 2) {
                    const auto& p0 = chain[chain.size() - 2];
                    const auto& p1 = chain.back();
                    if ((__int128)(p1.second - p0.second) * (y - p1.first) ==
                        (__int128)(z - p1.second) * (p1.first - p0.first))
                        chain.pop_back();
                }
                chain.emplace_back(y, z);
            }
            off = chain.back().second;
        }
        for (size_t i = 0; i + 1 < chain.size(); ++i) {
            std::int64_t slope =
                (chain[i + 1].second - chain[i].second) / (chain[i + 1].first - chain[i].first);
            std::int64_t last_cell = chain[i + 1].second - slope;
            p.z_min = std::min({p.z_min, chain[i].second, last_cell});
            p.z_max = std::max({p.z_max, chain[i].second, last_cell});
        }
        p.columns.push_back(std::move(chain));
    }
    p.id = std::string(sys.kind() == SubstSystem::Kind::Tau ? "tau" : "tau-prime") + ":level=" +
           std::to_string(level) + ":triple=" + Tile{seeds[0], false, false}.code().substr(0, 1) +
           Tile{seeds[1], false, false}.code().substr(0, 1) +
           Tile{seeds[2], false, false}.code().substr(0, 1);
    return p;
}

namespace {

// min |f - g(. + s)| over the integer overlap of two placed columns, early
// exit once the bound is violated.
bool columns_apart(const Patch& P, std::int64_t xp, const Vec3& op, const Patch& Q,
                   std::int64_t xq, const Vec3& oq, std::int64_t yshift, std::int64_t min_gap) {
    // compare P cell (xp, y) against Q cell (xq, y + yshift) in patch frames
    std::int64_t ylo = std::max((std::int64_t)0, -yshift + 0) /* q in range */,
                 yhi = P.height - 1;
    ylo = std::max(ylo, (std::int64_t)0);
    yhi = std::min(yhi, Q.height - 1 - yshift);
    if (ylo > yhi) return true;
    const auto& fb = P.columns[(size_t)xp];
    const auto& gb = Q.columns[(size_t)xq];
    size_t fi = 0, gi = 0;
    std::int64_t y = ylo;
    auto seg_advance = [](const std::vector<std::pair<std::int64_t, std::int64_t>>& b, size_t& i,
                          std::int64_t v) {
        while (i + 2 < b.size() && b[i + 1].first <= v) ++i;
    };
    auto eval = [](const std::vector<std::pair<std::int64_t, std::int64_t>>& b, size_t i,
                   std::int64_t v) {
        std::int64_t slope = (b[i + 1].second - b[i].second) / (b[i + 1].first - b[i].first);
        return b[i].second + slope * (v - b[i].first);
    };
    const std::int64_t dz = oq.z - op.z;
    std::int64_t prev_y = 0, prev_diff = 0;
    bool have_prev = false;
    while (true) {
        seg_advance(fb, fi, y);
        seg_advance(gb, gi, y + yshift);
        std::int64_t diff = eval(fb, fi, y) - (eval(gb, gi, y + yshift) + dz);
        if (std::llabs(diff) < min_gap) return false;
        // the difference is linear between visited points; a sign change
        // hides an interior zero, and the integers astride it decide
        if (have_prev && ((prev_diff < 0) != (diff < 0))) {
            std::int64_t s = (diff - prev_diff) / (y - prev_y);
            std::int64_t cross = prev_y + (-prev_diff) / s;  // floor of the zero
            for (std::int64_t yc : {cross, cross + 1}) {
                if (yc < prev_y || yc > y) continue;
                std::int64_t d = prev_diff + s * (yc - prev_y);
                if (std::llabs(d) < min_gap) return false;
            }
        }
        prev_y = y;
        prev_diff = diff;
        have_prev = true;
        if (y >= yhi) return true;
        std::int64_t next = yhi;
        if (fb[fi + 1].first > y) next = std::min(next, fb[fi + 1].first);
        if (gb[gi + 1].first - yshift > y) next = std::min(next, gb[gi + 1].first - yshift);
        y = std::min(next, yhi);
    }
}

} // namespace

namespace {

// Cheap sound rejection: sampled cell pairs that sit closer than min_gap, or
// a sampled sign change of the continuous column difference (which forces an
// integer position within 1 of the crossing), prove a separation violation.
bool sampled_violation(const Patch& P, const Vec3& op, const Patch& Q, const Vec3& oq,
                       std::int64_t min_gap) {
    std::int64_t xlo = std::max(op.x, oq.x - (min_gap - 1));
    std::int64_t xhi = std::min(op.x + P.width, oq.x + Q.width + (min_gap - 1));
    for (std::int64_t X = xlo; X < xhi; ++X) {
        std::int64_t xp = X - op.x;
        if (xp < 0 || xp >= P.width) continue;
        for (std::int64_t dx = -(min_gap - 1); dx <= min_gap - 1; ++dx) {
            std::int64_t xq = X + dx - oq.x;
            if (xq < 0 || xq >= Q.width) continue;
            std::int64_t ylo = std::max(op.y, oq.y), yhi = std::min(op.y + P.height,
                                                                    oq.y + Q.height);
            if (ylo >= yhi) continue;
            int prev_sign = 0;
            for (int s = 0; s <= 16; ++s) {
                std::int64_t Y = ylo + (yhi - 1 - ylo) * s / 16;
                std::int64_t zp = P.cell_z(xp, Y - op.y) + op.z;
                std::int64_t zq = Q.cell_z(xq, Y - oq.y) + oq.z;
                std::int64_t d = zp - zq;
                if (std::llabs(d) < min_gap) return true;
                int sign = d > 0 ? 1 : -1;
                if (prev_sign != 0 && sign != prev_sign) return true;
                prev_sign = sign;
            }
        }
    }
    return false;
}

} // namespace

bool placements_separated(const std::vector<Patch>& patches,
                          const std::vector<PatchPlacement>& placements, std::int64_t min_gap) {
    for (size_t i = 0; i < placements.size(); ++i)
        for (size_t j = i + 1; j < placements.size(); ++j) {
            const Patch& P = patches[placements[i].patch];
            const Patch& Q = patches[placements[j].patch];
            const Vec3& op = placements[i].offset;
            const Vec3& oq = placements[j].offset;
            // global z-extent shortcut
            if (P.z_min + op.z - (Q.z_max + oq.z) >= min_gap ||
                Q.z_min + oq.z - (P.z_max + op.z) >= min_gap)
                continue;
            if (sampled_violation(P, op, Q, oq, min_gap)) return false;
            std::int64_t xlo = std::max(op.x, oq.x) - (min_gap - 1);
            std::int64_t xhi = std::min(op.x + P.width, oq.x + Q.width) + (min_gap - 1);
            if (xlo > xhi) continue;
            for (std::int64_t X = std::max(op.x, oq.x - (min_gap - 1));
                 X < std::min(op.x + P.width, oq.x + Q.width + (min_gap - 1)); ++X) {
                std::int64_t xp = X - op.x;
                if (xp < 0 || xp >= P.width) continue;
                for (std::int64_t dx = -(min_gap - 1); dx <= min_gap - 1; ++dx) {
                    std::int64_t xq = X + dx - oq.x;
                    if (xq < 0 || xq >= Q.width) continue;
                    for (std::int64_t dy = -(min_gap - 1); dy <= min_gap - 1; ++dy) {
                        // P cell (xp, y) at Y = op.y + y vs Q cell (xq, Y + dy - oq.y)
                        std::int64_t yshift = op.y + dy - oq.y;
                        if (!columns_apart(P, xp, op, Q, xq, oq, yshift, min_gap)) return false;
                    }
                }
            }
        }
    return true;
}

namespace {

struct OverlayCandidate {
    std::vector<PatchPlacement> placements;
    std::int64_t col_x = 0, col_y = 0;
};

} // namespace

std::optional<OverlayWitness> overlay_search(const std::vector<Patch>& patches, int target,
                                             std::int64_t budget, std::uint64_t seed,
                                             std::optional<std::int64_t> max_span, int threads) {
    if (patches.size() < 2) throw std::invalid_argument("overlay search needs >= 2 patches");
    const size_t k = patches.size();
    // A witness column's z-spread stays within the scale the smallest
    // participating window can faithfully represent; taller stacks of finite
    // windows are artifacts of windowing, not configurations of the subshift.
    std::int64_t shortest = std::numeric_limits<std::int64_t>::max();
    for (const auto& p : patches) shortest = std::min(shortest, p.z_max - p.z_min);
    const std::int64_t span = max_span.value_or(shortest + 2);

    // argmax/argmin cells per patch for the structured placements
    struct Extremes {
        std::int64_t top_x = 0, top_y = 0, top_z = 0;
        std::int64_t bot_x = 0, bot_y = 0, bot_z = 0;
    };
    std::vector<Extremes> ext(k);
    for (size_t i = 0; i < k; ++i) {
        const Patch& p = patches[i];
        Extremes e;
        e.top_z = std::numeric_limits<std::int64_t>::min();
        e.bot_z = std::numeric_limits<std::int64_t>::max();
        for (std::int64_t x = 0; x < p.width; ++x) {
            const auto& bps = p.columns[(size_t)x];
            for (size_t s = 0; s + 1 < bps.size(); ++s) {
                std::int64_t slope =
                    (bps[s + 1].second - bps[s].second) / (bps[s + 1].first - bps[s].first);
                for (auto [y, z] :
                     {bps[s], std::make_pair(bps[s + 1].first - 1,
                                             bps[s + 1].second - slope)}) {
                    if (z > e.top_z) { e.top_z = z; e.top_x = x; e.top_y = y; }
                    if (z < e.bot_z) { e.bot_z = z; e.bot_x = x; e.bot_y = y; }
                }
            }
        }
        ext[i] = e;
    }

    std::vector<OverlayCandidate> structured;
    std::int64_t fitting_work = 0;  // counted against the budget
    {
        const std::vector<std::int64_t> lifts{2, 3, 4, 5};
        const std::vector<std::int64_t> gaps{2, 3, 4, 5};

        // flat west border of patch 0 under the flat east border of patch 1,
        // sharing the origin column
        auto border_pair = [&](std::int64_t lift) {
            std::vector<PatchPlacement> base(2);
            const Patch& p0 = patches[0];
            const Patch& p1 = patches[1];
            std::int64_t y0 = p0.height / 2, y1 = p1.height / 2;
            base[0] = PatchPlacement{0, Vec3{0, -y0, -p0.cell_z(0, y0)}};
            base[1] = PatchPlacement{1, Vec3{-(p1.width - 1), -y1,
                                             lift - p1.cell_z(p1.width - 1, y1)}};
            return base;
        };
        // top of one just under the bottom of the other, both on the origin
        if (k == 2) {
            for (std::int64_t lift : lifts) {
                OverlayCandidate cand;
                cand.placements = border_pair(lift);
                structured.push_back(cand);
            }
            for (std::int64_t g : gaps) {
                OverlayCandidate cand;
                cand.placements.push_back(
                    PatchPlacement{0, Vec3{-ext[0].top_x, -ext[0].top_y, -ext[0].top_z}});
                cand.placements.push_back(
                    PatchPlacement{1, Vec3{-ext[1].bot_x, -ext[1].bot_y, g - ext[1].bot_z}});
                structured.push_back(cand);
            }
        } else {
            // greedy chain fitting: after the border pair, bring each further
            // patch's bridge top under the origin column, scanning alignment
            // shifts until it separates from everything already placed; keep a
            // few fits per stage and branch
            const int keep = 3;
            for (std::int64_t lift : lifts) {
                std::vector<std::vector<PatchPlacement>> layer{border_pair(lift)};
                for (size_t i = 2; i < k && !layer.empty(); ++i) {
                    std::vector<std::vector<PatchPlacement>> next;
                    for (const auto& placed : layer) {
                        std::int64_t base_depth = 0;
                        for (const auto& pl : placed)
                            if (pl.patch >= 2)
                                base_depth = std::min(
                                    base_depth,
                                    pl.offset.z +
                                        patches[pl.patch].cell_z(-pl.offset.x, -pl.offset.y));
                        int kept = 0;
                        for (std::int64_t g : gaps) {
                            for (std::int64_t dy = -4; dy <= 4 && kept < keep; ++dy)
                                for (std::int64_t dx = -3; dx <= 3 && kept < keep; ++dx) {
                                    ++fitting_work;
                                    std::int64_t tx = ext[i].top_x + dx, ty = ext[i].top_y + dy;
                                    if (!patches[i].in_footprint(tx, ty)) continue;
                                    PatchPlacement pl{
                                        i, Vec3{-tx, -ty,
                                                base_depth - g - patches[i].cell_z(tx, ty)}};
                                    auto trial = placed;
                                    trial.push_back(pl);
                                    if (!placements_separated(patches, trial, 2)) continue;
                                    next.push_back(trial);
                                    ++kept;
                                }
                            if (kept >= keep) break;
                        }
                    }
                    layer = std::move(next);
                }
                for (auto& pls : layer) {
                    OverlayCandidate cand;
                    cand.placements = std::move(pls);
                    structured.push_back(cand);
                }
            }
        }
        // parallel lifts: covered explicitly, excluded by the span rule or the
        // wall-crossing separation check
        for (std::int64_t g : gaps) {
            OverlayCandidate cand;
            for (size_t i = 0; i < k; ++i) {
                std::int64_t lift = (std::int64_t)i * (patches[i].z_max - patches[i].z_min + g);
                cand.placements.push_back(PatchPlacement{i, Vec3{0, 0, lift}});
            }
            cand.col_x = patches[0].width / 2;
            cand.col_y = patches[0].height / 2;
            structured.push_back(cand);
        }
    }

    auto column_hit = [&](const OverlayCandidate& cand) -> std::optional<int> {
        std::vector<std::int64_t> zs;
        for (const auto& pl : cand.placements) {
            const Patch& p = patches[pl.patch];
            std::int64_t x = cand.col_x - pl.offset.x, y = cand.col_y - pl.offset.y;
            if (p.in_footprint(x, y)) zs.push_back(p.cell_z(x, y) + pl.offset.z);
        }
        if ((int)zs.size() < target) return std::nullopt;
        std::sort(zs.begin(), zs.end());
        int best = 0;
        for (size_t i = 0; i < zs.size(); ++i) {
            size_t j = i;
            while (j + 1 < zs.size() && zs[j + 1] - zs[i] < span) ++j;
            best = std::max(best, (int)(j - i + 1));
        }
        return best >= target ? std::optional<int>(best) : std::nullopt;
    };

    auto evaluate = [&](const OverlayCandidate& cand) -> std::optional<OverlayWitness> {
        auto hit = column_hit(cand);
        if (!hit) return std::nullopt;
        if (!placements_separated(patches, cand.placements, 2)) return std::nullopt;
        OverlayWitness w;
        w.placements = cand.placements;
        w.col_x = cand.col_x;
        w.col_y = cand.col_y;
        w.count = *hit;
        return w;
    };

    std::mt19937_64 rng(seed);
    auto rnd = [&](std::int64_t lo, std::int64_t hi) {
        return lo + (std::int64_t)(rng() % (std::uint64_t)(hi - lo + 1));
    };

    std::int64_t index = fitting_work;
    for (const auto& cand : structured) {
        if (index >= budget) return std::nullopt;
        ++index;
        if (auto w = evaluate(cand)) {
            w->candidate_index = index - 1;
            return w;
        }
    }
    (void)threads;
    while (index < budget) {
        ++index;
        OverlayCandidate cand;
        cand.col_x = 0;
        cand.col_y = 0;
        for (size_t i = 0; i < k; ++i) {
            const Patch& p = patches[i];
            // place a random cell of the patch onto the origin column at a
            // random height within the span window
            std::int64_t x = rnd(0, p.width - 1), y = rnd(0, p.height - 1);
            std::int64_t zt = rnd(-span, span);
            cand.placements.push_back(
                PatchPlacement{i, Vec3{-x, -y, zt - p.cell_z(x, y)}});
        }
        if (auto w = evaluate(cand)) {
            w->candidate_index = index - 1;
            return w;
        }
    }
    return std::nullopt;
}

} // namespace sparsetrace
