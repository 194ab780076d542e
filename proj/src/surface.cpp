#include "sparsetrace/surface.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

namespace sparsetrace {

std::optional<Vec3> Surface::cell_at(std::int64_t x, std::int64_t y) const {
    // cells are ordered by (x, y, z); a height field has at most one match
    auto it = config.cells().lower_bound(Vec3{x, y, std::numeric_limits<std::int64_t>::min()});
    if (it == config.cells().end() || it->first.x != x || it->first.y != y) return std::nullopt;
    return it->first;
}

std::int64_t Surface::min_z() const {
    std::int64_t m = std::numeric_limits<std::int64_t>::max();
    for (const auto& [p, t] : config.cells()) m = std::min(m, p.z);
    return m;
}

std::int64_t Surface::max_z() const {
    std::int64_t m = std::numeric_limits<std::int64_t>::min();
    for (const auto& [p, t] : config.cells()) m = std::max(m, p.z);
    return m;
}

Surface surf(const Pattern2D& pattern, const Vec3& anchor) {
    const std::int64_t W = pattern.width(), H = pattern.height();
    const std::int64_t UNSET = std::numeric_limits<std::int64_t>::min();
    std::vector<std::int64_t> z((size_t)(W * H), UNSET);
    auto idx = [W](std::int64_t x, std::int64_t y) { return (size_t)(y * W + x); };

    std::deque<std::pair<std::int64_t, std::int64_t>> queue;
    z[idx(0, 0)] = 0;
    queue.emplace_back(0, 0);
    auto relax = [&](std::int64_t x, std::int64_t y, std::int64_t want) {
        auto& cur = z[idx(x, y)];
        if (cur == UNSET) {
            cur = want;
            queue.emplace_back(x, y);
        } else if (cur != want) {
            throw SurfaceError("inconsistent slopes: cell (" + std::to_string(x) + "," +
                               std::to_string(y) + ") reachable at heights " + std::to_string(cur) +
                               " and " + std::to_string(want));
        }
    };
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        std::int64_t zc = z[idx(x, y)];
        const Tile& t = pattern.at(x, y);
        if (y + 1 < H) relax(x, y + 1, zc + slope_value(t.slope));
        if (y > 0) relax(x, y - 1, zc - slope_value(pattern.at(x, y - 1).slope));
        if (x + 1 < W && edge_connected(t, pattern.at(x + 1, y))) relax(x + 1, y, zc);
        if (x > 0 && edge_connected(pattern.at(x - 1, y), t)) relax(x - 1, y, zc);
    }
    Surface s;
    for (std::int64_t y = 0; y < H; ++y)
        for (std::int64_t x = 0; x < W; ++x) {
            if (z[idx(x, y)] == UNSET)
                throw SurfaceError("pattern disconnected: cell (" + std::to_string(x) + "," +
                                   std::to_string(y) + ") unreachable from (0,0)");
            s.config.set(Vec3{anchor.x + x, anchor.y + y, anchor.z + z[idx(x, y)]},
                         pattern.at(x, y));
        }
    return s;
}

Vec3 default_anchor(const SubstSystem& sys, int level) {
    if (level == 0) return {0, 0, 0};
    std::int64_t a = sys.kind() == SubstSystem::Kind::Tau ? sys.params().a : 1;
    std::int64_t rise = 1;
    for (int i = 1; i < level; ++i) rise *= sys.rise_factor();
    return {0, 0, -a * rise};
}

Surface surf_macrotile(const SubstSystem& sys, const Tile& seed, int level,
                       std::int64_t max_cells) {
    std::int64_t W = sys.width_at(level), H = sys.height_at(level);
    if (W > max_cells / H)
        throw std::length_error("surface needs " + std::to_string(W) + " x " + std::to_string(H) +
                                " cells, over the budget of " + std::to_string(max_cells));
    Vec3 anchor = default_anchor(sys, level);
    Surface s;
    for (std::int64_t p = 0; p < W; ++p) {
        auto bps = sys.column_profile(seed, level, p);
        size_t seg = 0;
        for (std::int64_t y = 0; y < H; ++y) {
            while (bps[seg + 1].first <= y) ++seg;
            std::int64_t slope =
                (bps[seg + 1].second - bps[seg].second) / (bps[seg + 1].first - bps[seg].first);
            std::int64_t zc = bps[seg].second + slope * (y - bps[seg].first);
            s.config.set(Vec3{anchor.x + p, anchor.y + y, anchor.z + zc},
                         sys.lazy_lookup(seed, level, p, y));
        }
    }
    return s;
}

HeightBounds height_bounds(const SubstParams& params, int n) {
    if (n < 0) throw std::invalid_argument("level must be >= 0");
    HeightBounds hb;
    hb.n = n;
    std::int64_t r = 1;
    for (int i = 0; i < n; ++i) {
        if (r > INT64_MAX / (2 * params.a)) throw std::overflow_error("r_n overflows");
        r *= 2 * params.a;
    }
    hb.r_n = r;
    if (n == 0) {
        hb.h_n = 1;
        return hb;
    }
    // h_n = (b+c)((2a)^n - 1)/(2a-1); division is exact
    __int128 hn = (__int128)(params.b + params.c) * (r - 1) / (2 * params.a - 1);
    if (hn > INT64_MAX) throw std::overflow_error("h_n overflows");
    hb.h_n = (std::int64_t)hn;
    // sanity on the fluctuation bound used by the closeness argument
    Rational lhs(hb.h_n, hb.r_n);
    if (n >= 1) {
        HeightBounds prev = height_bounds(params, n - 1);
        lhs = Rational(prev.h_n, prev.r_n);
    }
    Rational rhs(params.b + params.c, 2 * params.a - 1);
    if (!(lhs <= rhs + Rational(1)))  // h_0 = 1 convention can exceed by at most 1
        throw std::logic_error("height bound recursion violated");
    return hb;
}

Surface limit_patch(const SubstParams& params, int level, const WindowBox& window) {
    if (level < 1) throw std::invalid_argument("limit patch needs level >= 1");
    Surface out;
    if (window.x_lo > window.x_hi || window.y_lo > window.y_hi) return out;
    auto sys = SubstSystem::tau(params);
    const Tile center{Slope::Flat, true, true};
    const std::int64_t qa = params.a + params.b + params.c + params.d / 2;
    // fixed point of the addressing: the image of the center letter holds the
    // center letter at (2, qa)
    if (sys.image_cell(center, 2, qa) != center)
        throw std::logic_error("center letter is not fixed by its image address");
    std::int64_t px = 0, qy = 0;
    for (int k = 0; k < level; ++k) {
        px += 2 * sys.ipow(5, k);
        qy += qa * sys.ipow(params.e(), k);
    }
    std::int64_t W = sys.width_at(level), H = sys.height_at(level);
    if (px + window.x_lo < 0 || px + window.x_hi >= W || qy + window.y_lo < 0 ||
        qy + window.y_hi >= H)
        throw std::out_of_range("window exceeds the level-" + std::to_string(level) +
                                " macrotile around the center");
    std::int64_t z0 = sys.rel_height(center, level, px, qy);
    for (std::int64_t dy = window.y_lo; dy <= window.y_hi; ++dy)
        for (std::int64_t dx = window.x_lo; dx <= window.x_hi; ++dx) {
            Tile t = sys.lazy_lookup(center, level, px + dx, qy + dy);
            std::int64_t z = sys.rel_height(center, level, px + dx, qy + dy) - z0;
            out.config.set(Vec3{dx, dy, z}, t);
        }
    return out;
}

DeltaConfig to_delta(const TileConfig& c) {
    DeltaConfig out;
    for (const auto& [p, t] : c.cells()) out.set(p, psi_project(t));
    return out;
}

namespace {

template <typename Sym>
std::optional<DeterminismViolation> determinism_impl(const Config3D<Sym>& c, bool support_only,
                                                     std::string (*code)(const Sym&)) {
    if (c.empty()) return std::nullopt;
    Vec3 lo = c.cells().begin()->first, hi = lo;
    for (const auto& [p, s] : c.cells()) {
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
    }
    // candidate centers: occupied positions plus positions whose window could
    // be nonempty; everything else has an empty window and an empty center
    std::vector<Vec3> centers;
    for (const auto& [p, s] : c.cells()) {
        centers.push_back(p);
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dz = 1; dz <= 3; ++dz)
                centers.push_back(Vec3{p.x - dx, p.y + 1, p.z + dz});
    }
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end(),
                              [](const Vec3& a, const Vec3& b) { return a == b; }),
                  centers.end());

    auto window_fits = [&](const Vec3& u) {
        return u.x - 1 >= lo.x && u.x + 1 <= hi.x && u.y - 1 >= lo.y && u.y <= hi.y &&
               u.z - 3 >= lo.z && u.z <= hi.z;
    };
    auto center_code = [&](const Vec3& u) -> std::string {
        auto s = c.get(u);
        if (!s) return ".";
        return support_only ? "#" : code(*s);
    };

    std::unordered_map<std::string, std::pair<Vec3, std::string>> seen;
    for (const Vec3& u : centers) {
        if (!window_fits(u)) continue;
        std::string sig;
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dz = -3; dz <= -1; ++dz) {
                auto s = c.get(Vec3{u.x + dx, u.y - 1, u.z + dz});
                sig += s ? code(*s) : std::string(".");
                sig += '|';
            }
        std::string ctr = center_code(u);
        auto [it, inserted] = seen.emplace(sig, std::make_pair(u, ctr));
        if (!inserted && it->second.second != ctr)
            return DeterminismViolation{it->second.first, u, it->second.second, ctr};
    }
    return std::nullopt;
}

std::string tile_code_str(const Tile& t) { return t.code(); }
std::string delta_code_str(const DeltaSymbol& d) { return delta_code(d); }

} // namespace

std::optional<DeterminismViolation> determinism_check_tiles(const TileConfig& c,
                                                            bool support_only) {
    return determinism_impl<Tile>(c, support_only, &tile_code_str);
}

std::optional<DeterminismViolation> determinism_check_delta(const DeltaConfig& c,
                                                            bool support_only) {
    return determinism_impl<DeltaSymbol>(c, support_only, &delta_code_str);
}

} // namespace sparsetrace
