#include "sparsetrace/subst.hpp"

#include <algorithm>
#include <map>

namespace sparsetrace {

namespace {

constexpr Tile kEastJag{Slope::Flat, false, true};    // west border column
constexpr Tile kWestJag{Slope::Flat, true, false};    // east border column
constexpr Tile kUpBoth{Slope::Up, true, true};
constexpr Tile kDownBoth{Slope::Down, true, true};
constexpr Tile kFlatBoth{Slope::Flat, true, true};

// Bridge-row letter for an interior row group of the tau image,
// groups numbered 1..5 south to north (b, c, d, c, b).
Tile tau_interior(std::int64_t col, int group) {
    if (col == 0) return kEastJag;
    if (col == 4) return kWestJag;
    if (col == 1 || col == 3) {
        switch (group) {
            case 1: case 2: return kUpBoth;
            case 3: return kFlatBoth;
            default: return kDownBoth;
        }
    }
    // central column
    switch (group) {
        case 1: return kDownBoth;
        case 5: return kUpBoth;
        default: return kFlatBoth;
    }
}

} // namespace

Tile SubstSystem::image_cell(const Tile& seed, std::int64_t p, std::int64_t q) const {
    const std::int64_t w = cell_width(), h = cell_height();
    if (p < 0 || p >= w || q < 0 || q >= h) throw std::out_of_range("image cell out of range");
    Tile out;
    if (kind_ == Kind::Tau) {
        const std::int64_t a = params_.a, b = params_.b, c = params_.c, d = params_.d;
        std::int64_t t1 = a, t2 = a + b, t3 = a + b + c, t4 = t3 + d, t5 = t4 + c, t6 = t5 + b;
        if (q < t1 || q >= t6) out = seed.plain();
        else if (q < t2) out = tau_interior(p, 1);
        else if (q < t3) out = tau_interior(p, 2);
        else if (q < t4) out = tau_interior(p, 3);
        else if (q < t5) out = tau_interior(p, 4);
        else out = tau_interior(p, 5);
    } else {
        if (q == 0 || q == 3) out = seed.plain();
        else if (p == 0) out = kEastJag;
        else if (p == 2) out = kWestJag;
        else out = (q == 1) ? kUpBoth : kDownBoth;
    }
    if (seed.jagged_west && p == 0) out.jagged_west = true;
    if (seed.jagged_east && p == w - 1) out.jagged_east = true;
    return out;
}

Pattern2D SubstSystem::image(const Tile& seed) const {
    Pattern2D out(cell_width(), cell_height());
    for (std::int64_t y = 0; y < cell_height(); ++y)
        for (std::int64_t x = 0; x < cell_width(); ++x)
            out.at(x, y) = image_cell(seed, x, y);
    return out;
}

std::int64_t SubstSystem::ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > INT64_MAX / base) throw std::overflow_error("macrotile dimension overflows");
        r *= base;
    }
    return r;
}

Pattern2D SubstSystem::macrotile(const Tile& seed, int level, std::int64_t max_cells) const {
    if (level < 0) throw std::invalid_argument("level must be >= 0");
    std::int64_t w = width_at(level), h = height_at(level);
    if (w > max_cells / h)
        throw std::length_error("macrotile needs " + std::to_string(w) + " x " +
                                std::to_string(h) + " cells, over the budget of " +
                                std::to_string(max_cells));
    Pattern2D cur(1, 1);
    cur.at(0, 0) = seed;
    for (int k = 1; k <= level; ++k) {
        std::int64_t cw = width_at(k), ch = height_at(k);
        Pattern2D next(cw, ch);
        for (std::int64_t y = 0; y < ch; ++y)
            for (std::int64_t x = 0; x < cw; ++x)
                next.at(x, y) = image_cell(cur.at(x / cell_width(), y / cell_height()),
                                           x % cell_width(), y % cell_height());
        cur = std::move(next);
    }
    return cur;
}

Tile SubstSystem::lazy_lookup(const Tile& seed, int level, std::int64_t p, std::int64_t q) const {
    if (p < 0 || p >= width_at(level) || q < 0 || q >= height_at(level))
        throw std::out_of_range("lazy lookup address out of range");
    Tile letter = seed;
    for (int k = level; k >= 1; --k) {
        std::int64_t pw = width_at(k - 1), ph = height_at(k - 1);
        letter = image_cell(letter, p / pw, q / ph);
        p %= pw;
        q %= ph;
    }
    return letter;
}

namespace {

// Column of an image as south-to-north slope runs.
struct SlopeRun {
    std::int64_t len;
    int slope;
};

std::vector<SlopeRun> column_runs(const SubstSystem& sys, const Tile& seed, std::int64_t col) {
    const int ss = slope_value(seed.slope);
    if (sys.kind() == SubstSystem::Kind::Tau) {
        const auto& pr = sys.params();
        int s1, s2, s3, s4, s5;
        if (col == 0 || col == 4) { s1 = s2 = s3 = s4 = s5 = 0; }
        else if (col == 2) { s1 = -1; s2 = s3 = s4 = 0; s5 = 1; }
        else { s1 = s2 = 1; s3 = 0; s4 = s5 = -1; }
        return {{pr.a, ss}, {pr.b, s1}, {pr.c, s2}, {pr.d, s3}, {pr.c, s4}, {pr.b, s5}, {pr.a, ss}};
    }
    int m1 = col == 1 ? 1 : 0, m2 = col == 1 ? -1 : 0;
    return {{1, ss}, {1, m1}, {1, m2}, {1, ss}};
}

} // namespace

std::int64_t SubstSystem::rel_height(const Tile& seed, int level, std::int64_t p,
                                     std::int64_t q) const {
    if (p < 0 || p >= width_at(level) || q < 0 || q >= height_at(level))
        throw std::out_of_range("height address out of range");
    __int128 acc = 0;
    Tile letter = seed;
    for (int k = level; k >= 1; --k) {
        std::int64_t pw = width_at(k - 1), ph = height_at(k - 1);
        std::int64_t P = p / pw, Q = q / ph;
        // prefix slope of column P of image(letter) over rows [0, Q)
        __int128 z1 = 0;
        std::int64_t rows = Q;
        for (const auto& run : column_runs(*this, letter, P)) {
            std::int64_t take = std::min(rows, run.len);
            z1 += (__int128)take * run.slope;
            rows -= take;
            if (rows == 0) break;
        }
        acc += z1 * ipow(rise_factor(), k - 1);
        letter = image_cell(letter, P, Q);
        p %= pw;
        q %= ph;
    }
    if (acc > INT64_MAX || acc < INT64_MIN) throw std::overflow_error("height overflows");
    return (std::int64_t)acc;
}

namespace {

struct SegmentList {
    std::vector<SlopeRun> segs;
    std::int64_t total_len = 0;
    std::int64_t total_rise = 0;

    void append(std::int64_t len, int slope) {
        if (len == 0) return;
        if (!segs.empty() && segs.back().slope == slope) segs.back().len += len;
        else segs.push_back({len, slope});
        total_len += len;
        total_rise += len * slope;
    }
    void append(const SegmentList& other, std::int64_t repeat) {
        for (std::int64_t i = 0; i < repeat; ++i)
            for (const auto& s : other.segs) append(s.len, s.slope);
    }
};

SegmentList column_segments(const SubstSystem& sys, const Tile& seed, int level, std::int64_t p,
                            std::map<std::tuple<int, int, std::int64_t>, SegmentList>& memo) {
    if (level == 0) {
        SegmentList out;
        out.append(1, slope_value(seed.slope));
        return out;
    }
    auto key = std::make_tuple(level, seed.index(), p);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    std::int64_t pw = sys.ipow(sys.cell_width(), level - 1);
    std::int64_t P = p / pw, sub_p = p % pw;
    SegmentList out;
    std::int64_t q = 0;
    for (const auto& run : column_runs(sys, seed, P)) {
        // all rows of a run hold the same letter in this column
        Tile letter = sys.image_cell(seed, P, q);
        SegmentList sub = column_segments(sys, letter, level - 1, sub_p, memo);
        out.append(sub, run.len);
        q += run.len;
    }
    memo.emplace(key, out);
    return out;
}

} // namespace

std::vector<std::pair<std::int64_t, std::int64_t>> SubstSystem::column_profile(
    const Tile& seed, int level, std::int64_t p) const {
    if (p < 0 || p >= width_at(level)) throw std::out_of_range("column index out of range");
    if (level >= 1 && height_at(level) > (std::int64_t)5e8)
        throw std::length_error("column profile too tall to enumerate");
    std::map<std::tuple<int, int, std::int64_t>, SegmentList> memo;
    SegmentList segs = column_segments(*this, seed, level, p, memo);
    std::vector<std::pair<std::int64_t, std::int64_t>> bps;
    bps.reserve(segs.segs.size() + 1);
    std::int64_t y = 0, z = 0;
    bps.emplace_back(y, z);
    for (const auto& s : segs.segs) {
        y += s.len;
        z += s.len * s.slope;
        bps.emplace_back(y, z);
    }
    return bps;
}

namespace {

// Scans are exhaustive; refuse position spaces that could not finish.
void check_scan_budget(std::int64_t W, std::int64_t H, std::int64_t w, std::int64_t h,
                       std::int64_t ncells) {
    __int128 work = (__int128)(W - w + 1) * (H - h + 1) * 12 * ncells;
    if (work > (__int128)2e10)
        throw std::length_error("occurrence scan too large at this level; lower max_level");
}

} // namespace

OccurrenceVerdict pattern_occurs(const SubstSystem& sys, const Pattern2D& pattern, int max_level) {
    if (pattern.width() <= 0) throw std::invalid_argument("pattern must be nonempty");
    const auto seeds = Tile::all();
    for (int k = 0; k <= max_level; ++k) {
        std::int64_t W = sys.width_at(k), H = sys.height_at(k);
        if (W < pattern.width() || H < pattern.height()) continue;
        check_scan_budget(W, H, pattern.width(), pattern.height(),
                          pattern.width() * pattern.height());
        for (const Tile& seed : seeds) {
            for (std::int64_t py = 0; py + pattern.height() <= H; ++py) {
                for (std::int64_t px = 0; px + pattern.width() <= W; ++px) {
                    bool ok = true;
                    for (std::int64_t dy = 0; ok && dy < pattern.height(); ++dy)
                        for (std::int64_t dx = 0; ok && dx < pattern.width(); ++dx)
                            if (sys.lazy_lookup(seed, k, px + dx, py + dy) != pattern.at(dx, dy))
                                ok = false;
                    if (ok) return {true, k};
                }
            }
        }
    }
    return {false, max_level};
}

OccurrenceVerdict masked_occurs(const SubstSystem& sys, const std::vector<MaskedCell>& cells,
                                int max_level) {
    if (cells.empty()) return {true, 0};
    std::int64_t minx = cells[0].x, miny = cells[0].y, maxx = cells[0].x, maxy = cells[0].y;
    for (const auto& c : cells) {
        minx = std::min(minx, c.x); maxx = std::max(maxx, c.x);
        miny = std::min(miny, c.y); maxy = std::max(maxy, c.y);
    }
    std::int64_t w = maxx - minx + 1, h = maxy - miny + 1;
    const auto seeds = Tile::all();
    for (int k = 0; k <= max_level; ++k) {
        std::int64_t W = sys.width_at(k), H = sys.height_at(k);
        if (W < w || H < h) continue;
        check_scan_budget(W, H, w, h, (std::int64_t)cells.size());
        for (const Tile& seed : seeds) {
            for (std::int64_t py = 0; py + h <= H; ++py) {
                for (std::int64_t px = 0; px + w <= W; ++px) {
                    bool ok = true;
                    for (const auto& c : cells) {
                        Tile t = sys.lazy_lookup(seed, k, px + c.x - minx, py + c.y - miny);
                        if (slope_value(t.slope) != slope_value(c.slope) ||
                            (c.know_west && t.jagged_west != c.jagged_west) ||
                            (c.know_east && t.jagged_east != c.jagged_east)) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) {
                        std::int64_t base = sys.rel_height(seed, k, px + cells[0].x - minx,
                                                           py + cells[0].y - miny);
                        for (const auto& c : cells) {
                            if (sys.rel_height(seed, k, px + c.x - minx, py + c.y - miny) - base !=
                                c.z - cells[0].z) {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if (ok) return {true, k};
                }
            }
        }
    }
    return {false, max_level};
}

} // namespace sparsetrace
