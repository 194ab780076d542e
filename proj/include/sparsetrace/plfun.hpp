#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "sparsetrace/rational.hpp"

namespace sparsetrace {

// Continuous piecewise-linear function given by breakpoints, exact rational
// coordinates, defined on [y_lo, y_hi].
class PLFunction {
public:
    using Point = std::pair<Rational, Rational>;

    explicit PLFunction(std::vector<Point> pts) : pts_(std::move(pts)) {
        if (pts_.size() < 2) throw std::invalid_argument("PL function needs >= 2 breakpoints");
        for (size_t i = 1; i < pts_.size(); ++i)
            if (!(pts_[i - 1].first < pts_[i].first))
                throw std::invalid_argument("PL breakpoints must be strictly increasing");
    }

    const std::vector<Point>& points() const { return pts_; }
    const Rational& y_lo() const { return pts_.front().first; }
    const Rational& y_hi() const { return pts_.back().first; }
    const Rational& z_front() const { return pts_.front().second; }
    const Rational& z_back() const { return pts_.back().second; }

    Rational eval(const Rational& y) const {
        size_t seg = segment_for(y);
        return eval_on(seg, y);
    }

    Rational min_z() const {
        Rational m = pts_[0].second;
        for (const auto& p : pts_) m = rat_min(m, p.second);
        return m;
    }
    Rational max_z() const {
        Rational m = pts_[0].second;
        for (const auto& p : pts_) m = rat_max(m, p.second);
        return m;
    }

    PLFunction shifted(const Rational& dy, const Rational& dz) const {
        std::vector<Point> out;
        out.reserve(pts_.size());
        for (const auto& p : pts_) out.emplace_back(p.first + dy, p.second + dz);
        return PLFunction(std::move(out));
    }

    // Index i with pts_[i].first <= y <= pts_[i+1].first.
    size_t segment_for(const Rational& y) const {
        if (y < y_lo() || y_hi() < y) throw std::out_of_range("PL evaluation outside domain");
        size_t lo = 0, hi = pts_.size() - 1;
        while (lo + 1 < hi) {
            size_t mid = (lo + hi) / 2;
            if (pts_[mid].first <= y) lo = mid;
            else hi = mid;
        }
        return lo;
    }

    Rational eval_on(size_t seg, const Rational& y) const {
        const auto& p0 = pts_[seg];
        const auto& p1 = pts_[seg + 1];
        if (y == p0.first) return p0.second;
        if (y == p1.first) return p1.second;
        return p0.second + (p1.second - p0.second) * (y - p0.first) / (p1.first - p0.first);
    }

private:
    std::vector<Point> pts_;
};

// Walks the union of both functions' breakpoints restricted to
// [ylo, yhi] (plus both endpoints), ascending, with O(1) amortized
// evaluation; cb(y, fz, gz) may return false to stop early.
template <typename Callback>
void walk_merged(const PLFunction& f, const PLFunction& g, const Rational& ylo,
                 const Rational& yhi, Callback cb) {
    if (yhi < ylo) return;
    size_t fi = f.segment_for(ylo), gi = g.segment_for(ylo);
    Rational y = ylo;
    while (true) {
        while (fi + 2 < f.points().size() && f.points()[fi + 1].first <= y) ++fi;
        while (gi + 2 < g.points().size() && g.points()[gi + 1].first <= y) ++gi;
        if (!cb(y, f.eval_on(fi, y), g.eval_on(gi, y))) return;
        if (!(y < yhi)) return;
        Rational next = yhi;
        if (f.points()[fi + 1].first > y) next = rat_min(next, f.points()[fi + 1].first);
        if (g.points()[gi + 1].first > y) next = rat_min(next, g.points()[gi + 1].first);
        y = next;
    }
}

// sup |f - g| over [ylo, yhi]; the difference is PL, so the sup sits on a
// breakpoint of either function or an interval endpoint.
inline Rational sup_abs_diff_range(const PLFunction& f, const PLFunction& g, const Rational& ylo,
                                   const Rational& yhi) {
    Rational best(0);
    walk_merged(f, g, ylo, yhi, [&](const Rational&, const Rational& fz, const Rational& gz) {
        best = rat_max(best, (fz - gz).abs());
        return true;
    });
    return best;
}

inline Rational sup_abs_diff(const PLFunction& f, const PLFunction& g) {
    if (f.y_lo() != g.y_lo() || f.y_hi() != g.y_hi())
        throw std::invalid_argument("string distance needs equal domains");
    return sup_abs_diff_range(f, g, f.y_lo(), f.y_hi());
}

} // namespace sparsetrace
