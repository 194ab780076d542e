#include "sparsetrace/params.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace sparsetrace {

ParamReport check_params(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    if (a < 1 || b < 1 || c < 1 || d < 1)
        throw std::invalid_argument("parameters must all be >= 1 (the vertical rescaling needs a > 0)");
    ParamReport r;
    r.params = SubstParams{a, b, c, d};
    r.e = r.params.e();
    r.h = r.params.h();
    r.epsilon = r.params.epsilon();
    Rational bound = rat_min(Rational(b, 7), Rational(c, 8));
    r.bcbound_ok = r.epsilon < bound;
    r.dbound_ok = d >= 4 * (a + b + c);
    // d >= 2e/3 is equivalent to d >= 4(a+b+c); evaluated directly anyway.
    bool d_vs_e = Rational(d) >= Rational(2 * r.e, 3);
    r.t3_ok = r.bcbound_ok && d_vs_e;
    return r;
}

namespace {

// Minimal s = b+c admitting a split b,c with epsilon(a,s) < min(b/7, c/8),
// together with the lexicographically smallest such (b, c).
// epsilon < b/7  <=>  b > 7*eps, i.e. b >= floor(7*eps)+1 (strict even when
// 7*eps is integral). Same with c and 8.
struct SplitResult {
    std::int64_t b, c;
};

std::optional<SplitResult> feasible_split(std::int64_t a, std::int64_t s, std::int64_t max_bc) {
    Rational eps = Rational(s, 2 * a - 1) + Rational(1 + 6 * a);
    Rational b7 = eps * Rational(7);
    Rational c8 = eps * Rational(8);
    std::int64_t bmin = b7.floor() + 1;
    std::int64_t cmin = c8.floor() + 1;
    if (bmin < 1) bmin = 1;
    if (cmin < 1) cmin = 1;
    if (bmin + cmin > s) return std::nullopt;
    // smallest b wins the lexicographic tie-break; c = s - b must still be >= cmin
    std::int64_t b = bmin;
    std::int64_t c = s - b;
    if (b > max_bc || c > max_bc || c < cmin) {
        // try pushing b upward so that c fits under max_bc
        if (s - max_bc > bmin) b = s - max_bc;
        c = s - b;
        if (b > max_bc || c < cmin || c > max_bc) return std::nullopt;
    }
    return SplitResult{b, c};
}

} // namespace

std::optional<MinimizeResult> minimize_e(const SearchBounds& bounds) {
    std::optional<MinimizeResult> best;
    for (std::int64_t a = std::max<std::int64_t>(1, bounds.min_a); a <= bounds.max_a; ++a) {
        if (2 * a - 1 <= 15) continue;  // b > 7 eps and c > 8 eps force s > 15 s/(2a-1)
        for (std::int64_t s = 2; s <= 2 * bounds.max_bc; ++s) {
            auto split = feasible_split(a, s, bounds.max_bc);
            if (!split) continue;
            SubstParams p{a, split->b, split->c, 4 * (a + split->b + split->c)};
            std::int64_t e = p.e();
            if (!best || e < best->e ||
                (e == best->e && std::tie(p.a, p.b, p.c, p.d) <
                                     std::tie(best->params.a, best->params.b,
                                              best->params.c, best->params.d))) {
                best = MinimizeResult{p, e};
            }
            break;  // s ascending: first feasible s is minimal for this a
        }
    }
    return best;
}

} // namespace sparsetrace
