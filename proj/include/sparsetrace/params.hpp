#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sparsetrace/rational.hpp"

namespace sparsetrace {

// The substitution side lengths (a,b,c,d) with the derived quantities
// e = 2(a+b+c)+d, h = b+c and the perturbation budget
// epsilon = (b+c)/(2a-1) + 1 + 6a, kept exact.
struct SubstParams {
    std::int64_t a = 0, b = 0, c = 0, d = 0;

    std::int64_t e() const { return 2 * (a + b + c) + d; }
    std::int64_t h() const { return b + c; }
    Rational epsilon() const {
        return Rational(b + c, 2 * a - 1) + Rational(1) + Rational(6 * a);
    }

    friend bool operator==(const SubstParams& x, const SubstParams& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

struct ParamReport {
    SubstParams params;
    std::int64_t e = 0;
    std::int64_t h = 0;
    Rational epsilon;
    bool bcbound_ok = false;  // epsilon < min(b/7, c/8), strict
    bool dbound_ok = false;   // d >= 4(a+b+c)
    bool t3_ok = false;       // epsilon bound and d >= 2e/3
};

// Validates positivity and evaluates the parameter bounds exactly.
// Throws std::invalid_argument unless all of a,b,c,d >= 1.
ParamReport check_params(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

struct SearchBounds {
    std::int64_t min_a = 1, max_a = 64;
    std::int64_t max_bc = 8192;  // bound on each of b and c
};

struct MinimizeResult {
    SubstParams params;
    std::int64_t e = 0;
};

// Scans the bounds for the tuple with both bounds satisfied and minimal e,
// ties broken lexicographically on (a,b,c,d). d is pinned to 4(a+b+c) since
// e grows with d. Returns nullopt when nothing in bounds is feasible.
std::optional<MinimizeResult> minimize_e(const SearchBounds& bounds);

} // namespace sparsetrace
