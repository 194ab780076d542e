#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsetrace/params.hpp"
#include "sparsetrace/plfun.hpp"
#include "sparsetrace/tiles.hpp"

namespace sparsetrace {

// One x-run of a mat: every x in [x_lo, x_hi] carries the same string set.
// Zero-width runs represent blades. Adjacent runs share their boundary x, so
// a section at a shared boundary is the union from both sides.
struct MatRun {
    Rational x_lo, x_hi;
    std::vector<PLFunction> strings;
};

// Compact piecewise-linear surface slice: x-runs of strings over a common
// y-domain, all strings pinned to the common endpoint heights.
//
// combo_splits lists interior y-values at which every string of the mat
// passes through a common height per x-section, so that section strings may
// be recombined blockwise there. Sections at shared run boundaries are read
// as all blockwise combinations of the adjacent strings; this only affects
// the metric, never the underlying point set.
struct Mat {
    std::vector<MatRun> runs;  // ascending; interval runs tile [x_min, x_max]
    Rational y_lo, y_hi;
    Rational x_end, y_end;  // string heights at y_lo and y_hi
    std::vector<Rational> combo_splits;

    Rational x_min() const { return runs.front().x_lo; }
    Rational x_max() const { return runs.back().x_hi; }

    void validate() const;  // endpoint and ordering invariants

    Rational global_min_z() const;
    Rational global_max_z() const;

    // Strings whose run contains x (interval interiors, endpoints, blades).
    std::vector<const PLFunction*> strings_at(const Rational& x) const;
    // Strings covering the whole open interval (lo, hi).
    std::vector<const PLFunction*> strings_over(const Rational& lo, const Rational& hi) const;
};

// ---- canonical mats ------------------------------------------------------

// The 5 x e mat: flat unbridges on [0,1] and [4,5], up bridges of height b+c
// on [1,2] and [3,4], the central down bridge of depth b on [2,3].
Mat canonical_T(const SubstParams& p);

// Three south-north copies of T on y-domain [-e, 2e], sections recombinable
// at the copy boundaries (hence up to 8 strings per bridge blade).
Mat canonical_T3(const SubstParams& p);

// The four bridge layouts that defeat the triple-overlay argument.
Mat bad_mat(int variant, const SubstParams& p);
Mat bad_mat_t3(int variant, const SubstParams& p);

// Mat of the lifted level-n image of a south-north triple of seeds, rescaled
// by (5, e, 2a)^(1-n) axiswise and translated so the middle block's south
// border sits at height 0. Projection [0,5] x [-e, 2e].
Mat macrotriple_to_mat(const SubstParams& p, int level, const std::array<Slope, 3>& seeds,
                       std::int64_t max_breakpoints = (std::int64_t)3e7);

// ---- metric and relations ------------------------------------------------

// Exact mat metric; nullopt encodes an infinite distance (distinct
// projections or distinct y-domains).
std::optional<Rational> mat_distance(const Mat& A, const Mat& B);

enum class BridgeTag { WestUnbridge, WestUpBridge, CentralDownBridge, EastUpBridge, EastUnbridge };

std::string to_string(BridgeTag t);

struct StringClass {
    size_t a_run, a_idx;       // classified string of A
    size_t ref_run, ref_idx;   // its unique 2*eps-close reference string
    BridgeTag tag;
};

// Assigns every string of A to the unique string of T_ref within 2*eps.
// Requires 4*eps < h and d(A, T_ref) <= eps; throws std::invalid_argument on
// a violated precondition and std::runtime_error when an assignment is
// missing or ambiguous.
std::vector<StringClass> classify_strings(const Mat& A, const Mat& T_ref, const Rational& eps,
                                          std::int64_t h);

enum class BelowVerdict { Below, Above, Intersects, DisjointProjections };

std::string to_string(BelowVerdict v);

struct MatOffset {
    Rational dx, dy, dz;
};

// Order of two translated mats: Below/Above when every string of one stays
// strictly on one side of every string of the other over the shared
// projection; any touching, crossing, or mixed ordering yields Intersects.
BelowVerdict below_relation(const Mat& M, const MatOffset& om, const Mat& N, const MatOffset& on);

// ---- triple overlay ------------------------------------------------------

struct TriplePart {
    const Mat* mat = nullptr;
    Rational x, y, z;  // the translation v; the placed mat is M - v
    Rational r;        // required column height: (0,0,r) must lie on M - v
};

enum class TripleVerdict { HypothesesViolated, NoWitness, Witness };

struct TripleResult {
    TripleVerdict verdict;
    std::string detail;
};

// Checks the three overlay conditions exactly: r-closeness under eps, column
// membership, pairwise disjointness. Hypotheses checked first: eps within the
// parameter bounds, d >= 2e/3 and each mat within eps of ref (skippable when
// the caller has already verified distances).
TripleResult check_triple(const Mat& ref, const SubstParams& p, const Rational& eps,
                          const std::array<TriplePart, 3>& parts,
                          bool skip_distance_check = false);

struct TripleWitness {
    std::array<MatOffset, 3> v;
    std::array<Rational, 3> r;
    std::int64_t candidate_index = 0;
};

// Seeded search for an overlay witness over one mat family: structured
// placements first (opposite unbridges over each other with the third mat's
// bridge extremum brought to the origin column), then random placements.
// Deterministic for a fixed seed. The mats are assumed within eps of ref.
std::optional<TripleWitness> triple_search(const Mat& ref, const SubstParams& p,
                                           const Rational& eps, const Mat& candidate,
                                           std::int64_t budget, std::uint64_t seed);

} // namespace sparsetrace
