#pragma once

#include "polyangle/construction.hpp"
#include "polyangle/geometry.hpp"
#include "polyangle/scalar.hpp"
#include "polyangle/vectors.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace polyangle {

enum class VectorKind { Alpha, AlphaF, GammaH, GammaF };
enum class ScalarMode { Exact, Estimate };

/** Equal-length rows of one vector kind, with their origin for reporting. */
struct VectorFamily {
    VectorKind kind = VectorKind::Alpha;
    ScalarMode mode = ScalarMode::Exact;
    std::vector<std::vector<Scalar>> rows;
    std::vector<std::string> provenance;
};

struct ThresholdPolicy {
    double c = 10.0;  // threshold = c * max scaled sigma * sqrt(#rows)
};

/**
 * Affine dimension of a row set. Numeric reports carry the scaled singular
 * values of the first-row-subtracted matrix, the noise threshold, and the
 * margin: how far the singular values stay from the threshold on both sides
 * (min of smallest-retained/threshold and threshold/largest-discarded), so
 * margin > 1 means the rank verdict is not sitting on the cut.
 */
struct RankReport {
    int affine_dim = 0;
    ScalarMode mode = ScalarMode::Exact;
    std::vector<double> singular_values;
    std::optional<double> threshold;
    std::optional<double> margin;
};

/** Exact affine rank by rational row reduction; rows must be all-exact. */
RankReport affine_rank_exact(const VectorFamily& fam);

/**
 * Noise-aware affine rank: exact count columns (sigma = 0 throughout) of the
 * first-row-subtracted matrix are scaled down by their max absolute value so
 * face counts do not drown angle entries, noisy columns stay in natural
 * units, and the SVD is thresholded at c * sigma * sqrt(#rows) with sigma
 * the RMS standard error over all cells (so c * sigma * sqrt(cells) bounds
 * the expected Frobenius norm of the noise, which in turn bounds every noise
 * singular value). A tiny absolute floor keeps all-exact input from being
 * ranked on floating point dust.
 */
RankReport affine_rank_numeric(const VectorFamily& fam,
                               const ThresholdPolicy& policy = {});

struct SpanOptions {
    long samples_per_face = 100000;
    std::uint64_t seed = 0;
    double epsilon = 0.05;
    int threads = 1;
    ThresholdPolicy policy{};
};

/**
 * Outcome of one span verification. matched means the computed affine
 * dimension equals the expected one, and additionally margin > 1 in
 * numeric mode. theorem holds the CLI-facing label ("5", "6" or "8").
 */
struct SpanVerdict {
    std::string theorem;
    int d = 0;
    int expected_dim = 0;
    int computed_dim = 0;
    ScalarMode mode = ScalarMode::Exact;
    std::optional<double> margin;
    std::vector<std::string> family;
    bool matched = false;
    std::vector<std::string> notes;
};

/** One member of a realized limiting family. */
struct RealizedMember {
    ConstructionExpr realized;
    int doublings = 0;  // binary exponent of the most extreme height used
    AlphaVector alpha;  // sampled angle sums of the realization
    FVector f;
    bool accepted = false;
};

/**
 * Result of realizing a limiting family with finite heights: the realized
 * members, the exact affine dimension of the limiting rows, and the numeric
 * rank report of the realized rows (same vector kind).
 */
struct RealizedFamily {
    std::vector<RealizedMember> members;
    int exact_dim = 0;
    RankReport report;
    bool succeeded = false;
};

/**
 * Replace limiting heights by finite ones and re-verify the family's affine
 * rank from samples. Heights are chosen innermost first: each limiting
 * height is backed off through binary scales 2^-(s+t) (zero limits) or
 * 2^(s+t) (infinite limits), t = 1..12, where s is the most extreme exponent
 * already frozen into the base, until the sampled angle sums of the partial
 * polytope built so far sit within epsilon/2^(L-k+1) of that subexpression's
 * exact limit (plus a 4 sigma allowance) for the k-th of L limits, with face
 * counts matching exactly. Each height is frozen before the next one is
 * searched; nested limits do not commute with a fixed height ratio, which is
 * why the realization walks one step at a time and why each ladder starts
 * beyond the base's own scale. A member is accepted when its full
 * realization passes the same test against the whole expression's limit at
 * tolerance epsilon.
 * Succeeds when all members are realized and the numeric affine rank of the
 * realized rows equals the exact rank of the limiting rows. kind selects the
 * row shape: Alpha or GammaF.
 */
RealizedFamily realize_limiting_family(
    const std::vector<ConstructionExpr>& family, VectorKind kind,
    const SpanOptions& opts);

/**
 * Affine span of the angle sum vectors of the limiting simplex family:
 * expected dimension floor((d-1)/2). Exact mode also asserts the symmetry
 * upper bound gamma_i + gamma_{d-i} = 1 on every member; numeric mode
 * re-verifies the rank through realize_limiting_family. CLI label
 * --theorem 5.
 */
SpanVerdict verify_simplex_span(int d, ScalarMode mode,
                                const SpanOptions& opts = {});

/**
 * Affine span of the gamma-h-vectors of simplicial d-polytopes: expected
 * dimension d-1, from exact simplex-family rows plus sampled rows for
 * simplicial non-simplices (octahedron at d = 3, moment-curve polytopes
 * beyond). d = 2 is fully exact: every polygon is simplicial, and the rows
 * are the triangle and the quadrilateral. CLI label --theorem 6.
 */
SpanVerdict verify_simplicial_span(int d, const SpanOptions& opts = {});

/**
 * Affine span of the gamma-f-vectors of general d-polytopes, from the
 * limiting general family: expected dimension 2d-3. Numeric mode re-verifies
 * through realize_limiting_family. CLI label --theorem 8.
 */
SpanVerdict verify_general_span(int d, ScalarMode mode,
                                const SpanOptions& opts = {});

/** Exact linear (not affine) ranks before and after the averaging step. */
struct PinfRankCheck {
    int rank_before = 0;
    int rank_after = 0;
    bool preserved = false;
};

/**
 * The averaging map that sends a d-vector gamma to the (d+1)-vector of
 * consecutive averages is invertible, so it preserves linear independence;
 * this checks that concretely on a set of exact gamma rows.
 */
PinfRankCheck pinf_rank_preservation(const std::vector<GammaVector>& rows);

/** Alternating sums of the pyramid preimages of a polytope and its prism. */
struct PrismPyramidSumCheck {
    Int base_sum;
    Int prism_sum;
    bool holds = false;  // prism_sum == base_sum + 1
};

/**
 * The pyramid-map preimage of a prism's face counts has an alternating sum
 * exactly one above that of the base's preimage; checked exactly from the
 * base's f-vector.
 */
PrismPyramidSumCheck prism_pyramid_sum_check(const FVector& f);

}  // namespace polyangle
