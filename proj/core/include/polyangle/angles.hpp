#pragma once

#include "polyangle/geometry.hpp"
#include "polyangle/rational.hpp"
#include "polyangle/vectors.hpp"

#include <cstdint>
#include <optional>

namespace polyangle {

struct EstimateOptions {
    long samples_per_face = 100000;
    std::uint64_t seed = 0;
    int threads = 1;
    /**
     * Replace Monte Carlo with closed forms where one exists: the polytope
     * itself (1), facets (1/2), and codimension-2 faces, whose tangent cone
     * is a wedge with angle pi minus the angle between the facet normals.
     */
    bool use_closed_forms = true;
    /**
     * Evaluate vertices of 3-polytopes by spherical excess over the vertex
     * figure instead of sampling. Off by default so that default runs have
     * one uniform error model (standard errors) below codimension 2.
     */
    bool closed_form_3d_vertices = false;
};

/** The interior angle at one face: either sampled or a closed form. */
struct AngleEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // 0 for closed forms
    long n_samples = 0;      // 0 for closed forms
    std::uint64_t seed = 0;  // per-face stream seed (0 for closed forms)
    std::optional<Rational> exact;  // set when the angle is exactly rational
    bool closed_form = false;
};

/**
 * Seed of the random stream dedicated to one face: a bijective mix of the
 * run seed with the face's vertex mask. Distinct faces get decorrelated
 * streams, every (run_seed, mask) pair is reproducible, and results cannot
 * depend on scheduling because no stream is shared.
 */
std::uint64_t face_stream_seed(std::uint64_t run_seed, std::uint64_t face_mask);

/**
 * Monte Carlo estimate of the interior angle at a proper face: the fraction
 * of uniformly random directions in the polytope's span that satisfy every
 * facet halfspace of the tangent cone (ties count as inside). Deterministic
 * given the stream seed.
 */
AngleEstimate interior_angle_mc(const VPolytope& p, const Face& face,
                                long samples, std::uint64_t stream_seed);

/**
 * Closed-form interior angle where the options allow one (see
 * EstimateOptions); std::nullopt when this face must be sampled.
 */
std::optional<AngleEstimate> interior_angle_closed_form(
    const VPolytope& p, const Face& face, const EstimateOptions& opts);

/**
 * Angle sums per face dimension. Entries are exact rationals when every
 * contributing angle is (dimension <= 2 is fully combinatorial; the top two
 * grades always are), and (mean, se) estimates otherwise. Faces are summed
 * in lattice order, so output is identical for any thread count.
 */
AlphaVector alpha_vector_estimate(const VPolytope& p,
                                  const EstimateOptions& opts);

}  // namespace polyangle
