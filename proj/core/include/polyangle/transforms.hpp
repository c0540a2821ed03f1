#pragma once

#include "polyangle/vectors.hpp"

#include <utility>

namespace polyangle {

/**
 * Triangular transform h_i = sum_{j=0}^{i} (-1)^{i-j} C(d-j, d-i) f_{j-1}
 * with f_{-1} = 1. h_0 = 1 always and h_d = 1 exactly when the alternating
 * face count sum equals 1.
 */
HVector h_from_f(const FVector& f);

/**
 * Inverse of h_from_f by forward substitution (the map is unitriangular).
 * The recovered f_{-1} slot equals h_0 and is dropped; f_d is restored as 1.
 */
FVector f_from_h(const HVector& h);

/**
 * gamma_i = sum_{j=0}^{i} (-1)^{i-j} C(d-j, d-i) alpha_{j-1} with
 * alpha_{-1} = 0: the same triangular map that produces h from f, applied to
 * angle sums. gamma_0 = 0 always and gamma_d = 1 exactly when the alternating
 * angle sum vanishes.
 */
GammaVector gamma_from_alpha(const AlphaVector& alpha);

/**
 * Inverse of gamma_from_alpha; requires gamma_0 = 0 exactly (the recovered
 * alpha_{-1} slot). alpha_d is restored as 1.
 */
AlphaVector alpha_from_gamma(const GammaVector& gamma);

/**
 * gamma-vector of the limiting (infinitely tall) pyramid over a base with
 * gamma-vector g: append 1, then average consecutive entries. Output has one
 * more entry than the input.
 */
GammaVector pinf_gamma(const GammaVector& g);

/**
 * Inverse of the limiting pyramid step on gamma-vectors: entry i of the
 * result is 2 * sum_{j<=i} (-1)^{i-j} g_j. The result keeps the input's
 * length; for a gamma-vector that genuinely arose from pinf_gamma its last
 * entry is 1 and the rest is the base gamma-vector.
 */
GammaVector pinf_gamma_inverse(const GammaVector& g);

/** f-vector of the prism over a polytope with f-vector f (f_0 doubles,
 *  f_i -> 2 f_i + f_{i-1} above grade zero). */
FVector prism_f(const FVector& f);

/** f-vector of the pyramid over a polytope with f-vector f
 *  (f_i -> f_i + f_{i-1}, with f_{-1} = 1). */
FVector pyramid_f(const FVector& f);

/**
 * Pyramid step on extended f-vectors (a leading f_{-1} = 1 entry followed by
 * f_0..f_d). Output is the extended f-vector of the pyramid, one entry longer.
 */
ExtendedFVector pyramid_extended_f(const ExtendedFVector& f);

/**
 * Inverse pyramid step: backward substitution through the bidiagonal map.
 * Output is one entry shorter; its leading slot is the alternating sum
 * sum_i (-1)^i f_i of the input (1 exactly when the Euler relation holds)
 * and the remaining entries are the formal pyramid preimage.
 */
ExtendedFVector pyramid_extended_f_inverse(const ExtendedFVector& f);

/**
 * Block-diagonal action on a (gamma, f) pair: the limiting pyramid map on the
 * gamma half and the pyramid map on the f half. This is the one-step update
 * used when towers of limiting pyramids are analysed jointly with their face
 * counts.
 */
GammaFVector pinf_gamma_f(const GammaVector& g, const FVector& f);

/** Inverse block step; returns the gamma preimage (base gamma followed by a
 *  trailing 1 for genuine inputs) and the extended f preimage. */
std::pair<GammaVector, ExtendedFVector> pinf_gamma_f_inverse(const GammaFVector& gf);

}  // namespace polyangle
