#pragma once

#include "polyangle/scalar.hpp"
#include "polyangle/vectors.hpp"

#include <optional>
#include <string>

namespace polyangle {

/**
 * One linear relation evaluated as LHS - RHS. Exact inputs give an exact
 * residual judged by equality with zero; sampled inputs give an estimate
 * judged by its distance from zero in standard errors (sigma_ratio). The
 * ratio's denominator is floored at 1e-12 times the magnitude of the terms
 * entering the relation, so forced cancellations of closed-form doubles
 * (standard error 0, residual a few ulps) still pass.
 */
struct RelationResidual {
    std::string relation;
    std::optional<int> k;  // row index within an indexed relation family
    Scalar value;
    std::optional<double> sigma_ratio;  // absent for exact residuals

    bool passes(double max_ratio = 4.0) const;
};

/** Alternating face count sum: sum_{i=0}^{d} (-1)^i f_i - 1. */
RelationResidual euler_residual(const FVector& f);

/**
 * Row k of the complete linear relation family on simplicial face counts:
 * sum_{j=k}^{d-1} (-1)^j C(j+1, k+1) f_j - (-1)^{d-1} f_k, with f_{-1} = 1
 * and -1 <= k <= d-2. Row k = -1 restates the alternating sum relation.
 */
RelationResidual dehn_sommerville_residual(const FVector& f, int k);

/** Alternating angle sum: sum_{i=0}^{d} (-1)^i alpha_i (zero for d >= 1). */
RelationResidual gram_residual(const AlphaVector& a);

/**
 * Row k of the angle analogue of the simplicial relation family:
 * sum_{j=k}^{d-1} (-1)^j C(j+1, k+1) alpha_j - (-1)^d (alpha_k - f_k),
 * 0 <= k <= d-1.
 */
RelationResidual perles_residual(const AlphaVector& a, const FVector& f,
                                 int k);

/** gamma_i + gamma_{d-i} - h_i, the simplicial gamma symmetry, 0 <= i <= d. */
RelationResidual gamma_h_residual(const GammaVector& g, const HVector& h,
                                  int i);

}  // namespace polyangle
