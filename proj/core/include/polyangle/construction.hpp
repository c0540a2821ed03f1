#pragma once

#include "polyangle/geometry.hpp"
#include "polyangle/rational.hpp"
#include "polyangle/vectors.hpp"

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polyangle {

enum class HeightKind { Finite, Zero, Infinity };

/**
 * Pyramid or prism height. Prisms take finite positive heights only; pyramids
 * additionally accept the symbolic limits Zero and Infinity, whose angle sums
 * are defined by recursion rather than geometry.
 */
struct Height {
    HeightKind kind = HeightKind::Finite;
    Rational value = Rational(1);  // meaningful only when kind == Finite

    static Height finite(Rational v);
    static Height zero() { return Height{HeightKind::Zero, Rational(0)}; }
    static Height infinity() { return Height{HeightKind::Infinity, Rational(0)}; }

    bool operator==(const Height&) const = default;
};

enum class OpKind { Point, Pyramid, Prism };

/**
 * A chain of pyramid/prism operations over a point. Immutable; copies share
 * structure. The dimension equals the number of operations in the chain.
 */
class ConstructionExpr {
public:
    /** The 0-dimensional seed. */
    static ConstructionExpr point();
    static ConstructionExpr pyramid(ConstructionExpr base, Height h);
    /** Throws std::invalid_argument unless the height is finite positive. */
    static ConstructionExpr prism(ConstructionExpr base, Height h);

    OpKind op() const;
    /** Throws std::logic_error on the point node. */
    ConstructionExpr base() const;
    /** Throws std::logic_error on the point node. */
    const Height& height() const;

    int dim() const;
    bool has_limit_heights() const;

    /**
     * Canonical text form in the input grammar: runs of identical operations
     * collapse to "^k", unit heights are omitted, e.g. "P0^2(B*_2(pt))".
     */
    std::string to_string() const;

    bool operator==(const ConstructionExpr& other) const;

private:
    struct Node;
    explicit ConstructionExpr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

/** Syntax or height-validity error, with the byte offset of the offender. */
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/** Raised by the exact pipeline on constructions it cannot evaluate. */
class UnsupportedConstruction : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Parse the expression grammar
 *
 *   expr := "pt"
 *         | "P"    ["^" int] ["_" rat] "(" expr ["," rat] ")"
 *         | "B*"   ["^" int] ["_" rat] "(" expr ["," rat] ")"
 *         | "P0"   ["^" int] "(" expr ")"
 *         | "Pinf" ["^" int] "(" expr ")"
 *
 * where rat is "p" or "p/q". "P^k" expands to k nested pyramids (likewise the
 * other operations); Unicode superscript digits work as exponents. Heights
 * must be positive; P0 and Pinf take none.
 */
ConstructionExpr parse_expr(std::string_view text);

/**
 * Realize an all-finite-heights expression with exact rational coordinates:
 * a pyramid places its apex at height k over the vertex centroid of the base
 * (embedded in the hyperplane where the new coordinate is 0), and a prism is
 * the product with [0, k]. Throws std::invalid_argument on limit heights.
 */
VPolytope build_geometric(const ConstructionExpr& e);

/**
 * Exact angle sums and face counts by recursion over the chain, seeded with
 * alpha = (1), f = (1) at the point:
 *
 *   prism:            alpha_i <- alpha_i + alpha_{i-1},   any height
 *   zero pyramid:     alpha_i <- f_{i-1}/2, top entry f_{d-2}/2 + 1/2
 *   infinite pyramid: alpha_i <- alpha_i/2 + alpha_{i-1}
 *
 * and f via f_i <- f_i + f_{i-1} (pyramid) or f_i <- 2 f_i + f_{i-1} with
 * f_0 doubled (prism). Throws UnsupportedConstruction for a finite-height
 * pyramid over a base of dimension 2 or more (those angle sums depend on the
 * height; bases of dimension 0 or 1 give a segment or triangle, which are
 * combinatorial) and for an infinite pyramid over a point (the recursion's
 * seed case violates the closure relations there, so it is not exact data).
 */
AlphaFVector exact_alpha_f(const ConstructionExpr& e);

/** Face counts of the chain by the pyramid/prism recurrences alone. */
FVector predicted_f(const ConstructionExpr& e);

/**
 * Convex hull of (t, t^2, ..., t^d) for t = 1..n. Simplicial; requires
 * d >= 2 and d+1 <= n <= 60.
 */
VPolytope cyclic_polytope(int d, int n);

/** Regular tetrahedron (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1). */
VPolytope regular_tetrahedron();

/**
 * Two congruent regular tetrahedra glued along a face: the regular
 * tetrahedron above plus the reflection of (1,1,1) across its opposite
 * facet's plane.
 */
VPolytope glued_tetra_bipyramid();

/** Unit cube [0,1]^d, 1 <= d <= 5. */
VPolytope cube(int d);

/** Regular octahedron, vertices +-e_i in R^3. */
VPolytope octahedron();

/**
 * Limiting simplex family whose gamma-vectors affinely span dimension
 * floor((d-1)/2): d = 1 gives {P(pt)}, d = 2 gives {P^2(pt)}, and d >= 3
 * prepends P0^{d-1}(P(pt)) to {Pinf^2(Q)} over the (d-2)-family.
 */
std::vector<ConstructionExpr> simplex_span_family(int d);

/**
 * Limiting general family whose gamma-f-vectors affinely span dimension
 * 2d-3: d = 2 gives the triangle and the square, and d >= 3 takes Pinf of
 * the (d-1)-family followed by the prism towers (B*)^{d-2}(P^2) and
 * (B*)^{d-1}(P). Size 2d-2.
 */
std::vector<ConstructionExpr> general_span_family(int d);

}  // namespace polyangle
