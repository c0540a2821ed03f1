#pragma once

#include "polyangle/rational.hpp"
#include "polyangle/vectors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace polyangle {

using Point = std::vector<Rational>;

/** Dimension of the affine hull of a point set (-1 for the empty set). */
int affine_dim(const std::vector<Point>& points);

/**
 * A supporting hyperplane <normal, x> = offset with <normal, x> <= offset on
 * the polytope. The normal lies in the polytope's direction space and is
 * scaled to coprime integer entries, keeping the outward orientation.
 */
struct Facet {
    Point normal;
    Rational offset;
    std::uint64_t vertex_mask = 0;  // bit i set when vertex i lies on the facet
};

struct Face {
    std::uint64_t mask = 0;  // vertex membership bitmask
    int dim = -1;
    std::vector<int> facet_indices;  // facets whose vertex set contains this face
};

/**
 * All faces of a polytope, graded by dimension. Faces are sorted by
 * (dimension, vertex mask), so indices are stable across runs. The empty face
 * (dim -1) and the whole polytope (dim d) are included.
 */
class FaceLattice {
public:
    FaceLattice() = default;
    FaceLattice(int dim, std::vector<Face> faces);

    int dim() const { return dim_; }
    const std::vector<Face>& faces() const { return faces_; }
    const Face& at(std::size_t i) const { return faces_.at(i); }

    /** Faces of one dimension, as indices into faces(). */
    std::vector<int> faces_of_dim(int dim) const;

    FVector f_vector() const;

private:
    int dim_ = -1;
    std::vector<Face> faces_;
};

/**
 * The tangent cone of a proper nonempty face: the halfspaces of the facets
 * containing it, anchored at the face's vertex centroid (a relative interior
 * point).
 */
struct TangentCone {
    std::vector<Facet> halfspaces;
    Point base_point;
};

/**
 * A convex polytope given by its vertices, with exact rational coordinates.
 * Construction enumerates facets by brute force over vertex subsets, rejects
 * inputs containing duplicate or non-extreme points, and builds the full face
 * lattice by intersecting facet vertex sets. Instances are immutable.
 *
 * The polytope need not be full-dimensional in its ambient space; facet
 * normals are computed inside the direction space of its affine hull, so
 * supporting hyperplanes and angles are geometrically meaningful either way.
 */
class VPolytope {
public:
    static VPolytope from_vertices(std::vector<Point> vertices);

    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return dim_; }
    const std::vector<Point>& vertices() const { return vertices_; }

    /** Basis of the direction space of the affine hull (difference vectors). */
    const std::vector<Point>& span_basis() const { return span_basis_; }

    const std::vector<Facet>& facets() const { return facets_; }
    const FaceLattice& lattice() const { return lattice_; }
    FVector f_vector() const { return lattice_.f_vector(); }

    /** True when every facet has exactly dim() vertices. */
    bool is_simplicial() const;

    /** Throws std::invalid_argument when the face is the whole polytope. */
    TangentCone tangent_cone(const Face& face) const;

private:
    VPolytope() = default;

    int ambient_dim_ = 0;
    int dim_ = 0;
    std::vector<Point> vertices_;
    std::vector<Point> span_basis_;
    std::vector<Facet> facets_;
    FaceLattice lattice_;
};

}  // namespace polyangle
