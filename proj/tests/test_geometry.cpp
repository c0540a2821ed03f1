#include "doctest.h"

#include "polyangle/construction.hpp"
#include "polyangle/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

using namespace polyangle;

namespace {

Rational rat(long num, long den = 1) { return make_rational(Int(num), Int(den)); }

Point pt2(long x, long y) { return {rat(x), rat(y)}; }
Point pt3(long x, long y, long z) { return {rat(x), rat(y), rat(z)}; }

VPolytope unit_square() {
    return VPolytope::from_vertices({pt2(0, 0), pt2(1, 0), pt2(1, 1), pt2(0, 1)});
}

/**
 * Facets of the cyclic polytope by Gale's evenness condition, computed from
 * scratch: a d-subset S of the n vertices spans a facet exactly when any two
 * vertices outside S have an even number of elements of S strictly between
 * them. Serves as an oracle independent of the hull code.
 */
std::set<std::uint64_t> gale_facet_masks(int d, int n) {
    std::set<std::uint64_t> out;
    std::vector<int> subset(d);
    // Enumerate d-subsets of {0..n-1} in lexicographic order.
    for (int i = 0; i < d; ++i) subset[i] = i;
    while (true) {
        std::uint64_t mask = 0;
        for (int v : subset) mask |= std::uint64_t{1} << v;
        bool gale = true;
        for (int i = 0; i < n && gale; ++i) {
            if (mask & (std::uint64_t{1} << i)) continue;
            for (int j = i + 1; j < n && gale; ++j) {
                if (mask & (std::uint64_t{1} << j)) continue;
                int between = 0;
                for (int k = i + 1; k < j; ++k) {
                    if (mask & (std::uint64_t{1} << k)) ++between;
                }
                if (between % 2 != 0) gale = false;
            }
        }
        if (gale) out.insert(mask);

        int pos = d - 1;
        while (pos >= 0 && subset[pos] == n - d + pos) --pos;
        if (pos < 0) break;
        ++subset[pos];
        for (int i = pos + 1; i < d; ++i) subset[i] = subset[i - 1] + 1;
    }
    return out;
}

Int alternating_face_sum(const FVector& f) {
    Int sum = 0;
    for (int i = 0; i <= f.dim(); ++i) {
        sum += (i % 2 == 0 ? f.at(i) : -f.at(i));
    }
    return sum;
}

}  // namespace

TEST_CASE("affine_dim") {
    CHECK(affine_dim({}) == -1);
    CHECK(affine_dim({pt2(3, 4)}) == 0);
    CHECK(affine_dim({pt2(0, 0), pt2(0, 0)}) == 0);
    CHECK(affine_dim({pt2(0, 0), pt2(2, 1)}) == 1);
    CHECK(affine_dim({pt2(0, 0), pt2(1, 1), pt2(2, 2)}) == 1);
    CHECK(affine_dim({pt2(0, 0), pt2(1, 0), pt2(0, 1)}) == 2);
    // A square floating in 3-space spans a plane.
    CHECK(affine_dim({pt3(0, 0, 5), pt3(1, 0, 5), pt3(1, 1, 5), pt3(0, 1, 5)}) == 2);
    CHECK(affine_dim({pt3(0, 0, 0), pt3(1, 0, 0), pt3(0, 1, 0), pt3(0, 0, 1)}) == 3);
}

TEST_CASE("degenerate polytopes") {
    const VPolytope point = VPolytope::from_vertices({pt3(2, 3, 4)});
    CHECK(point.dim() == 0);
    CHECK(point.ambient_dim() == 3);
    CHECK(point.facets().empty());
    CHECK(point.f_vector() == make_f({1}));
    // Lattice still carries the empty face and the polytope itself.
    CHECK(point.lattice().faces().size() == 2);

    const VPolytope seg = VPolytope::from_vertices({pt2(0, 0), pt2(3, 1)});
    CHECK(seg.dim() == 1);
    CHECK(seg.f_vector() == make_f({2, 1}));
    REQUIRE(seg.facets().size() == 2);
    CHECK(std::popcount(seg.facets()[0].vertex_mask) == 1);
}

TEST_CASE("vertex order is preserved") {
    const std::vector<Point> input = {pt2(0, 0), pt2(1, 0), pt2(1, 1), pt2(0, 1)};
    const VPolytope p = VPolytope::from_vertices(input);
    CHECK(p.vertices() == input);
}

TEST_CASE("invalid vertex sets are rejected") {
    CHECK_THROWS_AS(VPolytope::from_vertices({}), std::invalid_argument);
    CHECK_THROWS_AS(
        VPolytope::from_vertices({pt2(0, 0), pt2(1, 0), pt2(0, 0), pt2(0, 1)}),
        std::invalid_argument);
    // An interior point is not a vertex.
    CHECK_THROWS_AS(VPolytope::from_vertices({pt2(0, 0), pt2(2, 0), pt2(2, 2),
                                              pt2(0, 2), pt2(1, 1)}),
                    std::invalid_argument);
    // Neither is a point in the relative interior of an edge.
    CHECK_THROWS_AS(VPolytope::from_vertices({pt2(0, 0), pt2(1, 0), pt2(2, 0)}),
                    std::invalid_argument);
    // Mismatched coordinate counts.
    CHECK_THROWS_AS(VPolytope::from_vertices({pt2(0, 0), pt3(1, 0, 0)}),
                    std::invalid_argument);
}

TEST_CASE("facet counts and sizes on solids") {
    const VPolytope c = cube(3);
    REQUIRE(c.facets().size() == 6);
    for (const Facet& f : c.facets()) {
        CHECK(std::popcount(f.vertex_mask) == 4);
    }

    const VPolytope tet = regular_tetrahedron();
    REQUIRE(tet.facets().size() == 4);
    for (const Facet& f : tet.facets()) {
        CHECK(std::popcount(f.vertex_mask) == 3);
    }
}

TEST_CASE("facet halfspaces support and contain the polytope") {
    for (const VPolytope& p : {cube(3), regular_tetrahedron(), octahedron(),
                               glued_tetra_bipyramid(), cyclic_polytope(3, 6)}) {
        for (const Facet& f : p.facets()) {
            int on = 0;
            for (std::size_t v = 0; v < p.vertices().size(); ++v) {
                Rational dot(0);
                for (std::size_t j = 0; j < f.normal.size(); ++j) {
                    dot += f.normal[j] * p.vertices()[v][j];
                }
                CHECK(dot <= f.offset);
                const bool tight = dot == f.offset;
                CHECK(tight == ((f.vertex_mask >> v) & 1));
                if (tight) ++on;
            }
            CHECK(on >= p.dim());
            // Normals are scaled to coprime integers.
            Int g = 0;
            for (const Rational& c : f.normal) {
                CHECK(denominator(c) == 1);
                g = gcd(g, numerator(c));
            }
            CHECK(g == 1);
        }
    }
}

TEST_CASE("f-vectors of the builtin polytopes") {
    CHECK(cube(2).f_vector() == make_f({4, 4, 1}));
    CHECK(cube(3).f_vector() == make_f({8, 12, 6, 1}));
    CHECK(cube(4).f_vector() == make_f({16, 32, 24, 8, 1}));
    CHECK(regular_tetrahedron().f_vector() == make_f({4, 6, 4, 1}));
    CHECK(octahedron().f_vector() == make_f({6, 12, 8, 1}));
    CHECK(glued_tetra_bipyramid().f_vector() == make_f({5, 9, 6, 1}));
    CHECK(cyclic_polytope(2, 5).f_vector() == make_f({5, 5, 1}));
    CHECK(cyclic_polytope(3, 5).f_vector() == make_f({5, 9, 6, 1}));
    CHECK(cyclic_polytope(4, 7).f_vector() == make_f({7, 21, 28, 14, 1}));
}

TEST_CASE("euler relation holds on every computed lattice") {
    for (const VPolytope& p :
         {unit_square(), cube(3), cube(4), regular_tetrahedron(), octahedron(),
          glued_tetra_bipyramid(), cyclic_polytope(3, 6), cyclic_polytope(4, 6),
          cyclic_polytope(4, 7), cyclic_polytope(5, 7)}) {
        CHECK(alternating_face_sum(p.f_vector()) == 1);
    }
}

TEST_CASE("cyclic polytope facets match the evenness oracle") {
    struct Case {
        int d, n;
    };
    for (const Case c : {Case{3, 5}, Case{3, 6}, Case{4, 6}, Case{4, 7}}) {
        const VPolytope p = cyclic_polytope(c.d, c.n);
        std::set<std::uint64_t> got;
        for (const Facet& f : p.facets()) got.insert(f.vertex_mask);
        CHECK(got == gale_facet_masks(c.d, c.n));
    }
    CHECK(cyclic_polytope(4, 7).facets().size() == 14);
}

TEST_CASE("cyclic polytope argument validation") {
    CHECK_THROWS_AS(cyclic_polytope(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_polytope(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_polytope(2, 61), std::invalid_argument);
    CHECK_NOTHROW(cyclic_polytope(2, 3));
}

TEST_CASE("is_simplicial") {
    CHECK(regular_tetrahedron().is_simplicial());
    CHECK(octahedron().is_simplicial());
    CHECK(glued_tetra_bipyramid().is_simplicial());
    CHECK(cyclic_polytope(3, 6).is_simplicial());
    CHECK(cyclic_polytope(4, 7).is_simplicial());
    CHECK_FALSE(cube(3).is_simplicial());
    CHECK_FALSE(cube(4).is_simplicial());
    // Polygons are trivially simplicial.
    CHECK(unit_square().is_simplicial());
}

TEST_CASE("facets are invariant under vertex permutation") {
    const VPolytope c = cube(3);
    std::vector<Point> shuffled = c.vertices();
    std::mt19937_64 rng(42);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const VPolytope c2 = VPolytope::from_vertices(shuffled);

    // Compare facets as sets of vertex coordinate sets.
    const auto facet_key = [](const VPolytope& p, const Facet& f) {
        std::set<Point> key;
        for (std::size_t v = 0; v < p.vertices().size(); ++v) {
            if ((f.vertex_mask >> v) & 1) key.insert(p.vertices()[v]);
        }
        return key;
    };
    std::set<std::set<Point>> a, b;
    for (const Facet& f : c.facets()) a.insert(facet_key(c, f));
    for (const Facet& f : c2.facets()) b.insert(facet_key(c2, f));
    CHECK(a == b);
    CHECK(c2.f_vector() == c.f_vector());
}

TEST_CASE("lattice is graded and sorted deterministically") {
    const VPolytope p = cyclic_polytope(3, 6);
    const auto& faces = p.lattice().faces();
    REQUIRE_FALSE(faces.empty());
    CHECK(faces.front().dim == -1);
    CHECK(faces.back().dim == p.dim());
    for (std::size_t i = 1; i < faces.size(); ++i) {
        const bool ordered = faces[i - 1].dim < faces[i].dim ||
                             (faces[i - 1].dim == faces[i].dim &&
                              faces[i - 1].mask < faces[i].mask);
        CHECK(ordered);
    }
    for (int k = -1; k <= p.dim(); ++k) {
        for (int idx : p.lattice().faces_of_dim(k)) {
            CHECK(p.lattice().at(static_cast<std::size_t>(idx)).dim == k);
        }
    }
    // Face counts agree with the f-vector accessor.
    const FVector f = p.f_vector();
    for (int k = 0; k <= p.dim(); ++k) {
        CHECK(static_cast<int>(p.lattice().faces_of_dim(k).size()) ==
              static_cast<int>(f.at(k)));
    }
}

TEST_CASE("every vertex subset of a simplicial facet is a face") {
    for (const VPolytope& p : {cyclic_polytope(3, 6), cyclic_polytope(4, 6)}) {
        std::set<std::uint64_t> face_masks;
        for (const Face& f : p.lattice().faces()) face_masks.insert(f.mask);
        for (const Facet& facet : p.facets()) {
            std::vector<int> verts;
            for (int v = 0; v < 64; ++v) {
                if ((facet.vertex_mask >> v) & 1) verts.push_back(v);
            }
            const int m = static_cast<int>(verts.size());
            for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << m); ++pick) {
                std::uint64_t mask = 0;
                for (int i = 0; i < m; ++i) {
                    if ((pick >> i) & 1) mask |= std::uint64_t{1} << verts[i];
                }
                CHECK(face_masks.count(mask) == 1);
            }
        }
    }
}

TEST_CASE("embedded lower-dimensional polytope") {
    const VPolytope tri =
        VPolytope::from_vertices({pt3(0, 0, 1), pt3(1, 0, 1), pt3(0, 1, 1)});
    CHECK(tri.ambient_dim() == 3);
    CHECK(tri.dim() == 2);
    CHECK(tri.f_vector() == make_f({3, 3, 1}));
    REQUIRE(tri.facets().size() == 3);
    for (const Facet& f : tri.facets()) {
        CHECK(std::popcount(f.vertex_mask) == 2);
    }
    CHECK(static_cast<int>(tri.span_basis().size()) == 2);
}

TEST_CASE("tangent cones") {
    const VPolytope sq = unit_square();
    const auto& lat = sq.lattice();

    // A vertex of the square meets two edges.
    for (int idx : lat.faces_of_dim(0)) {
        const TangentCone cone = sq.tangent_cone(lat.at(static_cast<std::size_t>(idx)));
        CHECK(cone.halfspaces.size() == 2);
        // The base point is the vertex itself.
        int v = std::countr_zero(lat.at(static_cast<std::size_t>(idx)).mask);
        CHECK(cone.base_point == sq.vertices()[static_cast<std::size_t>(v)]);
    }
    // An edge (facet) of the square has a single supporting halfspace.
    for (int idx : lat.faces_of_dim(1)) {
        CHECK(sq.tangent_cone(lat.at(static_cast<std::size_t>(idx))).halfspaces.size() == 1);
    }

    const VPolytope c = cube(3);
    for (int idx : c.lattice().faces_of_dim(1)) {
        const TangentCone cone = c.tangent_cone(c.lattice().at(static_cast<std::size_t>(idx)));
        REQUIRE(cone.halfspaces.size() == 2);
        // A cube edge's two facet normals are orthogonal.
        Rational dot(0);
        for (std::size_t j = 0; j < 3; ++j) {
            dot += cone.halfspaces[0].normal[j] * cone.halfspaces[1].normal[j];
        }
        CHECK(dot == 0);
    }

    // The whole polytope has no tangent cone.
    const Face& top = c.lattice().faces().back();
    CHECK_THROWS_AS(c.tangent_cone(top), std::invalid_argument);
}
