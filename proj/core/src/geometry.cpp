#include "polyangle/geometry.hpp"

#include "polyangle/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace polyangle {

namespace {

Rational dot(const Point& a, const Point& b) {
    Rational out(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += a[i] * b[i];
    }
    return out;
}

Point difference(const Point& a, const Point& b) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return out;
}

/**
 * Scale a nonzero rational vector to coprime integer entries. Only positive
 * factors are applied, so the direction is preserved.
 */
void canonicalize_direction(Point& v) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Int den_lcm(1);
    for (const Rational& q : v) {
        den_lcm = lcm(den_lcm, Int(denominator(q)));
    }
    std::vector<Int> scaled(v.size());
    Int num_gcd(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        scaled[i] = Int(numerator(v[i])) * (den_lcm / Int(denominator(v[i])));
        num_gcd = gcd(num_gcd, scaled[i]);
    }
    if (num_gcd == 0) {
        return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = Rational(scaled[i] / num_gcd);
    }
}

int affine_dim_of_masked(const std::vector<Point>& points, std::uint64_t mask) {
    std::vector<Point> sel;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (mask & (std::uint64_t{1} << i)) {
            sel.push_back(points[i]);
        }
    }
    return affine_dim(sel);
}

}  // namespace

int affine_dim(const std::vector<Point>& points) {
    if (points.empty()) {
        return -1;
    }
    RatMatrix diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        diffs.push_back(difference(points[i], points[0]));
    }
    return matrix_rank(diffs);
}

FaceLattice::FaceLattice(int dim, std::vector<Face> faces)
    : dim_(dim), faces_(std::move(faces)) {
    std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
        return std::pair(a.dim, a.mask) < std::pair(b.dim, b.mask);
    });
}

std::vector<int> FaceLattice::faces_of_dim(int dim) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < faces_.size(); ++i) {
        if (faces_[i].dim == dim) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

FVector FaceLattice::f_vector() const {
    FVector f;
    f.entries.assign(static_cast<std::size_t>(dim_) + 1, Int(0));
    for (const Face& face : faces_) {
        if (face.dim >= 0) {
            f.entries[static_cast<std::size_t>(face.dim)] += 1;
        }
    }
    return f;
}

VPolytope VPolytope::from_vertices(std::vector<Point> vertices) {
    if (vertices.empty()) {
        throw std::invalid_argument("a polytope needs at least one vertex");
    }
    if (vertices.size() > 60) {
        throw std::invalid_argument("at most 60 vertices are supported");
    }
    const std::size_t n = vertices.size();
    const std::size_t ambient = vertices[0].size();
    for (const Point& v : vertices) {
        if (v.size() != ambient) {
            throw std::invalid_argument("vertices must share one ambient dimension");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (vertices[i] == vertices[j]) {
                throw std::invalid_argument("duplicate vertex in input");
            }
        }
    }

    VPolytope poly;
    poly.ambient_dim_ = static_cast<int>(ambient);
    poly.vertices_ = std::move(vertices);
    const std::vector<Point>& verts = poly.vertices_;

    // Greedy basis of the direction space of the affine hull.
    for (std::size_t i = 1; i < n; ++i) {
        RatMatrix candidate(poly.span_basis_.begin(), poly.span_basis_.end());
        candidate.push_back(difference(verts[i], verts[0]));
        if (matrix_rank(candidate) > static_cast<int>(poly.span_basis_.size())) {
            poly.span_basis_.push_back(difference(verts[i], verts[0]));
        }
    }
    const int r = static_cast<int>(poly.span_basis_.size());
    poly.dim_ = r;
    const std::uint64_t full_mask = (std::uint64_t{1} << n) - 1;

    if (r == 0) {
        std::vector<Face> faces;
        faces.push_back(Face{0, -1, {}});
        faces.push_back(Face{full_mask, 0, {}});
        poly.lattice_ = FaceLattice(0, std::move(faces));
        return poly;
    }

    // Span coordinates q[v][i] = <basis_i, v - v_0> turn every facet test into
    // r-dimensional arithmetic regardless of the ambient dimension.
    std::vector<std::vector<Rational>> q(n, std::vector<Rational>(r));
    for (std::size_t v = 0; v < n; ++v) {
        Point d = difference(verts[v], verts[0]);
        for (int i = 0; i < r; ++i) {
            q[v][static_cast<std::size_t>(i)] = dot(poly.span_basis_[static_cast<std::size_t>(i)], d);
        }
    }

    // Every facet hyperplane is spanned by some affinely independent r-subset
    // of its vertices, so brute force over r-subsets finds them all.
    std::map<std::uint64_t, Facet> facet_by_mask;
    std::vector<std::size_t> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    }
    while (true) {
        std::uint64_t subset_mask = 0;
        for (std::size_t v : idx) {
            subset_mask |= std::uint64_t{1} << v;
        }
        bool covered = false;
        for (const auto& [fmask, facet] : facet_by_mask) {
            if ((subset_mask & fmask) == subset_mask) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            // Normal n = sum_i c_i basis_i with <n, u> = 0 for every
            // difference u of the subset; one nullspace dimension means the
            // subset spans a hyperplane of the polytope's affine hull.
            RatMatrix constraints;
            constraints.reserve(static_cast<std::size_t>(r) - 1);
            for (int j = 1; j < r; ++j) {
                RatRow row(static_cast<std::size_t>(r));
                for (int i = 0; i < r; ++i) {
                    row[static_cast<std::size_t>(i)] =
                        q[idx[static_cast<std::size_t>(j)]][static_cast<std::size_t>(i)] -
                        q[idx[0]][static_cast<std::size_t>(i)];
                }
                constraints.push_back(std::move(row));
            }
            std::vector<RatRow> ns = nullspace(constraints, r);
            if (ns.size() == 1) {
                const RatRow& c = ns[0];
                const Rational base = dot(c, q[idx[0]]);
                bool any_less = false;
                bool any_greater = false;
                std::uint64_t mask = 0;
                for (std::size_t v = 0; v < n; ++v) {
                    const Rational s = dot(c, q[v]);
                    if (s == base) {
                        mask |= std::uint64_t{1} << v;
                    } else if (s < base) {
                        any_less = true;
                    } else {
                        any_greater = true;
                    }
                }
                if (!(any_less && any_greater) && !facet_by_mask.count(mask)) {
                    Point normal(ambient, Rational(0));
                    for (int i = 0; i < r; ++i) {
                        for (std::size_t k = 0; k < ambient; ++k) {
                            normal[k] += c[static_cast<std::size_t>(i)] *
                                         poly.span_basis_[static_cast<std::size_t>(i)][k];
                        }
                    }
                    canonicalize_direction(normal);
                    if (any_greater) {
                        for (Rational& entry : normal) {
                            entry = -entry;
                        }
                    }
                    Facet facet;
                    facet.offset = dot(normal, verts[idx[0]]);
                    facet.normal = std::move(normal);
                    facet.vertex_mask = mask;
                    facet_by_mask.emplace(mask, std::move(facet));
                }
            }
        }
        // Next r-subset in lexicographic order.
        int pos = r - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] ==
                               n - static_cast<std::size_t>(r - pos)) {
            --pos;
        }
        if (pos < 0) {
            break;
        }
        ++idx[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < r; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }

    poly.facets_.reserve(facet_by_mask.size());
    for (auto& [mask, facet] : facet_by_mask) {
        poly.facets_.push_back(std::move(facet));
    }

    // Every vertex must be extreme: the facets through it must intersect in
    // the vertex alone. A point on no facet lies in the interior.
    for (std::size_t v = 0; v < n; ++v) {
        const std::uint64_t bit = std::uint64_t{1} << v;
        std::uint64_t meet = full_mask;
        bool on_any = false;
        for (const Facet& f : poly.facets_) {
            if (f.vertex_mask & bit) {
                meet &= f.vertex_mask;
                on_any = true;
            }
        }
        if (!on_any || meet != bit) {
            throw std::invalid_argument("input point is not a vertex of the hull");
        }
    }

    // Faces are the intersections of facet vertex sets; close under meet.
    std::set<std::uint64_t> masks;
    masks.insert(full_mask);
    masks.insert(0);
    std::vector<std::uint64_t> work;
    for (const Facet& f : poly.facets_) {
        if (masks.insert(f.vertex_mask).second) {
            work.push_back(f.vertex_mask);
        }
    }
    while (!work.empty()) {
        const std::uint64_t m = work.back();
        work.pop_back();
        for (const Facet& f : poly.facets_) {
            const std::uint64_t t = m & f.vertex_mask;
            if (masks.insert(t).second) {
                work.push_back(t);
            }
        }
    }

    std::vector<Face> faces;
    faces.reserve(masks.size());
    for (std::uint64_t m : masks) {
        Face face;
        face.mask = m;
        face.dim = m == full_mask ? r : affine_dim_of_masked(verts, m);
        for (std::size_t fi = 0; fi < poly.facets_.size(); ++fi) {
            if ((m & poly.facets_[fi].vertex_mask) == m) {
                face.facet_indices.push_back(static_cast<int>(fi));
            }
        }
        faces.push_back(std::move(face));
    }
    poly.lattice_ = FaceLattice(r, std::move(faces));
    return poly;
}

bool VPolytope::is_simplicial() const {
    for (const Facet& f : facets_) {
        int count = 0;
        for (std::uint64_t m = f.vertex_mask; m; m &= m - 1) {
            ++count;
        }
        if (count != dim_) {
            return false;
        }
    }
    return true;
}

TangentCone VPolytope::tangent_cone(const Face& face) const {
    if (face.dim < 0) {
        throw std::invalid_argument("the empty face has no tangent cone");
    }
    if (face.dim == dim_) {
        throw std::invalid_argument("tangent cone is only defined for proper faces");
    }
    TangentCone cone;
    Point centroid(static_cast<std::size_t>(ambient_dim_), Rational(0));
    int count = 0;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (face.mask & (std::uint64_t{1} << v)) {
            for (std::size_t k = 0; k < centroid.size(); ++k) {
                centroid[k] += vertices_[v][k];
            }
            ++count;
        }
    }
    for (Rational& entry : centroid) {
        entry /= count;
    }
    cone.base_point = std::move(centroid);
    cone.halfspaces.reserve(face.facet_indices.size());
    for (int fi : face.facet_indices) {
        cone.halfspaces.push_back(facets_[static_cast<std::size_t>(fi)]);
    }
    return cone;
}

}  // namespace polyangle
