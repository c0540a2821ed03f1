#include "polyangle/angles.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace polyangle {

namespace {

std::uint64_t splitmix_step(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

/**
 * Gaussian variates from an explicit Box-Muller transform over mt19937_64.
 * std::normal_distribution is implementation-defined, which would make
 * results non-reproducible across standard libraries.
 */
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(theta);
        have_spare_ = true;
        return radius * std::cos(theta);
    }

private:
    /** Uniform in (0, 1]: 53 random bits, never 0, so log() is safe. */
    double uniform01() {
        return static_cast<double>((rng_() >> 11) + 1) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

std::vector<double> to_double_vector(const Point& p) {
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = to_double(p[i]);
    }
    return out;
}

/** Unit vector of a facet normal, in doubles. */
std::vector<double> unit_normal(const Facet& f) {
    std::vector<double> n = to_double_vector(f.normal);
    double norm2 = 0.0;
    for (double x : n) {
        norm2 += x * x;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : n) {
        x *= inv;
    }
    return n;
}

/**
 * Orthonormal basis (doubles) of the polytope's direction space by modified
 * Gram-Schmidt; empty when the polytope is full-dimensional, in which case
 * raw gaussian vectors already sample its span.
 */
std::vector<std::vector<double>> orthonormal_span(const VPolytope& p) {
    if (p.dim() == p.ambient_dim()) {
        return {};
    }
    std::vector<std::vector<double>> basis;
    basis.reserve(p.span_basis().size());
    for (const Point& b : p.span_basis()) {
        std::vector<double> v = to_double_vector(b);
        for (const std::vector<double>& e : basis) {
            double proj = 0.0;
            for (std::size_t k = 0; k < v.size(); ++k) {
                proj += v[k] * e[k];
            }
            for (std::size_t k = 0; k < v.size(); ++k) {
                v[k] -= proj * e[k];
            }
        }
        double norm2 = 0.0;
        for (double x : v) {
            norm2 += x * x;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& x : v) {
            x *= inv;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/** Wedge angle fraction of a codimension-2 face from its two facet normals. */
double wedge_fraction(const Facet& a, const Facet& b) {
    const std::vector<double> na = unit_normal(a);
    const std::vector<double> nb = unit_normal(b);
    double cosine = 0.0;
    for (std::size_t k = 0; k < na.size(); ++k) {
        cosine += na[k] * nb[k];
    }
    cosine = std::min(1.0, std::max(-1.0, cosine));
    return (std::numbers::pi - std::acos(cosine)) /
           (2.0 * std::numbers::pi);
}

/**
 * Normalized solid angle at a vertex of a 3-polytope: the area of the
 * spherical polygon cut by the tangent cone, by the excess formula
 * sum of edge dihedral angles minus (k-2)pi over 4pi.
 */
double vertex_excess_fraction(const VPolytope& p, const Face& vertex) {
    double sum = 0.0;
    int incident_edges = 0;
    for (const Face& edge : p.lattice().faces()) {
        if (edge.dim != 1 || (edge.mask & vertex.mask) != vertex.mask) {
            continue;
        }
        const Facet& a = p.facets()[static_cast<std::size_t>(edge.facet_indices.at(0))];
        const Facet& b = p.facets()[static_cast<std::size_t>(edge.facet_indices.at(1))];
        // Interior dihedral angle along this edge.
        sum += 2.0 * std::numbers::pi * wedge_fraction(a, b);
        ++incident_edges;
    }
    const double excess =
        sum - (incident_edges - 2) * std::numbers::pi;
    return excess / (4.0 * std::numbers::pi);
}

}  // namespace

std::uint64_t face_stream_seed(std::uint64_t run_seed, std::uint64_t face_mask) {
    const std::uint64_t golden = 0x9E3779B97F4A7C15ull;
    return splitmix_step(splitmix_step(run_seed + golden) ^
                         splitmix_step(face_mask + 2 * golden));
}

AngleEstimate interior_angle_mc(const VPolytope& p, const Face& face,
                                long samples, std::uint64_t stream_seed) {
    if (samples < 1) {
        throw std::invalid_argument("sample count must be at least 1");
    }
    if (face.dim == p.dim()) {
        // The whole polytope: the angle is 1 with no sampling needed.
        AngleEstimate whole;
        whole.mean = 1.0;
        whole.exact = Rational(1);
        whole.closed_form = true;
        return whole;
    }
    const TangentCone cone = p.tangent_cone(face);
    std::vector<std::vector<double>> normals;
    normals.reserve(cone.halfspaces.size());
    for (const Facet& f : cone.halfspaces) {
        normals.push_back(to_double_vector(f.normal));
    }
    const std::vector<std::vector<double>> basis = orthonormal_span(p);
    const std::size_t ambient = static_cast<std::size_t>(p.ambient_dim());
    const std::size_t r = static_cast<std::size_t>(p.dim());

    GaussianStream gaussians(stream_seed);
    std::vector<double> direction(ambient);
    long inside = 0;
    for (long s = 0; s < samples; ++s) {
        if (basis.empty()) {
            for (std::size_t k = 0; k < ambient; ++k) {
                direction[k] = gaussians.next();
            }
        } else {
            std::fill(direction.begin(), direction.end(), 0.0);
            for (std::size_t i = 0; i < r; ++i) {
                const double coefficient = gaussians.next();
                for (std::size_t k = 0; k < ambient; ++k) {
                    direction[k] += coefficient * basis[i][k];
                }
            }
        }
        bool in_cone = true;
        for (const std::vector<double>& n : normals) {
            double dot = 0.0;
            for (std::size_t k = 0; k < ambient; ++k) {
                dot += n[k] * direction[k];
            }
            if (dot > 0.0) {
                in_cone = false;
                break;
            }
        }
        if (in_cone) {
            ++inside;
        }
    }

    AngleEstimate est;
    est.n_samples = samples;
    est.seed = stream_seed;
    est.mean = static_cast<double>(inside) / static_cast<double>(samples);
    est.std_error =
        std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(samples));
    return est;
}

std::optional<AngleEstimate> interior_angle_closed_form(
    const VPolytope& p, const Face& face, const EstimateOptions& opts) {
    AngleEstimate est;
    est.closed_form = true;
    if (face.dim == p.dim()) {
        est.mean = 1.0;
        est.exact = Rational(1);
        return est;
    }
    if (face.dim == p.dim() - 1) {
        est.mean = 0.5;
        est.exact = make_rational(1, 2);
        return est;
    }
    if (!opts.use_closed_forms) {
        return std::nullopt;
    }
    if (face.dim == p.dim() - 2 && face.facet_indices.size() == 2) {
        est.mean = wedge_fraction(
            p.facets()[static_cast<std::size_t>(face.facet_indices[0])],
            p.facets()[static_cast<std::size_t>(face.facet_indices[1])]);
        return est;
    }
    if (opts.closed_form_3d_vertices && p.dim() == 3 && face.dim == 0) {
        est.mean = vertex_excess_fraction(p, face);
        return est;
    }
    return std::nullopt;
}

AlphaVector alpha_vector_estimate(const VPolytope& p,
                                  const EstimateOptions& opts) {
    const int d = p.dim();
    const FVector f = p.f_vector();
    if (d == 0) {
        return exact_alpha({Rational(1)});
    }
    if (d == 1) {
        return exact_alpha({Rational(1), Rational(1)});
    }
    if (d == 2) {
        // Vertex angles of a polygon sum to (n-2)pi; edges contribute 1/2.
        const Rational n(f.at(0));
        return exact_alpha({(n - 2) / 2, n / 2, Rational(1)});
    }

    AlphaVector alpha;
    alpha.entries.assign(static_cast<std::size_t>(d) + 1, Scalar::exact(Rational(0)));
    alpha.entries[static_cast<std::size_t>(d)] = Scalar::exact(Rational(1));
    alpha.entries[static_cast<std::size_t>(d - 1)] =
        Scalar::exact(Rational(f.at(d - 1)) / 2);

    // Pass 1: closed forms where allowed; collect the faces left to sample.
    const std::vector<Face>& faces = p.lattice().faces();
    std::vector<Scalar> per_face(faces.size(), Scalar::exact(Rational(0)));
    std::vector<std::size_t> mc_jobs;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const Face& face = faces[i];
        if (face.dim < 0 || face.dim > d - 2) {
            continue;
        }
        if (auto closed = interior_angle_closed_form(p, face, opts)) {
            per_face[i] = closed->exact
                              ? Scalar::exact(*closed->exact)
                              : Scalar::estimate(closed->mean, 0.0);
        } else {
            mc_jobs.push_back(i);
        }
    }

    // Pass 2: sample, one whole face per job so that neither the thread
    // count nor scheduling can change any stream.
    const int threads =
        std::max(1, std::min(opts.threads, static_cast<int>(mc_jobs.size())));
    auto run_job = [&](std::size_t face_index) {
        const Face& face = faces[face_index];
        const AngleEstimate est =
            interior_angle_mc(p, face, opts.samples_per_face,
                              face_stream_seed(opts.seed, face.mask));
        per_face[face_index] = Scalar::estimate(est.mean, est.std_error);
    };
    if (threads <= 1) {
        for (std::size_t job : mc_jobs) {
            run_job(job);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&]() {
                while (true) {
                    const std::size_t k = next.fetch_add(1);
                    if (k >= mc_jobs.size()) {
                        return;
                    }
                    run_job(mc_jobs[k]);
                }
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    // Serial reduction in lattice order: identical for any thread count.
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const Face& face = faces[i];
        if (face.dim < 0 || face.dim > d - 2) {
            continue;
        }
        const std::size_t g = static_cast<std::size_t>(face.dim);
        alpha.entries[g] = alpha.entries[g] + per_face[i];
    }
    return alpha;
}

}  // namespace polyangle
