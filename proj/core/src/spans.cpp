#include "polyangle/spans.hpp"

#include "polyangle/angles.hpp"
#include "polyangle/linalg.hpp"
#include "polyangle/transforms.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polyangle {

namespace {

void validate_rows(const VectorFamily& fam) {
    if (fam.rows.empty()) {
        throw std::invalid_argument("rank of an empty family is undefined");
    }
    for (const auto& row : fam.rows) {
        if (row.size() != fam.rows[0].size()) {
            throw std::invalid_argument("family rows must share one length");
        }
    }
}

/** Row of the requested kind from exact angle-face data. */
std::vector<Scalar> make_row(VectorKind kind, const AlphaVector& alpha,
                             const FVector& f) {
    std::vector<Scalar> row;
    switch (kind) {
        case VectorKind::Alpha:
            row = alpha.entries;
            break;
        case VectorKind::AlphaF: {
            row = alpha.entries;
            for (const Int& v : f.entries) {
                row.push_back(Scalar::exact(Rational(v)));
            }
            break;
        }
        case VectorKind::GammaH: {
            row = gamma_from_alpha(alpha).entries;
            for (const Int& v : h_from_f(f).entries) {
                row.push_back(Scalar::exact(Rational(v)));
            }
            break;
        }
        case VectorKind::GammaF: {
            row = gamma_from_alpha(alpha).entries;
            for (const Int& v : f.entries) {
                row.push_back(Scalar::exact(Rational(v)));
            }
            break;
        }
    }
    return row;
}

/** Per-member stream seed within a family run. */
std::uint64_t member_seed(std::uint64_t run_seed, std::size_t index) {
    return face_stream_seed(run_seed, static_cast<std::uint64_t>(index) + 1);
}

int expected_simplex_dim(int d) { return (d - 1) / 2; }

std::optional<double> combine_margin(std::optional<double> a, double b) {
    if (!a) {
        return b;
    }
    return std::min(*a, b);
}

}  // namespace

RankReport affine_rank_exact(const VectorFamily& fam) {
    validate_rows(fam);
    RatMatrix diffs;
    diffs.reserve(fam.rows.size() - 1);
    for (std::size_t i = 1; i < fam.rows.size(); ++i) {
        RatRow row(fam.rows[i].size());
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!fam.rows[i][j].is_exact() || !fam.rows[0][j].is_exact()) {
                throw std::invalid_argument(
                    "exact rank needs all-exact rows; use the numeric rank "
                    "for sampled data");
            }
            row[j] = fam.rows[i][j].rational() - fam.rows[0][j].rational();
        }
        diffs.push_back(std::move(row));
    }
    RankReport report;
    report.mode = ScalarMode::Exact;
    report.affine_dim = diffs.empty() ? 0 : matrix_rank(std::move(diffs));
    return report;
}

RankReport affine_rank_numeric(const VectorFamily& fam,
                               const ThresholdPolicy& policy) {
    validate_rows(fam);
    const std::size_t n = fam.rows.size();
    const std::size_t m = fam.rows[0].size();

    RankReport report;
    report.mode = ScalarMode::Estimate;
    if (n == 1) {
        return report;  // affine dimension 0, nothing to threshold
    }

    // First-row-subtracted matrix with propagated standard errors.
    std::vector<std::vector<Scalar>> diffs(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        diffs[i - 1].reserve(m);
        for (std::size_t j = 0; j < m; ++j) {
            diffs[i - 1].push_back(fam.rows[i][j] - fam.rows[0][j]);
        }
    }

    // Scale exact count columns (h/f entries, sigma = 0 throughout) down to
    // unit magnitude so face counts cannot drown angle entries. Columns that
    // carry sampling noise stay in natural units: shrinking them would shrink
    // their signal and their sigma together and push genuine directions that
    // straddle both blocks below a threshold set by the unshrunk noise.
    // Columns are never scaled up either: a column whose differences vanish
    // holds nothing worth amplifying.
    std::vector<double> scale(m, 1.0);
    for (std::size_t j = 0; j < m; ++j) {
        double mx = 0.0;
        bool exact_column = true;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            mx = std::max(mx, std::abs(diffs[i][j].mean()));
            exact_column = exact_column && diffs[i][j].se() == 0.0;
        }
        if (exact_column) {
            scale[j] = std::max(mx, 1.0);
        }
    }

    Eigen::MatrixXd mat(static_cast<Eigen::Index>(n - 1),
                        static_cast<Eigen::Index>(m));
    double sigma_sq_sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                diffs[i][j].mean() / scale[j];
            const double se = diffs[i][j].se() / scale[j];
            sigma_sq_sum += se * se;
        }
    }
    // RMS sigma over all cells: sqrt(sigma_sq_sum / cells) times sqrt(cells)
    // is the expected Frobenius norm of the noise matrix, which bounds every
    // noise singular value from above. The per-entry maximum would be far
    // more conservative on heterogeneous noise (a single noisy coordinate
    // dictating the cut line for directions it barely touches) and rejects
    // directions whose own projected noise certifies them decisively.
    const double rms_sigma =
        std::sqrt(sigma_sq_sum / (static_cast<double>(n - 1) * m));

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
    const Eigen::VectorXd& sv = svd.singularValues();
    report.singular_values.assign(sv.data(), sv.data() + sv.size());

    const double max_sv =
        report.singular_values.empty() ? 0.0 : report.singular_values.front();
    // The absolute floor keeps all-exact input (rms_sigma = 0) from being
    // ranked on floating point dust.
    const double threshold =
        std::max(policy.c * rms_sigma * std::sqrt(static_cast<double>(n)),
                 1e-10 * std::max(max_sv, 1.0));
    report.threshold = threshold;

    double smallest_kept = std::numeric_limits<double>::infinity();
    double largest_cut = 0.0;
    int rank = 0;
    for (double s : report.singular_values) {
        if (s > threshold) {
            ++rank;
            smallest_kept = std::min(smallest_kept, s);
        } else {
            largest_cut = std::max(largest_cut, s);
        }
    }
    report.affine_dim = rank;

    std::optional<double> margin;
    if (rank > 0) {
        margin = combine_margin(margin, smallest_kept / threshold);
    }
    if (rank < static_cast<int>(report.singular_values.size())) {
        margin = combine_margin(
            margin, largest_cut > 0.0
                        ? threshold / largest_cut
                        : std::numeric_limits<double>::infinity());
    }
    report.margin = margin;
    return report;
}

RealizedFamily realize_limiting_family(
    const std::vector<ConstructionExpr>& family, VectorKind kind,
    const SpanOptions& opts) {
    if (kind != VectorKind::Alpha && kind != VectorKind::GammaF) {
        throw std::invalid_argument(
            "realized families support Alpha or GammaF rows");
    }

    VectorFamily limit_rows{kind, ScalarMode::Exact, {}, {}};
    VectorFamily realized_rows{kind, ScalarMode::Estimate, {}, {}};
    RealizedFamily out;

    for (std::size_t index = 0; index < family.size(); ++index) {
        const ConstructionExpr& e = family[index];
        const AlphaFVector limit = exact_alpha_f(e);
        limit_rows.rows.push_back(make_row(kind, limit.alpha, limit.f));
        limit_rows.provenance.push_back(e.to_string());

        const std::uint64_t base_seed = member_seed(opts.seed, index);

        // Heights are chosen innermost-first. Nested limits do not commute
        // with a fixed height ratio (a flattening pyramid over a flattening
        // base converges to ratio-dependent angles), so each limiting height
        // is searched on its own, holding the already realized base fixed
        // and comparing the partial polytope against the exact limit of its
        // own subexpression. Candidate heights extend the most extreme
        // binary scale already frozen into the base: an outer limit only
        // emerges at scales beyond everything below it, so an absolute
        // ladder stalls once the base itself is thin (or tall). Tolerances
        // loosen outward, epsilon / 2^(L-k+1) for the k-th of L limits from
        // the inside: inner steps are low-dimensional and converge fast,
        // while outer steps inherit the frozen base's residual error.
        std::vector<ConstructionExpr> chain;
        for (ConstructionExpr cur = e; cur.op() != OpKind::Point;
             cur = cur.base()) {
            chain.push_back(cur);
        }
        int total_limits = 0;
        for (const ConstructionExpr& step : chain) {
            if (step.height().kind != HeightKind::Finite) {
                ++total_limits;
            }
        }

        ConstructionExpr realized = ConstructionExpr::point();
        bool all_chosen = true;
        int limit_index = 0;
        int scale_exp = 0;  // binary exponent of the most extreme height
        int max_doublings = 0;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            const Height& h = it->height();
            const bool is_prism = it->op() == OpKind::Prism;
            if (h.kind == HeightKind::Finite) {
                realized = is_prism
                               ? ConstructionExpr::prism(std::move(realized), h)
                               : ConstructionExpr::pyramid(std::move(realized),
                                                           h);
                continue;
            }
            ++limit_index;
            const AlphaFVector target = exact_alpha_f(*it);
            const double tol =
                opts.epsilon /
                std::pow(2.0, total_limits - limit_index + 1);
            bool chosen = false;
            int chosen_exp = scale_exp + 12;
            ConstructionExpr best = realized;
            for (int t = 1; t <= 12 && !chosen; ++t) {
                const int exp = scale_exp + t;
                const Height cand =
                    h.kind == HeightKind::Zero
                        ? Height::finite(make_rational(1, Int(1) << exp))
                        : Height::finite(Rational(Int(1) << exp));
                ConstructionExpr c =
                    is_prism ? ConstructionExpr::prism(realized, cand)
                             : ConstructionExpr::pyramid(realized, cand);
                const VPolytope p = build_geometric(c);
                best = c;
                max_doublings = std::max(max_doublings, exp);
                if (!(p.f_vector() == target.f)) {
                    continue;  // face counts must survive the realization
                }
                EstimateOptions est;
                est.samples_per_face = opts.samples_per_face;
                est.threads = opts.threads;
                est.seed = face_stream_seed(
                    base_seed, (static_cast<std::uint64_t>(limit_index) << 8) |
                                   static_cast<std::uint64_t>(t));
                const AlphaVector alpha = alpha_vector_estimate(p, est);
                bool close = true;
                for (std::size_t j = 0; j < alpha.entries.size(); ++j) {
                    const double want =
                        to_double(target.alpha.entries[j].rational());
                    const Scalar& got = alpha.entries[j];
                    if (std::abs(got.mean() - want) >
                        tol + 4.0 * got.se()) {
                        close = false;
                        break;
                    }
                }
                if (close) {
                    realized = std::move(c);
                    chosen = true;
                    chosen_exp = exp;
                }
            }
            scale_exp = chosen_exp;
            if (!chosen) {
                realized = best;  // keep the most extreme height tried
                all_chosen = false;
            }
        }

        // Certify the fully realized polytope against the full limit.
        RealizedMember member{e, max_doublings, {}, {}, false};
        const VPolytope p = build_geometric(realized);
        EstimateOptions est;
        est.samples_per_face = opts.samples_per_face;
        est.threads = opts.threads;
        est.seed = base_seed;
        member.realized = realized;
        member.alpha = alpha_vector_estimate(p, est);
        member.f = p.f_vector();
        bool close = member.f == limit.f;
        for (std::size_t j = 0; close && j < member.alpha.entries.size();
             ++j) {
            const double want = to_double(limit.alpha.entries[j].rational());
            const Scalar& got = member.alpha.entries[j];
            if (std::abs(got.mean() - want) > opts.epsilon + 4.0 * got.se()) {
                close = false;
            }
        }
        member.accepted = all_chosen && close;
        realized_rows.rows.push_back(make_row(kind, member.alpha, member.f));
        realized_rows.provenance.push_back(member.realized.to_string());
        out.members.push_back(std::move(member));
    }

    out.exact_dim = affine_rank_exact(limit_rows).affine_dim;
    out.report = affine_rank_numeric(realized_rows, opts.policy);
    out.succeeded = out.report.affine_dim == out.exact_dim;
    for (const RealizedMember& member : out.members) {
        out.succeeded = out.succeeded && member.accepted;
    }
    return out;
}

SpanVerdict verify_simplex_span(int d, ScalarMode mode,
                                const SpanOptions& opts) {
    if (d < 1) {
        throw std::invalid_argument("the simplex span needs d >= 1");
    }
    SpanVerdict v;
    v.theorem = "5";
    v.d = d;
    v.expected_dim = expected_simplex_dim(d);
    v.mode = mode;

    const std::vector<ConstructionExpr> family = simplex_span_family(d);
    for (const ConstructionExpr& e : family) {
        v.family.push_back(e.to_string());
    }

    if (mode == ScalarMode::Exact) {
        VectorFamily fam{VectorKind::Alpha, ScalarMode::Exact, {}, v.family};
        bool symmetric = true;
        for (const ConstructionExpr& e : family) {
            const AlphaFVector af = exact_alpha_f(e);
            fam.rows.push_back(make_row(VectorKind::Alpha, af.alpha, af.f));
            // Upper bound: every member satisfies the gamma symmetry, so the
            // span can never exceed the expected dimension.
            const GammaVector g = gamma_from_alpha(af.alpha);
            for (int i = 0; i <= d; ++i) {
                const Rational sum =
                    g.entries[static_cast<std::size_t>(i)].rational() +
                    g.entries[static_cast<std::size_t>(d - i)].rational();
                if (sum != 1) {
                    symmetric = false;
                }
            }
        }
        if (!symmetric) {
            v.notes.push_back("gamma symmetry violated by a family member");
        }
        v.computed_dim = affine_rank_exact(fam).affine_dim;
        v.matched = symmetric && v.computed_dim == v.expected_dim;
        return v;
    }

    const RealizedFamily realized =
        realize_limiting_family(family, VectorKind::Alpha, opts);
    v.computed_dim = realized.report.affine_dim;
    v.margin = realized.report.margin;
    v.family.clear();
    for (const RealizedMember& m : realized.members) {
        v.family.push_back(m.realized.to_string());
        if (!m.accepted) {
            v.notes.push_back("height search budget exhausted for " +
                              m.realized.to_string());
        }
    }
    v.matched = realized.succeeded && v.computed_dim == v.expected_dim &&
                v.margin && *v.margin > 1.0;
    if (v.computed_dim < v.expected_dim) {
        v.notes.push_back(
            "numeric rank is a lower bound at this sampling power; "
            "increase --samples or tighten --epsilon");
    }
    return v;
}

SpanVerdict verify_simplicial_span(int d, const SpanOptions& opts) {
    if (d < 2) {
        throw std::invalid_argument("the simplicial span needs d >= 2");
    }
    SpanVerdict v;
    v.theorem = "6";
    v.d = d;
    v.expected_dim = d - 1;

    VectorFamily fam{VectorKind::GammaH, ScalarMode::Estimate, {}, {}};
    bool all_exact = true;

    for (const ConstructionExpr& e : simplex_span_family(d)) {
        const AlphaFVector af = exact_alpha_f(e);
        fam.rows.push_back(make_row(VectorKind::GammaH, af.alpha, af.f));
        fam.provenance.push_back(e.to_string());
    }

    // Simplicial non-simplices with explicit coordinates.
    std::vector<std::pair<std::string, VPolytope>> extra;
    if (d == 2) {
        extra.emplace_back("cyclic(2,4)", cyclic_polytope(2, 4));
        v.notes.push_back(
            "d = 2 is an edge case: every polygon is simplicial, rows are "
            "exact");
    } else if (d == 3) {
        extra.emplace_back("octahedron", octahedron());
    } else {
        for (int n = d + 2; n <= d + 1 + d / 2; ++n) {
            extra.emplace_back(
                "cyclic(" + std::to_string(d) + "," + std::to_string(n) + ")",
                cyclic_polytope(d, n));
        }
    }

    for (std::size_t i = 0; i < extra.size(); ++i) {
        const VPolytope& p = extra[i].second;
        if (!p.is_simplicial()) {
            throw std::logic_error(extra[i].first + " is not simplicial");
        }
        EstimateOptions est;
        est.samples_per_face = opts.samples_per_face;
        est.threads = opts.threads;
        est.seed = member_seed(opts.seed, fam.rows.size());
        const AlphaVector alpha = alpha_vector_estimate(p, est);
        fam.rows.push_back(make_row(VectorKind::GammaH, alpha, p.f_vector()));
        fam.provenance.push_back(extra[i].first);
        all_exact = all_exact && alpha.all_exact();
    }

    v.family = fam.provenance;
    if (all_exact) {
        fam.mode = ScalarMode::Exact;
        v.mode = ScalarMode::Exact;
        v.computed_dim = affine_rank_exact(fam).affine_dim;
        v.matched = v.computed_dim == v.expected_dim;
        return v;
    }
    v.mode = ScalarMode::Estimate;
    const RankReport report = affine_rank_numeric(fam, opts.policy);
    v.computed_dim = report.affine_dim;
    v.margin = report.margin;
    v.matched = v.computed_dim == v.expected_dim && v.margin && *v.margin > 1.0;
    if (v.computed_dim < v.expected_dim) {
        v.notes.push_back(
            "numeric rank is a lower bound at this sampling power; "
            "increase --samples or tighten --epsilon");
    }
    return v;
}

SpanVerdict verify_general_span(int d, ScalarMode mode,
                                const SpanOptions& opts) {
    if (d < 2) {
        throw std::invalid_argument("the general span needs d >= 2");
    }
    SpanVerdict v;
    v.theorem = "8";
    v.d = d;
    v.expected_dim = 2 * d - 3;
    v.mode = mode;

    const std::vector<ConstructionExpr> family = general_span_family(d);
    for (const ConstructionExpr& e : family) {
        v.family.push_back(e.to_string());
    }

    if (mode == ScalarMode::Exact) {
        VectorFamily fam{VectorKind::GammaF, ScalarMode::Exact, {}, v.family};
        for (const ConstructionExpr& e : family) {
            const AlphaFVector af = exact_alpha_f(e);
            fam.rows.push_back(make_row(VectorKind::GammaF, af.alpha, af.f));
        }
        v.computed_dim = affine_rank_exact(fam).affine_dim;
        v.matched = v.computed_dim == v.expected_dim;
        return v;
    }

    const RealizedFamily realized =
        realize_limiting_family(family, VectorKind::GammaF, opts);
    v.computed_dim = realized.report.affine_dim;
    v.margin = realized.report.margin;
    v.family.clear();
    for (const RealizedMember& m : realized.members) {
        v.family.push_back(m.realized.to_string());
        if (!m.accepted) {
            v.notes.push_back("height search budget exhausted for " +
                              m.realized.to_string());
        }
    }
    v.matched = realized.succeeded && v.computed_dim == v.expected_dim &&
                v.margin && *v.margin > 1.0;
    if (v.computed_dim < v.expected_dim) {
        v.notes.push_back(
            "numeric rank is a lower bound at this sampling power; "
            "increase --samples or tighten --epsilon");
    }
    return v;
}

PinfRankCheck pinf_rank_preservation(const std::vector<GammaVector>& rows) {
    RatMatrix before;
    RatMatrix after;
    for (const GammaVector& g : rows) {
        RatRow row;
        row.reserve(g.entries.size());
        for (const Scalar& s : g.entries) {
            row.push_back(s.rational());
        }
        before.push_back(std::move(row));
        const GammaVector mapped = pinf_gamma(g);
        RatRow mapped_row;
        mapped_row.reserve(mapped.entries.size());
        for (const Scalar& s : mapped.entries) {
            mapped_row.push_back(s.rational());
        }
        after.push_back(std::move(mapped_row));
    }
    PinfRankCheck check;
    check.rank_before = matrix_rank(std::move(before));
    check.rank_after = matrix_rank(std::move(after));
    check.preserved = check.rank_before == check.rank_after;
    return check;
}

PrismPyramidSumCheck prism_pyramid_sum_check(const FVector& f) {
    f.validate();
    const auto alternating_sum_past_lead = [](const ExtendedFVector& v) {
        Int sum(0);
        for (std::size_t i = 1; i < v.entries.size(); ++i) {
            if (i % 2 == 1) {
                sum += v.entries[i];
            } else {
                sum -= v.entries[i];
            }
        }
        return sum;
    };
    PrismPyramidSumCheck check;
    check.base_sum =
        alternating_sum_past_lead(pyramid_extended_f_inverse(extended(f)));
    check.prism_sum = alternating_sum_past_lead(
        pyramid_extended_f_inverse(extended(prism_f(f))));
    check.holds = check.prism_sum == check.base_sum + 1;
    return check;
}

}  // namespace polyangle
