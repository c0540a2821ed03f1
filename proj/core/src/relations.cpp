#include "polyangle/relations.hpp"

#include "polyangle/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace polyangle {

namespace {

Rational sign(int j) {
    return j % 2 != 0 ? Rational(-1) : Rational(1);
}

/**
 * Accumulates a signed linear combination together with the magnitude of its
 * terms, which floors the sigma ratio's denominator.
 */
class ResidualAccumulator {
public:
    void add(const Scalar& s, const Rational& coefficient) {
        sum_ = sum_ + s.scaled(coefficient);
        abs_scale_ += std::abs(to_double(coefficient)) * std::abs(s.mean());
    }

    void add_exact(const Rational& value, const Rational& coefficient) {
        add(Scalar::exact(value), coefficient);
    }

    RelationResidual finish(std::string relation, std::optional<int> k) && {
        RelationResidual out;
        out.relation = std::move(relation);
        out.k = k;
        out.value = sum_;
        if (!sum_.is_exact()) {
            const double floor = 1e-12 * std::max(abs_scale_, 1.0);
            out.sigma_ratio =
                std::abs(sum_.mean()) / std::max(sum_.se(), floor);
        }
        return out;
    }

private:
    Scalar sum_ = Scalar::exact(Rational(0));
    double abs_scale_ = 0.0;
};

}  // namespace

bool RelationResidual::passes(double max_ratio) const {
    if (value.is_exact()) {
        return value.rational() == 0;
    }
    return *sigma_ratio <= max_ratio;
}

RelationResidual euler_residual(const FVector& f) {
    f.validate();
    ResidualAccumulator acc;
    for (int i = 0; i <= f.dim(); ++i) {
        acc.add_exact(Rational(f.at(i)), sign(i));
    }
    acc.add_exact(Rational(1), Rational(-1));
    return std::move(acc).finish("euler", std::nullopt);
}

RelationResidual dehn_sommerville_residual(const FVector& f, int k) {
    f.validate();
    const int d = f.dim();
    if (k < -1 || k > d - 2) {
        throw std::out_of_range("relation rows need -1 <= k <= d-2");
    }
    ResidualAccumulator acc;
    for (int j = k; j <= d - 1; ++j) {
        acc.add_exact(Rational(f.get(j)), sign(j) * Rational(binomial(j + 1, k + 1)));
    }
    acc.add_exact(Rational(f.get(k)), -sign(d - 1));
    return std::move(acc).finish("dehn_sommerville", k);
}

RelationResidual gram_residual(const AlphaVector& a) {
    ResidualAccumulator acc;
    for (int i = 0; i <= a.dim(); ++i) {
        acc.add(a.entries[static_cast<std::size_t>(i)], sign(i));
    }
    return std::move(acc).finish("gram", std::nullopt);
}

RelationResidual perles_residual(const AlphaVector& a, const FVector& f,
                                 int k) {
    f.validate();
    const int d = a.dim();
    if (f.dim() != d) {
        throw std::invalid_argument("angle and face vectors must share d");
    }
    if (k < 0 || k > d - 1) {
        throw std::out_of_range("relation rows need 0 <= k <= d-1");
    }
    ResidualAccumulator acc;
    for (int j = k; j <= d - 1; ++j) {
        acc.add(a.entries[static_cast<std::size_t>(j)],
                sign(j) * Rational(binomial(j + 1, k + 1)));
    }
    acc.add(a.entries[static_cast<std::size_t>(k)], -sign(d));
    acc.add_exact(Rational(f.at(k)), sign(d));
    return std::move(acc).finish("perles", k);
}

RelationResidual gamma_h_residual(const GammaVector& g, const HVector& h,
                                  int i) {
    const int d = g.dim();
    if (h.dim() != d) {
        throw std::invalid_argument("gamma and h vectors must share d");
    }
    if (i < 0 || i > d) {
        throw std::out_of_range("index needs 0 <= i <= d");
    }
    ResidualAccumulator acc;
    acc.add(g.entries[static_cast<std::size_t>(i)], Rational(1));
    acc.add(g.entries[static_cast<std::size_t>(d - i)], Rational(1));
    acc.add_exact(Rational(h.entries[static_cast<std::size_t>(i)]), Rational(-1));
    return std::move(acc).finish("gamma_h", i);
}

}  // namespace polyangle
