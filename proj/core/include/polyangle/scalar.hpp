#pragma once

#include "polyangle/rational.hpp"

#include <variant>

namespace polyangle {

/** A Monte Carlo value: sample mean and its standard error. */
struct Estimate {
    double mean = 0.0;
    double se = 0.0;

    bool operator==(const Estimate&) const = default;
};

/**
 * A quantity that is either an exact rational or a (mean, standard error)
 * estimate. Linear arithmetic keeps exactness when every operand is exact
 * and otherwise propagates standard errors under an independence assumption:
 * se(sum c_j x_j) = sqrt(sum c_j^2 se_j^2).
 */
class Scalar {
public:
    Scalar() : value_(Rational(0)) {}
    Scalar(Rational v) : value_(std::move(v)) {}
    Scalar(Estimate e) : value_(e) {}

    static Scalar exact(Rational v) { return Scalar(std::move(v)); }
    static Scalar estimate(double mean, double se) { return Scalar(Estimate{mean, se}); }

    bool is_exact() const { return std::holds_alternative<Rational>(value_); }

    /** Exact value; throws std::logic_error when this is an estimate. */
    const Rational& rational() const;

    double mean() const;
    double se() const;

    Scalar operator+(const Scalar& other) const;
    Scalar operator-(const Scalar& other) const;
    Scalar operator-() const;

    /** c * this with an exact rational coefficient. */
    Scalar scaled(const Rational& c) const;

    bool operator==(const Scalar&) const = default;

private:
    std::variant<Rational, Estimate> value_;
};

}  // namespace polyangle
