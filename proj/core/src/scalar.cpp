#include "polyangle/scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace polyangle {

const Rational& Scalar::rational() const {
    if (!is_exact()) {
        throw std::logic_error("Scalar::rational called on an estimate");
    }
    return std::get<Rational>(value_);
}

double Scalar::mean() const {
    if (is_exact()) {
        return to_double(std::get<Rational>(value_));
    }
    return std::get<Estimate>(value_).mean;
}

double Scalar::se() const {
    if (is_exact()) {
        return 0.0;
    }
    return std::get<Estimate>(value_).se;
}

Scalar Scalar::operator+(const Scalar& other) const {
    if (is_exact() && other.is_exact()) {
        return Scalar(rational() + other.rational());
    }
    return Scalar::estimate(mean() + other.mean(), std::hypot(se(), other.se()));
}

Scalar Scalar::operator-(const Scalar& other) const {
    if (is_exact() && other.is_exact()) {
        return Scalar(rational() - other.rational());
    }
    return Scalar::estimate(mean() - other.mean(), std::hypot(se(), other.se()));
}

Scalar Scalar::operator-() const {
    if (is_exact()) {
        return Scalar(-rational());
    }
    const auto& e = std::get<Estimate>(value_);
    return Scalar::estimate(-e.mean, e.se);
}

Scalar Scalar::scaled(const Rational& c) const {
    if (is_exact()) {
        return Scalar(c * rational());
    }
    const auto& e = std::get<Estimate>(value_);
    const double cd = to_double(c);
    return Scalar::estimate(cd * e.mean, std::abs(cd) * e.se);
}

}  // namespace polyangle
