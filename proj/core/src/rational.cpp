#include "polyangle/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace polyangle {

Int binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        return Int(0);
    }
    if (k > n - k) {
        k = n - k;
    }
    Int result(1);
    for (int i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;  // exact at every step: C(n-k+i, i) is an integer
    }
    return result;
}

Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    // Division of two rationals always yields a canonical (reduced) value.
    return Rational(num) / Rational(den);
}

namespace {

Int parse_integer(std::string_view text, std::string_view original) {
    if (text.empty()) {
        throw std::invalid_argument("malformed rational: '" + std::string(original) + "'");
    }
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
        i = 1;
    }
    if (i == text.size()) {
        throw std::invalid_argument("malformed rational: '" + std::string(original) + "'");
    }
    for (std::size_t j = i; j < text.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
            throw std::invalid_argument("malformed rational: '" + std::string(original) + "'");
        }
    }
    // Drop leading zeros: the backend's string constructor would otherwise
    // read "0123" as octal.
    while (i + 1 < text.size() && text[i] == '0') {
        ++i;
    }
    std::string canonical;
    if (text[0] == '-') {
        canonical.push_back('-');
    }
    canonical.append(text.substr(i));
    return Int(canonical);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    const Int num = parse_integer(text.substr(0, slash), text);
    const Int den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) {
        throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    }
    return make_rational(num, den);
}

std::string format_rational(const Rational& value) {
    const Int num = numerator(value);
    const Int den = denominator(value);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

}  // namespace polyangle
