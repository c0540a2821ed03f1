#include "doctest.h"

#include "polyangle/linalg.hpp"
#include "polyangle/rational.hpp"
#include "polyangle/scalar.hpp"
#include "polyangle/transforms.hpp"
#include "polyangle/vectors.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace polyangle;

namespace {

Rational rat(long num, long den = 1) { return make_rational(Int(num), Int(den)); }

AlphaVector alpha_of(std::vector<Rational> v) { return exact_alpha(std::move(v)); }

GammaVector gamma_of(std::vector<Rational> v) { return exact_gamma(std::move(v)); }

std::vector<Rational> rationals_of(const GammaVector& g) {
    std::vector<Rational> out;
    for (const Scalar& s : g.entries) out.push_back(s.rational());
    return out;
}

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 12);
    return rat(num(rng), den(rng));
}

}  // namespace

TEST_CASE("binomial coefficients") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(10, 5) == 252);
    CHECK(binomial(6, 0) == 1);
    CHECK(binomial(6, 6) == 1);
    CHECK(binomial(4, 5) == 0);
    CHECK(binomial(4, -1) == 0);
    // A value large enough to overflow 32-bit arithmetic.
    CHECK(binomial(60, 30) == Int("118264581564861424"));
    // Pascal recurrence on a grid.
    for (int n = 1; n <= 12; ++n) {
        for (int k = 1; k < n; ++k) {
            CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }
}

TEST_CASE("rational parse and format round trips") {
    CHECK(format_rational(parse_rational("3/4")) == "3/4");
    CHECK(format_rational(parse_rational("-7/3")) == "-7/3");
    CHECK(format_rational(parse_rational("0")) == "0");
    CHECK(format_rational(parse_rational("5")) == "5");
    // Canonicalization: common factors and sign placement.
    CHECK(format_rational(parse_rational("2/4")) == "1/2");
    CHECK(format_rational(parse_rational("6/3")) == "2");
    CHECK(parse_rational("-4/8") == rat(-1, 2));
    CHECK(parse_rational("000123") == rat(123));
    // A numerator beyond 64 bits must survive a round trip bit-exactly.
    const std::string big = "123456789012345678901234567890123456789/7";
    CHECK(format_rational(parse_rational(big)) == big);

    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("/3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("3 /4"), std::invalid_argument);
}

TEST_CASE("to_double") {
    CHECK(to_double(rat(1, 2)) == doctest::Approx(0.5));
    CHECK(to_double(rat(-7, 3)) == doctest::Approx(-7.0 / 3.0));
    CHECK(to_double(rat(0)) == 0.0);
}

TEST_CASE("exact matrix rank") {
    RatMatrix identity3 = {{rat(1), rat(0), rat(0)},
                           {rat(0), rat(1), rat(0)},
                           {rat(0), rat(0), rat(1)}};
    CHECK(matrix_rank(identity3) == 3);

    RatMatrix zeros = {{rat(0), rat(0)}, {rat(0), rat(0)}};
    CHECK(matrix_rank(zeros) == 0);

    // Second row is a multiple of the first; third is independent.
    RatMatrix m = {{rat(1, 2), rat(1), rat(3)},
                   {rat(1), rat(2), rat(6)},
                   {rat(0), rat(1), rat(0)}};
    CHECK(matrix_rank(m) == 2);

    // Rank is invariant under row swaps.
    RatMatrix swapped = {m[2], m[0], m[1]};
    CHECK(matrix_rank(swapped) == 2);

    CHECK(matrix_rank(RatMatrix{}) == 0);
    CHECK(matrix_rank(RatMatrix{{rat(0), rat(0), rat(7)}}) == 1);
}

TEST_CASE("nullspace vectors annihilate the matrix") {
    std::mt19937_64 rng(20240816);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> size(1, 5);
        const int rows = size(rng);
        const int cols = size(rng);
        RatMatrix m(rows, RatRow(cols));
        for (auto& row : m) {
            for (auto& e : row) e = random_rational(rng);
        }
        const int rank = matrix_rank(m);
        const auto basis = nullspace(m, cols);
        CHECK(static_cast<int>(basis.size()) == cols - rank);
        for (const auto& v : basis) {
            REQUIRE(static_cast<int>(v.size()) == cols);
            for (const auto& row : m) {
                Rational dot(0);
                for (int j = 0; j < cols; ++j) dot += row[j] * v[j];
                CHECK(dot == 0);
            }
        }
        // The basis itself must be independent.
        if (!basis.empty()) {
            CHECK(matrix_rank(basis) == static_cast<int>(basis.size()));
        }
    }
}

TEST_CASE("scalar arithmetic keeps exactness and propagates error") {
    const Scalar a = Scalar::exact(rat(1, 3));
    const Scalar b = Scalar::exact(rat(1, 6));
    const Scalar sum = a + b;
    REQUIRE(sum.is_exact());
    CHECK(sum.rational() == rat(1, 2));
    CHECK((a - b).rational() == rat(1, 6));
    CHECK((-a).rational() == rat(-1, 3));
    CHECK(a.scaled(rat(3, 2)).rational() == rat(1, 2));
    CHECK(a.mean() == doctest::Approx(1.0 / 3.0));
    CHECK(a.se() == 0.0);

    const Scalar x = Scalar::estimate(1.0, 0.3);
    const Scalar y = Scalar::estimate(2.0, 0.4);
    const Scalar diff = x - y;
    CHECK_FALSE(diff.is_exact());
    CHECK(diff.mean() == doctest::Approx(-1.0));
    CHECK(diff.se() == doctest::Approx(0.5));  // sqrt(0.09 + 0.16)
    CHECK((x + y).se() == doctest::Approx(0.5));
    CHECK((-x).mean() == doctest::Approx(-1.0));
    CHECK((-x).se() == doctest::Approx(0.3));
    CHECK(x.scaled(rat(-3)).mean() == doctest::Approx(-3.0));
    CHECK(x.scaled(rat(-3)).se() == doctest::Approx(0.9));

    // Mixing exact and estimate demotes to estimate but adds no error.
    const Scalar mixed = a + x;
    CHECK_FALSE(mixed.is_exact());
    CHECK(mixed.mean() == doctest::Approx(1.0 / 3.0 + 1.0));
    CHECK(mixed.se() == doctest::Approx(0.3));

    CHECK_THROWS_AS(x.rational(), std::logic_error);
}

TEST_CASE("h_from_f on known polytopes") {
    CHECK(h_from_f(make_f({4, 6, 4, 1})) == make_h({1, 1, 1, 1}));
    CHECK(h_from_f(make_f({1})) == make_h({1}));
    CHECK(h_from_f(make_f({6, 12, 8, 1})) == make_h({1, 3, 3, 1}));
    // Non-simplicial input may go negative; the transform is still defined.
    CHECK(h_from_f(make_f({8, 12, 6, 1})) == make_h({1, 5, -1, 1}));
    CHECK(h_from_f(make_f({2, 1})) == make_h({1, 1}));
}

TEST_CASE("f_from_h inverts h_from_f") {
    CHECK(f_from_h(make_h({1, 1, 1, 1})) == make_f({4, 6, 4, 1}));
    CHECK(f_from_h(make_h({1, 5, -1, 1})) == make_f({8, 12, 6, 1}));

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> entry(0, 500);
    std::uniform_int_distribution<int> dims(0, 10);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = dims(rng);
        std::vector<long> vals;
        for (int i = 0; i < d; ++i) vals.push_back(entry(rng));
        vals.push_back(1);
        const FVector f = make_f(vals);
        CHECK(f_from_h(h_from_f(f)) == f);
    }
}

TEST_CASE("gamma_from_alpha on known angle sums") {
    CHECK(rationals_of(gamma_from_alpha(alpha_of({rat(1, 2), rat(3, 2), rat(1)}))) ==
          std::vector<Rational>{rat(0), rat(1, 2), rat(1)});
    CHECK(rationals_of(gamma_from_alpha(alpha_of({rat(1), rat(2), rat(1)}))) ==
          std::vector<Rational>{rat(0), rat(1), rat(1)});
    CHECK(rationals_of(gamma_from_alpha(alpha_of({rat(1), rat(1)}))) ==
          std::vector<Rational>{rat(0), rat(1)});
}

TEST_CASE("gamma head and tail entries") {
    // gamma_0 = 0 and gamma_1 = alpha_0 for any input; gamma_d = 1 whenever
    // the alternating angle sum closes up.
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<int> dims(1, 9);
        const int d = dims(rng);
        std::vector<Rational> vals;
        for (int i = 0; i < d; ++i) vals.push_back(random_rational(rng));
        vals.push_back(rat(1));
        const auto g = gamma_from_alpha(alpha_of(vals));
        REQUIRE(g.dim() == d);
        CHECK(g.entries[0].rational() == 0);
        CHECK(g.entries[1].rational() == vals[0]);
    }
    // Closed alternating sum: alpha = (1/2, 3/2, 2, 1) has 1/2-3/2+2-1 = 0.
    const auto g = gamma_from_alpha(alpha_of({rat(1, 2), rat(3, 2), rat(2), rat(1)}));
    CHECK(g.entries.back().rational() == 1);
}

TEST_CASE("alpha_from_gamma inverts gamma_from_alpha") {
    CHECK(alpha_from_gamma(gamma_of({rat(0), rat(1, 2), rat(1, 2), rat(1)})) ==
          alpha_of({rat(1, 2), rat(3, 2), rat(2), rat(1)}));

    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> dims(1, 8);
        const int d = dims(rng);
        std::vector<Rational> vals;
        for (int i = 0; i < d; ++i) vals.push_back(random_rational(rng));
        vals.push_back(rat(1));
        const AlphaVector a = alpha_of(vals);
        CHECK(alpha_from_gamma(gamma_from_alpha(a)) == a);

        std::vector<Rational> gvals{rat(0)};
        for (int i = 0; i < d - 1; ++i) gvals.push_back(random_rational(rng));
        gvals.push_back(rat(1));
        const GammaVector g = gamma_of(gvals);
        CHECK(gamma_from_alpha(alpha_from_gamma(g)) == g);
    }
}

TEST_CASE("round trip through gamma preserves means and never shrinks error") {
    AlphaVector a;
    a.entries = {Scalar::estimate(0.1755, 0.004), Scalar::estimate(1.1755, 0.006),
                 Scalar::exact(rat(2)), Scalar::exact(rat(1))};
    const auto back = alpha_from_gamma(gamma_from_alpha(a));
    REQUIRE(back.dim() == a.dim());
    for (int i = 0; i <= a.dim(); ++i) {
        CHECK(back.entries[i].mean() ==
              doctest::Approx(a.entries[i].mean()).epsilon(1e-12));
        CHECK(back.entries[i].se() >= a.entries[i].se() - 1e-15);
    }
    // The top entry is restored as the exact constant 1.
    CHECK(back.entries.back().is_exact());
}

TEST_CASE("pinf_gamma averaging step") {
    CHECK(rationals_of(pinf_gamma(gamma_of({rat(0), rat(1)}))) ==
          std::vector<Rational>{rat(0), rat(1, 2), rat(1)});
    CHECK(rationals_of(pinf_gamma(gamma_of({rat(0), rat(1, 2), rat(1)}))) ==
          std::vector<Rational>{rat(0), rat(1, 4), rat(3, 4), rat(1)});

    // Iterating k times weights the base entries binomially: entry i of the
    // k-fold image is 2^-k * sum_j C(k,j) g_{i-j}, reading g_m = 1 for m > d
    // and g_m = 0 for m < 0.
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> dims(1, 6);
        const int d = dims(rng);
        std::vector<Rational> gvals{rat(0)};
        for (int i = 0; i < d - 1; ++i) gvals.push_back(random_rational(rng));
        gvals.push_back(rat(1));
        const auto padded = [&](int m) -> Rational {
            if (m < 0) return rat(0);
            if (m > d) return rat(1);
            return gvals[static_cast<std::size_t>(m)];
        };
        GammaVector g = gamma_of(gvals);
        for (int k = 1; k <= 4; ++k) {
            g = pinf_gamma(g);
            REQUIRE(g.dim() == d + k);
            for (int i = 0; i <= d + k; ++i) {
                Rational want(0);
                for (int j = 0; j <= k; ++j) {
                    want += Rational(binomial(k, j)) * padded(i - j);
                }
                want /= Rational(Int(1) << k);
                CHECK(g.entries[static_cast<std::size_t>(i)].rational() == want);
            }
        }
    }
}

TEST_CASE("pinf_gamma_inverse undoes the averaging step") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> dims(1, 7);
        const int d = dims(rng);
        std::vector<Rational> gvals{rat(0)};
        for (int i = 0; i < d - 1; ++i) gvals.push_back(random_rational(rng));
        gvals.push_back(rat(1));
        const GammaVector g = gamma_of(gvals);
        const auto recovered = pinf_gamma_inverse(pinf_gamma(g));
        REQUIRE(recovered.dim() == g.dim() + 1);
        for (int i = 0; i <= g.dim(); ++i) {
            CHECK(recovered.entries[static_cast<std::size_t>(i)].rational() ==
                  gvals[static_cast<std::size_t>(i)]);
        }
        // Genuine images end with a recovered 1.
        CHECK(recovered.entries.back().rational() == 1);
    }

    // Applying the inverse twice to (0, 1/2, 1/2, 1/2, 1) lands on
    // (0, 2, -2, 4, -2): the trailing entries disagree, so this vector is not
    // a two-fold averaging image of any gamma-vector.
    const auto once = pinf_gamma_inverse(
        gamma_of({rat(0), rat(1, 2), rat(1, 2), rat(1, 2), rat(1)}));
    const auto twice = pinf_gamma_inverse(once);
    CHECK(rationals_of(twice) ==
          std::vector<Rational>{rat(0), rat(2), rat(-2), rat(4), rat(-2)});
    const auto tail = rationals_of(twice);
    CHECK_FALSE((tail[2] == tail[3] && tail[3] == tail[4]));
}

TEST_CASE("prism and pyramid f-vector maps") {
    CHECK(prism_f(make_f({2, 1})) == make_f({4, 4, 1}));
    CHECK(prism_f(make_f({4, 4, 1})) == make_f({8, 12, 6, 1}));
    CHECK(pyramid_f(make_f({3, 3, 1})) == make_f({4, 6, 4, 1}));
    CHECK(pyramid_f(make_f({1})) == make_f({2, 1}));
}

TEST_CASE("pyramid step on extended f-vectors") {
    ExtendedFVector tri{{Int(1), Int(3), Int(3), Int(1)}};
    ExtendedFVector tet{{Int(1), Int(4), Int(6), Int(4), Int(1)}};
    CHECK(pyramid_extended_f(tri) == tet);
    CHECK(pyramid_extended_f_inverse(tet) == tri);

    // The inverse's leading slot is the alternating face count sum of the
    // input, so genuine polytopes always recover a leading 1.
    ExtendedFVector cube{{Int(1), Int(8), Int(12), Int(6), Int(1)}};
    const auto pre = pyramid_extended_f_inverse(cube);
    REQUIRE(pre.entries.size() == 4);
    CHECK(pre.entries[0] == 1);
    CHECK(pre == ExtendedFVector{{Int(1), Int(7), Int(5), Int(1)}});
    // And the forward map takes that formal preimage back to the cube data.
    CHECK(pyramid_extended_f(pre) == cube);

    // A face count vector violating the Euler relation is flagged by a
    // leading slot different from 1.
    ExtendedFVector bad{{Int(1), Int(5), Int(5), Int(5), Int(1)}};
    CHECK(pyramid_extended_f_inverse(bad).entries[0] == 4);

    CHECK_THROWS_AS(pyramid_extended_f(ExtendedFVector{{Int(2), Int(3)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(pyramid_extended_f_inverse(ExtendedFVector{{Int(1)}}),
                    std::invalid_argument);
}

TEST_CASE("extended keeps the full face count vector") {
    const FVector f = make_f({8, 12, 6, 1});
    const auto e = extended(f);
    REQUIRE(e.entries.size() == 5);
    CHECK(e.entries[0] == 1);
    for (int i = 0; i <= f.dim(); ++i) {
        CHECK(e.entries[static_cast<std::size_t>(i) + 1] == f.at(i));
    }
}

TEST_CASE("f-vector accessors and validation") {
    const FVector f = make_f({4, 6, 4, 1});
    CHECK(f.dim() == 3);
    CHECK(f.get(-1) == 1);
    CHECK(f.get(-2) == 0);
    CHECK(f.get(0) == 4);
    CHECK(f.get(3) == 1);
    CHECK(f.get(4) == 0);
    CHECK_NOTHROW(f.validate());
    CHECK_THROWS_AS(make_f({}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_f({4, 6, 4, 2}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_f({-1, 1}).validate(), std::invalid_argument);
}

TEST_CASE("joint gamma and f pyramid-limit step") {
    const GammaVector g = gamma_of({rat(0), rat(1, 2), rat(1)});
    const FVector f = make_f({3, 3, 1});
    const auto gf = pinf_gamma_f(g, f);
    CHECK(rationals_of(gf.gamma) ==
          std::vector<Rational>{rat(0), rat(1, 4), rat(3, 4), rat(1)});
    CHECK(gf.f == make_f({4, 6, 4, 1}));

    const auto [gback, fback] = pinf_gamma_f_inverse(gf);
    REQUIRE(gback.dim() == 3);
    CHECK(gback.entries[0].rational() == 0);
    CHECK(gback.entries[1].rational() == rat(1, 2));
    CHECK(gback.entries[2].rational() == 1);
    CHECK(gback.entries[3].rational() == 1);  // trailing recovered constant
    CHECK(fback == ExtendedFVector{{Int(1), Int(3), Int(3), Int(1)}});
}
