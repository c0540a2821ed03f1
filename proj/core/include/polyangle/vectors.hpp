#pragma once

#include "polyangle/rational.hpp"
#include "polyangle/scalar.hpp"

#include <stdexcept>
#include <vector>

namespace polyangle {

/**
 * Face count vector (f_0, ..., f_d) of a d-polytope; f_d = 1 counts the
 * polytope itself.
 */
struct FVector {
    std::vector<Int> entries;

    int dim() const { return static_cast<int>(entries.size()) - 1; }

    const Int& at(int i) const { return entries.at(i); }

    /** f_i with the out-of-range convention f_{-1} = 1 and f_i = 0 otherwise. */
    Int get(int i) const {
        if (i == -1) {
            return Int(1);
        }
        if (i < 0 || i > dim()) {
            return Int(0);
        }
        return entries[static_cast<std::size_t>(i)];
    }

    void validate() const {
        if (entries.empty()) {
            throw std::invalid_argument("f-vector must be nonempty");
        }
        if (entries.back() != 1) {
            throw std::invalid_argument("f-vector must end with f_d = 1");
        }
        for (const Int& e : entries) {
            if (e < 0) {
                throw std::invalid_argument("f-vector entries must be nonnegative");
            }
        }
    }

    bool operator==(const FVector&) const = default;
};

/** (f_{-1}, f_0, ..., f_{d-1}): the f-vector as the pyramid map consumes it. */
struct ExtendedFVector {
    std::vector<Int> entries;  // entries[0] holds the f_{-1} slot

    bool operator==(const ExtendedFVector&) const = default;
};

/** h-vector (h_0, ..., h_d); entries may be negative for non-simplicial input. */
struct HVector {
    std::vector<Int> entries;

    int dim() const { return static_cast<int>(entries.size()) - 1; }

    bool operator==(const HVector&) const = default;
};

/**
 * Angle sum vector (alpha_0, ..., alpha_d). alpha_i is the sum of interior
 * angle fractions over the i-faces, so alpha_d = 1 and alpha_{d-1} = f_{d-1}/2
 * for genuine polytopes. Entries are exact rationals or Monte Carlo estimates.
 */
struct AlphaVector {
    std::vector<Scalar> entries;

    int dim() const { return static_cast<int>(entries.size()) - 1; }

    bool all_exact() const {
        for (const Scalar& s : entries) {
            if (!s.is_exact()) {
                return false;
            }
        }
        return true;
    }

    bool operator==(const AlphaVector&) const = default;
};

/** gamma-vector (gamma_0, ..., gamma_d), the angle analogue of the h-vector. */
struct GammaVector {
    std::vector<Scalar> entries;

    int dim() const { return static_cast<int>(entries.size()) - 1; }

    bool all_exact() const {
        for (const Scalar& s : entries) {
            if (!s.is_exact()) {
                return false;
            }
        }
        return true;
    }

    bool operator==(const GammaVector&) const = default;
};

struct AlphaFVector {
    AlphaVector alpha;
    FVector f;

    bool operator==(const AlphaFVector&) const = default;
};

struct GammaHVector {
    GammaVector gamma;
    HVector h;

    bool operator==(const GammaHVector&) const = default;
};

struct GammaFVector {
    GammaVector gamma;
    FVector f;

    bool operator==(const GammaFVector&) const = default;
};

inline ExtendedFVector extended(const FVector& f) {
    ExtendedFVector out;
    out.entries.reserve(f.entries.size() + 1);
    out.entries.push_back(Int(1));
    out.entries.insert(out.entries.end(), f.entries.begin(), f.entries.end());
    return out;
}

inline AlphaVector exact_alpha(std::vector<Rational> values) {
    AlphaVector out;
    out.entries.reserve(values.size());
    for (auto& v : values) {
        out.entries.emplace_back(Scalar::exact(std::move(v)));
    }
    return out;
}

inline GammaVector exact_gamma(std::vector<Rational> values) {
    GammaVector out;
    out.entries.reserve(values.size());
    for (auto& v : values) {
        out.entries.emplace_back(Scalar::exact(std::move(v)));
    }
    return out;
}

inline FVector make_f(std::vector<long> values) {
    FVector out;
    out.entries.reserve(values.size());
    for (long v : values) {
        out.entries.emplace_back(v);
    }
    return out;
}

inline HVector make_h(std::vector<long> values) {
    HVector out;
    out.entries.reserve(values.size());
    for (long v : values) {
        out.entries.emplace_back(v);
    }
    return out;
}

}  // namespace polyangle
