#include "polyangle/transforms.hpp"

#include <stdexcept>

namespace polyangle {

namespace {

Rational signed_binomial(int i, int j, int d) {
    Rational c(binomial(d - j, d - i));
    return ((i - j) % 2 != 0) ? -c : c;
}

}  // namespace

HVector h_from_f(const FVector& f) {
    f.validate();
    const int d = f.dim();
    HVector h;
    h.entries.resize(d + 1);
    for (int i = 0; i <= d; ++i) {
        Int acc(0);
        for (int j = 0; j <= i; ++j) {
            const Int c = binomial(d - j, d - i);
            const Int term = c * f.get(j - 1);
            acc += ((i - j) % 2 != 0) ? -term : term;
        }
        h.entries[i] = acc;
    }
    return h;
}

FVector f_from_h(const HVector& h) {
    const int d = h.dim();
    if (d < 0) {
        throw std::invalid_argument("h-vector must be nonempty");
    }
    // x[j] recovers the f_{j-1} slot; the map is unitriangular.
    std::vector<Int> x(d + 1);
    for (int i = 0; i <= d; ++i) {
        Int acc = h.entries[i];
        for (int j = 0; j < i; ++j) {
            const Int c = binomial(d - j, d - i);
            const Int term = c * x[j];
            acc -= ((i - j) % 2 != 0) ? -term : term;
        }
        x[i] = acc;
    }
    FVector f;
    f.entries.assign(x.begin() + 1, x.end());
    f.entries.push_back(Int(1));
    return f;
}

GammaVector gamma_from_alpha(const AlphaVector& alpha) {
    const int d = alpha.dim();
    if (d < 0) {
        throw std::invalid_argument("alpha-vector must be nonempty");
    }
    const Scalar alpha_minus_one = Scalar::exact(Rational(0));
    GammaVector g;
    g.entries.resize(d + 1);
    for (int i = 0; i <= d; ++i) {
        Scalar acc = Scalar::exact(Rational(0));
        for (int j = 0; j <= i; ++j) {
            const Scalar& a = (j == 0) ? alpha_minus_one : alpha.entries[j - 1];
            acc = acc + a.scaled(signed_binomial(i, j, d));
        }
        g.entries[i] = acc;
    }
    return g;
}

AlphaVector alpha_from_gamma(const GammaVector& gamma) {
    const int d = gamma.dim();
    if (d < 0) {
        throw std::invalid_argument("gamma-vector must be nonempty");
    }
    if (!gamma.entries[0].is_exact() || gamma.entries[0].rational() != 0) {
        throw std::invalid_argument("gamma_0 must be exactly zero");
    }
    // x[j] recovers the alpha_{j-1} slot (x[0] is alpha_{-1} = gamma_0 = 0).
    std::vector<Scalar> x(d + 1);
    for (int i = 0; i <= d; ++i) {
        Scalar acc = gamma.entries[i];
        for (int j = 0; j < i; ++j) {
            acc = acc - x[j].scaled(signed_binomial(i, j, d));
        }
        x[i] = acc;
    }
    AlphaVector alpha;
    alpha.entries.assign(x.begin() + 1, x.end());
    alpha.entries.push_back(Scalar::exact(Rational(1)));
    return alpha;
}

GammaVector pinf_gamma(const GammaVector& g) {
    const Rational half = make_rational(Int(1), Int(2));
    std::vector<Scalar> ext = g.entries;
    ext.push_back(Scalar::exact(Rational(1)));

    GammaVector out;
    out.entries.resize(ext.size());
    for (std::size_t i = 0; i < ext.size(); ++i) {
        Scalar sum = ext[i];
        if (i > 0) {
            sum = sum + ext[i - 1];
        }
        out.entries[i] = sum.scaled(half);
    }
    return out;
}

GammaVector pinf_gamma_inverse(const GammaVector& g) {
    GammaVector out;
    out.entries.resize(g.entries.size());
    Scalar prev = Scalar::exact(Rational(0));
    for (std::size_t i = 0; i < g.entries.size(); ++i) {
        out.entries[i] = g.entries[i].scaled(Rational(2)) - prev;
        prev = out.entries[i];
    }
    return out;
}

FVector prism_f(const FVector& f) {
    f.validate();
    const int d = f.dim();
    FVector out;
    out.entries.resize(d + 2);
    out.entries[0] = 2 * f.get(0);
    for (int i = 1; i <= d + 1; ++i) {
        out.entries[i] = 2 * f.get(i) + f.get(i - 1);
    }
    return out;
}

FVector pyramid_f(const FVector& f) {
    f.validate();
    const int d = f.dim();
    FVector out;
    out.entries.resize(d + 2);
    for (int i = 0; i <= d + 1; ++i) {
        out.entries[i] = f.get(i) + f.get(i - 1);
    }
    return out;
}

ExtendedFVector pyramid_extended_f(const ExtendedFVector& f) {
    const std::size_t m = f.entries.size();
    if (m == 0 || f.entries[0] != 1) {
        throw std::invalid_argument("extended f-vector must lead with 1");
    }
    ExtendedFVector out;
    out.entries.resize(m + 1);
    out.entries[0] = Int(1);
    for (std::size_t t = 1; t <= m; ++t) {
        out.entries[t] = f.entries[t - 1] + (t < m ? f.entries[t] : Int(0));
    }
    return out;
}

ExtendedFVector pyramid_extended_f_inverse(const ExtendedFVector& f) {
    const std::size_t m = f.entries.size();
    if (m < 2 || f.entries[0] != 1) {
        throw std::invalid_argument("extended f-vector must lead with 1");
    }
    ExtendedFVector out;
    out.entries.resize(m - 1);
    out.entries[m - 2] = f.entries[m - 1];
    for (std::size_t t = m - 2; t >= 1; --t) {
        out.entries[t - 1] = f.entries[t] - out.entries[t];
    }
    return out;
}

GammaFVector pinf_gamma_f(const GammaVector& g, const FVector& f) {
    GammaFVector out;
    out.gamma = pinf_gamma(g);
    const ExtendedFVector pyr = pyramid_extended_f(extended(f));
    out.f.entries.assign(pyr.entries.begin() + 1, pyr.entries.end());
    return out;
}

std::pair<GammaVector, ExtendedFVector> pinf_gamma_f_inverse(const GammaFVector& gf) {
    return {pinf_gamma_inverse(gf.gamma), pyramid_extended_f_inverse(extended(gf.f))};
}

}  // namespace polyangle
