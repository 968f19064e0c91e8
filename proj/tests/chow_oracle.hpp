#pragma once

// Test-only oracle: the ordinary (non-equivariant) Chow ring of P^n, as dense
// univariate arithmetic in Q[h]/h^(n+1). Chern numbers computed here are
// independent of the localization machinery they check.

#include <cstdint>
#include <vector>

#include "equiloc/bundles.hpp"
#include "equiloc/rational.hpp"

namespace chow {

using equiloc::BigInt;
using equiloc::Rational;

struct Poly { // coefficients of 1, h, ..., h^n
    std::vector<Rational> c;
    explicit Poly(std::size_t n) : c(n + 1, Rational(0)) {}
};

inline Poly mul(const Poly& a, const Poly& b) {
    Poly r(a.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; i + j < a.c.size(); ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

struct Bundle {
    enum class Kind { tangent, line };
    Kind kind = Kind::tangent;
    std::int64_t degree = 0; // for line bundles

    // c_i on P^n: tangent has total Chern class (1+h)^(n+1), a line bundle of
    // degree d has 1 + d h.
    Poly chern(std::size_t n, std::uint32_t i) const {
        Poly r(n);
        if (kind == Kind::tangent) {
            if (i <= n) r.c[i] = Rational(equiloc::binomial(static_cast<long>(n) + 1, i));
        } else {
            if (i == 0) r.c[0] = Rational(1);
            else if (i == 1) r.c[1] = Rational(BigInt(static_cast<long>(degree)));
        }
        return r;
    }
};

// deg(p(E_1, ..., E_s) cap [P^n]): the h^n coefficient of the expanded
// polynomial.
inline Rational degree(std::size_t n, const std::vector<Bundle>& bundles,
                       const equiloc::ChernPolynomial& poly) {
    Poly acc(n);
    for (const auto& term : poly.terms()) {
        Poly m(n);
        m.c[0] = term.coefficient;
        for (const auto& f : term.factors)
            for (std::uint32_t k = 0; k < f.power; ++k)
                m = mul(m, bundles.at(f.bundle).chern(n, f.index));
        for (std::size_t i = 0; i <= n; ++i) acc.c[i] += m.c[i];
    }
    return acc.c[n];
}

} // namespace chow
