#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "equiloc/character.hpp"
#include "equiloc/errors.hpp"
#include "equiloc/fixed_points.hpp"
#include "equiloc/multipoly.hpp"
#include "equiloc/projective.hpp"
#include "equiloc/rational.hpp"

namespace equiloc {

// An equivariant vector bundle presented extensionally: the multiset of fiber
// characters over each fixed point where it is defined. This is all the
// residue formulas ever consume.
struct EquivariantBundle {
    std::size_t rank = 0;                                  // fiber rank
    std::map<std::size_t, std::vector<Character>> fibers;  // point id -> weights

    const std::vector<Character>& fiber(std::size_t point) const {
        auto it = fibers.find(point);
        if (it == fibers.end()) throw UnknownPointError("EquivariantBundle: no fiber at point");
        return it->second;
    }
};

inline EquivariantBundle tangent_bundle(const FixedPointSpace& space) {
    EquivariantBundle b;
    b.rank = space.dim();
    for (std::size_t i = 0; i < space.size(); ++i) b.fibers[i] = space.points[i].tangent;
    return b;
}

// O(d) twisted by chi: fiber weight d*(-a_i) + chi at p_i, matching the
// restriction convention h -> -a_i t.
inline EquivariantBundle line_bundle(const ProjectiveSpaceAction& action, std::int64_t d,
                                     const Character& chi) {
    if (chi.rank() != action.rank) throw VariableMismatchError("line_bundle: weight rank");
    EquivariantBundle b;
    b.rank = 1;
    for (std::size_t i = 0; i < action.weights.size(); ++i)
        b.fibers[i] = {chi - d * action.weights[i]};
    return b;
}

// Pullback along a map of fixed-point sets: the fiber at p is the fiber at
// point_map[p].
inline EquivariantBundle pullback_bundle(const std::map<std::size_t, std::size_t>& point_map,
                                         const EquivariantBundle& bundle) {
    EquivariantBundle b;
    b.rank = bundle.rank;
    for (const auto& [from, to] : point_map) b.fibers[from] = bundle.fiber(to);
    return b;
}

// i-th equivariant Chern class over an isolated fixed point: the elementary
// symmetric polynomial of the fiber characters.
inline MultiPoly chern_at_point(const EquivariantBundle& bundle, std::size_t point, std::size_t i) {
    const auto& ws = bundle.fiber(point);
    if (i > ws.size()) throw IndexError("chern_at_point: index exceeds rank");
    return elem_sym(ws, i);
}

// A polynomial in formal Chern symbols x^i_j (Chern index i of bundle j),
// homogeneous of a declared weighted degree where x^i_j counts i.
class ChernPolynomial {
public:
    struct Factor {
        std::size_t bundle = 0;
        std::uint32_t index = 1; // Chern index
        std::uint32_t power = 1;
    };
    struct Term {
        Rational coefficient;
        std::vector<Factor> factors;
    };

    ChernPolynomial(std::vector<Term> terms, std::uint32_t weighted_degree)
        : terms_(std::move(terms)), degree_(weighted_degree) {
        for (const auto& t : terms_) {
            std::uint32_t d = 0;
            for (const auto& f : t.factors) d += f.index * f.power;
            if (d != degree_)
                throw DegreeMismatchError("ChernPolynomial: term of weighted degree "
                                          + std::to_string(d) + ", declared "
                                          + std::to_string(degree_));
        }
    }

    static ChernPolynomial one() { return ChernPolynomial({Term{Rational(1), {}}}, 0); }

    // c_index(bundle j) as a monomial polynomial.
    static ChernPolynomial chern(std::size_t bundle, std::uint32_t index) {
        return ChernPolynomial({Term{Rational(1), {Factor{bundle, index, 1}}}}, index);
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::uint32_t weighted_degree() const { return degree_; }

    friend ChernPolynomial operator*(const ChernPolynomial& a, const ChernPolynomial& b) {
        std::vector<Term> terms;
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) {
                Term t;
                t.coefficient = ta.coefficient * tb.coefficient;
                t.factors = ta.factors;
                t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
                terms.push_back(std::move(t));
            }
        return ChernPolynomial(std::move(terms), a.degree_ + b.degree_);
    }
    friend ChernPolynomial operator+(const ChernPolynomial& a, const ChernPolynomial& b) {
        if (a.degree_ != b.degree_)
            throw DegreeMismatchError("ChernPolynomial: adding different weighted degrees");
        std::vector<Term> terms = a.terms_;
        terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
        return ChernPolynomial(std::move(terms), a.degree_);
    }
    ChernPolynomial scaled(const Rational& s) const {
        std::vector<Term> terms = terms_;
        for (auto& t : terms) t.coefficient = t.coefficient * s;
        return ChernPolynomial(std::move(terms), degree_);
    }

private:
    std::vector<Term> terms_;
    std::uint32_t degree_;
};

// Substitutes x^i_j -> chern_at_point(bundle_j, p, i). Homogeneous of degree
// equal to the weighted degree.
inline MultiPoly eval_chern_polynomial(const ChernPolynomial& poly,
                                       const std::vector<EquivariantBundle>& bundles,
                                       std::size_t point, std::size_t torus_rank) {
    MultiPoly acc(torus_rank);
    for (const auto& term : poly.terms()) {
        MultiPoly m = MultiPoly::constant(torus_rank, term.coefficient);
        for (const auto& f : term.factors) {
            if (f.bundle >= bundles.size())
                throw IndexError("eval_chern_polynomial: undefined bundle index");
            m *= chern_at_point(bundles[f.bundle], point, f.index).pow(f.power);
        }
        acc += m;
    }
    return acc;
}

// Equivariant Chern classes of a rank-rho eigenbundle with character lambda,
// expanded over abstract ordinary Chern generators c_0..c_base_dim:
//   c^T_i = sum_{j <= i} binom(rho - j, i - j) c_j lambda^(i-j),
// with c_j = 0 above the base dimension. coefficient_of_base(j) returns the
// polynomial multiplying c_j.
class TwistedChernClass {
public:
    TwistedChernClass(std::size_t rho, std::size_t base_dim, const Character& lambda, std::uint32_t i)
        : rank_(lambda.rank()) {
        const MultiPoly lam = MultiPoly::linear_form(lambda);
        const std::size_t jmax = std::min<std::size_t>(i, base_dim);
        for (std::size_t j = 0; j <= jmax; ++j) {
            const BigInt b = binomial(static_cast<long>(rho) - static_cast<long>(j),
                                      static_cast<long>(i) - static_cast<long>(j));
            coeff_.push_back(lam.pow(i - static_cast<std::uint32_t>(j)).scaled(Rational(b)));
        }
    }

    std::size_t torus_rank() const { return rank_; }
    std::size_t base_terms() const { return coeff_.size(); }
    const MultiPoly& coefficient_of_base(std::size_t j) const {
        if (j >= coeff_.size()) throw IndexError("TwistedChernClass: base index");
        return coeff_[j];
    }

    // The component with c_0 = 1 and all positive c_j = 0 (trivial base bundle).
    MultiPoly scalar_part() const { return coeff_.empty() ? MultiPoly(rank_) : coeff_.front(); }

private:
    std::size_t rank_;
    std::vector<MultiPoly> coeff_;
};

inline TwistedChernClass twisted_chern(std::size_t rho, std::size_t base_dim,
                                       const Character& lambda, std::uint32_t i) {
    return TwistedChernClass(rho, base_dim, lambda, i);
}

} // namespace equiloc
