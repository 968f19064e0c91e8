#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "equiloc/character.hpp"
#include "equiloc/errors.hpp"
#include "equiloc/fixed_points.hpp"
#include "equiloc/multipoly.hpp"

namespace equiloc {

// A linear torus action on P^n, given by the weights a_0..a_n of the
// coordinates. Classes live in the presented ring Q[t_1..t_r, h] modulo the
// monic relation prod_i (h + a_i t); the h variable is the last one.
struct ProjectiveSpaceAction {
    std::size_t rank = 0;
    std::vector<Character> weights;

    ProjectiveSpaceAction() = default;
    ProjectiveSpaceAction(std::size_t torus_rank, std::vector<Character> ws)
        : rank(torus_rank), weights(std::move(ws)) {
        if (weights.empty()) throw Error("ProjectiveSpaceAction: no weights");
        for (const auto& w : weights)
            if (w.rank() != rank) throw VariableMismatchError("ProjectiveSpaceAction: weight rank");
    }

    std::size_t dim() const { return weights.size() - 1; } // n
    std::size_t nvars() const { return rank + 1; }         // t_1..t_r, h
    std::size_t h_index() const { return rank; }

    bool distinct_weights() const {
        for (std::size_t i = 0; i < weights.size(); ++i)
            for (std::size_t j = i + 1; j < weights.size(); ++j)
                if (weights[i] == weights[j]) return false;
        return true;
    }

    MultiPoly h() const { return MultiPoly::variable(nvars(), h_index()); }

    MultiPoly weight_form(std::size_t i) const {
        return MultiPoly::linear_form(weights[i]).padded(nvars());
    }

    // The defining relation prod_i (h + a_i t), monic of h-degree n+1.
    MultiPoly relation() const {
        MultiPoly r = MultiPoly::constant(nvars(), 1);
        for (std::size_t i = 0; i < weights.size(); ++i) r *= h() + weight_form(i);
        return r;
    }

    std::vector<std::string> names() const {
        std::vector<std::string> v;
        for (std::size_t k = 1; k <= rank; ++k) v.push_back("t" + std::to_string(k));
        v.push_back("h");
        return v;
    }

    friend bool operator==(const ProjectiveSpaceAction& a, const ProjectiveSpaceAction& b) {
        return a.rank == b.rank && a.weights == b.weights;
    }
    friend bool operator!=(const ProjectiveSpaceAction& a, const ProjectiveSpaceAction& b) {
        return !(a == b);
    }
};

// Normal form modulo the relation: h-degree <= n. Division works because the
// relation is monic in h.
inline MultiPoly reduce_poly(const ProjectiveSpaceAction& action, MultiPoly p) {
    if (p.nvars() != action.nvars())
        throw VariableMismatchError("reduce_poly: wrong polynomial ring");
    const std::size_t h = action.h_index();
    const std::uint32_t n = static_cast<std::uint32_t>(action.dim());
    const MultiPoly rel = action.relation();
    std::uint32_t d = p.degree_in(h);
    while (d > n) {
        MultiPoly lead = p.coefficient_of(h, d);
        p -= (lead * rel).times_var_power(h, d - n - 1);
        std::uint32_t nd = p.degree_in(h);
        if (nd >= d && !p.is_zero()) throw Error("reduce_poly: no progress"); // unreachable
        d = nd;
    }
    return p;
}

// A class in the presented equivariant ring of a projective-space action,
// kept reduced (h-degree <= n) at all times.
class EquivariantClass {
public:
    EquivariantClass(ProjectiveSpaceAction action, MultiPoly poly)
        : action_(std::move(action)), poly_(reduce_poly(action_, std::move(poly))) {}

    static EquivariantClass unit(const ProjectiveSpaceAction& action) {
        return EquivariantClass(action, MultiPoly::constant(action.nvars(), 1));
    }
    static EquivariantClass zero(const ProjectiveSpaceAction& action) {
        return EquivariantClass(action, MultiPoly(action.nvars()));
    }

    const ProjectiveSpaceAction& action() const { return action_; }
    const MultiPoly& poly() const { return poly_; }

    friend EquivariantClass operator+(const EquivariantClass& a, const EquivariantClass& b) {
        check(a, b);
        return EquivariantClass(a.action_, a.poly_ + b.poly_);
    }
    friend EquivariantClass operator-(const EquivariantClass& a, const EquivariantClass& b) {
        check(a, b);
        return EquivariantClass(a.action_, a.poly_ - b.poly_);
    }
    friend EquivariantClass operator*(const EquivariantClass& a, const EquivariantClass& b) {
        check(a, b);
        return EquivariantClass(a.action_, a.poly_ * b.poly_);
    }
    EquivariantClass scaled(const Rational& s) const {
        return EquivariantClass(action_, poly_.scaled(s));
    }

    friend bool operator==(const EquivariantClass& a, const EquivariantClass& b) {
        return a.action_ == b.action_ && a.poly_ == b.poly_;
    }
    friend bool operator!=(const EquivariantClass& a, const EquivariantClass& b) { return !(a == b); }

    std::string to_string() const { return poly_.to_string(action_.names()); }

private:
    static void check(const EquivariantClass& a, const EquivariantClass& b) {
        if (a.action_ != b.action_)
            throw VariableMismatchError("EquivariantClass: different presentations");
    }

    ProjectiveSpaceAction action_;
    MultiPoly poly_;
};

// Fixed point p_i for every coordinate axis; tangent weights a_j - a_i.
inline FixedPointSpace projective_fixed_points(const ProjectiveSpaceAction& action) {
    if (!action.distinct_weights())
        throw RepeatedWeightsError("projective_fixed_points: weights must be pairwise distinct");
    std::vector<FixedPoint> pts;
    pts.reserve(action.weights.size());
    for (std::size_t i = 0; i < action.weights.size(); ++i) {
        FixedPoint p;
        p.label = "p" + std::to_string(i);
        for (std::size_t j = 0; j < action.weights.size(); ++j)
            if (j != i) p.tangent.push_back(action.weights[j] - action.weights[i]);
        pts.push_back(std::move(p));
    }
    return FixedPointSpace(action.rank, std::move(pts));
}

// Restriction to the fixed point p_i: substitute h -> -a_i t and drop h.
// The result lives in Q[t_1..t_r].
inline MultiPoly restrict_class(const EquivariantClass& c, std::size_t i) {
    const auto& action = c.action();
    if (i >= action.weights.size()) throw UnknownPointError("restrict_class: unknown point id");
    const MultiPoly minus_ai = MultiPoly::linear_form(-action.weights[i]).padded(action.nvars());
    return c.poly().substituted(action.h_index(), minus_ai).dropped_last();
}

// The class of the fixed point p_i: prod_{j != i} (h + a_j t).
inline EquivariantClass point_class(const ProjectiveSpaceAction& action, std::size_t i) {
    if (i >= action.weights.size()) throw UnknownPointError("point_class: unknown point id");
    if (!action.distinct_weights())
        throw RepeatedWeightsError("point_class: weights must be pairwise distinct");
    MultiPoly p = MultiPoly::constant(action.nvars(), 1);
    for (std::size_t j = 0; j < action.weights.size(); ++j)
        if (j != i) p *= action.h() + action.weight_form(j);
    return EquivariantClass(action, std::move(p));
}

// Class of an invariant complete intersection cut by hypersurfaces of degree
// d_i and weight chi_i: prod (d_i h + chi_i).
inline EquivariantClass hypersurface_class(const ProjectiveSpaceAction& action,
                                           const std::vector<std::pair<std::int64_t, Character>>& cuts) {
    MultiPoly p = MultiPoly::constant(action.nvars(), 1);
    for (const auto& [d, chi] : cuts) {
        if (chi.rank() != action.rank)
            throw VariableMismatchError("hypersurface_class: weight rank");
        p *= MultiPoly::variable(action.nvars(), action.h_index(), Rational(BigInt(static_cast<long>(d))))
             + MultiPoly::linear_form(chi).padded(action.nvars());
    }
    return EquivariantClass(action, std::move(p));
}

// Induced fixed-point data of a smooth invariant hypersurface of degree d and
// weight chi_f through the listed ambient fixed points. The normal weight at
// p is d*(-a_p) + chi_f and must occur in the ambient tangent multiset.
inline FixedPointSpace hypersurface_fixed_locus(const ProjectiveSpaceAction& action,
                                                std::int64_t d, const Character& chi_f,
                                                const std::vector<std::size_t>& on_x) {
    const FixedPointSpace ambient = projective_fixed_points(action);
    std::vector<FixedPoint> pts;
    pts.reserve(on_x.size());
    for (auto i : on_x) {
        const FixedPoint& amb = ambient.at(i);
        const Character normal = chi_f - d * action.weights[i];
        if (normal.is_zero())
            throw ZeroNormalWeightError("hypersurface_fixed_locus: zero normal weight at " + amb.label);
        FixedPoint p;
        p.label = amb.label;
        bool removed = false;
        for (const auto& chi : amb.tangent) {
            if (!removed && chi == normal) {
                removed = true;
                continue;
            }
            p.tangent.push_back(chi);
        }
        if (!removed)
            throw NormalWeightAbsentError("hypersurface_fixed_locus: normal weight absent at " + amb.label);
        pts.push_back(std::move(p));
    }
    return FixedPointSpace(action.rank, std::move(pts));
}

} // namespace equiloc
