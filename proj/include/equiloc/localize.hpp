#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "equiloc/bundles.hpp"
#include "equiloc/errors.hpp"
#include "equiloc/fixed_points.hpp"
#include "equiloc/localized.hpp"
#include "equiloc/multipoly.hpp"
#include "equiloc/projective.hpp"

namespace equiloc {

// Equivariant Euler class of the normal bundle at an isolated fixed point:
// the product of the tangent characters, kept in factored form so it stays
// invertible.
inline FactoredClass euler_class(const FixedPointSpace& space, std::size_t point) {
    return FactoredClass(space.rank, 1, space.at(point).tangent);
}

// Pushforward to the point of a family of fixed-point restrictions:
//   sum_p values[p] / euler(p).
inline LocalizedClass integrate(const FixedPointSpace& space, const std::vector<MultiPoly>& values) {
    if (values.size() != space.size())
        throw Error("integrate: one value per fixed point required");
    LocalizedClass acc = LocalizedClass::zero(space.rank);
    for (std::size_t p = 0; p < space.size(); ++p)
        acc = acc + invert(euler_class(space, p)) * values[p];
    return acc;
}

struct ResidueComputation {
    std::vector<std::pair<std::string, LocalizedClass>> contributions; // label -> summand
    LocalizedClass total{MultiPoly{0}};
    Rational value{0};
};

namespace detail {

// Evaluates one pure function per index, optionally across threads. Results
// land in index order and the first failure (by index) is rethrown, so the
// outcome never depends on the thread count.
template <typename F>
std::vector<LocalizedClass> indexed_terms(std::size_t count, unsigned threads, F&& fn) {
    std::vector<std::optional<LocalizedClass>> slots(count);
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) slots[i] = fn(i);
    } else {
        const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
        std::vector<std::exception_ptr> errors(count);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < count; i += workers) {
                    try {
                        slots[i] = fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    std::vector<LocalizedClass> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

} // namespace detail

// Chern number of a weighted-degree-dim polynomial in equivariant Chern
// classes, as the residue sum over the fixed points.
inline ResidueComputation bott_residue_detailed(const FixedPointSpace& space,
                                                const std::vector<EquivariantBundle>& bundles,
                                                const ChernPolynomial& poly,
                                                const ConstantValueOptions& opts = {},
                                                unsigned threads = 1) {
    if (poly.weighted_degree() != space.dim())
        throw DegreeMismatchError("bott_residue: polynomial weighted degree "
                                  + std::to_string(poly.weighted_degree()) + " != dim "
                                  + std::to_string(space.dim()));
    ResidueComputation out;
    auto terms = detail::indexed_terms(space.size(), threads, [&](std::size_t p) {
        return invert(euler_class(space, p)) * eval_chern_polynomial(poly, bundles, p, space.rank);
    });
    LocalizedClass acc = LocalizedClass::zero(space.rank);
    for (std::size_t p = 0; p < space.size(); ++p) {
        out.contributions.emplace_back(space.points[p].label, terms[p]);
        acc = acc + terms[p];
    }
    out.total = acc;
    out.value = constant_value(acc, opts);
    return out;
}

inline Rational bott_residue(const FixedPointSpace& space,
                             const std::vector<EquivariantBundle>& bundles,
                             const ChernPolynomial& poly,
                             const ConstantValueOptions& opts = {},
                             unsigned threads = 1) {
    return bott_residue_detailed(space, bundles, poly, opts, threads).value;
}

// The coefficients beta_p of a class alpha over the fixed points:
// beta_p = restriction(alpha, p) / euler(p).
struct LocalizationTable {
    std::vector<LocalizedClass> entries; // indexed like the fixed points
};

inline LocalizationTable localize_class(const ProjectiveSpaceAction& action,
                                        const EquivariantClass& alpha) {
    if (alpha.action() != action)
        throw VariableMismatchError("localize_class: class from a different presentation");
    const FixedPointSpace space = projective_fixed_points(action);
    LocalizationTable table;
    table.entries.reserve(space.size());
    for (std::size_t p = 0; p < space.size(); ++p)
        table.entries.push_back(invert(euler_class(space, p)) * restrict_class(alpha, p));
    return table;
}

struct LocalizationDiagnostic {
    bool pass = false;
    MultiPoly residual{0}; // reduced (h,t) polynomial; zero iff pass
    std::string message;
};

// Checks the reconstruction identity sum_p beta_p * [p] = alpha exactly,
// after clearing all denominators.
inline LocalizationDiagnostic verify_localization(const ProjectiveSpaceAction& action,
                                                  const EquivariantClass& alpha,
                                                  const LocalizationTable& table) {
    const FixedPointSpace space = projective_fixed_points(action);
    if (table.entries.size() != space.size())
        throw Error("verify_localization: table must cover every fixed point");

    CharacterMultiset common;
    for (const auto& entry : table.entries)
        for (const auto& [chi, mult] : entry.denominator()) {
            auto& m = common[chi];
            m = std::max(m, mult);
        }

    MultiPoly sum(action.nvars());
    for (std::size_t p = 0; p < space.size(); ++p) {
        const auto& entry = table.entries[p];
        CharacterMultiset missing = common;
        for (const auto& [chi, mult] : entry.denominator()) {
            auto it = missing.find(chi);
            if (it->second == mult) missing.erase(it);
            else it->second -= mult;
        }
        MultiPoly lifted = (entry.numerator() * expand_multiset(action.rank, missing)).padded(action.nvars());
        sum += lifted * point_class(action, p).poly();
    }
    MultiPoly target = alpha.poly() * expand_multiset(action.rank, common).padded(action.nvars());

    LocalizationDiagnostic diag;
    diag.residual = reduce_poly(action, sum - target);
    diag.pass = diag.residual.is_zero();
    diag.message = diag.pass ? "reconstruction exact" : "nonzero residual after clearing denominators";
    return diag;
}

// Residue recipe for a (possibly singular) subvariety X of the ambient space,
// presented only through gamma = pushforward of [X]_T, the list of ambient
// fixed points lying on X, and bundle restrictions there:
//   deg = sum_{p in on_x} p(E)|_p * gamma|_p / euler_M(p).
// Before summing, the necessary support condition gamma|_q = 0 is checked at
// every fixed point q outside on_x.
struct SingularResidueComputation {
    ResidueComputation residue;
    std::vector<std::pair<std::string, bool>> vanishing_checks; // off-X points
};

inline SingularResidueComputation singular_chern_number_detailed(
    const ProjectiveSpaceAction& action, const EquivariantClass& gamma,
    const std::vector<std::size_t>& on_x, const std::vector<EquivariantBundle>& bundles,
    const ChernPolynomial& poly, std::size_t dim_x, const ConstantValueOptions& opts = {},
    unsigned threads = 1) {
    if (gamma.action() != action)
        throw VariableMismatchError("singular_chern_number: class from a different presentation");
    if (dim_x > action.dim())
        throw DegreeMismatchError("singular_chern_number: dim X exceeds the ambient dimension");
    const FixedPointSpace space = projective_fixed_points(action);

    long gdeg = -1;
    if (!gamma.poly().is_homogeneous(&gdeg))
        throw DegreeMismatchError("singular_chern_number: class not homogeneous");
    if (!gamma.poly().is_zero() && gdeg != static_cast<long>(action.dim() - dim_x))
        throw DegreeMismatchError("singular_chern_number: class degree " + std::to_string(gdeg)
                                  + " != codim " + std::to_string(action.dim() - dim_x));
    if (poly.weighted_degree() != dim_x)
        throw DegreeMismatchError("singular_chern_number: polynomial weighted degree != dim X");

    std::vector<bool> on(space.size(), false);
    for (auto i : on_x) {
        if (i >= space.size()) throw UnknownPointError("singular_chern_number: unknown point id");
        on[i] = true;
    }

    SingularResidueComputation out;
    for (std::size_t q = 0; q < space.size(); ++q) {
        if (on[q]) continue;
        const bool vanishes = restrict_class(gamma, q).is_zero();
        out.vanishing_checks.emplace_back(space.points[q].label, vanishes);
        if (!vanishes)
            throw VanishingCheckError("singular_chern_number: class does not vanish at "
                                      + space.points[q].label + ", which is off X");
    }

    auto terms = detail::indexed_terms(on_x.size(), threads, [&](std::size_t i) {
        const std::size_t p = on_x[i];
        const MultiPoly value = eval_chern_polynomial(poly, bundles, p, action.rank)
                                * restrict_class(gamma, p);
        return invert(euler_class(space, p)) * value;
    });
    LocalizedClass acc = LocalizedClass::zero(action.rank);
    for (std::size_t i = 0; i < on_x.size(); ++i) {
        out.residue.contributions.emplace_back(space.points[on_x[i]].label, terms[i]);
        acc = acc + terms[i];
    }
    out.residue.total = acc;
    out.residue.value = constant_value(acc, opts);
    return out;
}

inline Rational singular_chern_number(const ProjectiveSpaceAction& action,
                                      const EquivariantClass& gamma,
                                      const std::vector<std::size_t>& on_x,
                                      const std::vector<EquivariantBundle>& bundles,
                                      const ChernPolynomial& poly, std::size_t dim_x,
                                      const ConstantValueOptions& opts = {},
                                      unsigned threads = 1) {
    return singular_chern_number_detailed(action, gamma, on_x, bundles, poly, dim_x, opts, threads)
        .residue.value;
}

// Expands target = sum_k c_k * basis_k by back-substitution on the leading
// h-coefficients. The basis must have pairwise distinct h-degrees and each
// leading coefficient must factor into characters, so that the c_k stay
// expressible as localized fractions.
inline std::vector<LocalizedClass> expand_in_basis(const std::vector<EquivariantClass>& basis,
                                                   const EquivariantClass& target) {
    if (basis.empty()) throw Error("expand_in_basis: empty basis");
    const ProjectiveSpaceAction& action = basis.front().action();
    for (const auto& b : basis)
        if (b.action() != action || b.poly().is_zero())
            throw Error("expand_in_basis: basis must be nonzero classes of one presentation");
    if (target.action() != action)
        throw VariableMismatchError("expand_in_basis: target from a different presentation");

    const std::size_t h = action.h_index();
    std::vector<std::size_t> order(basis.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return basis[a].poly().degree_in(h) > basis[b].poly().degree_in(h);
    });
    for (std::size_t k = 1; k < order.size(); ++k)
        if (basis[order[k - 1]].poly().degree_in(h) == basis[order[k]].poly().degree_in(h))
            throw Error("expand_in_basis: basis h-degrees must be pairwise distinct");

    MultiPoly residual_num = target.poly();   // over (t, h)
    Rational residual_scalar(1);              // denominator scalar
    CharacterMultiset residual_den;           // denominator characters (t ring)

    std::vector<LocalizedClass> coeffs(basis.size(), LocalizedClass::zero(action.rank));
    for (auto k : order) {
        const MultiPoly& bk = basis[k].poly();
        const std::uint32_t d = bk.degree_in(h);
        const MultiPoly pivot = bk.coefficient_of(h, d).dropped_last();
        auto factored = factor_into_characters(pivot);
        if (!factored)
            throw NonFactorablePivotError("expand_in_basis: pivot '" + pivot.to_string()
                                          + "' is not a product of characters");

        const MultiPoly raw = residual_num.coefficient_of(h, d).dropped_last();
        CharacterMultiset cden = residual_den;
        for (const auto& [chi, mult] : factored->factors()) cden[chi] += mult;
        coeffs[k] = LocalizedClass(
            raw.scaled((residual_scalar * factored->scalar()).inverse()), cden);

        residual_num = residual_num * pivot.padded(action.nvars()) - raw.padded(action.nvars()) * bk;
        residual_scalar *= factored->scalar();
        for (const auto& [chi, mult] : factored->factors()) residual_den[chi] += mult;
    }
    if (!residual_num.is_zero())
        throw InconsistentExpansionError("expand_in_basis: target is not in the span of the basis");
    return coeffs;
}

} // namespace equiloc
