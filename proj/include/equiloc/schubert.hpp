#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equiloc/character.hpp"
#include "equiloc/errors.hpp"
#include "equiloc/fixed_points.hpp"
#include "equiloc/localize.hpp"
#include "equiloc/localized.hpp"
#include "equiloc/multipoly.hpp"
#include "equiloc/permutation.hpp"

namespace equiloc {

// Positive roots of type A_{n-1} in the rank-n lattice: e_i - e_j for i < j.
inline std::vector<Character> positive_roots(std::size_t n) {
    std::vector<Character> roots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            roots.push_back(Character::basis(n, i) - Character::basis(n, j));
    return roots;
}

inline std::size_t num_positive_roots(std::size_t n) { return n * (n - 1) / 2; }

// Fixed points p_w of the torus on the full flag variety, in the order of
// all_permutations(n). The tangent characters at p_w are the w-translates of
// the negative roots: e_{w(j)} - e_{w(i)} for i < j.
inline FixedPointSpace flag_fixed_points(std::size_t n) {
    if (n < 2) throw Error("flag_fixed_points: need n >= 2");
    std::vector<FixedPoint> pts;
    for (const auto& w : all_permutations(n)) {
        FixedPoint p;
        p.label = w.to_string();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                p.tangent.push_back(Character::basis(n, w(j)) - Character::basis(n, w(i)));
        pts.push_back(std::move(p));
    }
    return FixedPointSpace(n, std::move(pts));
}

// Euler class at p_w as the signed product over positive roots:
//   c_w = (-1)^N (-1)^{l(w)} prod_{alpha > 0} alpha,  N = #positive roots.
inline FactoredClass c_w_class(std::size_t n, const Permutation& w) {
    const int sign = (num_positive_roots(n) + w.length()) % 2 == 0 ? 1 : -1;
    return FactoredClass(n, Rational(sign), positive_roots(n));
}

// An element of R (x) R: a polynomial in x_1..x_n (variables 0..n-1) and
// y_1..y_n (variables n..2n-1).
struct DoubleClass {
    std::size_t n = 0;
    MultiPoly poly{0};

    DoubleClass(std::size_t size, MultiPoly p) : n(size), poly(std::move(p)) {
        if (poly.nvars() != 2 * n) throw VariableMismatchError("DoubleClass: needs 2n variables");
    }

    long degree() const { return poly.total_degree(); }

    std::vector<std::string> names() const {
        std::vector<std::string> v;
        for (std::size_t k = 1; k <= n; ++k) v.push_back("x" + std::to_string(k));
        for (std::size_t k = 1; k <= n; ++k) v.push_back("y" + std::to_string(k));
        return v;
    }
};

namespace detail {

inline MultiPoly swap_x_vars(const MultiPoly& p, std::size_t a, std::size_t b) {
    MultiPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        Exponents ne(e);
        std::swap(ne[a], ne[b]);
        r.add_term(ne, c);
    }
    return r;
}

// Relabels the y block by the longest element: y_j -> y_{n+1-j}.
inline MultiPoly reverse_y_vars(const MultiPoly& p, std::size_t n) {
    MultiPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        Exponents ne(e);
        for (std::size_t j = 0; j < n / 2; ++j) std::swap(ne[n + j], ne[2 * n - 1 - j]);
        r.add_term(ne, c);
    }
    return r;
}

} // namespace detail

// Divided difference in the x variables (1-based position i):
//   (F - s_i^x F) / (x_i - x_{i+1}).
inline DoubleClass divided_difference_x(const DoubleClass& f, std::size_t i) {
    if (i < 1 || i >= f.n) throw IndexError("divided_difference_x: position out of range");
    MultiPoly swapped = detail::swap_x_vars(f.poly, i - 1, i);
    std::vector<std::int64_t> c(2 * f.n, 0);
    c[i - 1] = 1;
    c[i] = -1;
    auto q = (f.poly - swapped).divided_by_character(Character(std::move(c)));
    // Exact by construction: the numerator is antisymmetric in x_i, x_{i+1}.
    if (!q) throw Error("divided_difference_x: division failed");
    return DoubleClass(f.n, std::move(*q));
}

// The top double Schubert polynomial prod_{i+j <= n} (x_i - y_j).
inline DoubleClass fulton_top_class(std::size_t n) {
    MultiPoly p = MultiPoly::constant(2 * n, 1);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; i + j <= n; ++j)
            p *= MultiPoly::variable(2 * n, i - 1) - MultiPoly::variable(2 * n, n + j - 1);
    return DoubleClass(n, std::move(p));
}

// Double Schubert polynomials S_w, generated downward from the top class by
// divided differences in x. Memoized per family instance.
class FultonFamily {
public:
    explicit FultonFamily(std::size_t n) : n_(n) {}

    const MultiPoly& at(const Permutation& w) {
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
        MultiPoly value(2 * n_);
        if (w == Permutation::longest(n_)) {
            value = fulton_top_class(n_).poly;
        } else {
            // First ascent w(i) < w(i+1): S_w = d_i S_{w s_i}.
            std::size_t i = 1;
            while (w(i - 1) > w(i)) ++i;
            auto images = w.images();
            std::swap(images[i - 1], images[i]);
            const MultiPoly& higher = at(Permutation(std::move(images)));
            value = divided_difference_x(DoubleClass(n_, higher), i).poly;
        }
        return memo_.emplace(w, std::move(value)).first->second;
    }

    std::size_t n() const { return n_; }

private:
    std::size_t n_;
    std::map<Permutation, MultiPoly> memo_;
};

inline DoubleClass fulton_polynomial(std::size_t n, const Permutation& w) {
    FultonFamily fam(n);
    return DoubleClass(n, fam.at(w));
}

// Restriction to the fixed point p_u: x_i -> t_i and y_j -> t_{u(j)}.
inline MultiPoly restrict_double(const DoubleClass& f, const Permutation& u) {
    if (u.n() != f.n) throw Error("restrict_double: size mismatch");
    const std::size_t n = f.n;
    MultiPoly r(n);
    for (const auto& [e, c] : f.poly.terms()) {
        Exponents ne(n, 0);
        for (std::size_t i = 0; i < n; ++i) ne[i] += e[i];
        for (std::size_t j = 0; j < n; ++j) ne[u(j)] += e[n + j];
        r.add_term(ne, c);
    }
    return r;
}

// The convention freedom the localization formula leaves open: how Schubert
// cells index the descendant family, whether the y block is relabeled by w_0,
// which group element performs the restriction, and an overall sign pattern.
struct SchubertConvention {
    enum class IndexMap { w0v, vw0, vinv_w0, w0_vinv };
    IndexMap index = IndexMap::w0v;
    bool reverse_y = false;  // pre-relabel y_j -> y_{n+1-j} in the family
    bool inverse_u = false;  // restrict at u^{-1} instead of u
    bool sign_roots = false; // global factor (-1)^N
    bool sign_length = false; // factor (-1)^{l(v)}

    Permutation apply_index(const Permutation& v) const {
        const Permutation w0 = Permutation::longest(v.n());
        switch (index) {
            case IndexMap::w0v: return w0 * v;
            case IndexMap::vw0: return v * w0;
            case IndexMap::vinv_w0: return v.inverse() * w0;
            case IndexMap::w0_vinv: return w0 * v.inverse();
        }
        throw Error("SchubertConvention: bad index map");
    }

    std::string to_string() const {
        static const char* names[] = {"w0*v", "v*w0", "v^-1*w0", "w0*v^-1"};
        std::string s = "index=";
        s += names[static_cast<int>(index)];
        s += reverse_y ? ", y-block reversed" : ", y-block plain";
        s += inverse_u ? ", restrict at u^-1" : ", restrict at u";
        s += ", sign=";
        if (!sign_roots && !sign_length) s += "+1";
        else {
            if (sign_roots) s += "(-1)^N";
            if (sign_length) s += std::string(sign_roots ? "*" : "") + "(-1)^l(v)";
        }
        return s;
    }

    friend bool operator==(const SchubertConvention& a, const SchubertConvention& b) {
        return a.index == b.index && a.reverse_y == b.reverse_y && a.inverse_u == b.inverse_u
            && a.sign_roots == b.sign_roots && a.sign_length == b.sign_length;
    }
};

// The representative of f_*[X_v]_T under a convention.
inline DoubleClass double_schubert_with(FultonFamily& family, const Permutation& v,
                                        const SchubertConvention& conv) {
    const std::size_t n = family.n();
    MultiPoly p = family.at(conv.apply_index(v));
    if (conv.reverse_y) p = detail::reverse_y_vars(p, n);
    int exponent = (conv.sign_roots ? num_positive_roots(n) : 0)
                 + (conv.sign_length ? v.length() : 0);
    if (exponent % 2 != 0) p = -p;
    return DoubleClass(n, std::move(p));
}

// Raw localization coefficient of [X_v]_T at p_u under a convention:
//   (-1)^N (-1)^{l(u)} F_v(u) / prod_{alpha > 0} alpha.
inline LocalizedClass schubert_entry_with(FultonFamily& family, const Permutation& v,
                                          const Permutation& u, const SchubertConvention& conv) {
    const std::size_t n = family.n();
    const DoubleClass f = double_schubert_with(family, v, conv);
    const MultiPoly g = restrict_double(f, conv.inverse_u ? u.inverse() : u);
    const int sign = (num_positive_roots(n) + u.length()) % 2 == 0 ? 1 : -1;
    return LocalizedClass(g.scaled(Rational(sign)), positive_roots(n));
}

// Tangent weights of the open cell of X_v at p_v: the positive roots sent
// negative by v^{-1}. Their complement inside the tangent space of the flag
// variety is the normal space of X_v at its smooth point p_v, so the
// localization coefficient of [X_v]_T at p_v is 1 / prod(cell weights).
inline std::vector<Character> cell_weights(std::size_t n, const Permutation& v) {
    const Permutation vinv = v.inverse();
    std::vector<Character> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (vinv(i) > vinv(j))
                out.push_back(Character::basis(n, i) - Character::basis(n, j));
    return out;
}

namespace detail {

inline std::vector<SchubertConvention> all_conventions() {
    std::vector<SchubertConvention> out;
    using IM = SchubertConvention::IndexMap;
    for (IM im : {IM::w0v, IM::vw0, IM::vinv_w0, IM::w0_vinv})
        for (bool ry : {false, true})
            for (bool iu : {false, true})
                for (bool sr : {false, true})
                    for (bool sl : {false, true})
                        out.push_back(SchubertConvention{im, ry, iu, sr, sl});
    return out;
}

// Full raw table of a convention on S_n, entries indexed (v, u) in
// enumeration order.
inline std::vector<std::vector<LocalizedClass>> convention_tables(std::size_t n,
                                                                  const SchubertConvention& conv) {
    FultonFamily family(n);
    const auto perms = all_permutations(n);
    std::vector<std::vector<LocalizedClass>> tables;
    tables.reserve(perms.size());
    for (const auto& v : perms) {
        std::vector<LocalizedClass> row;
        row.reserve(perms.size());
        for (const auto& u : perms) row.push_back(schubert_entry_with(family, v, u, conv));
        tables.push_back(std::move(row));
    }
    return tables;
}

// Boundary validations forced by the geometry: the fundamental class
// localizes to 1/c_u, the point class to the delta table at e, every table is
// supported on the Bruhat interval below v, and the diagonal coefficient is
// the inverse cell Euler class 1/prod(cell weights).
inline bool validate_convention(std::size_t n, const SchubertConvention& conv) {
    const auto perms = all_permutations(n);
    const auto tables = convention_tables(n, conv);
    const Permutation e = Permutation::identity(n);
    const Permutation w0 = Permutation::longest(n);
    for (std::size_t vi = 0; vi < perms.size(); ++vi) {
        const auto& v = perms[vi];
        for (std::size_t ui = 0; ui < perms.size(); ++ui) {
            const auto& u = perms[ui];
            const auto& entry = tables[vi][ui];
            if (!bruhat_leq(u, v)) {
                if (!entry.is_zero()) return false;
                continue;
            }
            if (u == v && entry != invert(FactoredClass(n, 1, cell_weights(n, v)))) return false;
            if (v == w0 && entry != invert(c_w_class(n, u))) return false;
            if (v == e && entry != LocalizedClass::from_rational(n, u == e ? 1 : 0)) return false;
        }
    }
    return true;
}

} // namespace detail

// Selects the unique convention passing the S_2 and S_3 boundary validations.
// Functionally identical survivors (equal raw tables on both ranks) count as
// one; zero or several distinct survivors is a calibration failure.
inline const SchubertConvention& calibrated_convention() {
    static const SchubertConvention conv = [] {
        std::vector<SchubertConvention> survivors;
        std::vector<std::pair<std::vector<std::vector<LocalizedClass>>,
                              std::vector<std::vector<LocalizedClass>>>> tables;
        for (const auto& cand : detail::all_conventions()) {
            if (!detail::validate_convention(2, cand)) continue;
            if (!detail::validate_convention(3, cand)) continue;
            auto t2 = detail::convention_tables(2, cand);
            auto t3 = detail::convention_tables(3, cand);
            bool duplicate = false;
            for (const auto& [s2, s3] : tables)
                if (s2 == t2 && s3 == t3) { duplicate = true; break; }
            if (!duplicate) {
                survivors.push_back(cand);
                tables.emplace_back(std::move(t2), std::move(t3));
            }
        }
        if (survivors.empty())
            throw CalibrationError("schubert calibration: no convention passes the boundary validations");
        if (survivors.size() > 1)
            throw CalibrationError("schubert calibration: " + std::to_string(survivors.size())
                                   + " distinct conventions pass the boundary validations");
        return survivors.front();
    }();
    return conv;
}

// The calibrated representative of f_*[X_v]_T.
inline DoubleClass double_schubert(std::size_t n, const Permutation& v) {
    FultonFamily family(n);
    return double_schubert_with(family, v, calibrated_convention());
}

// Localization table of the Schubert class [X_v]_T over the fixed points
// p_u (indexed in all_permutations order): zero off the Bruhat interval,
// (-1)^N (-1)^{l(u)} F_v(u) / prod_{alpha>0} alpha on it.
inline LocalizationTable schubert_localize(std::size_t n, const Permutation& v) {
    const auto& conv = calibrated_convention();
    FultonFamily family(n);
    LocalizationTable table;
    for (const auto& u : all_permutations(n)) {
        if (bruhat_leq(u, v))
            table.entries.push_back(schubert_entry_with(family, v, u, conv));
        else
            table.entries.push_back(LocalizedClass::zero(n));
    }
    return table;
}

// Brion's equivariant multiplicity of X_w at p_u: the localized coefficient
// of [X_w]_T at the fixed point.
inline LocalizedClass equivariant_multiplicity(std::size_t n, const Permutation& w,
                                               const Permutation& u) {
    if (!bruhat_leq(u, w)) return LocalizedClass::zero(n);
    FultonFamily family(n);
    return schubert_entry_with(family, w, u, calibrated_convention());
}

} // namespace equiloc
