#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equiloc/character.hpp"
#include "equiloc/errors.hpp"
#include "equiloc/rational.hpp"

namespace equiloc {

using Exponents = std::vector<std::uint32_t>;

// Sparse multivariate polynomial with exact rational coefficients.
// The variable set is fixed at construction; stored terms never carry a zero
// coefficient. Term order is the lexicographic order on exponent vectors,
// which keeps iteration and printing deterministic.
class MultiPoly {
public:
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, Rational c) {
        MultiPoly p(nvars);
        if (!c.is_zero()) p.terms_.emplace(Exponents(nvars, 0), std::move(c));
        return p;
    }
    static MultiPoly variable(std::size_t nvars, std::size_t k, Rational c = Rational(1)) {
        if (k >= nvars) throw IndexError("MultiPoly::variable: index out of range");
        MultiPoly p(nvars);
        if (!c.is_zero()) {
            Exponents e(nvars, 0);
            e[k] = 1;
            p.terms_.emplace(std::move(e), std::move(c));
        }
        return p;
    }
    // The character as a degree-1 polynomial in t_1..t_r.
    static MultiPoly linear_form(const Character& chi) {
        MultiPoly p(chi.rank());
        for (std::size_t k = 0; k < chi.rank(); ++k) {
            if (chi[k] == 0) continue;
            Exponents e(chi.rank(), 0);
            e[k] = 1;
            p.terms_.emplace(std::move(e), Rational(BigInt(static_cast<long>(chi[k]))));
        }
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    Rational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Rational constant this polynomial equals, if it is one.
    std::optional<Rational> as_constant() const {
        if (terms_.empty()) return Rational(0);
        if (terms_.size() != 1) return std::nullopt;
        const auto& [e, c] = *terms_.begin();
        for (auto x : e) if (x != 0) return std::nullopt;
        return c;
    }

    long total_degree() const { // -1 for the zero polynomial
        long d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, term_degree(e));
        return d;
    }

    bool is_homogeneous(long* degree_out = nullptr) const {
        long d = -1;
        for (const auto& [e, c] : terms_) {
            long td = term_degree(e);
            if (d == -1) d = td;
            else if (d != td) return false;
        }
        if (degree_out) *degree_out = d;
        return true;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (e.size() != nvars_) throw VariableMismatchError("MultiPoly::add_term: exponent size");
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(const MultiPoly& a) {
        MultiPoly r(a.nvars_);
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_vars(b);
        MultiPoly r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea);
                for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly scaled(const Rational& s) const {
        MultiPoly r(nvars_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
        return r;
    }

    MultiPoly pow(unsigned k) const {
        MultiPoly r = constant(nvars_, 1);
        MultiPoly base = *this;
        while (k > 0) {
            if (k & 1u) r = r * base;
            base = (k >>= 1) ? base * base : base;
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }
    friend bool operator<(const MultiPoly& a, const MultiPoly& b) {
        if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
        return std::lexicographical_compare(
            a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
            [](const auto& x, const auto& y) {
                if (x.first != y.first) return x.first < y.first;
                return x.second < y.second;
            });
    }

    // Appends fresh variables (exponent 0 everywhere).
    MultiPoly padded(std::size_t new_nvars) const {
        if (new_nvars < nvars_) throw VariableMismatchError("MultiPoly::padded: shrinking");
        MultiPoly r(new_nvars);
        for (const auto& [e, c] : terms_) {
            Exponents ne(e);
            ne.resize(new_nvars, 0);
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    // Drops the last variable, which must not occur.
    MultiPoly dropped_last() const {
        if (nvars_ == 0) throw VariableMismatchError("MultiPoly::dropped_last: no variables");
        MultiPoly r(nvars_ - 1);
        for (const auto& [e, c] : terms_) {
            if (e.back() != 0) throw VariableMismatchError("MultiPoly::dropped_last: variable occurs");
            Exponents ne(e.begin(), e.end() - 1);
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    // Substitutes `value` (same ring) for variable k.
    MultiPoly substituted(std::size_t k, const MultiPoly& value) const {
        if (k >= nvars_) throw IndexError("MultiPoly::substituted: index");
        check_vars(value);
        // Cache powers of the replacement up to the max exponent of var k.
        std::uint32_t maxe = 0;
        for (const auto& [e, c] : terms_) maxe = std::max(maxe, e[k]);
        std::vector<MultiPoly> powers;
        powers.reserve(maxe + 1);
        powers.push_back(constant(nvars_, 1));
        for (std::uint32_t i = 1; i <= maxe; ++i) powers.push_back(powers.back() * value);
        MultiPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponents rest(e);
            const std::uint32_t ek = rest[k];
            rest[k] = 0;
            MultiPoly term(nvars_);
            term.terms_.emplace(std::move(rest), c);
            r += term * powers[ek];
        }
        return r;
    }

    std::uint32_t degree_in(std::size_t k) const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[k]);
        return d;
    }

    // Coefficient of var_k^power, as a polynomial with exponent 0 in var k.
    MultiPoly coefficient_of(std::size_t k, std::uint32_t power) const {
        MultiPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[k] != power) continue;
            Exponents ne(e);
            ne[k] = 0;
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    MultiPoly times_var_power(std::size_t k, std::uint32_t power) const {
        MultiPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponents ne(e);
            ne[k] += power;
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    // Exact division by a homogeneous linear polynomial (no constant term).
    // Returns nullopt when the divisor is not an exact factor.
    std::optional<MultiPoly> divided_by_linear(const MultiPoly& divisor) const {
        check_vars(divisor);
        long ddeg = -1;
        if (divisor.is_zero() || !divisor.is_homogeneous(&ddeg) || ddeg != 1)
            throw Error("MultiPoly::divided_by_linear: divisor must be homogeneous linear");
        if (is_zero()) return MultiPoly(nvars_);

        // Pivot variable: first one the divisor involves.
        std::size_t k = nvars_;
        Rational ck;
        for (const auto& [e, c] : divisor.terms_) {
            std::size_t idx = 0;
            while (e[idx] == 0) ++idx;
            if (k == nvars_ || idx < k) { k = idx; ck = c; }
        }
        MultiPoly tail = divisor; // divisor minus its pivot term
        {
            Exponents e(nvars_, 0);
            e[k] = 1;
            tail.add_term(e, -ck);
        }

        const std::uint32_t m = degree_in(k);
        MultiPoly quotient(nvars_);
        MultiPoly carry(nvars_);
        for (std::uint32_t i = m; i >= 1; --i) {
            MultiPoly cur = coefficient_of(k, i) + carry;
            MultiPoly qi = cur.scaled(ck.inverse());
            quotient += qi.times_var_power(k, i - 1);
            carry = -(qi * tail); // qi and tail are both free of var k
        }
        MultiPoly remainder = coefficient_of(k, 0) + carry;
        if (!remainder.is_zero()) return std::nullopt;
        return quotient;
    }

    std::optional<MultiPoly> divided_by_character(const Character& chi) const {
        if (chi.rank() != nvars_) throw VariableMismatchError("divided_by_character: rank");
        if (chi.is_zero()) throw Error("divided_by_character: zero character");
        return divided_by_linear(linear_form(chi));
    }

    Rational eval(const std::vector<std::int64_t>& point) const {
        if (point.size() != nvars_) throw VariableMismatchError("MultiPoly::eval: point size");
        Rational acc(0);
        for (const auto& [e, c] : terms_) {
            Rational m(1);
            for (std::size_t kk = 0; kk < nvars_; ++kk) {
                if (e[kk] == 0) continue;
                BigInt p;
                mpz_pow_ui(p.get_mpz_t(), BigInt(static_cast<long>(point[kk])).get_mpz_t(), e[kk]);
                m *= Rational(p);
            }
            acc += c * m;
        }
        return acc;
    }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rational coeff = c;
            if (first) {
                if (coeff.sign() < 0) { out += "-"; coeff = -coeff; }
            } else {
                out += coeff.sign() < 0 ? " - " : " + ";
                if (coeff.sign() < 0) coeff = -coeff;
            }
            std::string mono;
            for (std::size_t k = 0; k < nvars_; ++k) {
                if (e[k] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += k < names.size() ? names[k] : "t" + std::to_string(k + 1);
                if (e[k] > 1) mono += "^" + std::to_string(e[k]);
            }
            if (mono.empty()) {
                out += coeff.to_string();
            } else {
                if (coeff != Rational(1)) out += coeff.to_string() + "*";
                out += mono;
            }
            first = false;
        }
        return out;
    }

private:
    static long term_degree(const Exponents& e) {
        long d = 0;
        for (auto x : e) d += x;
        return d;
    }
    void check_vars(const MultiPoly& o) const {
        if (nvars_ != o.nvars_) throw VariableMismatchError("MultiPoly: variable-set mismatch");
    }

    std::size_t nvars_;
    std::map<Exponents, Rational> terms_;
};

// Elementary symmetric polynomials e_0..e_max of a character multiset,
// computed by the running product of (1 + chi * s).
inline std::vector<MultiPoly> elem_sym_all(const std::vector<Character>& chars, std::size_t max_index) {
    if (chars.empty() && max_index > 0)
        throw IndexError("elem_sym_all: index exceeds multiset size");
    const std::size_t rank = chars.empty() ? 0 : chars.front().rank();
    std::vector<MultiPoly> e;
    e.reserve(max_index + 1);
    e.push_back(MultiPoly::constant(rank, 1));
    for (std::size_t i = 1; i <= max_index; ++i) e.push_back(MultiPoly(rank));
    for (const auto& chi : chars) {
        const MultiPoly lin = MultiPoly::linear_form(chi);
        for (std::size_t i = std::min(max_index, chars.size()); i >= 1; --i) {
            e[i] += e[i - 1] * lin;
            if (i == 1) break;
        }
    }
    return e;
}

inline MultiPoly elem_sym(const std::vector<Character>& chars, std::size_t i) {
    if (i > chars.size()) throw IndexError("elem_sym: index out of range");
    return elem_sym_all(chars, i)[i];
}

} // namespace equiloc
