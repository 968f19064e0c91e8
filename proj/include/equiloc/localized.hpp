#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "equiloc/character.hpp"
#include "equiloc/errors.hpp"
#include "equiloc/multipoly.hpp"
#include "equiloc/rational.hpp"

namespace equiloc {

// Multiset of primitive nonzero characters, e.g. a denominator or a factored
// Euler class. Characters are stored with content 1 and positive leading
// entry; contents and signs live in an explicit scalar where one is carried.
using CharacterMultiset = std::map<Character, std::uint32_t>;

inline MultiPoly expand_multiset(std::size_t rank, const CharacterMultiset& ms) {
    MultiPoly p = MultiPoly::constant(rank, 1);
    for (const auto& [chi, mult] : ms)
        p *= MultiPoly::linear_form(chi).pow(mult);
    return p;
}

inline long multiset_degree(const CharacterMultiset& ms) {
    long d = 0;
    for (const auto& [chi, mult] : ms) d += mult;
    return d;
}

// A nonzero product  scalar * prod(primitive characters).  The factored form
// is what makes Euler classes invertible without any polynomial division.
class FactoredClass {
public:
    FactoredClass(std::size_t rank, Rational scalar, const std::vector<Character>& factors)
        : rank_(rank), scalar_(std::move(scalar)) {
        if (scalar_.is_zero()) throw Error("FactoredClass: zero scalar");
        for (const auto& chi : factors) {
            if (chi.rank() != rank_) throw VariableMismatchError("FactoredClass: rank mismatch");
            if (chi.is_zero()) throw Error("FactoredClass: zero factor");
            auto prim = chi.primitive();
            scalar_ *= Rational(BigInt(static_cast<long>(prim.scale)));
            ++factors_[prim.direction];
        }
    }

    static FactoredClass one(std::size_t rank) { return FactoredClass(rank, 1, {}); }

    std::size_t rank() const { return rank_; }
    const Rational& scalar() const { return scalar_; }
    const CharacterMultiset& factors() const { return factors_; }
    long degree() const { return multiset_degree(factors_); }

    MultiPoly expand() const { return expand_multiset(rank_, factors_).scaled(scalar_); }

    friend FactoredClass operator*(const FactoredClass& a, const FactoredClass& b) {
        if (a.rank_ != b.rank_) throw VariableMismatchError("FactoredClass: rank mismatch");
        FactoredClass r = a;
        r.scalar_ *= b.scalar_;
        for (const auto& [chi, mult] : b.factors_) r.factors_[chi] += mult;
        return r;
    }

    friend bool operator==(const FactoredClass& a, const FactoredClass& b) {
        return a.rank_ == b.rank_ && a.scalar_ == b.scalar_ && a.factors_ == b.factors_;
    }

private:
    std::size_t rank_;
    Rational scalar_;
    CharacterMultiset factors_;
};

// A fraction  numerator / prod(primitive characters).  Canonical form: no
// denominator factor divides the numerator exactly, and the zero class has an
// empty denominator. All arithmetic restores canonical form on the way out.
class LocalizedClass {
public:
    explicit LocalizedClass(MultiPoly numerator)
        : num_(std::move(numerator)) {}

    LocalizedClass(MultiPoly numerator, CharacterMultiset denominator)
        : num_(std::move(numerator)), den_(std::move(denominator)) {
        normalize();
    }

    LocalizedClass(MultiPoly numerator, const std::vector<Character>& denominator_factors)
        : num_(std::move(numerator)) {
        for (const auto& chi : denominator_factors) {
            if (chi.is_zero()) throw Error("LocalizedClass: zero denominator factor");
            auto prim = chi.primitive();
            num_ = num_.scaled(Rational(BigInt(1), BigInt(static_cast<long>(prim.scale))));
            ++den_[prim.direction];
        }
        normalize();
    }

    static LocalizedClass zero(std::size_t rank) { return LocalizedClass(MultiPoly(rank)); }
    static LocalizedClass from_rational(std::size_t rank, const Rational& c) {
        return LocalizedClass(MultiPoly::constant(rank, c));
    }

    std::size_t rank() const { return num_.nvars(); }
    const MultiPoly& numerator() const { return num_; }
    const CharacterMultiset& denominator() const { return den_; }
    MultiPoly denominator_poly() const { return expand_multiset(rank(), den_); }
    bool is_zero() const { return num_.is_zero(); }

    friend LocalizedClass operator+(const LocalizedClass& a, const LocalizedClass& b) {
        if (a.rank() != b.rank()) throw VariableMismatchError("LocalizedClass: rank mismatch");
        CharacterMultiset common = a.den_;
        for (const auto& [chi, mult] : b.den_) {
            auto& m = common[chi];
            m = std::max(m, mult);
        }
        MultiPoly num = a.num_ * expand_multiset(a.rank(), multiset_difference(common, a.den_))
                      + b.num_ * expand_multiset(a.rank(), multiset_difference(common, b.den_));
        return LocalizedClass(std::move(num), std::move(common));
    }

    friend LocalizedClass operator*(const LocalizedClass& a, const LocalizedClass& b) {
        if (a.rank() != b.rank()) throw VariableMismatchError("LocalizedClass: rank mismatch");
        CharacterMultiset den = a.den_;
        for (const auto& [chi, mult] : b.den_) den[chi] += mult;
        return LocalizedClass(a.num_ * b.num_, std::move(den));
    }

    friend LocalizedClass operator*(const LocalizedClass& a, const MultiPoly& p) {
        return LocalizedClass(a.num_ * p, a.den_);
    }

    LocalizedClass scaled(const Rational& s) const {
        if (s.is_zero()) return zero(rank());
        return LocalizedClass(num_.scaled(s), den_);
    }

    friend bool operator==(const LocalizedClass& a, const LocalizedClass& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const LocalizedClass& a, const LocalizedClass& b) { return !(a == b); }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        std::string out = num_.to_string(names);
        if (den_.empty()) return out;
        std::string den;
        for (const auto& [chi, mult] : den_) {
            if (!den.empty()) den += "*";
            den += "(" + chi.to_string(names) + ")";
            if (mult > 1) den += "^" + std::to_string(mult);
        }
        return "(" + out + ") / (" + den + ")";
    }

private:
    static CharacterMultiset multiset_difference(const CharacterMultiset& a, const CharacterMultiset& b) {
        CharacterMultiset r;
        for (const auto& [chi, mult] : a) {
            auto it = b.find(chi);
            std::uint32_t keep = mult - (it == b.end() ? 0 : it->second);
            if (keep > 0) r[chi] = keep;
        }
        return r;
    }

    // Trial-divides every denominator factor into the numerator until nothing
    // cancels. Idempotent by construction.
    void normalize() {
        if (num_.is_zero()) {
            den_.clear();
            return;
        }
        bool progress = true;
        while (progress) {
            progress = false;
            for (auto it = den_.begin(); it != den_.end();) {
                if (auto q = num_.divided_by_character(it->first)) {
                    num_ = std::move(*q);
                    if (--it->second == 0) it = den_.erase(it);
                    progress = true;
                    if (num_.is_zero()) {
                        den_.clear();
                        return;
                    }
                } else {
                    ++it;
                }
            }
        }
    }

    MultiPoly num_;
    CharacterMultiset den_;
};

// Inversion of a factored product: 1 / (s * prod chi) = (1/s) / prod chi.
inline LocalizedClass invert(const FactoredClass& f) {
    return LocalizedClass(MultiPoly::constant(f.rank(), f.scalar().inverse()), f.factors());
}

struct ConstantValueOptions {
    std::uint64_t seed = 0;
    int retries = 8;        // resampling budget per evaluation point
    int cross_checks = 2;   // generic-point evaluations
    std::int64_t coordinate_range = 1000;
};

// Extracts the rational constant a degree-0 fraction is equal to. The exact
// polynomial identity numerator = c * prod(denominator) is the proof; generic
// integer substitutions are kept as a redundant cross-check.
inline Rational constant_value(const LocalizedClass& f, const ConstantValueOptions& opts = {}) {
    if (f.is_zero()) return Rational(0);

    long num_deg = -1;
    if (!f.numerator().is_homogeneous(&num_deg))
        throw DegreeMismatchError("constant_value: numerator not homogeneous");
    if (num_deg != multiset_degree(f.denominator()))
        throw DegreeMismatchError("constant_value: fraction not of degree 0");

    // Canonical form already divided out every denominator factor that could
    // cancel, so a constant fraction must sit fully reduced.
    LocalizedClass reduced(f.numerator(), f.denominator());
    if (!reduced.denominator().empty()) throw NotConstantError("constant_value: denominator persists");
    auto c = reduced.numerator().as_constant();
    if (!c) throw NotConstantError("constant_value: numerator not constant");

    // Exact identity check against the original data.
    const MultiPoly den = f.denominator_poly();
    if (f.numerator() != den.scaled(*c))
        throw NotConstantError("constant_value: identity check failed");

    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::int64_t> dist(-opts.coordinate_range, opts.coordinate_range);
    for (int check = 0; check < opts.cross_checks; ++check) {
        int attempt = 0;
        for (;;) {
            std::vector<std::int64_t> point(f.rank());
            for (auto& x : point) x = dist(rng);
            Rational dval = den.eval(point);
            if (dval.is_zero()) {
                if (++attempt > opts.retries)
                    throw EvaluationRetryError("constant_value: denominator kept vanishing");
                continue;
            }
            if (f.numerator().eval(point) / dval != *c)
                throw NotConstantError("constant_value: substitution cross-check failed");
            break;
        }
    }
    return *c;
}

namespace detail {

// One linear factor of a homogeneous polynomial that is (conjecturally) a
// product of linear forms. Returns the primitive character, or nullopt.
inline std::optional<Character> find_linear_factor(const MultiPoly& p) {
    const std::size_t n = p.nvars();

    // Variables occurring in p.
    std::vector<std::size_t> vars;
    for (std::size_t k = 0; k < n; ++k)
        if (p.degree_in(k) > 0) vars.push_back(k);
    if (vars.empty()) return std::nullopt;

    // Plain variable factors first.
    for (auto k : vars) {
        Character chi = Character::basis(n, k);
        if (p.divided_by_character(chi)) return chi;
    }

    long deg = 0;
    if (!p.is_homogeneous(&deg)) return std::nullopt;
    if (deg == 1) {
        // p is itself a linear form; clear denominators and primitivize.
        BigInt lcm(1);
        for (const auto& [e, c] : p.terms()) {
            BigInt d = c.denominator();
            BigInt g;
            mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
            lcm = lcm / g * d;
        }
        std::vector<std::int64_t> coeffs(n, 0);
        for (const auto& [e, c] : p.terms()) {
            std::size_t idx = 0;
            while (e[idx] == 0) ++idx;
            BigInt v = c.numerator() * (lcm / c.denominator());
            if (!v.fits_slong_p()) return std::nullopt;
            coeffs[idx] = v.get_si();
        }
        return Character(coeffs).primitive().direction;
    }

    // Two active variables: homogeneous bivariate splitting over Q by the
    // rational root theorem.
    if (vars.size() == 2) {
        const std::size_t a = vars[0], b = vars[1];
        // p = sum c_k * t_a^k t_b^(deg-k); monomial factors were stripped above,
        // so c_0 != 0 and c_deg != 0.
        std::vector<Rational> coef(static_cast<std::size_t>(deg) + 1, Rational(0));
        for (const auto& [e, c] : p.terms()) coef[e[a]] = c;
        // Clear denominators.
        BigInt lcm(1);
        for (const auto& c : coef) {
            BigInt d = c.denominator();
            BigInt g;
            mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
            lcm = lcm / g * d;
        }
        std::vector<BigInt> ic;
        ic.reserve(coef.size());
        for (const auto& c : coef) ic.push_back(c.numerator() * (lcm / c.denominator()));
        // Candidate roots u/v with u | ic[0], v | ic[deg]; candidates are
        // enumerated by bounded trial division.
        auto divisors = [](const BigInt& x) {
            std::vector<std::int64_t> out;
            BigInt ax = abs(x);
            if (!ax.fits_slong_p()) return out; // refuse to enumerate huge constants
            const std::int64_t v = ax.get_si();
            if (v > 1000000000000) return out; // trial division stays bounded
            for (std::int64_t d = 1; d * d <= v; ++d) {
                if (v % d != 0) continue;
                out.push_back(d);
                if (d != v / d) out.push_back(v / d);
            }
            return out;
        };
        const auto us = divisors(ic.front());
        const auto vs = divisors(ic.back());
        for (auto u : us) {
            for (auto v : vs) {
                for (int su : {1, -1}) {
                    // root t_a/t_b = su*u/v  <->  factor v*t_a - su*u*t_b
                    std::vector<std::int64_t> cc(n, 0);
                    cc[a] = v;
                    cc[b] = -su * u;
                    Character chi = Character(cc).primitive().direction;
                    if (p.divided_by_character(chi)) return chi;
                }
            }
        }
        return std::nullopt;
    }

    // Three or more active variables: assemble candidates from two-variable
    // projections and verify each by exact division.
    {
        const std::size_t k = vars[0];
        // ratios[j] = candidate values of coeff_j / coeff_k for a factor
        // containing t_k, read off the (k, j)-projection.
        std::vector<std::vector<Rational>> ratios;
        std::vector<std::size_t> others;
        bool informative = true;
        for (std::size_t jj = 1; jj < vars.size(); ++jj) {
            const std::size_t j = vars[jj];
            MultiPoly proj = p;
            for (auto v2 : vars)
                if (v2 != k && v2 != j) proj = proj.substituted(v2, MultiPoly(p.nvars()));
            if (proj.is_zero()) { informative = false; break; }
            std::vector<Rational> rs{Rational(0)};
            // Linear factors of the projection containing t_k give the ratios.
            MultiPoly rest = proj;
            for (;;) {
                auto f = find_linear_factor(rest);
                if (!f) break;
                if ((*f)[k] != 0)
                    rs.push_back(Rational(BigInt(static_cast<long>((*f)[j])), BigInt(static_cast<long>((*f)[k]))));
                rest = *rest.divided_by_character(*f);
                if (rest.total_degree() <= 0) break;
            }
            others.push_back(j);
            ratios.push_back(std::move(rs));
        }
        if (informative) {
            // Cartesian assembly, capped; every candidate is verified.
            std::size_t total = 1;
            for (const auto& rs : ratios) {
                total *= rs.size();
                if (total > 512) return std::nullopt;
            }
            for (std::size_t idx = 0; idx < total; ++idx) {
                std::size_t rem = idx;
                // Build t_k + sum ratio_j t_j, then clear denominators.
                BigInt lcm(1);
                std::vector<Rational> chosen(others.size());
                for (std::size_t jj = 0; jj < others.size(); ++jj) {
                    chosen[jj] = ratios[jj][rem % ratios[jj].size()];
                    rem /= ratios[jj].size();
                    BigInt d = chosen[jj].denominator();
                    BigInt g;
                    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
                    lcm = lcm / g * d;
                }
                if (!lcm.fits_slong_p()) continue;
                std::vector<std::int64_t> cc(n, 0);
                cc[k] = lcm.get_si();
                bool ok = true;
                for (std::size_t jj = 0; jj < others.size(); ++jj) {
                    BigInt v = chosen[jj].numerator() * (lcm / chosen[jj].denominator());
                    if (!v.fits_slong_p()) { ok = false; break; }
                    cc[others[jj]] = v.get_si();
                }
                if (!ok) continue;
                Character chi = Character(cc).primitive().direction;
                if (p.divided_by_character(chi)) return chi;
            }
        }
        return std::nullopt;
    }
}

} // namespace detail

// Factors a polynomial into scalar * product of primitive characters, when it
// is such a product with factors discoverable by trial division and bivariate
// splitting. Returns nullopt otherwise (no wrong answers: every factor found
// is verified by exact division).
inline std::optional<FactoredClass> factor_into_characters(const MultiPoly& p) {
    if (p.is_zero()) return std::nullopt;
    if (auto c = p.as_constant()) return FactoredClass(p.nvars(), *c, {});
    if (!p.is_homogeneous()) return std::nullopt;

    MultiPoly rest = p;
    std::vector<Character> factors;
    while (true) {
        if (auto c = rest.as_constant())
            return FactoredClass(p.nvars(), *c, factors);
        auto chi = detail::find_linear_factor(rest);
        if (!chi) return std::nullopt;
        factors.push_back(*chi);
        rest = *rest.divided_by_character(*chi);
    }
}

} // namespace equiloc
