#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "equiloc/errors.hpp"
#include "equiloc/rational.hpp"

namespace equiloc {

// A character of a rank-r torus: an integer vector, read as the linear form
// sum coeffs[k] * t_{k+1} of degree 1.
class Character {
public:
    Character() = default;
    explicit Character(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) {}

    static Character zero(std::size_t rank) { return Character(std::vector<std::int64_t>(rank, 0)); }
    static Character basis(std::size_t rank, std::size_t k) {
        std::vector<std::int64_t> v(rank, 0);
        if (k >= rank) throw IndexError("Character::basis: index out of range");
        v[k] = 1;
        return Character(v);
    }

    std::size_t rank() const { return c_.size(); }
    std::int64_t operator[](std::size_t k) const { return c_[k]; }
    const std::vector<std::int64_t>& coeffs() const { return c_; }

    bool is_zero() const {
        for (auto x : c_) if (x != 0) return false;
        return true;
    }

    friend Character operator+(const Character& a, const Character& b) {
        check_rank(a, b);
        std::vector<std::int64_t> v(a.c_);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += b.c_[k];
        return Character(v);
    }
    friend Character operator-(const Character& a, const Character& b) {
        check_rank(a, b);
        std::vector<std::int64_t> v(a.c_);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= b.c_[k];
        return Character(v);
    }
    friend Character operator-(const Character& a) {
        std::vector<std::int64_t> v(a.c_);
        for (auto& x : v) x = -x;
        return Character(v);
    }
    friend Character operator*(std::int64_t s, const Character& a) {
        std::vector<std::int64_t> v(a.c_);
        for (auto& x : v) x *= s;
        return Character(v);
    }

    friend bool operator==(const Character& a, const Character& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Character& a, const Character& b) { return a.c_ != b.c_; }
    friend bool operator<(const Character& a, const Character& b) { return a.c_ < b.c_; }

    // Content of the coefficient vector (gcd, nonnegative; 0 for the zero character).
    std::int64_t content() const {
        std::int64_t g = 0;
        for (auto x : c_) g = std::gcd(g, x < 0 ? -x : x);
        return g;
    }

    // Splits into primitive direction and integer scale so that
    // (*this) = scale * primitive, with the primitive form having content 1
    // and a positive first nonzero entry. Must not be the zero character.
    struct Primitive;
    Primitive primitive() const;

    // Value of the linear form at an integer point.
    Rational eval(const std::vector<std::int64_t>& point) const {
        if (point.size() != c_.size()) throw VariableMismatchError("Character::eval: wrong point size");
        BigInt acc(0);
        for (std::size_t k = 0; k < c_.size(); ++k) acc += BigInt(static_cast<long>(c_[k])) * static_cast<long>(point[k]);
        return Rational(acc);
    }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        std::string out;
        bool first = true;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            std::int64_t v = c_[k];
            if (first) {
                if (v < 0) { out += "-"; v = -v; }
            } else {
                out += v < 0 ? " - " : " + ";
                if (v < 0) v = -v;
            }
            const std::string name = k < names.size() ? names[k] : "t" + std::to_string(k + 1);
            if (v != 1) out += std::to_string(v) + "*";
            out += name;
            first = false;
        }
        return first ? "0" : out;
    }

private:
    static void check_rank(const Character& a, const Character& b) {
        if (a.rank() != b.rank()) throw VariableMismatchError("Character: rank mismatch");
    }

    std::vector<std::int64_t> c_;
};

struct Character::Primitive {
    Character direction;
    std::int64_t scale;
};

inline Character::Primitive Character::primitive() const {
    std::int64_t g = content();
    if (g == 0) throw Error("Character: zero character has no primitive form");
    std::vector<std::int64_t> v(c_);
    for (auto& x : v) x /= g;
    for (auto x : v) {
        if (x == 0) continue;
        if (x < 0) {
            for (auto& y : v) y = -y;
            g = -g;
        }
        break;
    }
    return Primitive{Character(v), g};
}

} // namespace equiloc
