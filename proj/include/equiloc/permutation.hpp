#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "equiloc/errors.hpp"

namespace equiloc {

// An element of S_n in one-line notation, stored 0-based: w(i) = images[i].
class Permutation {
public:
    explicit Permutation(std::vector<std::size_t> images) : w_(std::move(images)) {
        std::vector<bool> seen(w_.size(), false);
        for (auto v : w_) {
            if (v >= w_.size() || seen[v]) throw Error("Permutation: not a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> v(n);
        std::iota(v.begin(), v.end(), 0);
        return Permutation(std::move(v));
    }
    static Permutation longest(std::size_t n) { // w_0
        std::vector<std::size_t> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = n - 1 - i;
        return Permutation(std::move(v));
    }
    // Adjacent transposition s_i (1-based position i, swapping i and i+1).
    static Permutation adjacent(std::size_t n, std::size_t i) {
        if (i < 1 || i >= n) throw IndexError("Permutation::adjacent: position out of range");
        auto v = identity(n).w_;
        std::swap(v[i - 1], v[i]);
        return Permutation(std::move(v));
    }

    std::size_t n() const { return w_.size(); }
    std::size_t operator()(std::size_t i) const { return w_[i]; }
    const std::vector<std::size_t>& images() const { return w_; }

    Permutation inverse() const {
        std::vector<std::size_t> v(w_.size());
        for (std::size_t i = 0; i < w_.size(); ++i) v[w_[i]] = i;
        return Permutation(std::move(v));
    }

    // Composition (a*b)(i) = a(b(i)).
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.n() != b.n()) throw Error("Permutation: size mismatch");
        std::vector<std::size_t> v(a.n());
        for (std::size_t i = 0; i < a.n(); ++i) v[i] = a.w_[b.w_[i]];
        return Permutation(std::move(v));
    }

    std::size_t length() const { // inversion count
        std::size_t l = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            for (std::size_t j = i + 1; j < w_.size(); ++j)
                if (w_[i] > w_[j]) ++l;
        return l;
    }
    int sign() const { return length() % 2 == 0 ? 1 : -1; }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.w_ == b.w_; }
    friend bool operator!=(const Permutation& a, const Permutation& b) { return a.w_ != b.w_; }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.w_ < b.w_; }

    std::string to_string() const { // one-line, 1-based: "213"
        std::string s;
        for (auto v : w_) {
            if (w_.size() > 9) s += (s.empty() ? "" : ".") + std::to_string(v + 1);
            else s += std::to_string(v + 1);
        }
        return s;
    }

private:
    std::vector<std::size_t> w_;
};

// All of S_n in lexicographic one-line order; the index of a permutation in
// this list is its fixed-point id on the flag variety.
inline std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

// Bruhat order by the tableau criterion: u <= v iff for every prefix length k
// the sorted prefix of u is entrywise <= the sorted prefix of v.
inline bool bruhat_leq(const Permutation& u, const Permutation& v) {
    if (u.n() != v.n()) throw Error("bruhat_leq: size mismatch");
    const std::size_t n = u.n();
    std::vector<std::size_t> pu, pv;
    pu.reserve(n);
    pv.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        pu.insert(std::upper_bound(pu.begin(), pu.end(), u(k)), u(k));
        pv.insert(std::upper_bound(pv.begin(), pv.end(), v(k)), v(k));
        for (std::size_t j = 0; j <= k; ++j)
            if (pu[j] > pv[j]) return false;
    }
    return true;
}

} // namespace equiloc
