#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "equiloc/equiloc.hpp"

namespace testutil {

using namespace equiloc;

inline Character chr(std::vector<std::int64_t> v) { return Character(std::move(v)); }

struct Term {
    std::vector<std::uint32_t> exps;
    long num;
    long den = 1;
};

inline MultiPoly make_poly(std::size_t nvars, const std::vector<Term>& terms) {
    MultiPoly p(nvars);
    for (const auto& t : terms) p.add_term(t.exps, Rational(t.num, t.den));
    return p;
}

inline Character random_nonzero_character(std::mt19937_64& rng, std::size_t rank, int bound = 5) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    for (;;) {
        std::vector<std::int64_t> v(rank);
        for (auto& x : v) x = dist(rng);
        Character c(std::move(v));
        if (!c.is_zero()) return c;
    }
}

inline MultiPoly random_poly(std::mt19937_64& rng, std::size_t nvars, int max_terms = 5,
                             std::uint32_t max_exp = 3, int coeff_bound = 9) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<std::uint32_t> exp(0, max_exp);
    std::uniform_int_distribution<int> coeff(-coeff_bound, coeff_bound);
    MultiPoly p(nvars);
    const int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        std::vector<std::uint32_t> e(nvars);
        for (auto& x : e) x = exp(rng);
        p.add_term(e, Rational(coeff(rng)));
    }
    return p;
}

// Distinct rank-1 integer weights for a random projective-space action.
inline ProjectiveSpaceAction random_rank1_action(std::mt19937_64& rng, std::size_t n, int bound = 30) {
    std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
    for (;;) {
        std::vector<Character> ws;
        for (std::size_t i = 0; i <= n; ++i) ws.push_back(chr({dist(rng)}));
        ProjectiveSpaceAction action(1, ws);
        if (action.distinct_weights()) return action;
    }
}

// The singular-quadric setup: P^3 with weights (1,-1,0,a) in the rank-2
// encoding t -> t1, a*t -> t2. Points: p0, p1 on the quadric, p2 off it,
// p3 the cone point.
inline ProjectiveSpaceAction quadric_action() {
    return ProjectiveSpaceAction(2, {chr({1, 0}), chr({-1, 0}), chr({0, 0}), chr({0, 1})});
}

// The same quadric with a literal integer substituted for the symbolic weight.
inline ProjectiveSpaceAction quadric_action_rank1(std::int64_t a) {
    return ProjectiveSpaceAction(1, {chr({1}), chr({-1}), chr({0}), chr({a})});
}

inline ProjectiveSpaceAction plane_action() { // P^2 with weights (1,-1,a)
    return ProjectiveSpaceAction(2, {chr({1, 0}), chr({-1, 0}), chr({0, 1})});
}

} // namespace testutil
