#pragma once

#include <string>
#include <vector>

#include "equiloc/character.hpp"
#include "equiloc/errors.hpp"

namespace equiloc {

struct FixedPoint {
    std::string label;
    std::vector<Character> tangent; // nonzero tangent characters, with multiplicity
};

// A smooth T-variety with isolated fixed points, recorded extensionally: one
// entry per point with its tangent character multiset. Points are addressed
// by their index in `points`.
struct FixedPointSpace {
    std::size_t rank = 0; // torus rank
    std::vector<FixedPoint> points;

    FixedPointSpace() = default;
    FixedPointSpace(std::size_t torus_rank, std::vector<FixedPoint> pts)
        : rank(torus_rank), points(std::move(pts)) {
        if (points.empty()) throw Error("FixedPointSpace: no fixed points");
        const std::size_t d = points.front().tangent.size();
        for (const auto& p : points) {
            if (p.tangent.size() != d)
                throw Error("FixedPointSpace: tangent multisets of unequal size");
            for (const auto& chi : p.tangent) {
                if (chi.rank() != rank)
                    throw VariableMismatchError("FixedPointSpace: character rank mismatch");
                if (chi.is_zero())
                    throw Error("FixedPointSpace: zero tangent character at " + p.label);
            }
        }
    }

    std::size_t dim() const { return points.front().tangent.size(); }
    std::size_t size() const { return points.size(); }

    const FixedPoint& at(std::size_t i) const {
        if (i >= points.size()) throw UnknownPointError("FixedPointSpace: unknown point id");
        return points[i];
    }
};

} // namespace equiloc
