#pragma once

// Exact torus-equivariant localization: fixed-point data, equivariant Chern
// classes, residue formulas on projective spaces and type-A flag varieties.

#include "equiloc/bundles.hpp"
#include "equiloc/character.hpp"
#include "equiloc/errors.hpp"
#include "equiloc/fixed_points.hpp"
#include "equiloc/localize.hpp"
#include "equiloc/localized.hpp"
#include "equiloc/multipoly.hpp"
#include "equiloc/permutation.hpp"
#include "equiloc/projective.hpp"
#include "equiloc/rational.hpp"
#include "equiloc/scenario.hpp"
#include "equiloc/schubert.hpp"
