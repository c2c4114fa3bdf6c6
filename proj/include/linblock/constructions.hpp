#pragma once

#include <cstdint>
#include <random>

#include "linblock/field_reduction.hpp"
#include "linblock/point_set.hpp"
#include "linblock/projective_space.hpp"

namespace linblock {

/// The line through (0,...,0,1) and (0,...,0,1,0).
PointSet full_line(const Geometry& g);

/// PG(dim, p^e) embedded in the first dim+1 coordinates: all points whose
/// normalized coordinates lie in GF(p^e), remaining coordinates zero.
/// For dim = 2 and e = t/2 this is a Baer subplane.
PointSet subgeometry(const Geometry& g, std::uint32_t e, int dim);

/// Generators of U = {(x, x^q0, ..., x^(q0^(n-1)), c) : x in GF(q), c in GF(q0)}
/// over GF(q0), rank h+1. Its linear set is a scattered small minimal
/// blocking set when the x-part is a GF(q0)-linear injection.
Matrix frobenius_generators(const SpreadContext& ctx);

struct RandomLinearSet {
    Subspace pi;       // reduced subspace of rank `rank`
    Matrix generators; // the same subspace as vectors of the big space
    PointSet set;      // B(pi)
};

/// A uniformly random rank-`rank` subspace of the reduced space (rejection on
/// rank deficiency) and its linear set.
RandomLinearSet random_linear_set(const SpreadContext& ctx, std::uint32_t rank, std::mt19937_64& rng);

/// Adds `extra` points off the line chosen by rng (distinct, outside the line).
PointSet line_plus_points(const Geometry& g, std::size_t extra, std::mt19937_64& rng);

} // namespace linblock
