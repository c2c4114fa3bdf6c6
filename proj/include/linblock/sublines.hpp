#pragma once

#include <cstdint>
#include <optional>

#include "linblock/point_set.hpp"
#include "linblock/projective_space.hpp"

namespace linblock {

/// True iff the collinear set s (|s| = p^e + 1) is projectively equivalent to
/// PG(1,p^e) inside its line: after sending three of its points to infinity,
/// 0 and 1, every other point has a coordinate in GF(p^e).
/// Throws NotCollinear or WrongSize. Returns false when e does not divide t.
bool is_subline(const Geometry& g, const PointSet& s, std::uint32_t e);

/// is_subline with the subfield built once, for scans over many secants.
class SublineTester {
public:
    SublineTester(const Geometry& g, std::uint32_t e);
    bool operator()(const PointSet& s) const;

private:
    const Geometry* g_;
    std::uint32_t e_;
    std::uint64_t size_;
    std::optional<Subfield> sub_;
};

/// True iff the planar set s of q0^2+q0+1 points is an F_q0-subplane: every
/// pair of its points spans a line meeting s in a subline of q0+1 points and
/// any two of those lines meet inside s. Throws NotPlanar or WrongSize.
bool is_subplane(const Geometry& g, const PointSet& s, std::uint32_t q0);

} // namespace linblock
