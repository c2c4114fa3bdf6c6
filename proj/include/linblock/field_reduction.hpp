#pragma once

#include <cstdint>
#include <span>

#include "linblock/finite_field.hpp"
#include "linblock/point_set.hpp"
#include "linblock/projective_space.hpp"

namespace linblock {

/// Field reduction of PG(n, q0^h) onto PG(h(n+1)-1, q0).
///
/// A vector (v_0, ..., v_n) over GF(q) is mapped coordinate-wise to its
/// coefficients in the basis {1, d, ..., d^(h-1)} of GF(q) over GF(q0), where d
/// is the class of x in the modulus representation. Coordinate j of the big
/// space therefore occupies reduced coordinates j*h .. j*h + h-1.
///
/// Reduced subspaces are Subspace values over the small field. The reduced
/// geometry is lazy: PG(15,7) or PG(19,11) are never enumerated, and their
/// points are compared by normalized coordinates rather than by index.
class SpreadContext {
public:
    SpreadContext(const Geometry& big, std::uint32_t e);

    const Geometry& big() const noexcept { return big_; }
    const Geometry& reduced() const noexcept { return reduced_; }
    const Subfield& subfield() const noexcept { return sub_; }
    const Field& small_field() const noexcept { return *sub_.small(); }
    std::uint32_t h() const noexcept { return h_; }
    std::uint32_t q0() const noexcept { return sub_.order(); }

    Vec reduce(std::span<const Elem> big_vec) const;
    Vec lift(std::span<const Elem> reduced_vec) const;
    /// Index (in the big geometry) of the spread element containing the
    /// reduced point w.
    std::uint64_t big_point_of(std::span<const Elem> reduced_vec) const;

    /// The (h-1)-dimensional spread element of the big point p.
    Subspace spread_element(std::uint64_t p) const;

    /// B(U) for the GF(q0)-span U of the generators, computed in the big
    /// space without going through the reduction map.
    PointSet linear_set_from_vectors(const Matrix& generators) const;

    /// B(pi): the big points whose spread elements meet pi. Enumerates the
    /// points of pi, never the spread.
    PointSet linear_set_from_subspace(const Subspace& pi) const;

    /// The reduced line through x whose linear set is the subline s.
    /// Throws NotASubline, NotMember (x outside the spread element of p) or
    /// LiftInconsistent when no unique transversal reproduces s.
    Subspace lift_subline(const PointSet& s, std::uint64_t p, std::span<const Elem> x) const;

    /// Reduced line spanned by two reduced vectors.
    Subspace reduced_span(const Matrix& vectors) const { return reduced_.span(vectors); }

private:
    Geometry big_;
    Subfield sub_;
    std::uint32_t h_;
    Geometry reduced_;
    std::vector<Elem> basis_;    // d^i as big-field codes
    std::vector<Elem> decomp_;   // q * h small-field codes
};

} // namespace linblock
