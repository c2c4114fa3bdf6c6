#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "linblock/finite_field.hpp"
#include "linblock/linalg.hpp"
#include "linblock/point_set.hpp"

namespace linblock {

/// A subspace of PG(n,q), stored as the reduced echelon basis of the
/// underlying vector subspace. Equal subspaces have identical bases.
class Subspace {
public:
    Subspace() = default;
    /// Row-reduces rows over f. Zero rows are dropped.
    Subspace(const Field& f, Matrix rows, std::size_t ncoords);

    /// Projective dimension; -1 for the zero subspace.
    int dim() const noexcept { return static_cast<int>(basis_.size()) - 1; }
    std::size_t ncoords() const noexcept { return ncoords_; }
    const Matrix& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    bool contains(const Field& f, std::span<const Elem> v) const;
    /// Echelon basis of the annihilator (the dual subspace).
    Matrix dual_basis(const Field& f) const { return null_space(f, basis_, ncoords_); }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ncoords_ == b.ncoords_ && a.basis_ == b.basis_;
    }
    friend bool operator<(const Subspace& a, const Subspace& b) {
        return a.basis_ < b.basis_;
    }

private:
    Matrix basis_;
    std::vector<std::size_t> pivots_;
    std::size_t ncoords_ = 0;
};

struct GeometryOptions {
    bool materialize_lines = false;
    /// Lazy geometries have no point budget; indices are still computed
    /// arithmetically when the point count fits in 63 bits.
    bool lazy = false;
    std::uint64_t point_budget = std::uint64_t{1} << 27;
};

/// PG(n,q). Points are indexed by the rank of their normalized coordinate
/// tuple (leftmost nonzero coordinate equal to 1) in lexicographic order of
/// element codes. Hyperplanes are indexed the same way through their dual
/// vectors. Indices are computed arithmetically, so no point table is kept.
class Geometry {
public:
    static Geometry build(int n, FieldPtr field, GeometryOptions opts = {});

    int n() const noexcept { return n_; }
    std::size_t ncoords() const noexcept { return static_cast<std::size_t>(n_) + 1; }
    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    std::uint32_t q() const noexcept { return field_->q(); }

    bool indexable() const noexcept { return indexable_; }
    std::uint64_t num_points() const;
    std::uint64_t num_hyperplanes() const { return num_points(); }
    /// Points of PG(k,q) for this q; saturates at UINT64_MAX.
    std::uint64_t subspace_point_count(int k) const noexcept;

    /// Scales v so its leftmost nonzero coordinate is 1. Returns false for zero.
    bool normalize(std::span<Elem> v) const;
    /// Index of a normalized vector.
    std::uint64_t rank(std::span<const Elem> normalized) const;
    /// Index of the point spanned by v (v is not modified).
    std::uint64_t index_of(std::span<const Elem> v) const;
    Vec point(std::uint64_t index) const;
    void point_into(std::uint64_t index, std::span<Elem> out) const;

    /// Lines through pairs of points, when built with materialize_lines.
    const std::vector<PointSet>& lines() const { return lines_; }
    bool has_line_table() const noexcept { return !lines_.empty(); }

    Subspace line_through(std::uint64_t p, std::uint64_t q) const;
    Subspace span(const Matrix& vectors) const;
    Subspace span_points(const PointSet& points) const;
    Subspace whole_space() const;
    Subspace hyperplane(std::span<const Elem> dual) const;

    /// Calls fn on the normalized vector of every point of s.
    void for_each_point(const Subspace& s, const std::function<void(std::span<const Elem>)>& fn) const;
    PointSet points_of(const Subspace& s) const;

    /// Every hyperplane in index order, given by its dual vector.
    void for_each_hyperplane(const std::function<void(std::uint64_t, std::span<const Elem>)>& fn) const;
    /// Hyperplanes containing s, as normalized dual vectors.
    void for_each_hyperplane_through(const Subspace& s, const std::function<void(std::span<const Elem>)>& fn) const;
    std::uint64_t count_hyperplanes_through(const Subspace& s) const;

    std::optional<Subspace> intersect(const Subspace& a, const Subspace& b) const;
    PointSet set_meet(const PointSet& b, const Subspace& s) const;

    /// Applies the projectivity v -> M v (M given by rows) to every point.
    PointSet apply(const Matrix& m, const PointSet& b) const;

private:
    Geometry(int n, FieldPtr field) : n_(n), field_(std::move(field)) {}

    int n_ = 0;
    FieldPtr field_;
    bool indexable_ = false;
    std::uint64_t num_points_ = 0;
    std::vector<std::uint64_t> level_offset_;  // (q^m - 1)/(q - 1)
    std::vector<std::uint64_t> q_pow_;
    std::vector<PointSet> lines_;
};

/// Enumerates the normalized vectors of PG(k,q) in index order.
class ProjectiveCounter {
public:
    ProjectiveCounter(const Field& f, std::size_t ncoords);
    std::span<const Elem> current() const noexcept { return v_; }
    /// Advances; returns false after the last vector.
    bool next() noexcept;

private:
    std::uint32_t q_;
    Vec v_;
    std::size_t lead_;
};

} // namespace linblock
