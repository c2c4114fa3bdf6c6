#include "linblock/projective_space.hpp"

#include <limits>
#include <string>

namespace linblock {

Subspace::Subspace(const Field& f, Matrix rows, std::size_t ncoords) : ncoords_(ncoords) {
    for (const auto& r : rows)
        if (r.size() != ncoords) throw Error(ErrorKind::DimensionMismatch, "row length differs from ambient dimension");
    rref(f, rows, ncoords);
    basis_ = std::move(rows);
    pivots_ = pivot_columns(basis_);
}

bool Subspace::contains(const Field& f, std::span<const Elem> v) const {
    Vec w(v.begin(), v.end());
    reduce_against(f, basis_, pivots_, w);
    for (auto x : w)
        if (x) return false;
    return true;
}

ProjectiveCounter::ProjectiveCounter(const Field& f, std::size_t ncoords)
    : q_(f.q()), v_(ncoords, 0), lead_(ncoords - 1) {
    v_[lead_] = 1;
}

bool ProjectiveCounter::next() noexcept {
    for (std::size_t i = v_.size(); i-- > lead_ + 1;) {
        if (++v_[i] < q_) return true;
        v_[i] = 0;
    }
    if (lead_ == 0) return false;
    v_[lead_] = 0;
    --lead_;
    v_[lead_] = 1;
    return true;
}

Geometry Geometry::build(int n, FieldPtr field, GeometryOptions opts) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "projective dimension must be at least 1");
    Geometry g(n, std::move(field));
    const std::uint64_t q = g.q();
    const std::uint64_t limit = std::uint64_t{1} << 63;
    g.level_offset_.push_back(0);
    g.q_pow_.push_back(1);
    bool fits = true;
    for (int m = 1; m <= n + 1; ++m) {
        const auto prev_pow = g.q_pow_.back();
        const auto prev_off = g.level_offset_.back();
        if (prev_pow > limit / q || prev_off + prev_pow >= limit) {
            fits = false;
            break;
        }
        g.q_pow_.push_back(prev_pow * q);
        g.level_offset_.push_back(prev_off + prev_pow);
    }
    g.indexable_ = fits;
    if (fits) g.num_points_ = g.level_offset_[static_cast<std::size_t>(n) + 1];
    if (!opts.lazy) {
        if (!fits || g.num_points_ > opts.point_budget)
            throw Error(ErrorKind::BudgetExceeded, "PG(" + std::to_string(n) + "," + std::to_string(q) +
                                                       ") exceeds the point budget");
    }
    if (opts.materialize_lines) {
        if (!fits || g.num_points_ > 4096)
            throw Error(ErrorKind::BudgetExceeded, "line tables are limited to 4096 points");
        if (n == 2) {
            g.for_each_hyperplane([&](std::uint64_t, std::span<const Elem> a) {
                g.lines_.push_back(g.points_of(g.hyperplane(a)));
            });
        } else {
            for (std::uint64_t i = 0; i < g.num_points_; ++i)
                for (std::uint64_t j = i + 1; j < g.num_points_; ++j) {
                    auto pts = g.points_of(g.line_through(i, j));
                    if (pts[0] == i && pts[1] == j) g.lines_.push_back(std::move(pts));
                }
        }
    }
    return g;
}

std::uint64_t Geometry::num_points() const {
    if (!indexable_) throw Error(ErrorKind::BudgetExceeded, "point count does not fit a 63-bit index");
    return num_points_;
}

std::uint64_t Geometry::subspace_point_count(int k) const noexcept {
    if (k < 0) return 0;
    const auto idx = static_cast<std::size_t>(k) + 1;
    if (idx < level_offset_.size()) return level_offset_[idx];
    return std::numeric_limits<std::uint64_t>::max();
}

bool Geometry::normalize(std::span<Elem> v) const {
    const auto& f = *field_;
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0) ++lead;
    if (lead == v.size()) return false;
    if (v[lead] != 1) {
        const Elem s = f.inv(v[lead]);
        v[lead] = 1;
        for (std::size_t i = lead + 1; i < v.size(); ++i) v[i] = f.mul(v[i], s);
    }
    return true;
}

std::uint64_t Geometry::rank(std::span<const Elem> v) const {
    if (!indexable_) throw Error(ErrorKind::BudgetExceeded, "geometry is not indexable");
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0) ++lead;
    if (lead == v.size()) throw Error(ErrorKind::ZeroVector, "the zero vector is not a point");
    const std::size_t m = v.size() - 1 - lead;
    std::uint64_t idx = level_offset_[m];
    std::uint64_t tail = 0;
    for (std::size_t i = lead + 1; i < v.size(); ++i) tail = tail * q() + v[i];
    return idx + tail;
}

std::uint64_t Geometry::index_of(std::span<const Elem> v) const {
    Vec w(v.begin(), v.end());
    if (!normalize(w)) throw Error(ErrorKind::ZeroVector, "the zero vector is not a point");
    return rank(w);
}

void Geometry::point_into(std::uint64_t index, std::span<Elem> out) const {
    if (index >= num_points()) throw Error(ErrorKind::InvalidArgument, "point index out of range");
    std::size_t m = 0;
    while (index >= level_offset_[m + 1]) ++m;
    std::uint64_t tail = index - level_offset_[m];
    const std::size_t nc = ncoords();
    const std::size_t lead = nc - 1 - m;
    for (std::size_t i = 0; i < lead; ++i) out[i] = 0;
    out[lead] = 1;
    for (std::size_t i = nc; i-- > lead + 1;) {
        out[i] = static_cast<Elem>(tail % q());
        tail /= q();
    }
}

Vec Geometry::point(std::uint64_t index) const {
    Vec v(ncoords());
    point_into(index, v);
    return v;
}

Subspace Geometry::line_through(std::uint64_t p, std::uint64_t q) const {
    if (p == q) throw Error(ErrorKind::EqualPoints, "a line needs two distinct points");
    return Subspace(*field_, {point(p), point(q)}, ncoords());
}

Subspace Geometry::span(const Matrix& vectors) const { return Subspace(*field_, vectors, ncoords()); }

Subspace Geometry::span_points(const PointSet& points) const {
    // Incremental so huge point sets never build a tall matrix.
    Matrix basis;
    std::vector<std::size_t> pivots;
    Vec v(ncoords());
    for (auto idx : points) {
        point_into(idx, v);
        reduce_against(*field_, basis, pivots, v);
        bool zero = true;
        for (auto x : v)
            if (x) zero = false;
        if (zero) continue;
        basis.push_back(v);
        rref(*field_, basis, ncoords());
        pivots = pivot_columns(basis);
        if (basis.size() == ncoords()) break;
    }
    return Subspace(*field_, std::move(basis), ncoords());
}

Subspace Geometry::whole_space() const {
    Matrix id(ncoords(), Vec(ncoords(), 0));
    for (std::size_t i = 0; i < ncoords(); ++i) id[i][i] = 1;
    return Subspace(*field_, std::move(id), ncoords());
}

Subspace Geometry::hyperplane(std::span<const Elem> dual) const {
    Matrix a{Vec(dual.begin(), dual.end())};
    return Subspace(*field_, null_space(*field_, std::move(a), ncoords()), ncoords());
}

void Geometry::for_each_point(const Subspace& s, const std::function<void(std::span<const Elem>)>& fn) const {
    if (s.dim() < 0) return;
    const auto& f = *field_;
    const auto& basis = s.basis();
    ProjectiveCounter counter(f, basis.size());
    Vec v(ncoords());
    do {
        std::fill(v.begin(), v.end(), 0);
        const auto c = counter.current();
        for (std::size_t r = 0; r < basis.size(); ++r) {
            if (!c[r]) continue;
            const auto& row = basis[r];
            for (std::size_t j = 0; j < v.size(); ++j)
                if (row[j]) v[j] = f.add(v[j], f.mul(c[r], row[j]));
        }
        fn(v);
    } while (counter.next());
}

PointSet Geometry::points_of(const Subspace& s) const {
    std::vector<std::uint64_t> out;
    for_each_point(s, [&](std::span<const Elem> v) { out.push_back(rank(v)); });
    return PointSet(std::move(out));
}

void Geometry::for_each_hyperplane(const std::function<void(std::uint64_t, std::span<const Elem>)>& fn) const {
    ProjectiveCounter counter(*field_, ncoords());
    std::uint64_t idx = 0;
    do {
        fn(idx++, counter.current());
    } while (counter.next());
}

void Geometry::for_each_hyperplane_through(const Subspace& s,
                                           const std::function<void(std::span<const Elem>)>& fn) const {
    const Subspace dual(*field_, s.dual_basis(*field_), ncoords());
    for_each_point(dual, fn);
}

std::uint64_t Geometry::count_hyperplanes_through(const Subspace& s) const {
    return subspace_point_count(static_cast<int>(ncoords()) - 2 - s.dim());
}

std::optional<Subspace> Geometry::intersect(const Subspace& a, const Subspace& b) const {
    Matrix duals = a.dual_basis(*field_);
    for (auto& r : b.dual_basis(*field_)) duals.push_back(std::move(r));
    Subspace meet(*field_, null_space(*field_, std::move(duals), ncoords()), ncoords());
    if (meet.dim() < 0) return std::nullopt;
    return meet;
}

PointSet Geometry::set_meet(const PointSet& b, const Subspace& s) const {
    if (s.dim() < 0) return {};
    const std::uint64_t subspace_points = subspace_point_count(s.dim());
    std::vector<std::uint64_t> out;
    if (subspace_points < b.size()) {
        for_each_point(s, [&](std::span<const Elem> v) {
            const auto idx = rank(v);
            if (b.contains(idx)) out.push_back(idx);
        });
    } else {
        const Matrix dual = s.dual_basis(*field_);
        Vec v(ncoords());
        for (auto idx : b) {
            point_into(idx, v);
            bool inside = true;
            for (const auto& a : dual)
                if (dot(*field_, a, v) != 0) {
                    inside = false;
                    break;
                }
            if (inside) out.push_back(idx);
        }
    }
    return PointSet(std::move(out));
}

PointSet Geometry::apply(const Matrix& m, const PointSet& b) const {
    const auto& f = *field_;
    std::vector<std::uint64_t> out;
    out.reserve(b.size());
    Vec v(ncoords()), w(ncoords());
    for (auto idx : b) {
        point_into(idx, v);
        for (std::size_t i = 0; i < ncoords(); ++i) w[i] = dot(f, m[i], v);
        out.push_back(index_of(w));
    }
    return PointSet(std::move(out));
}

} // namespace linblock
