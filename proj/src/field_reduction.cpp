#include "linblock/field_reduction.hpp"

#include <string>
#include <unordered_set>

#include "linblock/sublines.hpp"

namespace linblock {

namespace {

Geometry make_reduced(const Geometry& big, const Subfield& sub, std::uint32_t h) {
    GeometryOptions opts;
    opts.lazy = true;
    return Geometry::build(static_cast<int>(h * big.ncoords()) - 1, sub.small(), opts);
}

} // namespace

SpreadContext::SpreadContext(const Geometry& big, std::uint32_t e)
    : big_(big),
      sub_(big.field_ptr(), e),
      h_(big.field().t() / e),
      reduced_(make_reduced(big_, sub_, h_)) {
    const auto& f = big_.field();
    basis_.resize(h_);
    Elem power = 1;
    const Elem delta = f.t() == 1 ? 1 : f.p();
    for (std::uint32_t i = 0; i < h_; ++i) {
        basis_[i] = power;
        power = f.mul(power, delta);
    }
    const std::uint32_t q = f.q();
    const std::uint32_t q0 = sub_.order();
    decomp_.assign(std::size_t{q} * h_, 0);
    std::vector<bool> seen(q, false);
    Vec digits(h_, 0);
    for (std::uint32_t combo = 0; combo < q; ++combo) {
        std::uint32_t rest = combo;
        Elem value = 0;
        for (std::uint32_t i = 0; i < h_; ++i) {
            digits[i] = rest % q0;
            rest /= q0;
            value = f.add(value, f.mul(sub_.embed(digits[i]), basis_[i]));
        }
        if (seen[value]) throw Error(ErrorKind::InvalidArgument, "polynomial basis is not a subfield basis");
        seen[value] = true;
        for (std::uint32_t i = 0; i < h_; ++i) decomp_[std::size_t{value} * h_ + i] = digits[i];
    }
}

Vec SpreadContext::reduce(std::span<const Elem> v) const {
    Vec out(v.size() * h_);
    for (std::size_t j = 0; j < v.size(); ++j)
        for (std::uint32_t i = 0; i < h_; ++i) out[j * h_ + i] = decomp_[std::size_t{v[j]} * h_ + i];
    return out;
}

Vec SpreadContext::lift(std::span<const Elem> w) const {
    const auto& f = big_.field();
    Vec out(w.size() / h_, 0);
    for (std::size_t j = 0; j < out.size(); ++j) {
        Elem value = 0;
        for (std::uint32_t i = 0; i < h_; ++i)
            if (w[j * h_ + i]) value = f.add(value, f.mul(sub_.embed(w[j * h_ + i]), basis_[i]));
        out[j] = value;
    }
    return out;
}

std::uint64_t SpreadContext::big_point_of(std::span<const Elem> w) const { return big_.index_of(lift(w)); }

Subspace SpreadContext::spread_element(std::uint64_t p) const {
    const auto& f = big_.field();
    const Vec u = big_.point(p);
    Matrix rows;
    Vec scaled(u.size());
    for (std::uint32_t i = 0; i < h_; ++i) {
        for (std::size_t j = 0; j < u.size(); ++j) scaled[j] = f.mul(basis_[i], u[j]);
        rows.push_back(reduce(scaled));
    }
    return reduced_.span(rows);
}

PointSet SpreadContext::linear_set_from_vectors(const Matrix& generators) const {
    const auto& f = big_.field();
    const std::size_t nc = big_.ncoords();
    long double capacity = 1;
    for (std::size_t i = 0; i < nc; ++i) capacity *= f.q();
    if (capacity >= 1.8e19L) throw Error(ErrorKind::InvalidArgument, "vector keys do not fit 64 bits");
    auto key = [&](std::span<const Elem> v) {
        std::uint64_t k = 0;
        for (auto x : v) k = k * f.q() + x;
        return k;
    };
    const std::uint32_t q0 = sub_.order();
    std::vector<Vec> span{Vec(nc, 0)};
    std::unordered_set<std::uint64_t> keys{0};
    bool nonzero = false;
    for (const auto& g : generators) {
        if (g.size() != nc) throw Error(ErrorKind::DimensionMismatch, "generator length differs from n+1");
        if (keys.count(key(g))) continue;
        nonzero = true;
        const std::size_t old = span.size();
        span.reserve(old * q0);
        for (std::uint32_t c = 1; c < q0; ++c) {
            const Elem lambda = sub_.embed(c);
            for (std::size_t s = 0; s < old; ++s) {
                Vec v(nc);
                for (std::size_t j = 0; j < nc; ++j) v[j] = f.add(span[s][j], f.mul(lambda, g[j]));
                keys.insert(key(v));
                span.push_back(std::move(v));
            }
        }
    }
    if (!nonzero) throw Error(ErrorKind::ZeroOnly, "generators span only the zero vector");
    std::vector<std::uint64_t> out;
    out.reserve(span.size());
    for (std::size_t s = 1; s < span.size(); ++s) out.push_back(big_.index_of(span[s]));
    return PointSet(std::move(out));
}

PointSet SpreadContext::linear_set_from_subspace(const Subspace& pi) const {
    std::vector<std::uint64_t> out;
    reduced_.for_each_point(pi, [&](std::span<const Elem> w) { out.push_back(big_point_of(w)); });
    return PointSet(std::move(out));
}

Subspace SpreadContext::lift_subline(const PointSet& s, std::uint64_t p, std::span<const Elem> x) const {
    const auto& f = big_.field();
    if (!s.contains(p)) throw Error(ErrorKind::NotMember, "anchor point is not on the subline");
    if (!is_subline(big_, s, sub_.e())) throw Error(ErrorKind::NotASubline, "point set is not a subline over GF(q0)");
    const Vec v = lift(x);
    if (big_.index_of(v) != p) throw Error(ErrorKind::NotMember, "x is not in the spread element of the anchor");

    const std::uint64_t other = s[0] == p ? s[1] : s[0];
    const Vec w1 = big_.point(other);
    const std::size_t nc = v.size();
    const std::uint32_t q = f.q();
    const std::uint32_t q0 = sub_.order();
    const std::uint32_t cosets = (q - 1) / (q0 - 1);

    std::vector<Subspace> found;
    Vec w(nc), cand(nc);
    for (std::uint32_t k = 0; k < cosets; ++k) {
        const Elem beta = f.exp(k);
        for (std::size_t j = 0; j < nc; ++j) w[j] = f.mul(beta, w1[j]);
        bool ok = true;
        for (Elem c = 1; c < q0 && ok; ++c) {
            const Elem lambda = sub_.embed(c);
            for (std::size_t j = 0; j < nc; ++j) cand[j] = f.add(v[j], f.mul(lambda, w[j]));
            ok = s.contains(big_.index_of(cand));
        }
        if (ok) found.push_back(reduced_.span({reduce(v), reduce(w)}));
    }
    if (found.size() != 1)
        throw Error(ErrorKind::LiftInconsistent,
                    std::to_string(found.size()) + " transversal lines reproduce the subline (expected 1)");
    return found.front();
}

} // namespace linblock
