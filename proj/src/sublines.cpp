#include "linblock/sublines.hpp"

#include <string>

#include "linblock/incidence.hpp"

namespace linblock {

namespace {

std::uint32_t exponent_of(std::uint32_t p, std::uint32_t value) {
    std::uint32_t e = 0;
    std::uint64_t x = 1;
    while (x < value) {
        x *= p;
        ++e;
    }
    return x == value ? e : 0;
}

} // namespace

SublineTester::SublineTester(const Geometry& g, std::uint32_t e) : g_(&g), e_(e), size_(1) {
    for (std::uint32_t i = 0; i < e; ++i) size_ *= g.field().p();
    ++size_;
    if (e != 0 && g.field().t() % e == 0) sub_.emplace(g.field_ptr(), e);
}

bool SublineTester::operator()(const PointSet& s) const {
    const auto& g = *g_;
    const auto& f = g.field();
    if (s.size() != size_)
        throw Error(ErrorKind::WrongSize, "a subline over GF(p^" + std::to_string(e_) + ") has " +
                                              std::to_string(size_) + " points, got " + std::to_string(s.size()));
    const Subspace carrier = g.line_through(s[0], s[1]);
    for (auto idx : s)
        if (!carrier.contains(f, g.point(idx))) throw Error(ErrorKind::NotCollinear, "points are not collinear");
    if (!sub_) return false;
    if (s.size() == 3) return true;

    const Vec a = g.point(s[0]);
    const Vec b = g.point(s[1]);
    const Vec c = g.point(s[2]);
    // Find two coordinates where a and b are independent: c = lambda a + mu b.
    const std::size_t nc = g.ncoords();
    std::size_t i0 = nc, i1 = nc;
    Elem det = 0;
    for (std::size_t i = 0; i < nc && i0 == nc; ++i)
        for (std::size_t j = i + 1; j < nc; ++j) {
            det = f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
            if (det) {
                i0 = i;
                i1 = j;
                break;
            }
        }
    const Elem det_inv = f.inv(det);
    auto solve = [&](const Vec& v, Elem& lambda, Elem& mu) {
        lambda = f.mul(f.sub(f.mul(v[i0], b[i1]), f.mul(v[i1], b[i0])), det_inv);
        mu = f.mul(f.sub(f.mul(a[i0], v[i1]), f.mul(a[i1], v[i0])), det_inv);
    };
    Elem lc, mc;
    solve(c, lc, mc);
    // Rescaled frame: c = a' + b' with a' = lc a, b' = mc b. A point s a' + r b'
    // has coordinate r/s; a' maps to 0, b' to infinity and c to 1.
    for (std::size_t k = 3; k < s.size(); ++k) {
        Elem l, m;
        solve(g.point(s[k]), l, m);
        const Elem sa = f.div(l, lc);
        const Elem rb = f.div(m, mc);
        if (!sub_->contains(f.div(rb, sa))) return false;
    }
    return true;
}

bool is_subline(const Geometry& g, const PointSet& s, std::uint32_t e) { return SublineTester(g, e)(s); }

bool is_subplane(const Geometry& g, const PointSet& s, std::uint32_t q0) {
    const std::uint64_t expected = std::uint64_t{q0} * q0 + q0 + 1;
    if (s.size() != expected)
        throw Error(ErrorKind::WrongSize, "a subplane of order " + std::to_string(q0) + " has " +
                                              std::to_string(expected) + " points");
    if (g.span_points(s).dim() != 2) throw Error(ErrorKind::NotPlanar, "points do not span a plane");
    const std::uint32_t e = exponent_of(g.field().p(), q0);
    if (e == 0) return false;

    // Collect the secant lines of s, each once (from its smallest member).
    IncidenceIndex index(g, s);
    std::vector<PointSet> secants;
    for (std::size_t pos = 0; pos < s.size(); ++pos) {
        const auto groups = index.lines_through(pos);
        for (std::size_t k = 0; k < groups.count(); ++k) {
            const auto grp = groups.group(k);
            if (grp.front() < pos) continue;
            if (grp.size() != q0) return false;
            std::vector<std::uint64_t> members{s[pos]};
            for (auto j : grp) members.push_back(s[j]);
            secants.emplace_back(std::move(members));
        }
    }
    if (secants.size() != expected) return false;
    const SublineTester subline(g, e);
    for (const auto& line : secants)
        if (!subline(line)) return false;
    for (std::size_t i = 0; i < secants.size(); ++i)
        for (std::size_t j = i + 1; j < secants.size(); ++j)
            if (secants[i].intersection(secants[j]).size() != 1) return false;
    return true;
}

} // namespace linblock
