#include "linblock/incidence.hpp"

#include <bit>

namespace linblock {

IncidenceIndex::IncidenceIndex(const Geometry& g, const PointSet& b)
    : geom_(&g), set_(&b), nc_(g.ncoords()), coords_(b.size() * g.ncoords()), lead_(b.size()) {
    for (std::size_t i = 0; i < b.size(); ++i) {
        std::span<Elem> out(coords_.data() + i * nc_, nc_);
        g.point_into(b[i], out);
        std::uint32_t lead = 0;
        while (out[lead] == 0) ++lead;
        lead_[i] = lead;
    }
}

std::uint64_t IncidenceIndex::direction_key(std::size_t pos, std::span<const Elem> other, Vec& diff) const {
    const auto& f = geom_->field();
    const auto p = coords(pos);
    const std::uint32_t c = lead_[pos];
    const Elem scale = other[c];
    diff.resize(nc_);
    for (std::size_t k = 0; k < nc_; ++k) diff[k] = f.sub(other[k], f.mul(scale, p[k]));
    geom_->normalize(diff);
    return geom_->rank(diff);
}

void IncidenceIndex::lines_through(std::size_t pos, Scratch& s, LineGroups& out) const {
    const std::size_t m = size();
    out.clear();
    if (m < 2) return;
    std::size_t cap = std::bit_ceil(2 * m);
    if (s.table_keys.size() != cap) {
        s.table_keys.assign(cap, 0);
        s.table_vals.assign(cap, 0);
    }
    s.keys.resize(m);
    s.gid.resize(m);
    s.sizes.clear();
    const std::uint64_t empty = ~std::uint64_t{0};
    std::fill(s.table_keys.begin(), s.table_keys.end(), empty);
    const std::size_t mask = cap - 1;
    for (std::size_t j = 0; j < m; ++j) {
        if (j == pos) continue;
        const std::uint64_t key = direction_key(pos, coords(j), s.diff);
        std::size_t slot = static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ull) >> 20) & mask;
        while (s.table_keys[slot] != empty && s.table_keys[slot] != key) slot = (slot + 1) & mask;
        if (s.table_keys[slot] == empty) {
            s.table_keys[slot] = key;
            s.table_vals[slot] = static_cast<std::uint32_t>(s.sizes.size());
            s.sizes.push_back(0);
        }
        const std::uint32_t g = s.table_vals[slot];
        s.gid[j] = g;
        ++s.sizes[g];
    }
    const std::size_t groups = s.sizes.size();
    out.start.resize(groups + 1);
    out.start[0] = 0;
    for (std::size_t g = 0; g < groups; ++g) out.start[g + 1] = out.start[g] + s.sizes[g];
    out.members.resize(m - 1);
    // Reuse sizes as write cursors.
    for (std::size_t g = 0; g < groups; ++g) s.sizes[g] = out.start[g];
    for (std::size_t j = 0; j < m; ++j) {
        if (j == pos) continue;
        out.members[s.sizes[s.gid[j]]++] = static_cast<std::uint32_t>(j);
    }
}

LineGroups IncidenceIndex::lines_through(std::size_t pos) const {
    Scratch s;
    LineGroups out;
    lines_through(pos, s, out);
    return out;
}

} // namespace linblock
