#include "linblock/line_census.hpp"

#include <algorithm>

#include "linblock/parallel.hpp"

namespace linblock {

std::uint32_t valuation(std::uint64_t x, std::uint32_t p, std::uint32_t cap) {
    if (x == 0) return cap;
    std::uint32_t v = 0;
    while (x % p == 0 && v < cap) {
        x /= p;
        ++v;
    }
    return v;
}

std::uint64_t lines_per_point(const Geometry& g) { return g.subspace_point_count(g.n() - 1); }

bool LineCensus::pair_identity_holds() const {
    std::uint64_t pairs = 0;
    for (auto [size, count] : histogram) pairs += size * (size - 1) / 2 * count;
    return pairs == set_size * (set_size - (set_size ? 1 : 0)) / 2;
}

void for_each_secant(const IncidenceIndex& index, int threads,
                     const std::function<void(int, std::span<const std::uint32_t>)>& fn) {
    parallel_for(index.size(), threads, [&](std::size_t begin, std::size_t end, int worker) {
        IncidenceIndex::Scratch scratch;
        LineGroups groups;
        std::vector<std::uint32_t> members;
        for (std::size_t pos = begin; pos < end; ++pos) {
            index.lines_through(pos, scratch, groups);
            for (std::size_t k = 0; k < groups.count(); ++k) {
                const auto grp = groups.group(k);
                if (grp.front() < pos) continue;
                members.assign(1, static_cast<std::uint32_t>(pos));
                members.insert(members.end(), grp.begin(), grp.end());
                fn(worker, members);
            }
        }
    });
}

LineCensus line_census(const IncidenceIndex& index, const CensusOptions& opts) {
    const std::size_t m = index.size();
    LineCensus census;
    census.set_size = m;
    census.per_point.resize(m);
    const std::size_t workers = worker_count(m, opts.threads);
    std::vector<std::map<std::uint64_t, std::uint64_t>> hist(workers);
    std::vector<std::vector<PointSet>> collected(workers);
    const auto& pts = index.points();

    const Geometry& g = index.geometry();
    const bool planar = g.n() == 2;
    const std::uint64_t through = lines_per_point(g);

    parallel_for(m, opts.threads, [&](std::size_t begin, std::size_t end, int worker) {
        IncidenceIndex::Scratch scratch;
        LineGroups groups;
        std::map<std::uint32_t, std::uint32_t> local;
        std::vector<std::uint32_t> members;
        std::vector<std::uint64_t> keys;
        Vec diff, r(g.ncoords());
        for (std::size_t pos = begin; pos < end; ++pos) {
            index.lines_through(pos, scratch, groups);
            local.clear();
            auto& profile = census.per_point[pos];
            profile.secants = static_cast<std::uint32_t>(groups.count());
            if (planar && profile.secants < through) {
                keys.clear();
                for (std::size_t k = 0; k < groups.count(); ++k)
                    keys.push_back(index.direction_key(pos, index.coords(groups.group(k).front()), diff));
                std::sort(keys.begin(), keys.end());
                for (std::uint64_t idx = 0; idx < g.num_points(); ++idx) {
                    if (idx == pts[pos]) continue;
                    g.point_into(idx, r);
                    if (!std::binary_search(keys.begin(), keys.end(), index.direction_key(pos, r, diff))) {
                        profile.tangent_through = idx;
                        break;
                    }
                }
            }
            for (std::size_t k = 0; k < groups.count(); ++k) {
                const auto grp = groups.group(k);
                const auto size = static_cast<std::uint32_t>(grp.size() + 1);
                ++local[size];
                if (grp.front() < pos) continue;
                ++hist[worker][size];
                if (opts.on_secant) {
                    members.assign(1, static_cast<std::uint32_t>(pos));
                    members.insert(members.end(), grp.begin(), grp.end());
                    opts.on_secant(worker, members);
                }
                if (opts.collect_size == size && collected[worker].size() < opts.collect_cap) {
                    std::vector<std::uint64_t> members{pts[pos]};
                    for (auto j : grp) members.push_back(pts[j]);
                    collected[worker].emplace_back(std::move(members));
                }
            }
            profile.sizes.assign(local.begin(), local.end());
        }
    });

    std::uint64_t tangents = 0;
    for (const auto& p : census.per_point) tangents += through - p.secants;
    if (tangents) census.histogram[1] = tangents;
    for (const auto& h : hist)
        for (auto [size, count] : h) {
            census.histogram[size] += count;
            census.secant_count += count;
        }
    std::size_t total = 0;
    for (auto& c : collected) {
        for (auto& s : c) {
            if (total < opts.collect_cap) census.collected.push_back(std::move(s));
            ++total;
        }
    }
    census.collection_truncated = total >= opts.collect_cap && opts.collect_size != 0;
    return census;
}

} // namespace linblock
