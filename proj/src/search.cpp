#include "linblock/search.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "linblock/line_census.hpp"
#include "linblock/parallel.hpp"

namespace linblock {

std::uint64_t default_max_size(const Geometry& g) noexcept {
    // Largest s with 2s < 3(q+1).
    const std::uint64_t limit = 3 * (g.q() + 1);
    return (limit - 1) / 2;
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct Problem {
    std::size_t npoints = 0;
    std::size_t words = 0;
    std::vector<Bits> hyperplanes;                    // point bitsets
    std::vector<std::vector<std::uint32_t>> points;   // members, ascending
    std::vector<std::vector<std::uint32_t>> through;  // hyperplanes through each point
};

bool test(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1; }
void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }
void clear_bit(Bits& b, std::size_t i) { b[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

Problem build_problem(const Geometry& g) {
    Problem pr;
    pr.npoints = g.num_points();
    pr.words = (pr.npoints + 63) / 64;
    pr.through.resize(pr.npoints);
    g.for_each_hyperplane([&](std::uint64_t, std::span<const Elem> a) {
        Bits bits(pr.words, 0);
        std::vector<std::uint32_t> pts;
        for (std::uint64_t i = 0; i < pr.npoints; ++i)
            if (dot(g.field(), a, g.point(i)) == 0) {
                set_bit(bits, i);
                pts.push_back(static_cast<std::uint32_t>(i));
                pr.through[i].push_back(static_cast<std::uint32_t>(pr.hyperplanes.size()));
            }
        pr.hyperplanes.push_back(std::move(bits));
        pr.points.push_back(std::move(pts));
    });
    return pr;
}

struct Worker {
    const Problem& pr;
    std::uint64_t max_size;
    bool prune;
    bool memo;
    std::vector<std::uint32_t> hits;  // members of S on each hyperplane
    std::vector<std::uint32_t> chosen;
    Bits in_s;
    std::set<std::vector<std::uint32_t>> found;
    std::vector<std::vector<std::uint32_t>> order;
    std::uint64_t nodes = 0, pruned = 0, leaves = 0, duplicates = 0;

    Worker(const Problem& p, std::uint64_t m, bool pr_on, bool memo_on)
        : pr(p), max_size(m), prune(pr_on), memo(memo_on), hits(p.hyperplanes.size(), 0), in_s(p.words, 0) {}

    void add(std::uint32_t x) {
        chosen.push_back(x);
        set_bit(in_s, x);
        for (auto h : pr.through[x]) ++hits[h];
    }
    void remove(std::uint32_t x) {
        chosen.pop_back();
        clear_bit(in_s, x);
        for (auto h : pr.through[x]) --hits[h];
    }

    /// Points still needed: a greedy family of unblocked hyperplanes pairwise
    /// disjoint outside S, or the unblocked count over the best single cover.
    std::uint64_t lower_bound(const std::vector<std::uint32_t>& unblocked) const {
        std::uint64_t packing = 0;
        Bits used(pr.words, 0);
        for (auto h : unblocked) {
            const auto& hb = pr.hyperplanes[h];
            bool disjoint = true;
            for (std::size_t w = 0; w < pr.words && disjoint; ++w)
                if (hb[w] & used[w]) disjoint = false;
            if (!disjoint) continue;
            ++packing;
            for (std::size_t w = 0; w < pr.words; ++w) used[w] |= hb[w];
        }
        std::uint64_t best_cover = 1;
        std::vector<std::uint32_t> cover(pr.npoints, 0);
        for (auto h : unblocked)
            for (auto x : pr.points[h]) best_cover = std::max<std::uint64_t>(best_cover, ++cover[x]);
        const std::uint64_t by_cover = (unblocked.size() + best_cover - 1) / best_cover;
        return std::max(packing, by_cover);
    }

    bool minimal() const {
        for (auto x : chosen) {
            bool tangent = false;
            for (auto h : pr.through[x])
                if (hits[h] == 1) {
                    tangent = true;
                    break;
                }
            if (!tangent) return false;
        }
        return true;
    }

    void dfs() {
        ++nodes;
        std::vector<std::uint32_t> unblocked;
        for (std::uint32_t h = 0; h < pr.hyperplanes.size(); ++h)
            if (!hits[h]) unblocked.push_back(h);
        if (unblocked.empty()) {
            ++leaves;
            if (!minimal()) return;
            auto tuple = chosen;
            std::sort(tuple.begin(), tuple.end());
            if (memo) {
                if (!found.insert(tuple).second) {
                    ++duplicates;
                    return;
                }
            }
            order.push_back(std::move(tuple));
            return;
        }
        if (chosen.size() >= max_size) {
            ++pruned;
            return;
        }
        if (prune && chosen.size() + lower_bound(unblocked) > max_size) {
            ++pruned;
            return;
        }
        // Unblocked hyperplanes hold no point of S, so every member is a candidate.
        std::uint32_t pick = unblocked.front();
        for (auto h : unblocked)
            if (pr.points[h].size() < pr.points[pick].size()) pick = h;
        for (auto x : pr.points[pick]) {
            add(x);
            dfs();
            remove(x);
        }
    }
};

} // namespace

SearchResult enumerate_minimal(const Geometry& g, const SearchConfig& cfg) {
    if (!g.indexable() || (g.num_points() > cfg.guard && !cfg.force))
        throw Error(ErrorKind::GuardExceeded, "geometry has more than " + std::to_string(cfg.guard) +
                                                  " points; pass force to search anyway");
    SearchResult res;
    res.max_size = cfg.max_size.value_or(default_max_size(g));
    const Problem pr = build_problem(g);

    // Fail-first at the root: hyperplane 0 (all have the same size).
    const auto& roots = pr.points.front();
    const std::size_t width = worker_count(roots.size(), cfg.parallel_width);
    std::vector<std::vector<Worker>> per(width);
    parallel_for(roots.size(), cfg.parallel_width, [&](std::size_t begin, std::size_t end, int w) {
        for (std::size_t i = begin; i < end; ++i) {
            Worker wk(pr, res.max_size, cfg.prune, cfg.dedup == Dedup::Memo);
            wk.add(roots[i]);
            wk.dfs();
            per[static_cast<std::size_t>(w)].push_back(std::move(wk));
        }
    });
    res.nodes = 1;
    std::vector<std::vector<std::uint32_t>> all;
    for (auto& v : per)
        for (auto& wk : v) {
            res.nodes += wk.nodes;
            res.pruned += wk.pruned;
            res.leaves += wk.leaves;
            res.duplicates += wk.duplicates;
            for (auto& t : wk.order) all.push_back(std::move(t));
        }
    std::sort(all.begin(), all.end());
    const auto before = all.size();
    if (cfg.dedup == Dedup::Memo) all.erase(std::unique(all.begin(), all.end()), all.end());
    res.duplicates += before - all.size();

    for (const auto& t : all) {
        CatalogEntry entry;
        entry.set = PointSet(std::vector<std::uint64_t>(t.begin(), t.end()));
        res.catalog.push_back(std::move(entry));
    }
    ScanOptions so;
    so.seed = cfg.seed;
    parallel_for(res.catalog.size(), cfg.parallel_width, [&](std::size_t begin, std::size_t end, int) {
        for (std::size_t i = begin; i < end; ++i) {
            auto& entry = res.catalog[i];
            entry.report = analyze(g, entry.set, so);
            const auto& ex = entry.report.exponent;
            if (ex && ex->h == 1 && ex->h_integral) {
                entry.linearity = "line";
                continue;
            }
            if (!ex || ex->e == 0 || !ex->h_integral || !entry.report.is_small) {
                entry.linearity = "not-applicable";
                continue;
            }
            try {
                entry.certificate = certify_linearity(g, entry.set, entry.report);
                entry.linearity = entry.certificate->verified ? "certified" : "not-certified";
            } catch (const Error&) {
                entry.linearity = "not-applicable";
            }
        }
    });
    return res;
}

CatalogReport verify_catalog(const Geometry& g, const SearchResult& res) {
    CatalogReport out;
    const std::uint32_t p = g.field().p();
    for (std::size_t i = 0; i < res.catalog.size(); ++i) {
        const auto& entry = res.catalog[i];
        CatalogCheck c;
        c.entry = i;
        const auto census = line_census(IncidenceIndex(g, entry.set));
        c.one_mod_p = check_one_mod_p(census, p).ok();
        if (!c.one_mod_p) out.alarms.push_back(i);
        if (entry.report.exponent) c.e = entry.report.exponent->e;
        c.linearity = entry.linearity;
        if (entry.certificate) c.outside_hypotheses = !entry.certificate->hypotheses.q0_at_least_7;
        out.lines += entry.linearity == "line";
        out.certified += entry.linearity == "certified";
        out.entries.push_back(std::move(c));
    }
    return out;
}

} // namespace linblock
