#include <gtest/gtest.h>

#include "linblock/search.hpp"

using namespace linblock;

namespace {

Geometry pg(int n, std::uint32_t p, std::uint32_t t) { return Geometry::build(n, make_field(p, t)); }

std::vector<std::vector<std::uint64_t>> line_table(const Geometry& g) {
    std::vector<std::vector<std::uint64_t>> out;
    g.for_each_hyperplane([&](std::uint64_t, std::span<const Elem> a) {
        std::vector<std::uint64_t> pts;
        for (std::uint64_t i = 0; i < g.num_points(); ++i)
            if (dot(g.field(), a, g.point(i)) == 0) pts.push_back(i);
        out.push_back(std::move(pts));
    });
    return out;
}

// Every subset of size <= k, tested directly against the hyperplane table.
std::vector<std::vector<std::uint64_t>> subset_oracle(const Geometry& g, std::size_t k) {
    const auto lines = line_table(g);
    const std::uint64_t n = g.num_points();
    auto meets = [](const std::vector<std::uint64_t>& l, const std::vector<std::uint64_t>& s) {
        std::size_t c = 0;
        for (auto x : s) c += std::binary_search(l.begin(), l.end(), x);
        return c;
    };
    auto blocking = [&](const std::vector<std::uint64_t>& s) {
        for (const auto& l : lines)
            if (!meets(l, s)) return false;
        return true;
    };
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> cur;
    std::function<void(std::uint64_t)> rec = [&](std::uint64_t start) {
        if (!cur.empty() && blocking(cur)) {
            bool minimal = true;
            for (std::size_t i = 0; i < cur.size() && minimal; ++i) {
                auto rest = cur;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                if (blocking(rest)) minimal = false;
            }
            if (minimal) out.push_back(cur);
            return;  // supersets of a blocking set are not minimal
        }
        if (cur.size() == k) return;
        for (std::uint64_t x = start; x < n; ++x) {
            cur.push_back(x);
            rec(x + 1);
            cur.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::uint64_t>> tuples(const SearchResult& r) {
    std::vector<std::vector<std::uint64_t>> out;
    for (const auto& e : r.catalog) out.emplace_back(e.set.begin(), e.set.end());
    return out;
}

// Ordered 4-tuples of points with no three collinear.
std::uint64_t frames(const Geometry& g) {
    const std::uint64_t n = g.num_points();
    auto collinear = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        return g.line_through(a, b).contains(g.field(), g.point(c));
    };
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b) {
            if (b == a) continue;
            for (std::uint64_t c = 0; c < n; ++c) {
                if (c == a || c == b || collinear(a, b, c)) continue;
                for (std::uint64_t d = 0; d < n; ++d) {
                    if (d == a || d == b || d == c) continue;
                    if (collinear(a, b, d) || collinear(a, c, d) || collinear(b, c, d)) continue;
                    ++count;
                }
            }
        }
    return count;
}

} // namespace

TEST(Search, DefaultThreshold) {
    EXPECT_EQ(default_max_size(pg(2, 2, 1)), 4u);
    EXPECT_EQ(default_max_size(pg(2, 3, 1)), 5u);
    EXPECT_EQ(default_max_size(pg(2, 2, 2)), 7u);
}

TEST(Search, MatchesSubsetOracleSmallPlanes) {
    for (auto [p, t] : {std::pair{2u, 1u}, std::pair{3u, 1u}}) {
        const auto g = pg(2, p, t);
        const auto res = enumerate_minimal(g);
        EXPECT_EQ(tuples(res), subset_oracle(g, res.max_size)) << "q=" << g.q();
    }
    const auto g2 = pg(2, 2, 1);
    EXPECT_EQ(enumerate_minimal(g2).catalog.size(), 7u);
}

TEST(Search, Pg24LinesOnly) {
    const auto g = pg(2, 2, 2);
    SearchConfig cfg;
    cfg.max_size = 5;
    const auto res = enumerate_minimal(g, cfg);
    EXPECT_EQ(tuples(res), subset_oracle(g, 5));
    EXPECT_EQ(res.catalog.size(), 21u);
}

TEST(Search, Pg24Census) {
    const auto g = pg(2, 2, 2);
    const auto res = enumerate_minimal(g);
    ASSERT_EQ(res.catalog.size(), 381u);
    std::size_t lines = 0, sub = 0;
    for (const auto& e : res.catalog) {
        if (e.set.size() == 5) ++lines;
        if (e.set.size() == 7) ++sub;
        EXPECT_EQ(e.report.is_blocking, Verdict::Yes);
        EXPECT_EQ(e.report.is_minimal, Verdict::Yes);
    }
    EXPECT_EQ(lines, 21u);
    // Fano subplanes: frames of PG(2,4) over frames of PG(2,2).
    EXPECT_EQ(sub, frames(g) / frames(pg(2, 2, 1)));
    const auto rep = verify_catalog(g, res);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.lines, 21u);
    EXPECT_EQ(rep.certified, 360u);
    for (const auto& c : rep.entries) {
        EXPECT_TRUE(c.one_mod_p);
        if (c.linearity == "certified") EXPECT_TRUE(c.outside_hypotheses);
    }
}

TEST(Search, PruningNeverChangesCatalog) {
    for (auto [p, t] : {std::pair{2u, 1u}, std::pair{3u, 1u}, std::pair{2u, 2u}}) {
        const auto g = pg(2, p, t);
        SearchConfig off;
        off.prune = false;
        const auto a = enumerate_minimal(g);
        const auto b = enumerate_minimal(g, off);
        EXPECT_EQ(tuples(a), tuples(b));
        EXPECT_LE(a.nodes, b.nodes);
    }
}

TEST(Search, DeterministicAcrossWidths) {
    const auto g = pg(2, 3, 1);
    SearchConfig wide;
    wide.parallel_width = 3;
    const auto a = enumerate_minimal(g);
    const auto b = enumerate_minimal(g, wide);
    EXPECT_EQ(tuples(a), tuples(b));
    EXPECT_EQ(a.nodes, b.nodes);
    EXPECT_EQ(a.pruned, b.pruned);
}

TEST(Search, Guard) {
    const auto g = pg(2, 2, 4);
    try {
        enumerate_minimal(g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::GuardExceeded);
    }
}

TEST(Search, ThreeSpace) {
    // Minimal blocking sets with respect to planes in PG(3,2): the 35 lines.
    const auto g = pg(3, 2, 1);
    SearchConfig cfg;
    cfg.max_size = 3;
    const auto res = enumerate_minimal(g, cfg);
    EXPECT_EQ(res.catalog.size(), 35u);
}
