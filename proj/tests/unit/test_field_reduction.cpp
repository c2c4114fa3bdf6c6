#include <gtest/gtest.h>

#include <random>
#include <set>

#include "linblock/blocking.hpp"
#include "linblock/constructions.hpp"
#include "linblock/field_reduction.hpp"
#include "linblock/sublines.hpp"

using namespace linblock;

namespace {

Geometry pg(int n, std::uint32_t p, std::uint32_t t) { return Geometry::build(n, make_field(p, t)); }

// A random reduced line that is not inside a spread element.
Subspace random_transversal(const SpreadContext& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<Elem> d(0, ctx.q0() - 1);
    for (;;) {
        Matrix rows(2, Vec(ctx.reduced().ncoords()));
        for (auto& r : rows)
            for (auto& x : r) x = d(rng);
        auto l = ctx.reduced().span(rows);
        if (l.dim() == 1 && ctx.linear_set_from_subspace(l).size() > 1) return l;
    }
}

} // namespace

TEST(SpreadContext, PartitionOfPG57) {
    const auto g = pg(2, 7, 2);
    SpreadContext ctx(g, 1);
    ASSERT_EQ(ctx.h(), 2u);
    ASSERT_EQ(ctx.reduced().num_points(), 19608u);
    std::vector<char> hit(19608, 0);
    std::uint64_t covered = 0;
    for (std::uint64_t p = 0; p < g.num_points(); ++p) {
        const auto el = ctx.spread_element(p);
        ASSERT_EQ(el.dim(), 1);
        for (auto r : ctx.reduced().points_of(el)) {
            ASSERT_FALSE(hit[r]) << "spread elements overlap";
            hit[r] = 1;
            ++covered;
        }
    }
    EXPECT_EQ(covered, 19608u);
}

TEST(SpreadContext, ElementIndependentOfRepresentative) {
    const auto g = pg(2, 7, 3);
    SpreadContext ctx(g, 1);
    const auto& f = g.field();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> pick(0, g.num_points() - 1);
    std::uniform_int_distribution<Elem> scal(1, f.q() - 1);
    for (int i = 0; i < 200; ++i) {
        const auto p = pick(rng);
        Vec u = g.point(p);
        const Elem a = scal(rng);
        for (auto& x : u) x = f.mul(x, a);
        Matrix rows;
        Elem d = 1;
        for (std::uint32_t k = 0; k < ctx.h(); ++k) {
            Vec s(u.size());
            for (std::size_t j = 0; j < u.size(); ++j) s[j] = f.mul(d, u[j]);
            rows.push_back(ctx.reduce(s));
            d = f.mul(d, f.p());
        }
        EXPECT_EQ(ctx.reduced().span(rows), ctx.spread_element(p));
        EXPECT_EQ(ctx.linear_set_from_subspace(ctx.spread_element(p)), PointSet{p});
    }
}

TEST(SpreadContext, ReduceLiftRoundTrip) {
    const auto g = pg(3, 3, 4);
    SpreadContext ctx(g, 2);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<Elem> d(0, g.q() - 1);
    for (int i = 0; i < 1000; ++i) {
        Vec v(4);
        for (auto& x : v) x = d(rng);
        EXPECT_EQ(ctx.lift(ctx.reduce(v)), v);
    }
}

TEST(SpreadContext, LinearSetFromVectors) {
    const auto g = pg(2, 7, 2);
    SpreadContext ctx(g, 1);
    const auto& f = g.field();
    EXPECT_EQ(ctx.linear_set_from_vectors({{1, 2, 3}}), PointSet{g.index_of(Vec{1, 2, 3})});
    const Vec u{0, 1, 4}, w{1, 0, 9};
    Matrix full{u, w};
    for (const auto& v : Matrix{u, w}) {
        Vec s(3);
        for (std::size_t j = 0; j < 3; ++j) s[j] = f.mul(f.p(), v[j]);
        full.push_back(s);
    }
    const auto line = ctx.linear_set_from_vectors(full);
    EXPECT_EQ(line.size(), 50u);
    EXPECT_EQ(line, g.points_of(g.span({u, w})));
    try {
        ctx.linear_set_from_vectors({{0, 0, 0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ZeroOnly);
    }
}

TEST(SpreadContext, FrobeniusSetBothRoutesAgree) {
    const auto g = pg(2, 7, 2);
    SpreadContext ctx(g, 1);
    const auto gens = frobenius_generators(ctx);
    ASSERT_EQ(gens.size(), 3u);
    const auto by_vectors = ctx.linear_set_from_vectors(gens);
    Matrix reduced;
    for (const auto& v : gens) reduced.push_back(ctx.reduce(v));
    const auto pi = ctx.reduced().span(reduced);
    ASSERT_EQ(pi.dim(), 2);
    const auto by_subspace = ctx.linear_set_from_subspace(pi);
    EXPECT_EQ(by_vectors, by_subspace);
    EXPECT_LE(by_vectors.size(), 57u);
    EXPECT_EQ(is_blocking(g, by_vectors).value, Verdict::Yes);
    // Exhaustive over every line, independent of the census route.
    g.for_each_hyperplane([&](std::uint64_t, std::span<const Elem> a) {
        ASSERT_GT(g.set_meet(by_vectors, g.hyperplane(a)).size(), 0u);
    });
}

TEST(SpreadContext, RandomSubspacesBothRoutesAgree) {
    std::mt19937_64 rng(99);
    for (auto [n, p, t, e] : std::vector<std::tuple<int, std::uint32_t, std::uint32_t, std::uint32_t>>{{2, 7, 2, 1}, {2, 7, 3, 1}, {3, 5, 2, 1}, {2, 2, 4, 2}, {2, 3, 4, 1}}) {
        GeometryOptions lazy;
        lazy.lazy = true;
        const auto g = Geometry::build(n, make_field(p, t), lazy);
        SpreadContext ctx(g, e);
        for (std::uint32_t rank = 1; rank <= ctx.h() + 2; ++rank) {
            auto ls = random_linear_set(ctx, rank, rng);
            EXPECT_EQ(ls.set, ctx.linear_set_from_vectors(ls.generators));
            std::uint64_t bound = 0, pow = 1;
            for (std::uint32_t i = 0; i < rank; ++i, pow *= ctx.q0()) bound += pow;
            EXPECT_LE(ls.set.size(), bound);
        }
    }
}

TEST(SpreadContext, ReducedLinesGiveSublinesOrPoints) {
    std::mt19937_64 rng(2024);
    for (auto [p, t] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{7, 2}, {7, 3}, {2, 4}}) {
        GeometryOptions lazy;
        lazy.lazy = true;
        const auto g = Geometry::build(2, make_field(p, t), lazy);
        SpreadContext ctx(g, 1);
        std::uniform_int_distribution<Elem> d(0, ctx.q0() - 1);
        int transversal = 0;
        for (int i = 0; i < 10000; ++i) {
            Matrix rows(2, Vec(ctx.reduced().ncoords()));
            for (auto& r : rows)
                for (auto& x : r) x = d(rng);
            const auto l = ctx.reduced().span(rows);
            if (l.dim() != 1) continue;
            const auto s = ctx.linear_set_from_subspace(l);
            ASSERT_TRUE(s.size() == 1 || s.size() == ctx.q0() + 1);
            if (s.size() > 1 && transversal++ < 300) ASSERT_TRUE(is_subline(g, s, 1));
        }
    }
}

TEST(SpreadContext, LiftSublineRoundTripAndUniqueness) {
    std::mt19937_64 rng(31);
    for (auto [p, t] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{7, 2}, {7, 3}, {3, 3}}) {
        const auto g = pg(2, p, t);
        SpreadContext ctx(g, 1);
        for (int trial = 0; trial < 20; ++trial) {
            const auto l0 = random_transversal(ctx, rng);
            const auto s = ctx.linear_set_from_subspace(l0);
            const auto p0 = s[trial % s.size()];
            const auto el = ctx.spread_element(p0);
            const auto x = ctx.reduced().intersect(l0, el);
            ASSERT_TRUE(x && x->dim() == 0);
            EXPECT_EQ(ctx.lift_subline(s, p0, x->basis()[0]), l0);
            // Another point of the spread element gives another transversal.
            std::set<Subspace> lifts;
            ctx.reduced().for_each_point(el, [&](std::span<const Elem> y) {
                const auto l = ctx.lift_subline(s, p0, y);
                EXPECT_TRUE(l.contains(ctx.small_field(), y));
                EXPECT_EQ(ctx.linear_set_from_subspace(l), s);
                lifts.insert(l);
            });
            EXPECT_EQ(lifts.size(), ctx.reduced().subspace_point_count(el.dim()));
        }
    }
}

TEST(SpreadContext, LiftInPG24EveryTriple) {
    const auto g = pg(2, 2, 2);
    SpreadContext ctx(g, 1);
    const auto line = g.points_of(g.line_through(0, 1));
    for (std::size_t a = 0; a < line.size(); ++a)
        for (std::size_t b = a + 1; b < line.size(); ++b)
            for (std::size_t c = b + 1; c < line.size(); ++c) {
                const PointSet s{line[a], line[b], line[c]};
                for (auto p0 : s)
                    ctx.reduced().for_each_point(ctx.spread_element(p0), [&](std::span<const Elem> x) {
                        EXPECT_EQ(ctx.linear_set_from_subspace(ctx.lift_subline(s, p0, x)), s);
                    });
            }
}

TEST(SpreadContext, LiftErrors) {
    const auto g = pg(2, 7, 2);
    SpreadContext ctx(g, 1);
    std::mt19937_64 rng(8);
    const auto l0 = random_transversal(ctx, rng);
    const auto s = ctx.linear_set_from_subspace(l0);
    const auto other = ctx.spread_element(s[1]);
    try {
        ctx.lift_subline(s, s[0], other.basis()[0]);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotMember);
    }
    // Eight collinear points that are not a subline.
    const auto line = g.points_of(g.line_through(s[0], s[1]));
    std::vector<std::uint64_t> pts(line.begin(), line.end());
    PointSet bad;
    for (std::size_t i = 0; bad.size() < 8; ++i)
        if (!s.contains(pts[i]) || bad.size() < 2) bad.insert(pts[i]);
    if (!bad.contains(s[0])) {
        bad.erase(bad[bad.size() - 1]);
        bad.insert(s[0]);
    }
    ASSERT_FALSE(is_subline(g, bad, 1));
    try {
        ctx.lift_subline(bad, s[0], ctx.spread_element(s[0]).basis()[0]);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotASubline);
    }
}
