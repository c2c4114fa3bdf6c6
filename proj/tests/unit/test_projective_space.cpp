#include <gtest/gtest.h>

#include <random>
#include <set>

#include "linblock/constructions.hpp"
#include "linblock/projective_space.hpp"

using namespace linblock;

namespace {

Geometry pg(int n, std::uint32_t p, std::uint32_t t, GeometryOptions opts = {}) {
    return Geometry::build(n, make_field(p, t), opts);
}

// Normalized representatives of all nonzero vectors, by direct scaling.
std::set<Vec> brute_points(const Geometry& g) {
    const auto& f = g.field();
    std::set<Vec> out;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < g.ncoords(); ++i) total *= g.q();
    Vec v(g.ncoords());
    for (std::uint64_t m = 1; m < total; ++m) {
        std::uint64_t r = m;
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = static_cast<Elem>(r % g.q());
            r /= g.q();
        }
        Vec w = v;
        std::size_t lead = 0;
        while (w[lead] == 0) ++lead;
        const Elem s = f.inv(w[lead]);
        for (auto& x : w) x = f.mul(x, s);
        out.insert(w);
    }
    return out;
}

} // namespace

TEST(Geometry, PointCounts) {
    EXPECT_EQ(pg(2, 7, 2).num_points(), 2451u);
    EXPECT_EQ(pg(2, 7, 2).num_hyperplanes(), 2451u);
    EXPECT_EQ(pg(2, 7, 3).num_points(), 117993u);
    EXPECT_EQ(pg(5, 7, 1).num_points(), 19608u);
    auto g = pg(3, 5, 2);
    Matrix plane{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
    EXPECT_EQ(g.points_of(g.span(plane)).size(), 651u);
}

TEST(Geometry, IndexingMatchesNormalizedEnumeration) {
    for (auto [n, p, t] : std::vector<std::tuple<int, std::uint32_t, std::uint32_t>>{{2, 2, 2}, {3, 3, 1}, {2, 7, 2}, {4, 2, 1}, {2, 3, 2}}) {
        const auto g = pg(n, p, t);
        const auto oracle = brute_points(g);
        ASSERT_EQ(oracle.size(), g.num_points());
        std::uint64_t i = 0;
        for (const auto& v : oracle) {
            ASSERT_EQ(g.point(i), v);
            ASSERT_EQ(g.rank(v), i);
            ++i;
        }
    }
}

TEST(Geometry, BudgetAndLaziness) {
    try {
        pg(3, 11, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
    }
    GeometryOptions lazy;
    lazy.lazy = true;
    const auto big = pg(3, 11, 4, lazy);
    EXPECT_TRUE(big.indexable());
    const std::uint64_t q = 14641;
    EXPECT_EQ(big.num_points(), q * q * q + q * q + q + 1);
    const auto huge = pg(19, 11, 1, lazy);
    EXPECT_FALSE(huge.indexable());
    EXPECT_THROW(huge.num_points(), Error);
}

TEST(Geometry, Lines) {
    const auto g = pg(2, 2, 2);
    const Vec a{1, 0, 0}, b{0, 1, 0}, c{0, 0, 1};
    const auto l = g.line_through(g.rank(a), g.rank(b));
    EXPECT_EQ(l, g.line_through(g.rank(b), g.rank(a)));
    EXPECT_EQ(g.points_of(l).size(), 5u);
    EXPECT_EQ(g.points_of(g.line_through(g.rank(a), g.rank(c))).size(), 5u);
    for (auto idx : g.points_of(l)) EXPECT_EQ(g.point(idx)[2], 0u);
    try {
        g.line_through(3, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EqualPoints);
    }
    GeometryOptions opts;
    opts.materialize_lines = true;
    const auto g4 = pg(2, 2, 2, opts);
    EXPECT_EQ(g4.lines().size(), 21u);
    for (const auto& line : g4.lines()) EXPECT_EQ(line.size(), 5u);
    const auto g32 = pg(3, 2, 1, opts);
    EXPECT_EQ(g32.lines().size(), 35u);
    for (const auto& line : g32.lines()) EXPECT_EQ(line.size(), 3u);
}

TEST(Geometry, SpanAndDimensions) {
    const auto g = pg(2, 7, 2);
    EXPECT_EQ(g.span_points(PointSet{17}).dim(), 0);
    const PointSet frame{g.rank(Vec{1, 0, 0}), g.rank(Vec{0, 1, 0}), g.rank(Vec{0, 0, 1}), g.rank(Vec{1, 1, 1})};
    EXPECT_EQ(g.span_points(frame).dim(), 2);
    EXPECT_EQ(g.span_points(subgeometry(g, 1, 2)).dim(), 2);
    EXPECT_EQ(g.span_points(full_line(g)).dim(), 1);
}

TEST(Geometry, SpanOfPointsIsIdentityOnSubspaces) {
    std::mt19937_64 rng(3);
    const auto g = pg(4, 3, 1);
    std::uniform_int_distribution<Elem> d(0, 2);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 1 + trial % 4;
        Matrix rows(k, Vec(5));
        for (auto& r : rows)
            for (auto& x : r) x = d(rng);
        const auto s = g.span(rows);
        if (s.dim() < 0) continue;
        const auto pts = g.points_of(s);
        EXPECT_EQ(pts.size(), g.subspace_point_count(s.dim()));
        EXPECT_EQ(g.span_points(pts), s);
    }
}

TEST(Geometry, HyperplanesThrough) {
    const auto g = pg(2, 2, 2);
    int n = 0;
    g.for_each_hyperplane_through(g.span({Vec{1, 0, 0}}), [&](std::span<const Elem>) { ++n; });
    EXPECT_EQ(n, 5);
    const auto g3 = pg(3, 7, 2);
    const auto line = g3.line_through(0, 1);
    n = 0;
    g3.for_each_hyperplane_through(line, [&](std::span<const Elem> a) {
        for (auto idx : g3.points_of(line)) EXPECT_EQ(dot(g3.field(), a, g3.point(idx)), 0u);
        ++n;
    });
    EXPECT_EQ(n, 50);
    EXPECT_EQ(g3.count_hyperplanes_through(line), 50u);
    // Duality: hyperplanes through a point vs points on a hyperplane.
    EXPECT_EQ(g3.count_hyperplanes_through(g3.span({g3.point(5)})), g3.points_of(g3.hyperplane(g3.point(9))).size());
    std::uint64_t count = 0;
    g3.for_each_hyperplane([&](std::uint64_t idx, std::span<const Elem> a) {
        EXPECT_EQ(idx, g3.rank(a));
        ++count;
    });
    EXPECT_EQ(count, g3.num_points());
}

TEST(Geometry, Intersections) {
    const auto g = pg(2, 5, 1);
    const auto l1 = g.line_through(0, 1), l2 = g.line_through(2, 9);
    const auto m = g.intersect(l1, l2);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->dim(), 0);
    const auto g3 = pg(3, 3, 1);
    const auto a = g3.span({Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}});
    const auto b = g3.span({Vec{0, 0, 1, 0}, Vec{0, 0, 0, 1}});
    EXPECT_FALSE(g3.intersect(a, b).has_value());
    const auto h = g3.span({Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}, Vec{0, 0, 1, 1}});
    EXPECT_EQ(*g3.intersect(a, h), a);
}

TEST(Geometry, SetMeetBothRoutes) {
    const auto g = pg(2, 7, 2);
    const auto baer = subgeometry(g, 1, 2);
    ASSERT_EQ(baer.size(), 57u);
    g.for_each_hyperplane([&](std::uint64_t, std::span<const Elem> a) {
        const auto line = g.hyperplane(a);
        const auto meet = g.set_meet(baer, line);
        ASSERT_EQ(meet, g.points_of(line).intersection(baer));
        ASSERT_TRUE(meet.size() == 1 || meet.size() == 8);
    });
    const auto line = full_line(g);
    EXPECT_EQ(g.set_meet(line, g.line_through(line[0], line[1])).size(), 50u);
    const PointSet single{line[0]};
    // Iterating the small side when |B| is below q+1.
    EXPECT_EQ(g.set_meet(single, g.line_through(line[0], line[1])).size(), 1u);
    EXPECT_EQ(g.set_meet(PointSet{g.rank(Vec{1, 0, 0})}, g.span({Vec{0, 1, 0}, Vec{0, 0, 1}})).size(), 0u);
}
