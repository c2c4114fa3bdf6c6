#include <gtest/gtest.h>

#include <random>

#include "linblock/blocking.hpp"
#include "linblock/constructions.hpp"
#include "linblock/structure.hpp"

using namespace linblock;

namespace {

Geometry pg(int n, std::uint32_t p, std::uint32_t t) { return Geometry::build(n, make_field(p, t)); }

LineCensus census_of(const Geometry& g, const PointSet& b) { return line_census(IncidenceIndex(g, b)); }

const LemmaCheck& find(const SuiteReport& r, LemmaId id) {
    for (const auto& c : r.checks)
        if (c.lemma == id) return c;
    throw std::runtime_error("missing check");
}

} // namespace

TEST(Bounds, WorkedValues) {
    EXPECT_EQ(bound_value(LemmaId::SizeBound, 7, 3).num, 402);
    EXPECT_EQ(bound_value(LemmaId::ShortSecantCount, 7, 4).num, 148);
    EXPECT_EQ(bound_value(LemmaId::SecantCountDoubleExponent, 7, 5).num, 285);
    EXPECT_EQ(bound_value(LemmaId::GoodPlaneDichotomy, 11, 4).num, 78);
    EXPECT_EQ(bound_value(LemmaId::PlaneMeetGap, 7, 3).num, 2 * 49 + 7 + 1);
    EXPECT_EQ(bound_value(LemmaId::PlaneMeetCap, 11, 4).num, 1331 + 121 + 11 + 1);
    const auto planar = bound_value(LemmaId::SecantCountPlanar, 7, 2, {49, 8, 7});
    EXPECT_EQ(planar.num, 7);
    EXPECT_EQ(planar.den, 1);
    EXPECT_FALSE(planar.informational);
    const auto frac = bound_value(LemmaId::SecantCountPlanar, 7, 3, {343, 57, 7});
    EXPECT_EQ(frac.text(), "42");
    EXPECT_EQ(bound_value(LemmaId::SecantCountPlanar, 2, 2, {16, 3, 4}).text(), "9/2");
    EXPECT_EQ(bound_value("size_bound", 7, 3).num, 402);
    EXPECT_THROW(bound_value("no_such_lemma", 7, 3), Error);
}

TEST(Bounds, NegativeExponentsDropped) {
    const auto b = bound_value(LemmaId::SizeBound, 7, 2);
    EXPECT_TRUE(b.informational);
    EXPECT_EQ(b.num, 49 + 7 + 1);
    const auto c = bound_value(LemmaId::SecantCountDoubleExponent, 7, 3);
    EXPECT_TRUE(c.informational);
    EXPECT_EQ(c.num, 7 - 1 + 1);
    EXPECT_FALSE(bound_value(LemmaId::ShortSecantCount, 7, 2).informational);
    for (const char* name : {"size_bound", "short_secant_count", "secant_count_planar",
                             "secant_count_double_exponent", "plane_meet_lower", "plane_meet_gap", "plane_meet_cap",
                             "good_plane_dichotomy", "all_bad_secant_limit"})
        EXPECT_STREQ(lemma_name(lemma_from_name(name)), name);
}

TEST(SpanHypotheses, Examples) {
    const auto a = check_span_hypotheses(7, 3, 2);
    EXPECT_FALSE(a.h_above_3);
    EXPECT_FALSE(a.inside());
    const auto b = check_span_hypotheses(11, 4, 3);
    EXPECT_TRUE(b.h_above_3 && b.q0_above_5h_minus_11 && b.q0_at_least_7 && b.spans_h_minus_1);
    EXPECT_TRUE(b.inside());
    const auto c = check_span_hypotheses(7, 4, 3);
    EXPECT_FALSE(c.q0_above_5h_minus_11);
    EXPECT_FALSE(c.inside());
    EXPECT_FALSE(check_span_hypotheses(11, 4, 2).inside());
}

TEST(Sublines, BaerAndTraceType) {
    const auto g = pg(2, 7, 2);
    const auto baer = subgeometry(g, 1, 2);
    const auto r = check_sublines(g, baer, 1);
    EXPECT_EQ(r.checked, 57u);
    EXPECT_TRUE(r.violations.empty());

    const auto g3 = pg(2, 7, 3);
    const SpreadContext ctx(g3, 1);
    const auto trace = ctx.linear_set_from_vectors(frobenius_generators(ctx));
    const auto t = check_sublines(g3, trace, 1, 2);
    EXPECT_GT(t.checked, 0u);
    EXPECT_TRUE(t.violations.empty());
}

TEST(Sublines, PerturbedSecantIsReported) {
    const auto g = pg(2, 7, 2);
    auto b = subgeometry(g, 1, 2);
    // Swap one point of a subplane line for another point of the same line.
    const auto line = g.points_of(g.line_through(b[0], b[1]));
    const auto meet = b.intersection(line);
    std::uint64_t repl = 0;
    for (auto p : line)
        if (!b.contains(p)) {
            PointSet cand = meet;
            cand.erase(meet[2]);
            cand.insert(p);
            if (!is_subline(g, cand, 1)) {
                repl = p;
                break;
            }
        }
    ASSERT_NE(repl, 0u);
    b.erase(meet[2]);
    b.insert(repl);
    const auto r = check_sublines(g, b, 1);
    ASSERT_EQ(r.violations.size(), 1u);
    EXPECT_TRUE(r.violations[0].contains(repl));
}

TEST(PlaneCensus, PlanarBaerHasOneGoodPlane) {
    const auto g = pg(3, 7, 2);
    const auto b = subgeometry(g, 1, 2);
    const auto line = g.line_through(b[0], b[1]);
    const auto c = plane_census(g, b, line, 7);
    ASSERT_EQ(c.planes.size(), 1u);
    EXPECT_TRUE(c.planes[0].good);
    EXPECT_EQ(c.planes[0].size, 57u);
    EXPECT_EQ(c.good, 1u);
    EXPECT_FALSE(c.all_bad());
    EXPECT_EQ(g.set_meet(b, c.planes[0].plane), b);
}

TEST(PlaneCensus, FullLineIsNotASecant) {
    const auto g = pg(3, 7, 2);
    const auto b = full_line(g);
    try {
        plane_census(g, b, g.line_through(b[0], b[1]), 7);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotASecant);
    }
}

TEST(PlaneCensus, GroupingMatchesDirectMeets) {
    // Oracle: every plane through L, intersected with B directly.
    const auto g = pg(3, 2, 2);
    const SpreadContext ctx(g, 1);
    std::mt19937_64 rng(5);
    const auto rl = random_linear_set(ctx, 3, rng);
    const auto& b = rl.set;
    const IncidenceIndex index(g, b);
    std::size_t checked = 0;
    for (std::size_t pos = 0; pos < b.size() && checked < 4; ++pos) {
        const auto groups = index.lines_through(pos);
        for (std::size_t k = 0; k < groups.count(); ++k) {
            if (groups.group(k).size() != 2) continue;
            const auto line = g.line_through(b[pos], b[groups.group(k)[0]]);
            const auto c = plane_census(g, b, line, 2);
            std::size_t expected = 0;
            g.for_each_hyperplane_through(line, [&](std::span<const Elem> a) {
                const auto meet = g.set_meet(b, g.hyperplane(a));
                if (meet.size() > 3) ++expected;
            });
            EXPECT_EQ(c.planes.size(), expected);
            for (const auto& p : c.planes) EXPECT_EQ(g.set_meet(b, p.plane).size(), p.size);
            ++checked;
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(LemmaSuite, BaerPasses) {
    const auto g = pg(2, 7, 2);
    const auto b = subgeometry(g, 1, 2);
    const auto census = census_of(g, b);
    const auto rep = analyze(g, b, {}, &census);
    const auto s = run_lemma_suite(g, b, rep, census);
    EXPECT_FALSE(s.any_fail());
    const auto& short_sec = find(s, LemmaId::ShortSecantCount);
    EXPECT_EQ(short_sec.status, CheckStatus::Pass);
    EXPECT_EQ(short_sec.measured, "8");
    EXPECT_EQ(short_sec.bound, "4");
    const auto& planar = find(s, LemmaId::SecantCountPlanar);
    EXPECT_EQ(planar.status, CheckStatus::Pass);
    EXPECT_EQ(planar.measured, "8");
    EXPECT_EQ(planar.bound, "7");
    EXPECT_EQ(find(s, LemmaId::SizeBound).status, CheckStatus::Informational);
}

TEST(LemmaSuite, TraceTypeSet) {
    const auto g = pg(2, 7, 3);
    const SpreadContext ctx(g, 1);
    const auto b = ctx.linear_set_from_vectors(frobenius_generators(ctx));
    const auto census = census_of(g, b);
    const auto rep = analyze(g, b, {}, &census);
    const auto s = run_lemma_suite(g, b, rep, census);
    EXPECT_FALSE(s.any_fail());
    const auto& size = find(s, LemmaId::SizeBound);
    EXPECT_EQ(size.status, CheckStatus::Pass);
    EXPECT_EQ(size.bound, "402");
    EXPECT_EQ(size.measured, "400");
    EXPECT_EQ(find(s, LemmaId::ShortSecantCount).status, CheckStatus::Pass);
    EXPECT_EQ(find(s, LemmaId::SecantCountPlanar).status, CheckStatus::Pass);
    EXPECT_EQ(find(s, LemmaId::PlaneMeetGap).status, CheckStatus::Pass);
    EXPECT_EQ(find(s, LemmaId::AllBadSecantLimit).status, CheckStatus::Informational);
}

TEST(LemmaSuite, NotBlockingIsInformational) {
    const auto g = pg(2, 7, 1);
    const PointSet b{0, 1, 2, 3};
    const auto census = census_of(g, b);
    const auto rep = analyze(g, b, {}, &census);
    const auto s = run_lemma_suite(g, b, rep, census);
    for (const auto& c : s.checks) EXPECT_EQ(c.status, CheckStatus::Informational);
}

TEST(Certifier, RoundTrip) {
    struct Case {
        std::uint32_t p, t;
        int count;
    };
    // q0 = p, h = t in the plane.
    std::mt19937_64 rng(2024);
    int verified = 0;
    for (const Case c : {Case{7, 2, 8}, Case{7, 3, 6}, Case{11, 2, 8}, Case{11, 3, 3}}) {
        const auto g = pg(2, c.p, c.t);
        const SpreadContext ctx(g, 1);
        for (int i = 0; i < c.count;) {
            const auto rl = random_linear_set(ctx, c.t + 1, rng);
            const auto census = census_of(g, rl.set);
            const auto rep = analyze(g, rl.set, {}, &census);
            if (rep.is_minimal != Verdict::Yes || !rep.is_small) continue;
            ++i;
            const auto cert = certify_linearity(g, rl.set, rep);
            EXPECT_TRUE(cert.verified) << "q=" << g.q();
            EXPECT_EQ(cert.xi_dim, static_cast<int>(c.t));
            EXPECT_EQ(ctx.linear_set_from_subspace(cert.xi), rl.set);
            for (const auto& l : cert.lifted_lines) EXPECT_TRUE(l.contains(ctx.small_field(), cert.x));
            EXPECT_TRUE(certificate_implies_blocking(cert));
            verified += cert.verified;
        }
    }
    EXPECT_EQ(verified, 25);
}

TEST(Certifier, FullLineDegenerate) {
    const auto g = pg(2, 7, 2);
    const auto b = full_line(g);
    const auto rep = analyze(g, b);
    const auto cert = certify_linearity(g, b, rep);
    EXPECT_TRUE(cert.verified);
    EXPECT_EQ(cert.h, 1u);
    EXPECT_EQ(cert.xi_dim, 1);
}

TEST(Certifier, Preconditions) {
    const auto g = pg(2, 7, 2);
    auto b = subgeometry(g, 1, 2);
    std::uint64_t outside = 0;
    while (b.contains(outside)) ++outside;
    b.erase(b[10]);
    b.insert(outside);
    const auto rep = analyze(g, b);
    try {
        certify_linearity(g, b, rep);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotSmallMinimal);
    }
}

TEST(Certifier, AddingAPointBreaksMinimality) {
    const auto g = pg(2, 7, 3);
    const SpreadContext ctx(g, 1);
    std::mt19937_64 rng(77);
    int done = 0;
    while (done < 10) {
        const auto rl = random_linear_set(ctx, 4, rng);
        const auto rep = analyze(g, rl.set);
        if (rep.is_minimal != Verdict::Yes || !rep.is_small) continue;
        const auto cert = certify_linearity(g, rl.set, rep);
        ASSERT_TRUE(cert.verified);
        std::uniform_int_distribution<std::uint64_t> d(0, g.num_points() - 1);
        auto bigger = rl.set;
        while (bigger.size() == rl.set.size()) bigger.insert(d(rng));
        EXPECT_EQ(is_minimal(g, bigger).value, Verdict::No);
        ++done;
    }
}
