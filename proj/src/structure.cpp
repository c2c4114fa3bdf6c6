#include "linblock/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "linblock/parallel.hpp"

namespace linblock {

// ---------------------------------------------------------------- sublines

SublineCollector::SublineCollector(const Geometry& g, const PointSet& b, std::uint32_t e, int threads)
    : b_(&b), tester_(g, e), e_(e), size_(1), checked_(worker_count(b.size(), threads), 0),
      violations_(worker_count(b.size(), threads)) {
    for (std::uint32_t i = 0; i < e; ++i) size_ *= g.field().p();
    ++size_;
}

void SublineCollector::operator()(int worker, std::span<const std::uint32_t> members) {
    if (members.size() != size_) return;
    std::vector<std::uint64_t> pts;
    pts.reserve(members.size());
    for (auto m : members) pts.push_back((*b_)[m]);
    PointSet s(std::move(pts));
    ++checked_[static_cast<std::size_t>(worker)];
    if (!tester_(s)) violations_[static_cast<std::size_t>(worker)].push_back(std::move(s));
}

SublineReport SublineCollector::finish() {
    SublineReport r;
    r.e = e_;
    for (auto c : checked_) r.checked += c;
    for (auto& v : violations_)
        for (auto& s : v) r.violations.push_back(std::move(s));
    return r;
}

SublineReport check_sublines(const Geometry& g, const PointSet& b, std::uint32_t e, int threads) {
    const IncidenceIndex index(g, b);
    SublineCollector collect(g, b, e, threads);
    for_each_secant(index, threads, [&](int w, std::span<const std::uint32_t> m) { collect(w, m); });
    return collect.finish();
}

OneModPReport check_one_mod_p(const LineCensus& census, std::uint32_t p) {
    OneModPReport r;
    r.p = p;
    for (const auto& [k, count] : census.histogram) {
        if (k == 0) continue;
        r.lines_checked += count;
        if (k % p != 1) r.violations[k] += count;
    }
    return r;
}

// ------------------------------------------------------------------ planes

PlaneCensus plane_census(const Geometry& g, const IncidenceIndex& index, const PointSet& secant, std::uint32_t q0) {
    if (secant.size() != std::size_t{q0} + 1)
        throw Error(ErrorKind::NotASecant, "line does not meet the set in q0+1 points");
    const auto& f = g.field();
    const auto& b = index.points();
    const Subspace line = g.line_through(secant[0], secant[1]);
    const auto& rows = line.basis();
    const auto& piv = line.pivots();
    std::map<std::uint64_t, std::pair<Vec, std::uint64_t>> groups;
    Vec r(g.ncoords());
    for (std::size_t j = 0; j < index.size(); ++j) {
        if (secant.contains(b[j])) continue;
        const auto c = index.coords(j);
        std::copy(c.begin(), c.end(), r.begin());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Elem s = r[piv[i]];
            if (!s) continue;
            for (std::size_t k = 0; k < r.size(); ++k) r[k] = f.sub(r[k], f.mul(s, rows[i][k]));
        }
        g.normalize(r);
        auto [it, fresh] = groups.try_emplace(g.rank(r), r, 0);
        ++it->second.second;
    }
    PlaneCensus out;
    out.secant = secant;
    const std::uint64_t good_size = std::uint64_t{q0} * q0 + q0 + 1;
    for (auto& [key, entry] : groups) {
        PlaneInfo info;
        info.plane = g.span({rows[0], rows[1], entry.first});
        info.size = secant.size() + entry.second;
        // Points off the secant make the plane's points non-collinear.
        info.good = info.size == good_size;
        out.good += info.good;
        out.planes.push_back(std::move(info));
    }
    return out;
}

PlaneCensus plane_census(const Geometry& g, const PointSet& b, const Subspace& line, std::uint32_t q0) {
    if (line.dim() != 1) throw Error(ErrorKind::NotASecant, "not a line");
    const IncidenceIndex index(g, b);
    return plane_census(g, index, g.set_meet(b, line), q0);
}

// ------------------------------------------------------------------ bounds

namespace {

struct LemmaInfo {
    LemmaId id;
    const char* name;
    const char* formula;
    std::uint32_t min_h;
};

constexpr LemmaInfo kLemmas[] = {
    {LemmaId::SizeBound, "size_bound", "|B| <= q0^h + q0^(h-1) + q0^(h-2) + 3*q0^(h-3)", 3},
    {LemmaId::ShortSecantCount, "short_secant_count",
     "(q0+1)-secants through P >= q0^(h-1) - 4*q0^(h-2) + 1, for P on some (q0+1)-secant", 2},
    {LemmaId::SecantCountPlanar, "secant_count_planar", "secants through P >= (q - kappa + 1)/p^(e_P) + 1, n = 2", 2},
    {LemmaId::SecantCountDoubleExponent, "secant_count_double_exponent",
     "secants through P >= q0^(h-2) - q0^(h-3) - q0^(h-4) - 3*q0^(h-5) + 1, for e_P = 2e", 5},
    {LemmaId::PlaneMeetLower, "plane_meet_lower",
     "|B meet plane| >= q0^2 + q0 + 1 for planes with 3 non-collinear points of B", 0},
    {LemmaId::PlaneMeetGap, "plane_meet_gap",
     "|B meet plane| > q0^2 + q0 + 1 implies |B meet plane| >= 2*q0^2 + q0 + 1", 0},
    {LemmaId::PlaneMeetCap, "plane_meet_cap", "|B meet plane| <= q0^3 + q0^2 + q0 + 1", 0},
    {LemmaId::GoodPlaneDichotomy, "good_plane_dichotomy",
     "good planes through a (q0+1)-secant L >= q0^(h-2) - 4*q0^(h-3) + 1, or all planes through L are bad "
     "with >= q0^3 + q0 + 1 points off L",
     3},
    {LemmaId::AllBadSecantLimit, "all_bad_secant_limit",
     "(q0+1)-secants through P lying on bad planes only <= 1", 4},
};

const LemmaInfo& info(LemmaId id) {
    for (const auto& l : kLemmas)
        if (l.id == id) return l;
    throw Error(ErrorKind::UnknownLemma, "unknown lemma id");
}

/// c * q0^k, or 0 (flagged) for k < 0.
std::int64_t term(std::int64_t c, std::uint64_t q0, int k, bool& dropped) {
    if (k < 0) {
        dropped = true;
        return 0;
    }
    std::int64_t v = c;
    for (int i = 0; i < k; ++i) v *= static_cast<std::int64_t>(q0);
    return v;
}

} // namespace

const char* lemma_name(LemmaId id) noexcept { return info(id).name; }
const char* lemma_formula(LemmaId id) noexcept { return info(id).formula; }
std::uint32_t lemma_min_h(LemmaId id) noexcept { return info(id).min_h; }

LemmaId lemma_from_name(std::string_view name) {
    for (const auto& l : kLemmas)
        if (name == l.name) return l.id;
    throw Error(ErrorKind::UnknownLemma, "unknown lemma '" + std::string(name) + "'");
}

std::string Bound::text() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Bound bound_value(LemmaId id, std::uint64_t q0, std::uint32_t h, const BoundExtra& extra) {
    Bound b;
    bool dropped = false;
    const int hh = static_cast<int>(h);
    switch (id) {
    case LemmaId::SizeBound:
        b.num = term(1, q0, hh, dropped) + term(1, q0, hh - 1, dropped) + term(1, q0, hh - 2, dropped) +
                term(3, q0, hh - 3, dropped);
        break;
    case LemmaId::ShortSecantCount:
        b.num = term(1, q0, hh - 1, dropped) - term(4, q0, hh - 2, dropped) + 1;
        break;
    case LemmaId::SecantCountPlanar: {
        const std::int64_t top = static_cast<std::int64_t>(extra.q) - extra.kappa + 1 +
                                 static_cast<std::int64_t>(extra.p_eP);
        const std::int64_t den = static_cast<std::int64_t>(extra.p_eP);
        const std::int64_t g = std::gcd(top < 0 ? -top : top, den);
        b.num = top / g;
        b.den = den / g;
        break;
    }
    case LemmaId::SecantCountDoubleExponent:
        b.num = term(1, q0, hh - 2, dropped) - term(1, q0, hh - 3, dropped) - term(1, q0, hh - 4, dropped) -
                term(3, q0, hh - 5, dropped) + 1;
        break;
    case LemmaId::PlaneMeetLower:
        b.num = term(1, q0, 2, dropped) + term(1, q0, 1, dropped) + 1;
        break;
    case LemmaId::PlaneMeetGap:
        b.num = term(2, q0, 2, dropped) + term(1, q0, 1, dropped) + 1;
        break;
    case LemmaId::PlaneMeetCap:
        b.num = term(1, q0, 3, dropped) + term(1, q0, 2, dropped) + term(1, q0, 1, dropped) + 1;
        break;
    case LemmaId::GoodPlaneDichotomy:
        b.num = term(1, q0, hh - 2, dropped) - term(4, q0, hh - 3, dropped) + 1;
        break;
    case LemmaId::AllBadSecantLimit:
        b.num = 1;
        break;
    }
    b.informational = dropped || h < info(id).min_h;
    return b;
}

Bound bound_value(std::string_view name, std::uint64_t q0, std::uint32_t h, const BoundExtra& extra) {
    return bound_value(lemma_from_name(name), q0, h, extra);
}

const char* to_string(CheckStatus s) noexcept {
    switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Informational: return "INFORMATIONAL";
    default: return "OUTSIDE_HYPOTHESES";
    }
}

SpanHypotheses check_span_hypotheses(std::uint32_t q0, std::uint32_t h, int span_dim) {
    SpanHypotheses s;
    s.q0 = q0;
    s.h = h;
    s.h_above_3 = h > 3;
    s.q0_above_5h_minus_11 = static_cast<std::int64_t>(q0) > 5 * static_cast<std::int64_t>(h) - 11;
    s.q0_at_least_7 = q0 >= 7;
    s.span_dim = span_dim;
    s.spans_h_minus_1 = span_dim == static_cast<int>(h) - 1;
    return s;
}

bool SuiteReport::any_fail() const noexcept {
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail) return true;
    return false;
}

// ------------------------------------------------------------------- suite

namespace {

struct PlaneSurvey {
    std::vector<std::uint64_t> sizes;  // planes with >= 3 non-collinear points of B
    std::string coverage;
    std::vector<PlaneCensus> secants;  // per surveyed (q0+1)-secant
    /// Points whose (q0+1)-secants were all surveyed.
    std::vector<std::uint64_t> complete_points;
};

PlaneSurvey survey_planes(const Geometry& g, const PointSet& b, const LineCensus& census, std::uint32_t q0,
                          int span_dim, const SuiteOptions& opts) {
    PlaneSurvey s;
    const IncidenceIndex index(g, b);
    const std::uint32_t size = q0 + 1;
    std::uint64_t incidences = 0;
    for (const auto& p : census.per_point) incidences += p.count_of_size(size);
    const std::uint64_t total = incidences / size;
    const bool all = static_cast<long double>(total) * b.size() <= static_cast<long double>(opts.plane_work);

    std::vector<PointSet> secants;
    if (all) {
        std::vector<std::vector<PointSet>> per(worker_count(b.size(), opts.threads));
        for_each_secant(index, opts.threads, [&](int w, std::span<const std::uint32_t> m) {
            if (m.size() != size) return;
            std::vector<std::uint64_t> pts;
            for (auto j : m) pts.push_back(b[j]);
            per[static_cast<std::size_t>(w)].emplace_back(std::move(pts));
        });
        for (auto& v : per)
            for (auto& x : v) secants.push_back(std::move(x));
        for (std::size_t pos = 0; pos < b.size(); ++pos)
            if (census.per_point[pos].count_of_size(size)) s.complete_points.push_back(b[pos]);
    } else {
        std::set<PointSet> seen;
        for (std::size_t pos = 0; pos < b.size() && s.complete_points.size() < opts.anchor_points; ++pos) {
            if (!census.per_point[pos].count_of_size(size)) continue;
            s.complete_points.push_back(b[pos]);
            const auto groups = index.lines_through(pos);
            for (std::size_t k = 0; k < groups.count(); ++k) {
                const auto grp = groups.group(k);
                if (grp.size() + 1 != size) continue;
                std::vector<std::uint64_t> pts{b[pos]};
                for (auto j : grp) pts.push_back(b[j]);
                PointSet sec(std::move(pts));
                if (seen.insert(sec).second) secants.push_back(std::move(sec));
            }
        }
    }
    s.secants.resize(secants.size());
    parallel_for(secants.size(), opts.threads, [&](std::size_t begin, std::size_t end, int) {
        for (std::size_t i = begin; i < end; ++i) s.secants[i] = plane_census(g, index, secants[i], q0);
    });

    if (g.n() == 2) {
        if (span_dim == 2) s.sizes.push_back(b.size());
        s.coverage = "exhaustive";
    } else if (g.n() == 3 && hyperplane_scan_feasible(g, b.size(), opts.scan)) {
        ScanOptions so = opts.scan;
        so.threads = opts.threads;
        for (const auto& [idx, members] : scan_hyperplanes(g, b, so, 3).collected)
            if (g.span_points(members).dim() == 2) s.sizes.push_back(members.size());
        s.coverage = all ? "exhaustive" : "exhaustive planes, sampled secants";
    } else {
        std::set<Matrix> planes;
        for (const auto& c : s.secants)
            for (const auto& p : c.planes)
                if (planes.insert(p.plane.basis()).second) s.sizes.push_back(p.size);
        s.coverage = all ? "planes through every (q0+1)-secant" : "sampled";
    }
    return s;
}

} // namespace

SuiteReport run_lemma_suite(const Geometry& g, const PointSet& b, const BlockingReport& report,
                            const LineCensus& census, const SuiteOptions& opts) {
    SuiteReport out;
    const auto& f = g.field();
    const bool have_e = report.exponent && report.exponent->e >= 1 && report.exponent->h_integral;
    const std::uint32_t e = have_e ? report.exponent->e : 0;
    const std::uint32_t q0 = have_e ? report.exponent->q0 : 0;
    const std::uint32_t h = have_e ? report.exponent->h : 0;
    const bool small_minimal = report.is_blocking != Verdict::No && report.is_minimal != Verdict::No &&
                               report.is_small && have_e;
    const bool q0_ok = q0 >= 7;
    const bool spanning = have_e && report.span_dim == static_cast<int>(h) - 1;

    std::string pre_note;
    if (!small_minimal) pre_note = "preconditions unmet (small, minimal, blocking, e | t)";
    else if (report.is_blocking == Verdict::Undetermined || report.is_minimal == Verdict::Undetermined)
        pre_note = "blocking/minimal not fully determined";

    auto add = [&](LemmaId id, const Bound& bound, std::string measured, bool holds, bool needs_q0, bool needs_span,
                   std::string detail) {
        LemmaCheck c;
        c.lemma = id;
        c.bound = bound.text();
        c.measured = std::move(measured);
        c.detail = std::move(detail);
        if (!small_minimal || bound.informational) {
            c.status = CheckStatus::Informational;
            if (bound.informational) c.detail += (c.detail.empty() ? "" : "; ") + std::string("h below lemma minimum");
        } else if ((needs_q0 && !q0_ok) || (needs_span && !spanning)) {
            c.status = CheckStatus::OutsideHypotheses;
        } else {
            c.status = holds ? CheckStatus::Pass : CheckStatus::Fail;
        }
        if (!pre_note.empty()) c.detail += (c.detail.empty() ? "" : "; ") + pre_note;
        out.checks.push_back(std::move(c));
    };

    if (!have_e) {
        for (const auto& l : kLemmas) {
            LemmaCheck c;
            c.lemma = l.id;
            c.status = CheckStatus::Informational;
            c.detail = "no exponent with e | t";
            out.checks.push_back(std::move(c));
        }
        return out;
    }

    // size
    {
        const auto bound = bound_value(LemmaId::SizeBound, q0, h);
        add(LemmaId::SizeBound, bound, std::to_string(b.size()), static_cast<std::int64_t>(b.size()) <= bound.num, true,
            false, "");
    }
    // (q0+1)-secants per point
    {
        const auto bound = bound_value(LemmaId::ShortSecantCount, q0, h);
        std::optional<std::uint32_t> worst;
        std::uint64_t worst_point = 0, points = 0;
        for (std::size_t pos = 0; pos < b.size(); ++pos) {
            const auto c = census.per_point[pos].count_of_size(q0 + 1);
            if (!c) continue;
            ++points;
            if (!worst || c < *worst) {
                worst = c;
                worst_point = b[pos];
            }
        }
        add(LemmaId::ShortSecantCount, bound, worst ? std::to_string(*worst) : "-",
            !worst || static_cast<std::int64_t>(*worst) >= bound.num, true, false,
            worst ? std::to_string(points) + " points checked, minimum at point " + std::to_string(worst_point)
                  : "vacuous: no point on a (q0+1)-secant");
    }
    // secants per point in the plane
    if (g.n() == 2) {
        Bound worst_bound;
        std::int64_t worst_secants = -1;
        long double worst_slack = 0;
        std::uint64_t worst_point = 0;
        bool holds = true;
        for (std::size_t pos = 0; pos < b.size(); ++pos) {
            const auto& prof = census.per_point[pos];
            std::uint64_t pe = 1;
            for (std::uint32_t i = 0; i < point_exponent(g, prof); ++i) pe *= f.p();
            const auto bound = bound_value(LemmaId::SecantCountPlanar, q0, h, {f.q(), report.kappa, pe});
            const long double slack = static_cast<long double>(prof.secants) -
                                      static_cast<long double>(bound.num) / static_cast<long double>(bound.den);
            if (static_cast<std::int64_t>(prof.secants) * bound.den < bound.num) holds = false;
            if (worst_secants < 0 || slack < worst_slack) {
                worst_slack = slack;
                worst_secants = prof.secants;
                worst_bound = bound;
                worst_point = b[pos];
            }
        }
        add(LemmaId::SecantCountPlanar, worst_bound, std::to_string(worst_secants), holds, false, false,
            "tightest at point " + std::to_string(worst_point));
    } else {
        LemmaCheck c;
        c.lemma = LemmaId::SecantCountPlanar;
        c.status = CheckStatus::Informational;
        c.measured = "-";
        c.bound = "-";
        c.detail = "not run: stated for n = 2";
        out.checks.push_back(std::move(c));
    }
    // points with e_P = 2e
    {
        const auto bound = bound_value(LemmaId::SecantCountDoubleExponent, q0, h);
        std::optional<std::uint32_t> worst;
        std::uint64_t points = 0;
        for (std::size_t pos = 0; pos < b.size(); ++pos) {
            const auto& prof = census.per_point[pos];
            if (point_exponent(g, prof) != 2 * e) continue;
            ++points;
            if (!worst || prof.secants < *worst) worst = prof.secants;
        }
        add(LemmaId::SecantCountDoubleExponent, bound, worst ? std::to_string(*worst) : "-",
            !worst || static_cast<std::int64_t>(*worst) >= bound.num, true, false,
            worst ? std::to_string(points) + " points with e_P = 2e" : "vacuous: no point with e_P = 2e");
    }

    const auto survey = survey_planes(g, b, census, q0, report.span_dim, opts);
    out.plane_coverage = survey.coverage;
    out.secants_surveyed = survey.secants.size();
    const std::string cov = "plane data: " + survey.coverage + ", " + std::to_string(survey.sizes.size()) + " planes";
    // plane intersections
    {
        const auto lower = bound_value(LemmaId::PlaneMeetLower, q0, h);
        const auto gap = bound_value(LemmaId::PlaneMeetGap, q0, h);
        const auto cap = bound_value(LemmaId::PlaneMeetCap, q0, h);
        std::optional<std::uint64_t> lo, hi;
        std::uint64_t in_gap = 0;
        for (auto s : survey.sizes) {
            lo = lo ? std::min(*lo, s) : s;
            hi = hi ? std::max(*hi, s) : s;
            if (static_cast<std::int64_t>(s) > lower.num && static_cast<std::int64_t>(s) < gap.num) ++in_gap;
        }
        add(LemmaId::PlaneMeetLower, lower, lo ? std::to_string(*lo) : "-", !lo || static_cast<std::int64_t>(*lo) >= lower.num,
            false, false, cov);
        add(LemmaId::PlaneMeetGap, gap, std::to_string(in_gap) + " planes in the gap", in_gap == 0, false, false, cov);
        add(LemmaId::PlaneMeetCap, cap, hi ? std::to_string(*hi) : "-", !hi || static_cast<std::int64_t>(*hi) <= cap.num, true,
            true, cov);
    }
    // good planes through secants
    {
        const auto bound = bound_value(LemmaId::GoodPlaneDichotomy, q0, h);
        const std::int64_t off_line = static_cast<std::int64_t>(q0) * q0 * q0 + q0 + 1;
        std::uint64_t violations = 0, all_bad = 0;
        std::optional<std::size_t> min_good;
        for (const auto& c : survey.secants) {
            if (c.all_bad()) {
                ++all_bad;
                for (const auto& p : c.planes)
                    if (static_cast<std::int64_t>(p.size - c.secant.size()) < off_line) {
                        ++violations;
                        break;
                    }
            } else {
                min_good = min_good ? std::min(*min_good, c.good) : c.good;
                if (static_cast<std::int64_t>(c.good) < bound.num) ++violations;
            }
        }
        add(LemmaId::GoodPlaneDichotomy, bound,
            (min_good ? "min good planes " + std::to_string(*min_good) : std::string("no secant with good planes")) +
                ", " + std::to_string(all_bad) + " all-bad secants, " + std::to_string(violations) + " violations",
            violations == 0, true, true, std::to_string(survey.secants.size()) + " secants surveyed (" + survey.coverage + ")");
    }
    // all-bad secants per point
    {
        const auto bound = bound_value(LemmaId::AllBadSecantLimit, q0, h);
        std::map<std::uint64_t, std::uint64_t> per_point;
        for (const auto& c : survey.secants)
            if (c.all_bad())
                for (auto p : c.secant) ++per_point[p];
        std::uint64_t worst = 0;
        for (auto p : survey.complete_points) {
            auto it = per_point.find(p);
            if (it != per_point.end()) worst = std::max(worst, it->second);
        }
        add(LemmaId::AllBadSecantLimit, bound, std::to_string(worst),
            static_cast<std::int64_t>(worst) <= bound.num, true, true,
            std::to_string(survey.complete_points.size()) + " points with all their (q0+1)-secants surveyed");
    }
    return out;
}

// --------------------------------------------------------------- certifier

bool certificate_implies_blocking(const LinearityCertificate& cert) noexcept {
    return cert.verified && cert.xi_dim == static_cast<int>(cert.h);
}

LinearityCertificate certify_linearity(const Geometry& g, const PointSet& b, const BlockingReport& report,
                                       const CertifyOptions& opts) {
    if (!report.is_small || report.is_blocking == Verdict::No || report.is_minimal == Verdict::No)
        throw Error(ErrorKind::NotSmallMinimal, "certification needs a small minimal blocking set");
    if (!report.exponent || report.exponent->e == 0 || !report.exponent->h_integral)
        throw Error(ErrorKind::ExponentNotDivisor, "exponent does not divide t");
    const auto& ex = *report.exponent;
    const SpreadContext ctx(g, ex.e);
    const IncidenceIndex index(g, b);
    const std::uint32_t q0 = ex.q0;

    LinearityCertificate cert;
    cert.e = ex.e;
    cert.q0 = q0;
    cert.h = ex.h;
    cert.hypotheses = check_span_hypotheses(q0, ex.h, report.span_dim);

    bool any_anchor = false;
    for (std::size_t pos = 0; pos < b.size() && cert.attempts < opts.max_anchors; ++pos) {
        const auto groups = index.lines_through(pos);
        std::vector<PointSet> secants;
        for (std::size_t k = 0; k < groups.count(); ++k) {
            const auto grp = groups.group(k);
            if (grp.size() != q0) continue;
            std::vector<std::uint64_t> pts{b[pos]};
            for (auto j : grp) pts.push_back(b[j]);
            secants.emplace_back(std::move(pts));
        }
        if (secants.empty()) continue;
        any_anchor = true;
        const std::uint64_t p = b[pos];
        const Subspace element = ctx.spread_element(p);
        std::vector<Vec> xs;
        ctx.reduced().for_each_point(element, [&](std::span<const Elem> v) {
            if (xs.size() < opts.points_per_anchor) xs.emplace_back(v.begin(), v.end());
        });
        for (const auto& x : xs) {
            if (cert.attempts >= opts.max_anchors) break;
            ++cert.attempts;
            std::vector<std::optional<Subspace>> lifted(secants.size());
            std::vector<std::string> failures(secants.size());
            parallel_for(secants.size(), opts.threads, [&](std::size_t begin, std::size_t end, int) {
                for (std::size_t i = begin; i < end; ++i) {
                    try {
                        lifted[i] = ctx.lift_subline(secants[i], p, x);
                    } catch (const Error& err) {
                        failures[i] = err.what();
                    }
                }
            });
            cert.anchor = p;
            cert.x = x;
            cert.lifted_lines.clear();
            Matrix rows;
            for (std::size_t i = 0; i < secants.size(); ++i) {
                if (lifted[i]) {
                    for (const auto& r : lifted[i]->basis()) rows.push_back(r);
                    cert.lifted_lines.push_back(std::move(*lifted[i]));
                } else {
                    cert.notes.push_back("secant " + std::to_string(i) + " through point " + std::to_string(p) +
                                         " skipped: " + failures[i]);
                }
            }
            cert.xi = ctx.reduced().span(rows);
            cert.xi_dim = cert.xi.dim();
            if (cert.xi_dim == static_cast<int>(ex.h)) {
                cert.verified = ctx.linear_set_from_subspace(cert.xi) == b;
                if (cert.verified) return cert;
                cert.notes.push_back("B(xi) differs from the set for anchor " + std::to_string(p));
            } else {
                cert.notes.push_back("span of lifted lines has dimension " + std::to_string(cert.xi_dim) +
                                     " for anchor " + std::to_string(p));
            }
        }
    }
    if (!any_anchor) throw Error(ErrorKind::NoSecant, "no (q0+1)-secant exists");
    return cert;
}

} // namespace linblock
