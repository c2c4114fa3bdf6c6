#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linblock/blocking.hpp"
#include "linblock/field_reduction.hpp"
#include "linblock/line_census.hpp"
#include "linblock/sublines.hpp"

namespace linblock {

struct SublineReport {
    std::uint32_t e = 0;
    std::uint64_t checked = 0;
    std::vector<PointSet> violations;
};

/// Runs is_subline on every (p^e+1)-secant of b.
SublineReport check_sublines(const Geometry& g, const PointSet& b, std::uint32_t e, int threads = 1);

/// Lines meeting b in a number of points that is not 1 mod p.
struct OneModPReport {
    std::uint32_t p = 0;
    std::uint64_t lines_checked = 0;
    std::map<std::uint64_t, std::uint64_t> violations;
    bool ok() const noexcept { return violations.empty(); }
};

OneModPReport check_one_mod_p(const LineCensus& census, std::uint32_t p);

/// Per-worker subline checking meant to ride along a line census.
class SublineCollector {
public:
    SublineCollector(const Geometry& g, const PointSet& b, std::uint32_t e, int threads);
    void operator()(int worker, std::span<const std::uint32_t> members);
    SublineReport finish();

private:
    const PointSet* b_;
    SublineTester tester_;
    std::uint32_t e_;
    std::size_t size_;
    std::vector<std::uint64_t> checked_;
    std::vector<std::vector<PointSet>> violations_;
};

/// Planes through a (q0+1)-secant L that carry points of b off L.
struct PlaneInfo {
    Subspace plane;
    std::uint64_t size = 0;  // |plane meet b|
    bool good = false;
};

struct PlaneCensus {
    PointSet secant;  // L meet b
    std::vector<PlaneInfo> planes;
    std::size_t good = 0;
    bool all_bad() const noexcept { return good == 0; }
};

/// Throws NotASecant unless the line meets b in exactly q0+1 points.
PlaneCensus plane_census(const Geometry& g, const PointSet& b, const Subspace& line, std::uint32_t q0);
PlaneCensus plane_census(const Geometry& g, const IncidenceIndex& index, const PointSet& secant, std::uint32_t q0);

enum class LemmaId {
    SizeBound,
    ShortSecantCount,
    SecantCountPlanar,
    SecantCountDoubleExponent,
    PlaneMeetLower,
    PlaneMeetGap,
    PlaneMeetCap,
    GoodPlaneDichotomy,
    AllBadSecantLimit,
};

const char* lemma_name(LemmaId id) noexcept;
LemmaId lemma_from_name(std::string_view name);
/// Formula of the bound in plain notation.
const char* lemma_formula(LemmaId id) noexcept;
/// Smallest h for which no term of the bound has a negative exponent.
std::uint32_t lemma_min_h(LemmaId id) noexcept;

/// An exact bound num/den (den = 1 for the integer formulas).
struct Bound {
    std::int64_t num = 0;
    std::int64_t den = 1;
    /// h was below the lemma's minimum: negative-exponent terms were dropped.
    bool informational = false;
    std::string text() const;
};

struct BoundExtra {
    std::uint64_t q = 0;      // secant_count_planar
    std::int64_t kappa = 0;   // secant_count_planar
    std::uint64_t p_eP = 1;   // secant_count_planar: p^(e_P)
};

Bound bound_value(LemmaId id, std::uint64_t q0, std::uint32_t h, const BoundExtra& extra = {});
Bound bound_value(std::string_view name, std::uint64_t q0, std::uint32_t h, const BoundExtra& extra = {});

enum class CheckStatus { Pass, Fail, Informational, OutsideHypotheses };
const char* to_string(CheckStatus s) noexcept;

struct LemmaCheck {
    LemmaId lemma;
    std::string bound;
    std::string measured;
    CheckStatus status = CheckStatus::Informational;
    std::string detail;
};

struct SpanHypotheses {
    std::uint32_t q0 = 0;
    std::uint32_t h = 0;
    bool h_above_3 = false;
    bool q0_above_5h_minus_11 = false;
    bool q0_at_least_7 = false;
    int span_dim = -1;
    bool spans_h_minus_1 = false;
    /// All three hypotheses hold.
    bool inside() const noexcept { return h_above_3 && q0_above_5h_minus_11 && q0_at_least_7 && spans_h_minus_1; }
    const char* label() const noexcept { return inside() ? "inside-hypotheses" : "outside-hypotheses"; }
};

SpanHypotheses check_span_hypotheses(std::uint32_t q0, std::uint32_t h, int span_dim);

struct SuiteOptions {
    int threads = 1;
    ScanOptions scan;
    /// Secant-by-secant plane censuses run for all (q0+1)-secants while
    /// (#secants x |B|) stays below this; otherwise only through anchor points.
    std::uint64_t plane_work = std::uint64_t{1} << 26;
    std::size_t anchor_points = 3;
};

struct SuiteReport {
    std::vector<LemmaCheck> checks;
    /// "exhaustive" or "sampled" plane data.
    std::string plane_coverage;
    std::size_t secants_surveyed = 0;
    bool any_fail() const noexcept;
};

SuiteReport run_lemma_suite(const Geometry& g, const PointSet& b, const BlockingReport& report,
                            const LineCensus& census, const SuiteOptions& opts = {});

struct LinearityCertificate {
    std::uint64_t anchor = 0;
    Vec x;
    std::vector<Subspace> lifted_lines;
    Subspace xi;
    int xi_dim = -1;
    bool verified = false;
    std::uint32_t e = 0, q0 = 0, h = 0;
    std::size_t attempts = 0;
    std::vector<std::string> notes;
    SpanHypotheses hypotheses;
};

struct CertifyOptions {
    int threads = 1;
    std::size_t max_anchors = 5;
    std::size_t points_per_anchor = 2;
};

/// Lifts the (q0+1)-secants through an anchor point to lines through one
/// point x of its spread element, spans them to xi and checks B(xi) = b.
/// Throws NotSmallMinimal, ExponentNotDivisor or NoSecant.
LinearityCertificate certify_linearity(const Geometry& g, const PointSet& b, const BlockingReport& report,
                                       const CertifyOptions& opts = {});

/// A verified certificate with dim xi = h means b = B(xi) meets every hyperplane.
bool certificate_implies_blocking(const LinearityCertificate& cert) noexcept;

} // namespace linblock
