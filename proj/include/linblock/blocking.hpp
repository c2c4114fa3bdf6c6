#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linblock/incidence.hpp"
#include "linblock/line_census.hpp"
#include "linblock/point_set.hpp"
#include "linblock/projective_space.hpp"

namespace linblock {

/// A three-valued verdict: hyperplane-level questions in PG(3,11^4) are out
/// of exhaustive reach and may stay undetermined.
enum class Verdict { No, Yes, Undetermined };
const char* to_string(Verdict v) noexcept;

struct ScanOptions {
    int threads = 1;
    /// Largest (#hyperplanes x |B|) an exhaustive hyperplane scan may cost.
    std::uint64_t hyperplane_work = std::uint64_t{1} << 32;
    /// Hyperplanes through a point searched exhaustively up to this count;
    /// above it, tangent witnesses are sampled.
    std::uint64_t exhaustive_pencil = std::uint64_t{1} << 16;
    std::uint32_t tangent_samples = 256;
    std::uint64_t seed = 0;
};

struct HyperplaneScan {
    std::map<std::uint64_t, std::uint64_t> histogram;  // |H meet B| -> #H
    std::optional<std::uint64_t> first_unblocked;       // hyperplane index
    /// Hyperplanes with at least `collect_min` points of B, as (index, members).
    std::vector<std::pair<std::uint64_t, PointSet>> collected;
};

bool hyperplane_scan_feasible(const Geometry& g, std::size_t set_size, const ScanOptions& opts);
/// Every hyperplane of g against b. collect_min = 0 collects nothing.
HyperplaneScan scan_hyperplanes(const Geometry& g, const PointSet& b, const ScanOptions& opts,
                                std::uint64_t collect_min = 0);

struct BlockingCheck {
    Verdict value = Verdict::Undetermined;
    std::string method;
    /// Dual vector of an unblocked hyperplane.
    std::optional<Vec> witness;
};

BlockingCheck is_blocking(const Geometry& g, const PointSet& b, const ScanOptions& opts = {});
/// Same check from a precomputed line census (n = 2).
BlockingCheck is_blocking(const Geometry& g, const LineCensus& census);

struct MinimalityCheck {
    Verdict value = Verdict::Undetermined;
    std::string method;
    /// Tangent hyperplane (dual vector) per essential point.
    std::map<std::uint64_t, Vec> tangents;
    std::vector<std::uint64_t> inessential;
    std::vector<std::uint64_t> undetermined;
};

/// Throws NotBlocking when b is known not to block.
MinimalityCheck is_minimal(const Geometry& g, const PointSet& b, const ScanOptions& opts = {});
/// Plane only: tangent lines read off a census of b.
MinimalityCheck is_minimal(const Geometry& g, const PointSet& b, const LineCensus& census);

/// A tangent hyperplane of b at p, if one exists (or is found by sampling).
std::optional<Vec> tangent_hyperplane(const Geometry& g, const IncidenceIndex& index, std::size_t pos,
                                      const ScanOptions& opts, bool* exhaustive = nullptr);

struct ExponentInfo {
    std::uint32_t e = 0;
    std::uint32_t q0 = 0;
    std::uint32_t h = 0;
    bool h_integral = false;
    /// "hyperplanes" when the hyperplane reading was computed, else "lines".
    std::string method;
    std::optional<std::uint32_t> from_hyperplanes;
    std::uint32_t from_lines = 0;
    bool readings_agree = true;
};

/// Largest e with p^e dividing |H meet B| - 1 for every hyperplane H (capped
/// at t), with the line-based reading alongside.
ExponentInfo exponent(const Geometry& g, const PointSet& b, const ScanOptions& opts = {});
ExponentInfo exponent_from(const Geometry& g, const LineCensus& census, const HyperplaneScan* scan);

std::uint32_t point_exponent(const Geometry& g, const PointSet& b, std::uint64_t p);
std::uint32_t point_exponent(const Geometry& g, const PointLineProfile& profile);

struct Projection {
    Geometry target;
    PointSet image;
    Subspace hyperplane;
};

/// Projects b from q onto the hyperplane with dual vector h, re-coordinatized
/// through the echelon basis of that hyperplane.
Projection project(const Geometry& g, const PointSet& b, std::uint64_t q, std::span<const Elem> h);

/// Lowest-index point off b on no secant of b.
std::optional<std::uint64_t> find_tangent_only_point(const Geometry& g, const PointSet& b);

struct RemovalOrder {
    enum class Kind { Lex, Random } kind = Kind::Lex;
    std::uint64_t seed = 0;
};

/// Removes points without tangent hyperplanes until b is minimal.
PointSet reduce_to_minimal(const Geometry& g, const PointSet& b, RemovalOrder order, const ScanOptions& opts = {});

struct BlockingReport {
    std::uint64_t size = 0;
    std::int64_t kappa = 0;
    Verdict is_blocking = Verdict::Undetermined;
    Verdict is_minimal = Verdict::Undetermined;
    bool is_small = false;
    std::optional<ExponentInfo> exponent;
    int span_dim = -1;
    std::map<std::uint64_t, std::uint32_t> point_exponents;
    BlockingCheck blocking;
    MinimalityCheck minimality;
    /// Messages about invariant violations (e.g. small minimal with e = 0).
    std::vector<std::string> alarms;
};

/// |b| < 3(q+1)/2.
bool is_small(const Geometry& g, std::size_t size) noexcept;

/// Full attribute report. A census of b may be passed in to avoid recomputing it.
BlockingReport analyze(const Geometry& g, const PointSet& b, const ScanOptions& opts = {},
                       const LineCensus* census = nullptr);

} // namespace linblock
