#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "linblock/incidence.hpp"

namespace linblock {

/// Lines through one member of the set.
struct PointLineProfile {
    std::uint32_t secants = 0;
    /// In the plane: the lowest-index point r != P whose line Pr is a tangent.
    std::optional<std::uint64_t> tangent_through;
    /// (line size, number of lines through the point with that size), sizes >= 2.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> sizes;

    std::uint32_t count_of_size(std::uint32_t size) const noexcept {
        for (auto [s, c] : sizes)
            if (s == size) return c;
        return 0;
    }
};

struct LineCensus {
    /// |L meet B| -> number of lines L, over every line meeting B (tangents included).
    std::map<std::uint64_t, std::uint64_t> histogram;
    std::vector<PointLineProfile> per_point;
    std::uint64_t secant_count = 0;
    std::uint64_t set_size = 0;
    /// Secants of the requested size, ordered by smallest member.
    std::vector<PointSet> collected;
    bool collection_truncated = false;

    /// Every pair of points lies on exactly one line.
    bool pair_identity_holds() const;
};

struct CensusOptions {
    int threads = 1;
    /// Collect the secants of exactly this size (0: none).
    std::uint32_t collect_size = 0;
    std::size_t collect_cap = std::size_t{1} << 20;
    /// Called once per secant (sorted member positions) from the worker
    /// owning its smallest member.
    std::function<void(int worker, std::span<const std::uint32_t> members)> on_secant;
};

/// Visits every secant once, as sorted member positions, from the worker that
/// owns its smallest member. Worker ranges are contiguous and ascending.
void for_each_secant(const IncidenceIndex& index, int threads,
                     const std::function<void(int worker, std::span<const std::uint32_t> members)>& fn);

LineCensus line_census(const IncidenceIndex& index, const CensusOptions& opts = {});

/// Number of lines through a point of PG(n,q).
std::uint64_t lines_per_point(const Geometry& g);

/// p-adic valuation of x, capped at cap (x = 0 gives cap).
std::uint32_t valuation(std::uint64_t x, std::uint32_t p, std::uint32_t cap);

} // namespace linblock
