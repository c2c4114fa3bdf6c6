#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linblock/blocking.hpp"
#include "linblock/point_set.hpp"
#include "linblock/projective_space.hpp"
#include "linblock/structure.hpp"

namespace linblock {

enum class Dedup { Memo, None };

struct SearchConfig {
    /// Defaults to the largest size below 3(q+1)/2.
    std::optional<std::uint64_t> max_size;
    Dedup dedup = Dedup::Memo;
    int parallel_width = 1;
    std::uint64_t seed = 0;
    /// Off: only the size cap cuts branches.
    bool prune = true;
    std::uint64_t guard = 100;
    bool force = false;
};

std::uint64_t default_max_size(const Geometry& g) noexcept;

struct CatalogEntry {
    PointSet set;
    BlockingReport report;
    /// "line", "certified", "not-certified" or "not-applicable".
    std::string linearity;
    std::optional<LinearityCertificate> certificate;
};

struct SearchResult {
    std::uint64_t max_size = 0;
    std::vector<CatalogEntry> catalog;
    std::uint64_t nodes = 0;
    std::uint64_t pruned = 0;
    std::uint64_t leaves = 0;
    std::uint64_t duplicates = 0;
};

/// All minimal blocking sets (with respect to hyperplanes) of size at most
/// max_size, sorted by point tuple. Throws GuardExceeded above cfg.guard
/// points unless cfg.force.
SearchResult enumerate_minimal(const Geometry& g, const SearchConfig& cfg = {});

struct CatalogCheck {
    std::size_t entry = 0;
    bool one_mod_p = false;
    std::optional<std::uint32_t> e;
    std::string linearity;
    bool outside_hypotheses = false;
};

struct CatalogReport {
    std::vector<CatalogCheck> entries;
    std::size_t lines = 0;
    std::size_t certified = 0;
    /// Entries failing 1 mod p; any entry here is an implementation bug.
    std::vector<std::size_t> alarms;
    bool ok() const noexcept { return alarms.empty(); }
};

CatalogReport verify_catalog(const Geometry& g, const SearchResult& res);

} // namespace linblock
