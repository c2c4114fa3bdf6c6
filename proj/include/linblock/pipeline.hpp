#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linblock/io.hpp"

namespace linblock {

struct VerifyOptions {
    bool one_mod_p = true;
    bool sublines = true;
    bool lemmas = true;
    bool certify = true;
    int threads = 1;
    std::uint64_t seed = 0;
};

/// Parses "1modp,sublines,lemmas,certify" (any subset, "all" for every check).
VerifyOptions parse_checks(const std::string& list);

struct VerifyOutcome {
    BlockingReport report;
    std::optional<LineCensus> census;
    std::optional<OneModPReport> one_mod_p;
    std::optional<SublineReport> sublines;
    std::optional<SuiteReport> suite;
    std::optional<LinearityCertificate> certificate;
    std::string certify_note;
    /// File name -> content; byte-identical for any thread count.
    std::map<std::string, std::string> files;
    /// Human summary lines.
    std::vector<std::string> summary;
    /// Stage timings (census, analyze, lemmas, certify); never written to files.
    std::map<std::string, double> seconds;
    bool failed = false;
};

/// Runs the selected checks with a single line census shared by all of them.
/// A verified certificate settles an undetermined blocking verdict.
VerifyOutcome verify_set(const Geometry& g, const PointSet& b, const VerifyOptions& opts);

struct SearchOutcome {
    SearchResult result;
    CatalogReport check;
    std::map<std::string, std::string> files;
    std::vector<std::string> summary;
    bool failed = false;
};

SearchOutcome search_catalog(const Geometry& g, const SearchConfig& cfg);

} // namespace linblock
