#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "linblock/blocking.hpp"
#include "linblock/finite_field.hpp"
#include "linblock/point_set.hpp"
#include "linblock/projective_space.hpp"
#include "linblock/search.hpp"
#include "linblock/structure.hpp"

namespace linblock {

using Json = nlohmann::ordered_json;

/// Point-set interchange file:
///
///     # comment
///     PG n p t c0 ... ct
///     v0 v1 ... vn
///     ...
///
/// Coordinates are element codes; points need not be normalized.
struct PointSetFile {
    int n = 0;
    FieldPtr field;
    std::vector<Vec> points;
};

PointSetFile read_point_set(std::istream& in);
PointSetFile read_point_set_file(const std::string& path);

/// A lazy geometry: indices are arithmetic, so no point budget applies.
Geometry open_geometry(int n, FieldPtr field);

/// Indices of the file's points in g. Throws ParseError on zero or
/// out-of-range coordinates.
PointSet to_point_set(const Geometry& g, const std::vector<Vec>& points);

void write_point_set(std::ostream& out, const Geometry& g, const PointSet& b, const std::string& comment = {});

/// Reduced subspace file: header `RED m q0`, then rows of m+1 codes over GF(q0).
struct ReducedFile {
    int m = 0;
    std::uint32_t q0 = 0;
    Matrix rows;
};

ReducedFile read_reduced(std::istream& in);
void write_reduced(std::ostream& out, const Subspace& s, std::uint32_t q0);

/// Rows of n+1 element codes, `#` comments allowed.
Matrix read_vectors(std::istream& in, std::size_t ncoords, std::uint32_t q);

Json field_json(const Field& f);
Json report_json(const BlockingReport& r);
Json census_json(const LineCensus& c, const OneModPReport& m);
Json sublines_json(const SublineReport& r);
Json suite_json(const SuiteReport& r);
Json certificate_json(const LinearityCertificate& c);
Json catalog_json(const Geometry& g, const SearchResult& res, const CatalogReport& check);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);
void write_file(const std::string& path, const std::string& content);

} // namespace linblock
