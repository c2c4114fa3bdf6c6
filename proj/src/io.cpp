#include "linblock/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace linblock {

namespace {

/// Next non-blank line with comments stripped, split into integer tokens.
bool next_tokens(std::istream& in, std::vector<std::string>& tokens, std::size_t& line_no) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        tokens.clear();
        for (std::string tok; ss >> tok;) tokens.push_back(tok);
        if (!tokens.empty()) return true;
    }
    return false;
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line_no) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || tok.empty() || tok[0] == '-')
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": '" + tok + "' is not a non-negative integer");
    return v;
}

Vec parse_row(const std::vector<std::string>& tokens, std::size_t width, std::uint32_t q, std::size_t line_no) {
    if (tokens.size() != width)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                                               " codes, got " + std::to_string(tokens.size()));
    Vec v;
    for (const auto& tok : tokens) {
        const auto x = parse_uint(tok, line_no);
        if (x >= q)
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": code " + tok +
                                                   " is not an element of GF(" + std::to_string(q) + ")");
        v.push_back(static_cast<Elem>(x));
    }
    return v;
}

Json dual_json(const Vec& v) { return Json(v); }

} // namespace

PointSetFile read_point_set(std::istream& in) {
    std::vector<std::string> tok;
    std::size_t line_no = 0;
    if (!next_tokens(in, tok, line_no)) throw Error(ErrorKind::ParseError, "empty point-set file");
    if (tok[0] != "PG" || tok.size() < 5)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected header 'PG n p t c0 .. ct'");
    PointSetFile f;
    f.n = static_cast<int>(parse_uint(tok[1], line_no));
    const auto p = static_cast<std::uint32_t>(parse_uint(tok[2], line_no));
    const auto t = static_cast<std::uint32_t>(parse_uint(tok[3], line_no));
    if (tok.size() != 4 + std::size_t{t} + 1)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": modulus needs t+1 coefficients");
    std::vector<std::uint32_t> modulus;
    for (std::size_t i = 4; i < tok.size(); ++i) modulus.push_back(static_cast<std::uint32_t>(parse_uint(tok[i], line_no)));
    f.field = make_field(p, t, t == 1 ? std::vector<std::uint32_t>{} : modulus);
    if (f.field->modulus() != modulus)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": modulus does not match the field");
    while (next_tokens(in, tok, line_no))
        f.points.push_back(parse_row(tok, static_cast<std::size_t>(f.n) + 1, f.field->q(), line_no));
    return f;
}

PointSetFile read_point_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    return read_point_set(in);
}

Geometry open_geometry(int n, FieldPtr field) {
    GeometryOptions opts;
    opts.lazy = true;
    return Geometry::build(n, std::move(field), opts);
}

PointSet to_point_set(const Geometry& g, const std::vector<Vec>& points) {
    std::vector<std::uint64_t> idx;
    idx.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != g.ncoords()) throw Error(ErrorKind::ParseError, "point has the wrong length");
        try {
            idx.push_back(g.index_of(points[i]));
        } catch (const Error&) {
            throw Error(ErrorKind::ParseError, "point " + std::to_string(i + 1) + " is the zero vector");
        }
    }
    return PointSet(std::move(idx));
}

void write_point_set(std::ostream& out, const Geometry& g, const PointSet& b, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
    const auto& f = g.field();
    out << "PG " << g.n() << ' ' << f.p() << ' ' << f.t();
    for (auto c : f.modulus()) out << ' ' << c;
    out << '\n';
    Vec v(g.ncoords());
    for (auto idx : b) {
        g.point_into(idx, v);
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
        out << '\n';
    }
}

ReducedFile read_reduced(std::istream& in) {
    std::vector<std::string> tok;
    std::size_t line_no = 0;
    if (!next_tokens(in, tok, line_no) || tok[0] != "RED" || tok.size() != 3)
        throw Error(ErrorKind::ParseError, "expected header 'RED m q0'");
    ReducedFile r;
    r.m = static_cast<int>(parse_uint(tok[1], line_no));
    r.q0 = static_cast<std::uint32_t>(parse_uint(tok[2], line_no));
    while (next_tokens(in, tok, line_no)) r.rows.push_back(parse_row(tok, static_cast<std::size_t>(r.m) + 1, r.q0, line_no));
    if (r.rows.empty()) throw Error(ErrorKind::ParseError, "reduced subspace file has no rows");
    return r;
}

void write_reduced(std::ostream& out, const Subspace& s, std::uint32_t q0) {
    out << "RED " << s.ncoords() - 1 << ' ' << q0 << '\n';
    for (const auto& row : s.basis()) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
        out << '\n';
    }
}

Matrix read_vectors(std::istream& in, std::size_t ncoords, std::uint32_t q) {
    std::vector<std::string> tok;
    std::size_t line_no = 0;
    Matrix rows;
    while (next_tokens(in, tok, line_no)) rows.push_back(parse_row(tok, ncoords, q, line_no));
    if (rows.empty()) throw Error(ErrorKind::ParseError, "vector file has no rows");
    return rows;
}

Json field_json(const Field& f) { return Json{{"p", f.p()}, {"t", f.t()}, {"modulus", f.modulus()}}; }

Json report_json(const BlockingReport& r) {
    Json j;
    j["size"] = r.size;
    j["kappa"] = r.kappa;
    j["is_blocking"] = to_string(r.is_blocking);
    j["is_minimal"] = to_string(r.is_minimal);
    j["is_small"] = r.is_small;
    if (r.exponent) {
        const auto& e = *r.exponent;
        j["exponent_e"] = e.e;
        j["q0"] = e.q0;
        j["h"] = e.h;
        j["h_integral"] = e.h_integral;
        j["exponent_method"] = e.method;
        j["exponent_from_lines"] = e.from_lines;
        j["exponent_from_hyperplanes"] = e.from_hyperplanes ? Json(*e.from_hyperplanes) : Json(nullptr);
        j["exponent_readings_agree"] = e.readings_agree;
    } else {
        j["exponent_e"] = nullptr;
    }
    j["span_dim"] = r.span_dim;
    Json pe = Json::array();
    for (const auto& [p, e] : r.point_exponents) pe.push_back({p, e});
    j["point_exponents"] = pe;
    Json w;
    w["blocking_method"] = r.blocking.method;
    w["unblocked_hyperplane"] = r.blocking.witness ? dual_json(*r.blocking.witness) : Json(nullptr);
    w["minimality_method"] = r.minimality.method;
    Json tangents = Json::array();
    for (const auto& [p, a] : r.minimality.tangents) tangents.push_back({p, a});
    w["tangents"] = tangents;
    w["inessential"] = r.minimality.inessential;
    w["undetermined"] = r.minimality.undetermined;
    j["witnesses"] = w;
    j["alarms"] = r.alarms;
    return j;
}

Json census_json(const LineCensus& c, const OneModPReport& m) {
    Json hist = Json::array();
    for (const auto& [k, v] : c.histogram) hist.push_back({k, v});
    Json viol = Json::array();
    for (const auto& [k, v] : m.violations) viol.push_back({k, v});
    return Json{{"set_size", c.set_size},      {"histogram", hist},          {"secants", c.secant_count},
                {"pair_identity", c.pair_identity_holds()}, {"p", m.p}, {"lines_checked", m.lines_checked},
                {"one_mod_p_violations", viol}, {"status", m.ok() ? "PASS" : "FAIL"}};
}

Json sublines_json(const SublineReport& r) {
    Json viol = Json::array();
    for (const auto& s : r.violations) viol.push_back(std::vector<std::uint64_t>(s.begin(), s.end()));
    return Json{{"e", r.e}, {"checked", r.checked}, {"violations", viol}, {"status", r.violations.empty() ? "PASS" : "FAIL"}};
}

Json suite_json(const SuiteReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"lemma", lemma_name(c.lemma)},
                          {"anchor_quote", lemma_formula(c.lemma)},
                          {"bound", c.bound},
                          {"measured", c.measured},
                          {"status", to_string(c.status)},
                          {"detail", c.detail}});
    return Json{{"plane_coverage", r.plane_coverage}, {"secants_surveyed", r.secants_surveyed}, {"checks", checks}};
}

Json certificate_json(const LinearityCertificate& c) {
    Json lines = Json::array();
    for (const auto& l : c.lifted_lines) lines.push_back(l.basis());
    const auto& h = c.hypotheses;
    return Json{{"verified", c.verified},
                {"implies_blocking", certificate_implies_blocking(c)},
                {"e", c.e},
                {"q0", c.q0},
                {"h", c.h},
                {"anchor", c.anchor},
                {"x", c.x},
                {"xi_dim", c.xi_dim},
                {"xi", c.xi.basis()},
                {"lifted_lines", lines},
                {"attempts", c.attempts},
                {"notes", c.notes},
                {"hypotheses",
                 {{"label", h.label()},
                  {"h_above_3", h.h_above_3},
                  {"q0_above_5h_minus_11", h.q0_above_5h_minus_11},
                  {"q0_at_least_7", h.q0_at_least_7},
                  {"span_dim", h.span_dim},
                  {"spans_h_minus_1", h.spans_h_minus_1}}}};
}

Json catalog_json(const Geometry& g, const SearchResult& res, const CatalogReport& check) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < res.catalog.size(); ++i) {
        const auto& e = res.catalog[i];
        const auto& c = check.entries[i];
        Json j{{"index", i},
               {"points", std::vector<std::uint64_t>(e.set.begin(), e.set.end())},
               {"size", e.set.size()},
               {"linearity", e.linearity},
               {"one_mod_p", c.one_mod_p},
               {"exponent_e", c.e ? Json(*c.e) : Json(nullptr)},
               {"outside_hypotheses", c.outside_hypotheses},
               {"report", report_json(e.report)}};
        if (e.certificate) j["certificate"] = certificate_json(*e.certificate);
        entries.push_back(std::move(j));
    }
    std::map<std::uint64_t, std::uint64_t> by_size;
    for (const auto& e : res.catalog) ++by_size[e.set.size()];
    Json sizes = Json::array();
    for (const auto& [k, v] : by_size) sizes.push_back({k, v});
    return Json{{"field", field_json(g.field())},
                {"n", g.n()},
                {"max_size", res.max_size},
                {"count", res.catalog.size()},
                {"by_size", sizes},
                {"lines", check.lines},
                {"certified", check.certified},
                {"alarms", check.alarms},
                {"nodes", res.nodes},
                {"pruned", res.pruned},
                {"leaves", res.leaves},
                {"entries", entries}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    out << content;
}

} // namespace linblock
