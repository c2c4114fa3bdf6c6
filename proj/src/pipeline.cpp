#include "linblock/pipeline.hpp"

#include <chrono>
#include <sstream>

namespace linblock {

VerifyOptions parse_checks(const std::string& list) {
    VerifyOptions o;
    o.one_mod_p = o.sublines = o.lemmas = o.certify = false;
    std::istringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item == "1modp") o.one_mod_p = true;
        else if (item == "sublines") o.sublines = true;
        else if (item == "lemmas") o.lemmas = true;
        else if (item == "certify") o.certify = true;
        else if (item == "all") o.one_mod_p = o.sublines = o.lemmas = o.certify = true;
        else if (!item.empty()) throw Error(ErrorKind::InvalidArgument, "unknown check '" + item + "'");
    }
    return o;
}

namespace {

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

VerifyOutcome verify_set(const Geometry& g, const PointSet& b, const VerifyOptions& opts) {
    VerifyOutcome out;
    auto t0 = std::chrono::steady_clock::now();
    const auto& f = g.field();
    ScanOptions scan;
    scan.threads = opts.threads;
    scan.seed = opts.seed;

    const IncidenceIndex index(g, b);
    // e is unknown until the census is done, so every candidate subfield rides along.
    std::map<std::uint32_t, SublineCollector> collectors;
    if (opts.sublines)
        for (std::uint32_t k = 1; k <= f.t(); ++k)
            if (f.t() % k == 0) collectors.try_emplace(k, g, b, k, opts.threads);
    CensusOptions co;
    co.threads = opts.threads;
    if (!collectors.empty())
        co.on_secant = [&](int w, std::span<const std::uint32_t> m) {
            for (auto& [k, c] : collectors) c(w, m);
        };
    out.census = line_census(index, co);
    out.seconds["census"] = since(t0);
    const auto& census = *out.census;
    t0 = std::chrono::steady_clock::now();
    out.report = analyze(g, b, scan, &census);
    out.seconds["analyze"] = since(t0);
    auto& rep = out.report;

    const bool known_not = rep.is_blocking == Verdict::No || rep.is_minimal == Verdict::No;
    const bool theorem_applies = !known_not && rep.is_small;
    auto status = [&](bool ok) { return ok ? "PASS" : theorem_applies ? "FAIL" : "INFORMATIONAL"; };

    if (opts.one_mod_p) {
        out.one_mod_p = check_one_mod_p(census, f.p());
        Json j = census_json(census, *out.one_mod_p);
        j["status"] = status(out.one_mod_p->ok());
        out.files["census.json"] = dump(j);
        out.summary.push_back(std::string("1 mod p: ") + status(out.one_mod_p->ok()) + " (" +
                              std::to_string(out.one_mod_p->lines_checked) + " lines meeting B)");
        out.failed |= !out.one_mod_p->ok() && theorem_applies;
    }
    if (opts.sublines) {
        SublineReport sr;
        if (rep.exponent && rep.exponent->e >= 1 && rep.exponent->h_integral) {
            sr = collectors.at(rep.exponent->e).finish();
        }
        out.sublines = sr;
        Json j = sublines_json(sr);
        const bool ok = sr.violations.empty();
        if (sr.e == 0) j["status"] = "INFORMATIONAL";
        else j["status"] = status(ok);
        out.files["sublines.json"] = dump(j);
        out.summary.push_back("sublines: " + j["status"].get<std::string>() + " (" + std::to_string(sr.checked) +
                              " secants, " + std::to_string(sr.violations.size()) + " violations)");
        out.failed |= !ok && theorem_applies;
    }
    if (opts.lemmas) {
        SuiteOptions so;
        so.threads = opts.threads;
        so.scan = scan;
        t0 = std::chrono::steady_clock::now();
        out.suite = run_lemma_suite(g, b, rep, census, so);
        out.seconds["lemmas"] = since(t0);
        out.files["suite.json"] = dump(suite_json(*out.suite));
        std::map<std::string, int> counts;
        for (const auto& c : out.suite->checks) ++counts[to_string(c.status)];
        std::string line = "lemmas:";
        for (const auto& [k, v] : counts) line += " " + k + "=" + std::to_string(v);
        out.summary.push_back(line);
        for (const auto& c : out.suite->checks)
            if (c.status == CheckStatus::Fail)
                out.summary.push_back(std::string("  FAIL ") + lemma_name(c.lemma) + ": " + lemma_formula(c.lemma) +
                                      " (bound " + c.bound + ", measured " + c.measured + ")");
        out.failed |= out.suite->any_fail();
    }
    if (opts.certify) {
        try {
            CertifyOptions co2;
            co2.threads = opts.threads;
            t0 = std::chrono::steady_clock::now();
            out.certificate = certify_linearity(g, b, rep, co2);
            out.seconds["certify"] = since(t0);
            out.files["certificate.json"] = dump(certificate_json(*out.certificate));
            out.summary.push_back(std::string("certificate: ") + (out.certificate->verified ? "verified" : "not verified") +
                                  ", dim xi = " + std::to_string(out.certificate->xi_dim) + ", " +
                                  out.certificate->hypotheses.label());
            if (!out.certificate->verified) out.failed |= theorem_applies;
            if (certificate_implies_blocking(*out.certificate) && rep.is_blocking == Verdict::Undetermined) {
                rep.is_blocking = Verdict::Yes;
                rep.blocking.method = "certificate";
            }
        } catch (const Error& e) {
            out.certify_note = e.what();
            out.files["certificate.json"] = dump(Json{{"applicable", false}, {"reason", e.what()}});
            out.summary.push_back(std::string("certificate: not applicable (") + e.what() + ")");
        }
    }
    if (rep.is_blocking == Verdict::No) out.failed = true;
    out.files["report.json"] = dump(report_json(rep));
    out.files["field.json"] = dump(field_json(f));
    std::string head = "size " + std::to_string(rep.size) + ", is_blocking " + to_string(rep.is_blocking) +
                       (rep.is_blocking == Verdict::No ? " FAIL" : "") + ", is_minimal " + to_string(rep.is_minimal) +
                       ", is_small " + (rep.is_small ? "true" : "false");
    if (rep.exponent)
        head += ", e " + std::to_string(rep.exponent->e) + ", q0 " + std::to_string(rep.exponent->q0) + ", h " +
                std::to_string(rep.exponent->h) + (rep.exponent->h_integral ? "" : " (e does not divide t)");
    out.summary.insert(out.summary.begin(), head);
    for (const auto& a : rep.alarms) out.summary.push_back("ALARM: " + a);
    return out;
}

SearchOutcome search_catalog(const Geometry& g, const SearchConfig& cfg) {
    SearchOutcome out;
    out.result = enumerate_minimal(g, cfg);
    out.check = verify_catalog(g, out.result);
    std::ostringstream blocks;
    for (std::size_t i = 0; i < out.result.catalog.size(); ++i) {
        write_point_set(blocks, g, out.result.catalog[i].set, "entry " + std::to_string(i));
        blocks << '\n';
    }
    out.files["catalog.pg"] = blocks.str();
    out.files["catalog.json"] = dump(catalog_json(g, out.result, out.check));
    out.files["field.json"] = dump(field_json(g.field()));
    std::map<std::uint64_t, std::uint64_t> by_size;
    for (const auto& e : out.result.catalog) ++by_size[e.set.size()];
    std::string sizes;
    for (const auto& [k, v] : by_size) sizes += (sizes.empty() ? "" : ", ") + std::to_string(v) + " of size " + std::to_string(k);
    out.summary.push_back(std::to_string(out.result.catalog.size()) + " minimal blocking sets of size <= " +
                          std::to_string(out.result.max_size) + (sizes.empty() ? "" : " (" + sizes + ")"));
    out.summary.push_back(std::to_string(out.check.lines) + " lines, " + std::to_string(out.check.certified) +
                          " certified linear, " + std::to_string(out.check.alarms.size()) + " 1 mod p alarms");
    out.summary.push_back(std::to_string(out.result.nodes) + " nodes, " + std::to_string(out.result.pruned) + " pruned");
    out.failed = !out.check.ok();
    return out;
}

} // namespace linblock
