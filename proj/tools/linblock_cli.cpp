#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "linblock/constructions.hpp"
#include "linblock/pipeline.hpp"

using namespace linblock;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kFail = 1, kInvalid = 2, kGuard = 3 };

struct Common {
    std::uint32_t p = 0, t = 1, e = 1;
    int n = 2;
    std::string modulus;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out = "out";
};

std::vector<std::uint32_t> parse_list(const std::string& s) {
    std::vector<std::uint32_t> v;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const auto x = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            v.push_back(static_cast<std::uint32_t>(x));
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidArgument, "'" + s + "' is not a comma-separated list of integers");
        }
    }
    return v;
}

FieldPtr field_of(const Common& c) {
    if (c.p == 0) throw Error(ErrorKind::InvalidArgument, "--p is required");
    return make_field(c.p, c.t, c.modulus.empty() ? std::vector<std::uint32_t>{} : parse_list(c.modulus));
}

Json config_json(const Common& c) {
    return Json{{"p", c.p}, {"t", c.t}, {"n", c.n}, {"e", c.e}, {"modulus", c.modulus},
                {"seed", c.seed}, {"threads", c.threads}, {"out", c.out}};
}

void write_outputs(const std::string& dir, const std::map<std::string, std::string>& files) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, content] : files) write_file((std::filesystem::path(dir) / name).string(), content);
}

void write_manifest(const std::string& dir, const std::string& command, const Json& config, std::uint64_t seed,
                    double seconds, int code, const std::vector<std::string>& summary) {
    Json m{{"command", command},
           {"config", config},
           {"versions", {{"linblock", kVersion}, {"compiler", __VERSION__}, {"cplusplus", __cplusplus}}},
           {"seed", seed},
           {"wall_time_s", seconds},
           {"outcome", {{"exit_code", code}, {"summary", summary}}}};
    std::filesystem::create_directories(dir);
    write_file((std::filesystem::path(dir) / "manifest.json").string(), dump(m));
}

void print(const std::vector<std::string>& lines) {
    for (const auto& l : lines) std::cout << l << '\n';
}

std::string point_set_text(const Geometry& g, const PointSet& b, const std::string& comment) {
    std::ostringstream ss;
    write_point_set(ss, g, b, comment);
    return ss.str();
}

/// Builds write the set, its report and field spec.
int finish_build(const Common& c, const Geometry& g, const PointSet& b, const std::string& what,
                 std::map<std::string, std::string>& files, std::vector<std::string>& summary) {
    VerifyOptions vo;
    vo.one_mod_p = vo.sublines = vo.lemmas = vo.certify = false;
    vo.threads = c.threads;
    vo.seed = c.seed;
    auto outcome = verify_set(g, b, vo);
    files["set.pg"] = point_set_text(g, b, what);
    files["report.json"] = outcome.files["report.json"];
    files["field.json"] = outcome.files["field.json"];
    summary.push_back(what + ": " + std::to_string(b.size()) + " points");
    for (const auto& l : outcome.summary) summary.push_back(l);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    const auto start = std::chrono::steady_clock::now();
    CLI::App app{"Blocking sets and linear sets in finite projective spaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Common c;
    auto add_common = [&](CLI::App* sub, bool geometry) {
        if (geometry) {
            sub->add_option("--p", c.p, "characteristic")->required();
            sub->add_option("--t", c.t, "extension degree")->capture_default_str();
            sub->add_option("--n", c.n, "projective dimension")->capture_default_str();
            sub->add_option("--modulus", c.modulus, "comma-separated coefficients c0..ct (default: auto)");
        }
        sub->add_option("--seed", c.seed)->capture_default_str();
        sub->add_option("--threads", c.threads)->capture_default_str()->check(CLI::Range(1, 256));
        sub->add_option("--out", c.out, "output directory")->capture_default_str();
    };

    auto* build = app.add_subcommand("build", "construct a point set");
    build->require_subcommand(1);
    auto* b_line = build->add_subcommand("line", "the line through the first two basis points");
    add_common(b_line, true);
    auto* b_baer = build->add_subcommand("baer-subplane", "PG(2, sqrt q) in the first three coordinates");
    add_common(b_baer, true);
    auto* b_ls = build->add_subcommand("linear-set", "a GF(p^e)-linear set");
    b_ls->require_subcommand(1);
    std::string vectors_path, subspace_path;
    auto* b_vec = b_ls->add_subcommand("from-vectors", "B(U) for the GF(p^e)-span U of the given vectors");
    add_common(b_vec, true);
    b_vec->add_option("--e", c.e)->capture_default_str();
    b_vec->add_option("--vectors", vectors_path, "rows of n+1 element codes")->required();
    auto* b_sub = b_ls->add_subcommand("from-subspace", "B(pi) for a reduced subspace pi");
    add_common(b_sub, true);
    b_sub->add_option("--e", c.e)->capture_default_str();
    b_sub->add_option("--subspace", subspace_path, "RED file")->required();

    auto* verify = app.add_subcommand("verify", "run checks on a point-set file");
    std::string input, checks = "1modp,sublines,lemmas,certify";
    verify->add_option("input", input)->required();
    verify->add_option("--checks", checks)->capture_default_str();
    add_common(verify, false);

    auto* search = app.add_subcommand("search", "enumerate small minimal blocking sets");
    add_common(search, true);
    std::uint64_t max_size = 0;
    bool force = false, no_prune = false;
    search->add_option("--max-size", max_size, "default: largest size below 3(q+1)/2");
    search->add_flag("--force", force, "search above the 100-point guard");
    search->add_flag("--no-prune", no_prune, "disable the lower-bound prune");

    auto* proj = app.add_subcommand("project", "project a point set from a point onto a hyperplane");
    std::string from, onto;
    proj->add_option("input", input)->required();
    proj->add_option("--from", from, "centre as comma-separated codes (default: lowest tangent-only point)");
    proj->add_option("--onto", onto, "hyperplane dual vector (default: first coordinate hyperplane missing the centre)");
    add_common(proj, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    std::string command;
    for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
    std::map<std::string, std::string> files;
    std::vector<std::string> summary;
    Json config = config_json(c);
    int code = kOk;
    try {
        if (build->parsed()) {
            const auto field = field_of(c);
            const auto g = open_geometry(c.n, field);
            if (b_line->parsed()) {
                code = finish_build(c, g, full_line(g), "line", files, summary);
            } else if (b_baer->parsed()) {
                if (c.t % 2) throw Error(ErrorKind::InvalidArgument, "a Baer subplane needs even t");
                if (c.n < 2) throw Error(ErrorKind::InvalidArgument, "a Baer subplane needs n >= 2");
                code = finish_build(c, g, subgeometry(g, c.t / 2, 2), "baer-subplane", files, summary);
            } else if (b_vec->parsed()) {
                std::ifstream in(vectors_path);
                if (!in) throw Error(ErrorKind::ParseError, "cannot open " + vectors_path);
                const SpreadContext ctx(g, c.e);
                const auto rows = read_vectors(in, g.ncoords(), field->q());
                code = finish_build(c, g, ctx.linear_set_from_vectors(rows), "linear-set from-vectors", files, summary);
            } else if (b_sub->parsed()) {
                std::ifstream in(subspace_path);
                if (!in) throw Error(ErrorKind::ParseError, "cannot open " + subspace_path);
                const SpreadContext ctx(g, c.e);
                const auto red = read_reduced(in);
                if (red.q0 != ctx.q0() || red.m + 1 != static_cast<int>(ctx.reduced().ncoords()))
                    throw Error(ErrorKind::ParseError, "RED header does not match PG(" +
                                                           std::to_string(ctx.reduced().n()) + "," +
                                                           std::to_string(ctx.q0()) + ")");
                const auto pi = ctx.reduced().span(red.rows);
                code = finish_build(c, g, ctx.linear_set_from_subspace(pi), "linear-set from-subspace", files, summary);
            }
        } else if (verify->parsed()) {
            const auto file = read_point_set_file(input);
            const auto g = open_geometry(file.n, file.field);
            const auto b = to_point_set(g, file.points);
            auto vo = parse_checks(checks);
            vo.threads = c.threads;
            vo.seed = c.seed;
            config["input"] = input;
            config["checks"] = checks;
            auto outcome = verify_set(g, b, vo);
            files = std::move(outcome.files);
            summary = std::move(outcome.summary);
            code = outcome.failed ? kFail : kOk;
        } else if (search->parsed()) {
            const auto g = open_geometry(c.n, field_of(c));
            SearchConfig sc;
            if (max_size) sc.max_size = max_size;
            sc.force = force;
            sc.prune = !no_prune;
            sc.parallel_width = c.threads;
            sc.seed = c.seed;
            config["max_size"] = max_size;
            config["force"] = force;
            auto outcome = search_catalog(g, sc);
            files = std::move(outcome.files);
            summary = std::move(outcome.summary);
            code = outcome.failed ? kFail : kOk;
        } else if (proj->parsed()) {
            const auto file = read_point_set_file(input);
            const auto g = open_geometry(file.n, file.field);
            const auto b = to_point_set(g, file.points);
            std::uint64_t centre = 0;
            if (from.empty()) {
                const auto t = find_tangent_only_point(g, b);
                if (!t) throw Error(ErrorKind::InvalidArgument, "no tangent-only point exists");
                centre = *t;
            } else {
                const auto v = parse_list(from);
                centre = to_point_set(g, {Vec(v.begin(), v.end())})[0];
            }
            Vec dual;
            if (onto.empty()) {
                const auto q = g.point(centre);
                dual.assign(g.ncoords(), 0);
                std::size_t i = 0;
                while (q[i] == 0) ++i;
                dual[i] = 1;
            } else {
                const auto v = parse_list(onto);
                dual.assign(v.begin(), v.end());
                if (dual.size() != g.ncoords()) throw Error(ErrorKind::InvalidArgument, "--onto needs n+1 codes");
            }
            const auto pr = project(g, b, centre, dual);
            VerifyOptions vo;
            vo.one_mod_p = vo.sublines = vo.lemmas = vo.certify = false;
            vo.threads = c.threads;
            vo.seed = c.seed;
            const auto before = verify_set(g, b, vo);
            const auto after = verify_set(pr.target, pr.image, vo);
            files["image.pg"] = point_set_text(pr.target, pr.image, "projection from point " + std::to_string(centre));
            files["report_before.json"] = before.files.at("report.json");
            files["report_after.json"] = after.files.at("report.json");
            files["field.json"] = after.files.at("field.json");
            summary.push_back("centre " + std::to_string(centre) + ", image of " + std::to_string(pr.image.size()) +
                              " points in PG(" + std::to_string(pr.target.n()) + "," + std::to_string(g.q()) + ")");
            summary.push_back("before: " + before.summary.front());
            summary.push_back("after: " + after.summary.front());
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        code = e.kind() == ErrorKind::GuardExceeded ? kGuard : kInvalid;
        summary = {std::string("error: ") + e.what()};
        files.clear();
    }
    try {
        if (!files.empty()) write_outputs(c.out, files);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
    if (code != kInvalid && code != kGuard) print(summary);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
        write_manifest(c.out, command, config, c.seed, secs, code, summary);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
    return code;
}
