#include "linblock/blocking.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_set>

#include "linblock/parallel.hpp"

namespace linblock {

const char* to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::No: return "false";
    case Verdict::Yes: return "true";
    default: return "undetermined";
    }
}

bool is_small(const Geometry& g, std::size_t size) noexcept {
    return 2 * static_cast<std::uint64_t>(size) < 3 * (static_cast<std::uint64_t>(g.q()) + 1);
}

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Number of members of index lying on the hyperplane a, stopping once limit is reached.
std::size_t meet_count(const Field& f, const IncidenceIndex& index, std::span<const Elem> a, std::size_t limit) {
    std::size_t n = 0;
    for (std::size_t j = 0; j < index.size() && n < limit; ++j)
        if (dot(f, a, index.coords(j)) == 0) ++n;
    return n;
}

Vec line_dual(const Geometry& g, std::span<const Elem> p, std::span<const Elem> r) {
    Matrix m{Vec(p.begin(), p.end()), Vec(r.begin(), r.end())};
    Matrix ns = null_space(g.field(), std::move(m), g.ncoords());
    g.normalize(ns.front());
    return ns.front();
}

} // namespace

bool hyperplane_scan_feasible(const Geometry& g, std::size_t set_size, const ScanOptions& opts) {
    if (!g.indexable()) return false;
    const long double work = static_cast<long double>(g.num_hyperplanes()) * std::max<std::size_t>(set_size, 1);
    return work <= static_cast<long double>(opts.hyperplane_work);
}

HyperplaneScan scan_hyperplanes(const Geometry& g, const PointSet& b, const ScanOptions& opts,
                                std::uint64_t collect_min) {
    if (!hyperplane_scan_feasible(g, b.size(), opts))
        throw Error(ErrorKind::BudgetExceeded, "hyperplane scan exceeds the work budget");
    const IncidenceIndex index(g, b);
    const auto& f = g.field();
    const std::uint64_t total = g.num_hyperplanes();
    const std::size_t workers = worker_count(total, opts.threads);
    std::vector<std::map<std::uint64_t, std::uint64_t>> hist(workers);
    std::vector<std::optional<std::uint64_t>> unblocked(workers);
    std::vector<std::vector<std::pair<std::uint64_t, PointSet>>> collected(workers);
    parallel_for(total, opts.threads, [&](std::size_t begin, std::size_t end, int w) {
        Vec a(g.ncoords());
        std::vector<std::uint64_t> members;
        for (std::size_t h = begin; h < end; ++h) {
            g.point_into(h, a);
            members.clear();
            std::uint64_t count = 0;
            for (std::size_t j = 0; j < index.size(); ++j) {
                if (dot(f, a, index.coords(j)) != 0) continue;
                ++count;
                if (collect_min) members.push_back(b[j]);
            }
            ++hist[w][count];
            if (count == 0 && !unblocked[w]) unblocked[w] = h;
            if (collect_min && count >= collect_min) collected[w].emplace_back(h, PointSet(members));
        }
    });
    HyperplaneScan out;
    for (std::size_t w = 0; w < workers; ++w) {
        for (auto [k, c] : hist[w]) out.histogram[k] += c;
        if (unblocked[w] && !out.first_unblocked) out.first_unblocked = unblocked[w];
        for (auto& c : collected[w]) out.collected.push_back(std::move(c));
    }
    return out;
}

BlockingCheck is_blocking(const Geometry& g, const LineCensus& census) {
    if (g.n() != 2) throw Error(ErrorKind::InvalidArgument, "line census decides blocking only in planes");
    BlockingCheck out;
    out.method = "line-count";
    std::uint64_t meeting = 0;
    for (auto [k, c] : census.histogram) meeting += c;
    out.value = meeting == g.num_hyperplanes() ? Verdict::Yes : Verdict::No;
    return out;
}

BlockingCheck is_blocking(const Geometry& g, const PointSet& b, const ScanOptions& opts) {
    BlockingCheck out;
    if (b.empty()) {
        out.value = Verdict::No;
        out.method = "empty";
        out.witness = g.point(0);
        return out;
    }
    if (g.n() == 2) {
        const IncidenceIndex index(g, b);
        CensusOptions co;
        co.threads = opts.threads;
        out = is_blocking(g, line_census(index, co));
        if (out.value == Verdict::No) {
            // First unblocked line in index order.
            Vec a(g.ncoords());
            for (std::uint64_t h = 0; h < g.num_hyperplanes(); ++h) {
                g.point_into(h, a);
                if (meet_count(g.field(), index, a, 1) == 0) {
                    out.witness = a;
                    break;
                }
            }
        }
        return out;
    }
    if (!hyperplane_scan_feasible(g, b.size(), opts)) {
        out.method = "not-determined";
        return out;
    }
    const auto scan = scan_hyperplanes(g, b, opts);
    out.method = "hyperplane-scan";
    out.value = scan.first_unblocked ? Verdict::No : Verdict::Yes;
    if (scan.first_unblocked) out.witness = g.point(*scan.first_unblocked);
    return out;
}

std::optional<Vec> tangent_hyperplane(const Geometry& g, const IncidenceIndex& index, std::size_t pos,
                                      const ScanOptions& opts, bool* exhaustive) {
    const auto& f = g.field();
    const auto p = index.coords(pos);
    if (exhaustive) *exhaustive = true;
    if (g.n() == 2) {
        const auto groups = index.lines_through(pos);
        Vec diff;
        std::unordered_set<std::uint64_t> secant;
        for (std::size_t k = 0; k < groups.count(); ++k)
            secant.insert(index.direction_key(pos, index.coords(groups.group(k).front()), diff));
        if (secant.size() == lines_per_point(g)) return std::nullopt;
        const std::uint64_t self = g.rank(p);
        Vec r(g.ncoords());
        for (std::uint64_t idx = 0; idx < g.num_points(); ++idx) {
            if (idx == self) continue;
            g.point_into(idx, r);
            if (!secant.count(index.direction_key(pos, r, diff))) return line_dual(g, p, r);
        }
        return std::nullopt;
    }

    const Matrix pencil = Subspace(f, {Vec(p.begin(), p.end())}, g.ncoords()).dual_basis(f);
    const std::uint64_t size = g.subspace_point_count(static_cast<int>(pencil.size()) - 1);
    Vec a(g.ncoords());
    auto combine = [&](std::span<const Elem> c) {
        std::fill(a.begin(), a.end(), 0);
        for (std::size_t r = 0; r < pencil.size(); ++r)
            if (c[r])
                for (std::size_t j = 0; j < a.size(); ++j) a[j] = f.add(a[j], f.mul(c[r], pencil[r][j]));
        g.normalize(a);
    };
    if (size <= opts.exhaustive_pencil) {
        ProjectiveCounter counter(f, pencil.size());
        do {
            combine(counter.current());
            if (meet_count(f, index, a, 2) == 1) return a;
        } while (counter.next());
        return std::nullopt;
    }
    if (exhaustive) *exhaustive = false;
    std::mt19937_64 rng(mix(opts.seed ^ mix(index.points()[pos])));
    std::uniform_int_distribution<Elem> coef(0, g.q() - 1);
    Vec c(pencil.size());
    for (std::uint32_t s = 0; s < opts.tangent_samples; ++s) {
        bool zero = true;
        for (auto& x : c) {
            x = coef(rng);
            if (x) zero = false;
        }
        if (zero) continue;
        combine(c);
        if (meet_count(f, index, a, 2) == 1) return a;
    }
    return std::nullopt;
}

MinimalityCheck is_minimal(const Geometry& g, const PointSet& b, const LineCensus& census) {
    if (g.n() != 2) throw Error(ErrorKind::InvalidArgument, "census minimality needs n = 2");
    if (is_blocking(g, census).value == Verdict::No)
        throw Error(ErrorKind::NotBlocking, "minimality is defined for blocking sets only");
    MinimalityCheck out;
    out.method = "tangent-lines";
    Vec p(g.ncoords()), r(g.ncoords());
    for (std::size_t pos = 0; pos < b.size(); ++pos) {
        const auto& t = census.per_point[pos].tangent_through;
        if (!t) {
            out.inessential.push_back(b[pos]);
            continue;
        }
        g.point_into(b[pos], p);
        g.point_into(*t, r);
        out.tangents.emplace(b[pos], line_dual(g, p, r));
    }
    out.value = out.inessential.empty() ? Verdict::Yes : Verdict::No;
    return out;
}

MinimalityCheck is_minimal(const Geometry& g, const PointSet& b, const ScanOptions& opts) {
    if (g.n() == 2 && !b.empty()) {
        CensusOptions co;
        co.threads = opts.threads;
        return is_minimal(g, b, line_census(IncidenceIndex(g, b), co));
    }
    if (is_blocking(g, b, opts).value == Verdict::No)
        throw Error(ErrorKind::NotBlocking, "minimality is defined for blocking sets only");
    const IncidenceIndex index(g, b);
    std::vector<std::optional<Vec>> found(b.size());
    std::vector<char> complete(b.size(), 1);
    parallel_for(b.size(), opts.threads, [&](std::size_t begin, std::size_t end, int) {
        for (std::size_t pos = begin; pos < end; ++pos) {
            bool exhaustive = true;
            found[pos] = tangent_hyperplane(g, index, pos, opts, &exhaustive);
            complete[pos] = exhaustive;
        }
    });
    MinimalityCheck out;
    out.method = g.n() == 2 ? "tangent-lines" : "tangent-hyperplanes";
    for (std::size_t pos = 0; pos < b.size(); ++pos) {
        if (found[pos])
            out.tangents.emplace(b[pos], std::move(*found[pos]));
        else if (complete[pos])
            out.inessential.push_back(b[pos]);
        else
            out.undetermined.push_back(b[pos]);
    }
    if (!out.inessential.empty())
        out.value = Verdict::No;
    else if (!out.undetermined.empty())
        out.value = Verdict::Undetermined;
    else
        out.value = Verdict::Yes;
    return out;
}

ExponentInfo exponent_from(const Geometry& g, const LineCensus& census, const HyperplaneScan* scan) {
    const auto& f = g.field();
    ExponentInfo out;
    out.from_lines = f.t();
    for (auto [k, c] : census.histogram)
        if (k >= 2) out.from_lines = std::min(out.from_lines, valuation(k - 1, f.p(), f.t()));
    if (g.n() == 2) {
        out.from_hyperplanes = out.from_lines;
    } else if (scan) {
        std::uint32_t e = f.t();
        for (auto [k, c] : scan->histogram) {
            if (k == 0) throw Error(ErrorKind::NotBlocking, "a hyperplane misses the set");
            e = std::min(e, valuation(k - 1, f.p(), f.t()));
        }
        out.from_hyperplanes = e;
    }
    out.method = out.from_hyperplanes ? "hyperplanes" : "lines";
    out.e = out.from_hyperplanes ? *out.from_hyperplanes : out.from_lines;
    out.readings_agree = !out.from_hyperplanes || *out.from_hyperplanes == out.from_lines;
    out.q0 = 1;
    for (std::uint32_t i = 0; i < out.e; ++i) out.q0 *= f.p();
    out.h_integral = out.e != 0 && f.t() % out.e == 0;
    out.h = out.e ? f.t() / out.e : 0;
    return out;
}

ExponentInfo exponent(const Geometry& g, const PointSet& b, const ScanOptions& opts) {
    const IncidenceIndex index(g, b);
    CensusOptions co;
    co.threads = opts.threads;
    const auto census = line_census(index, co);
    if (g.n() == 2) {
        if (is_blocking(g, census).value == Verdict::No)
            throw Error(ErrorKind::NotBlocking, "a line misses the set");
        return exponent_from(g, census, nullptr);
    }
    if (hyperplane_scan_feasible(g, b.size(), opts)) {
        const auto scan = scan_hyperplanes(g, b, opts);
        return exponent_from(g, census, &scan);
    }
    return exponent_from(g, census, nullptr);
}

std::uint32_t point_exponent(const Geometry& g, const PointLineProfile& profile) {
    std::uint32_t e = g.field().t();
    for (auto [size, count] : profile.sizes) e = std::min(e, valuation(size - 1, g.field().p(), g.field().t()));
    return e;
}

std::uint32_t point_exponent(const Geometry& g, const PointSet& b, std::uint64_t p) {
    const std::size_t pos = b.position(p);
    if (pos == b.size()) throw Error(ErrorKind::NotMember, "point is not in the set");
    const IncidenceIndex index(g, b);
    const auto groups = index.lines_through(pos);
    PointLineProfile profile;
    std::map<std::uint32_t, std::uint32_t> sizes;
    for (std::size_t k = 0; k < groups.count(); ++k) ++sizes[static_cast<std::uint32_t>(groups.group(k).size() + 1)];
    profile.sizes.assign(sizes.begin(), sizes.end());
    return point_exponent(g, profile);
}

Projection project(const Geometry& g, const PointSet& b, std::uint64_t q, std::span<const Elem> h) {
    const auto& f = g.field();
    if (b.contains(q)) throw Error(ErrorKind::QInB, "projection centre lies in the set");
    const Vec qv = g.point(q);
    const Elem aq = dot(f, h, qv);
    if (aq == 0) throw Error(ErrorKind::QInH, "projection centre lies in the target hyperplane");
    GeometryOptions lazy;
    lazy.lazy = true;
    Projection out{Geometry::build(g.n() - 1, g.field_ptr(), lazy), {}, g.hyperplane(h)};
    const auto& pivots = out.hyperplane.pivots();
    std::vector<std::uint64_t> image;
    image.reserve(b.size());
    Vec v(g.ncoords()), x(g.ncoords()), lambda(pivots.size());
    for (auto idx : b) {
        g.point_into(idx, v);
        const Elem av = dot(f, h, v);
        for (std::size_t j = 0; j < v.size(); ++j) x[j] = f.sub(f.mul(aq, v[j]), f.mul(av, qv[j]));
        for (std::size_t i = 0; i < pivots.size(); ++i) lambda[i] = x[pivots[i]];
        image.push_back(out.target.index_of(lambda));
    }
    out.image = PointSet(std::move(image));
    return out;
}

std::optional<std::uint64_t> find_tangent_only_point(const Geometry& g, const PointSet& b) {
    const auto& f = g.field();
    const IncidenceIndex index(g, b);
    Vec qv(g.ncoords()), d(g.ncoords());
    std::vector<std::uint64_t> keys(b.size());
    for (std::uint64_t q = 0; q < g.num_points(); ++q) {
        if (b.contains(q)) continue;
        g.point_into(q, qv);
        std::size_t c = 0;
        while (qv[c] == 0) ++c;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const auto bj = index.coords(j);
            for (std::size_t k = 0; k < d.size(); ++k) d[k] = f.sub(bj[k], f.mul(bj[c], qv[k]));
            g.normalize(d);
            keys[j] = g.rank(d);
        }
        std::sort(keys.begin(), keys.end());
        if (std::adjacent_find(keys.begin(), keys.end()) == keys.end()) return q;
    }
    return std::nullopt;
}

PointSet reduce_to_minimal(const Geometry& g, const PointSet& b, RemovalOrder order, const ScanOptions& opts) {
    if (is_blocking(g, b, opts).value == Verdict::No)
        throw Error(ErrorKind::NotBlocking, "only blocking sets can be reduced");
    std::vector<std::uint64_t> sequence(b.begin(), b.end());
    if (order.kind == RemovalOrder::Kind::Random) {
        std::mt19937_64 rng(order.seed);
        std::shuffle(sequence.begin(), sequence.end(), rng);
    }
    // A point that has a tangent keeps it after removals, so one pass suffices.
    PointSet current = b;
    for (auto p : sequence) {
        const IncidenceIndex index(g, current);
        bool exhaustive = true;
        if (tangent_hyperplane(g, index, current.position(p), opts, &exhaustive)) continue;
        if (!exhaustive) throw Error(ErrorKind::BudgetExceeded, "tangent search was not exhaustive");
        current.erase(p);
    }
    return current;
}

BlockingReport analyze(const Geometry& g, const PointSet& b, const ScanOptions& opts, const LineCensus* given) {
    BlockingReport r;
    r.size = b.size();
    r.kappa = static_cast<std::int64_t>(b.size()) - static_cast<std::int64_t>(g.q());
    r.is_small = is_small(g, b.size());
    r.span_dim = g.span_points(b).dim();
    if (b.empty()) {
        r.is_blocking = r.is_minimal = Verdict::No;
        return r;
    }

    LineCensus own;
    if (!given) {
        const IncidenceIndex index(g, b);
        CensusOptions co;
        co.threads = opts.threads;
        own = line_census(index, co);
    }
    const LineCensus& census = given ? *given : own;
    for (std::size_t pos = 0; pos < b.size(); ++pos) r.point_exponents[b[pos]] = point_exponent(g, census.per_point[pos]);

    std::optional<HyperplaneScan> scan;
    if (g.n() == 2) {
        r.blocking = is_blocking(g, census);
        if (r.blocking.value == Verdict::No) r.blocking = is_blocking(g, b, opts);
    } else if (hyperplane_scan_feasible(g, b.size(), opts)) {
        scan = scan_hyperplanes(g, b, opts);
        r.blocking.method = "hyperplane-scan";
        r.blocking.value = scan->first_unblocked ? Verdict::No : Verdict::Yes;
        if (scan->first_unblocked) r.blocking.witness = g.point(*scan->first_unblocked);
    } else {
        r.blocking.method = "not-determined";
    }
    r.is_blocking = r.blocking.value;

    if (r.is_blocking == Verdict::No) {
        r.is_minimal = Verdict::No;
        r.minimality.value = Verdict::No;
        r.minimality.method = "not-blocking";
        return r;
    }
    r.minimality = g.n() == 2 ? is_minimal(g, b, census) : is_minimal(g, b, opts);
    r.is_minimal = r.minimality.value;
    r.exponent = exponent_from(g, census, scan ? &*scan : nullptr);
    if (!r.exponent->readings_agree)
        r.alarms.push_back("exponent from hyperplanes (" + std::to_string(*r.exponent->from_hyperplanes) +
                           ") differs from exponent from lines (" + std::to_string(r.exponent->from_lines) + ")");
    if (r.is_blocking == Verdict::Yes && r.is_minimal == Verdict::Yes && r.is_small && r.exponent->e == 0)
        r.alarms.push_back("small minimal blocking set with exponent 0");
    if (!census.pair_identity_holds()) r.alarms.push_back("line census pair count mismatch");
    return r;
}

} // namespace linblock
