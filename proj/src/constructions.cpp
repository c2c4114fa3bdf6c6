#include "linblock/constructions.hpp"

namespace linblock {

PointSet full_line(const Geometry& g) { return g.points_of(g.line_through(0, 1)); }

PointSet subgeometry(const Geometry& g, std::uint32_t e, int dim) {
    if (dim < 1 || dim > g.n()) throw Error(ErrorKind::InvalidArgument, "subgeometry dimension out of range");
    const Subfield sub(g.field_ptr(), e);
    const auto& small = *sub.small();
    std::vector<std::uint64_t> out;
    ProjectiveCounter counter(small, static_cast<std::size_t>(dim) + 1);
    Vec v(g.ncoords(), 0);
    do {
        const auto c = counter.current();
        for (std::size_t i = 0; i < c.size(); ++i) v[i] = sub.embed(c[i]);
        out.push_back(g.index_of(v));
    } while (counter.next());
    return PointSet(std::move(out));
}

Matrix frobenius_generators(const SpreadContext& ctx) {
    const auto& g = ctx.big();
    const auto& f = g.field();
    const std::uint32_t q0 = ctx.q0();
    Matrix gens;
    for (std::uint32_t i = 0; i < ctx.h(); ++i) {
        Vec w(ctx.h() * g.ncoords(), 0);
        w[i] = 1;  // the basis element d^i in coordinate 0
        const Elem x = ctx.lift(w)[0];
        Vec v(g.ncoords(), 0);
        Elem power = x;
        for (int j = 0; j < g.n(); ++j) {
            v[static_cast<std::size_t>(j)] = power;
            power = f.pow(power, q0);
        }
        gens.push_back(std::move(v));
    }
    Vec last(g.ncoords(), 0);
    last.back() = 1;
    gens.push_back(std::move(last));
    return gens;
}

RandomLinearSet random_linear_set(const SpreadContext& ctx, std::uint32_t rank, std::mt19937_64& rng) {
    const auto& red = ctx.reduced();
    const std::size_t len = red.ncoords();
    if (rank == 0 || rank > len) throw Error(ErrorKind::InvalidArgument, "rank out of range");
    std::uniform_int_distribution<Elem> coef(0, ctx.q0() - 1);
    for (;;) {
        Matrix rows(rank, Vec(len));
        for (auto& r : rows)
            for (auto& x : r) x = coef(rng);
        Subspace pi = red.span(rows);
        if (static_cast<std::uint32_t>(pi.dim() + 1) != rank) continue;
        RandomLinearSet out;
        for (const auto& r : pi.basis()) out.generators.push_back(ctx.lift(r));
        out.set = ctx.linear_set_from_subspace(pi);
        out.pi = std::move(pi);
        return out;
    }
}

PointSet line_plus_points(const Geometry& g, std::size_t extra, std::mt19937_64& rng) {
    PointSet b = full_line(g);
    const std::size_t target = b.size() + extra;
    std::uniform_int_distribution<std::uint64_t> pick(0, g.num_points() - 1);
    while (b.size() < target) b.insert(pick(rng));
    return b;
}

} // namespace linblock
