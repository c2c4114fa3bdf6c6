#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "linblock/point_set.hpp"
#include "linblock/projective_space.hpp"

namespace linblock {

/// Groups of positions (indices into a PointSet) stored back to back.
struct LineGroups {
    std::vector<std::uint32_t> members;
    std::vector<std::uint32_t> start{0};

    std::size_t count() const noexcept { return start.size() - 1; }
    std::span<const std::uint32_t> group(std::size_t k) const noexcept {
        return {members.data() + start[k], members.data() + start[k + 1]};
    }
    void clear() {
        members.clear();
        start.assign(1, 0);
    }
};

/// A point set with its coordinates decoded once, supporting the
/// "lines through a member" grouping every census is built on.
class IncidenceIndex {
public:
    IncidenceIndex(const Geometry& g, const PointSet& b);

    const Geometry& geometry() const noexcept { return *geom_; }
    const PointSet& points() const noexcept { return *set_; }
    std::size_t size() const noexcept { return set_->size(); }
    std::span<const Elem> coords(std::size_t pos) const noexcept {
        return {coords_.data() + pos * nc_, nc_};
    }

    /// Reusable per-thread scratch space for lines_through.
    struct Scratch {
        std::vector<std::uint64_t> keys;
        std::vector<std::uint32_t> gid;
        std::vector<std::uint64_t> table_keys;
        std::vector<std::uint32_t> table_vals;
        std::vector<std::uint32_t> sizes;
        Vec diff;
    };

    /// The secant lines through the member at `pos`: each group holds the
    /// positions of the other members on that line, ascending. Groups are
    /// ordered by their smallest member.
    void lines_through(std::size_t pos, Scratch& scratch, LineGroups& out) const;
    LineGroups lines_through(std::size_t pos) const;

    /// Direction key of the line joining members pos and other (unique among
    /// lines through pos).
    std::uint64_t direction_key(std::size_t pos, std::span<const Elem> other, Vec& diff) const;

private:
    const Geometry* geom_;
    const PointSet* set_;
    std::size_t nc_;
    Vec coords_;
    std::vector<std::uint32_t> lead_;
};

} // namespace linblock
