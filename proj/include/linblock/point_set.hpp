#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace linblock {

/// A set of point indices of one geometry, kept sorted and duplicate-free so
/// two equal sets compare equal element by element.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<std::uint64_t> indices) : idx_(std::move(indices)) { canonicalize(); }
    PointSet(std::initializer_list<std::uint64_t> indices) : idx_(indices) { canonicalize(); }

    std::size_t size() const noexcept { return idx_.size(); }
    bool empty() const noexcept { return idx_.empty(); }

    bool contains(std::uint64_t i) const noexcept { return std::binary_search(idx_.begin(), idx_.end(), i); }

    /// Position of i in the sorted order, or size() if absent.
    std::size_t position(std::uint64_t i) const noexcept {
        auto it = std::lower_bound(idx_.begin(), idx_.end(), i);
        return (it != idx_.end() && *it == i) ? static_cast<std::size_t>(it - idx_.begin()) : idx_.size();
    }

    void insert(std::uint64_t i) {
        auto it = std::lower_bound(idx_.begin(), idx_.end(), i);
        if (it == idx_.end() || *it != i) idx_.insert(it, i);
    }

    bool erase(std::uint64_t i) {
        auto it = std::lower_bound(idx_.begin(), idx_.end(), i);
        if (it == idx_.end() || *it != i) return false;
        idx_.erase(it);
        return true;
    }

    std::uint64_t operator[](std::size_t k) const noexcept { return idx_[k]; }
    const std::vector<std::uint64_t>& indices() const noexcept { return idx_; }
    auto begin() const noexcept { return idx_.begin(); }
    auto end() const noexcept { return idx_.end(); }

    PointSet intersection(const PointSet& other) const {
        std::vector<std::uint64_t> out;
        std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
        return PointSet(std::move(out));
    }
    PointSet union_with(const PointSet& other) const {
        std::vector<std::uint64_t> out;
        std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
        return PointSet(std::move(out));
    }
    PointSet difference(const PointSet& other) const {
        std::vector<std::uint64_t> out;
        std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
        return PointSet(std::move(out));
    }
    bool is_subset_of(const PointSet& other) const {
        return std::includes(other.begin(), other.end(), begin(), end());
    }

    friend bool operator==(const PointSet&, const PointSet&) = default;
    friend auto operator<=>(const PointSet&, const PointSet&) = default;

private:
    void canonicalize() {
        std::sort(idx_.begin(), idx_.end());
        idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
    }

    std::vector<std::uint64_t> idx_;
};

} // namespace linblock
