#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "affgeo/error.hpp"
#include "affgeo/flatspace.hpp"

namespace affgeo {

/// A set of equal-rank flats of one geometry: a design, code or spread.
/// Blocks are kept in canonical order with duplicates removed.
template <class Flat>
class FlatFamily {
public:
    using flat_type = Flat;

    FlatFamily() = default;

    FlatFamily(GeometrySpec g, std::vector<Flat> blocks) : geometry_(std::move(g)), blocks_(std::move(blocks)) {
        for (const auto& b : blocks_) check_in_geometry(b, geometry_);
        if (!blocks_.empty()) {
            k_ = flat_rank(blocks_.front());
            for (const auto& b : blocks_)
                if (flat_rank(b) != k_) throw InvalidArgument("blocks must share one rank");
        }
        std::sort(blocks_.begin(), blocks_.end());
        blocks_.erase(std::unique(blocks_.begin(), blocks_.end()), blocks_.end());
    }

    const GeometrySpec& geometry() const { return geometry_; }
    const std::vector<Flat>& blocks() const { return blocks_; }
    std::size_t size() const { return blocks_.size(); }
    bool empty() const { return blocks_.empty(); }
    /// Common matroid rank k of the blocks (0 for an empty family).
    int block_rank() const { return k_; }

    friend bool operator==(const FlatFamily& a, const FlatFamily& b) {
        return a.geometry_ == b.geometry_ && a.blocks_ == b.blocks_;
    }

private:
    GeometrySpec geometry_;
    std::vector<Flat> blocks_;
    int k_ = 0;
};

using AffineFamily = FlatFamily<AffineFlat>;
using ProjectiveFamily = FlatFamily<LinearSubspace>;

} // namespace affgeo
