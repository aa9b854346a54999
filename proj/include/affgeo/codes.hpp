#pragma once

// Distances on flats, small-intersection predicates, deletion discrepancy,
// and containment decoding.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affgeo/error.hpp"
#include "affgeo/family.hpp"
#include "affgeo/flatspace.hpp"
#include "affgeo/parallel.hpp"

namespace affgeo {

/// dim E + dim F - 2 dim(E meet F)
inline int subspace_distance(const LinearSubspace& e, const LinearSubspace& f) {
    return e.dim() + f.dim() - 2 * lin_meet(e, f).dim();
}

/// Lattice metric 2 r(E v F) - r(E) - r(F) on flats of AG or PG.
template <class Flat>
int flat_distance(const Flat& e, const Flat& f) {
    return 2 * flat_rank(join(e, f)) - flat_rank(e) - flat_rank(f);
}

/// r(E v F) - min(r(E), r(F))
template <class Flat>
int flat_distance_prime(const Flat& e, const Flat& f) {
    return flat_rank(join(e, f)) - std::min(flat_rank(e), flat_rank(f));
}

/// r(E) + r(F) - 2 r(E meet F); not a metric on affine flats.
inline int d_wedge(const AffineFlat& e, const AffineFlat& f) {
    return flat_rank(e) + flat_rank(f) - 2 * flat_rank(aff_meet(e, f));
}

struct WedgeWitness {
    AffineFlat e, t, f;
    int d_ef = 0, d_et = 0, d_tf = 0;
};

/// Parallel planes E, F and a plane T meeting each in a line.
inline WedgeWitness metric_violation_witness(const GeometrySpec& g) {
    if (g.kind != GeometryKind::affine) throw InvalidArgument("witness lives in an affine geometry");
    if (g.rank < 4) throw InvalidArgument("geometry too small: rank >= 4 required");
    const Field& fq = g.field;
    const int d = g.ambient_dim();
    auto e = [&](int i) { return VectorFq::unit(fq, d, i).coords(); };
    const auto origin = VectorFq::zero(fq, d);
    WedgeWitness w;
    w.e = AffineFlat::coset(origin, LinearSubspace(fq, d, {e(0), e(1)}));
    w.f = AffineFlat::coset(VectorFq::unit(fq, d, 2), LinearSubspace(fq, d, {e(0), e(1)}));
    w.t = AffineFlat::coset(origin, LinearSubspace(fq, d, {e(0), e(2)}));
    w.d_ef = d_wedge(w.e, w.f);
    w.d_et = d_wedge(w.e, w.t);
    w.d_tf = d_wedge(w.t, w.f);
    if (w.d_ef <= w.d_et + w.d_tf) throw Error("witness construction failed to violate the triangle inequality");
    return w;
}

/// Largest rank of E meet F over distinct blocks (0 for fewer than two blocks).
template <class Flat>
int max_pairwise_meet_rank(const FlatFamily<Flat>& fam) {
    const auto& b = fam.blocks();
    if (b.size() < 2) return 0;
    std::vector<int> best(worker_count(), 0);
    parallel_chunks(b.size(), [&](std::size_t lo, std::size_t hi, unsigned w) {
        for (std::size_t i = lo; i < hi; ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j) best[w] = std::max(best[w], flat_rank(meet(b[i], b[j])));
    });
    return *std::max_element(best.begin(), best.end());
}

/// r(E meet F) < t for all distinct blocks.
template <class Flat>
bool is_partial_steiner(const FlatFamily<Flat>& fam, int t) {
    return max_pairwise_meet_rank(fam) < t;
}

/// Non-negative integer or infinity.
struct Discrepancy {
    std::optional<int> value; // nullopt = infinity

    static Discrepancy infinity() { return {}; }
    bool is_infinite() const { return !value.has_value(); }
    std::string to_string() const { return value ? std::to_string(*value) : "inf"; }
    friend bool operator==(const Discrepancy&, const Discrepancy&) = default;
    /// Total order with infinity on top.
    friend bool operator<(const Discrepancy& a, const Discrepancy& b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return *a.value < *b.value;
    }
};

/// r(E) - r(F) when F is inside E, infinity otherwise.
template <class Flat>
Discrepancy deletion_discrepancy(const Flat& e, const Flat& f) {
    if (!is_subflat(f, e)) return Discrepancy::infinity();
    return {flat_rank(e) - flat_rank(f)};
}

/// min over flats F of max(D(E, F), D(E', F)) - 1, attained at F = E meet E'.
template <class Flat>
int tau(const Flat& e, const Flat& e2) {
    return std::max(flat_rank(e), flat_rank(e2)) - flat_rank(meet(e, e2)) - 1;
}

/// Minimum pairwise tau: the number of deletions the code corrects.
/// A single block has no competitor, giving k - 1.
template <class Flat>
int correction_radius(const FlatFamily<Flat>& fam) {
    if (fam.empty()) throw InvalidArgument("correction radius of an empty family");
    if (fam.size() == 1) return fam.block_rank() - 1;
    return fam.block_rank() - max_pairwise_meet_rank(fam) - 1;
}

enum class DecodeStatus { decoded, erasure, ambiguous };

inline std::string to_string(DecodeStatus s) {
    switch (s) {
    case DecodeStatus::decoded: return "decoded";
    case DecodeStatus::erasure: return "erasure";
    case DecodeStatus::ambiguous: return "ambiguous";
    }
    return "?";
}

struct DecodeResult {
    DecodeStatus status = DecodeStatus::erasure;
    std::vector<std::size_t> candidates; // indices of blocks containing the received flat

    bool ok() const { return status == DecodeStatus::decoded; }
    std::size_t block() const {
        if (!ok()) throw Error("no unique block decoded: " + to_string(status));
        return candidates.front();
    }
};

/// The unique block containing the received flat, by linear scan.
template <class Flat>
DecodeResult decode(const FlatFamily<Flat>& fam, const Flat& received) {
    if (flat_rank(received) < 1) throw InvalidArgument("received flat must have rank >= 1");
    DecodeResult r;
    for (std::size_t i = 0; i < fam.size(); ++i)
        if (is_subflat(received, fam.blocks()[i])) r.candidates.push_back(i);
    if (r.candidates.size() == 1) r.status = DecodeStatus::decoded;
    else if (r.candidates.empty()) r.status = DecodeStatus::erasure;
    else r.status = DecodeStatus::ambiguous;
    return r;
}

} // namespace affgeo
