#pragma once

// Verification of t-designs in AG/PG, the lambda_s reduction, and the
// classical designs obtained by expanding blocks into point sets.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "affgeo/construct.hpp"
#include "affgeo/error.hpp"
#include "affgeo/family.hpp"
#include "affgeo/flatspace.hpp"
#include "affgeo/matroid.hpp"
#include "affgeo/parallel.hpp"

namespace affgeo {

using Rational = boost::rational<std::int64_t>;

struct DesignParams {
    int t = 1, k = 1, n = 1;
    std::int64_t lambda = 1;
    int q = 2;
};

template <class Flat>
struct DesignViolation {
    Flat witness;               // a t-flat whose count differs from the majority
    std::int64_t witness_count = 0;
    std::int64_t majority_count = 0;
    std::uint64_t deviating = 0; // t-flats whose count differs from the majority
};

template <class Flat>
struct DesignReport {
    int t = 0;
    std::uint64_t t_flats = 0;
    std::int64_t lambda = 0; // valid when ok
    std::optional<DesignViolation<Flat>> violation;

    bool ok() const { return !violation.has_value(); }
};

/// Counts, for every t-flat of the geometry, the blocks containing it.
template <class Flat>
DesignReport<Flat> verify_design(const FlatFamily<Flat>& fam, int t) {
    const auto& g = fam.geometry();
    if (t < 0 || (!fam.empty() && t > fam.block_rank())) throw InvalidArgument("need 0 <= t <= k");
    const auto tflats = enumerate_flats_of<Flat>(g, t);
    std::vector<std::int64_t> counts(tflats.size(), 0);
    parallel_chunks(tflats.size(), [&](std::size_t lo, std::size_t hi, unsigned) {
        for (std::size_t i = lo; i < hi; ++i)
            for (const auto& b : fam.blocks())
                if (is_subflat(tflats[i], b)) ++counts[i];
    });
    DesignReport<Flat> rep;
    rep.t = t;
    rep.t_flats = tflats.size();
    std::map<std::int64_t, std::uint64_t> histogram;
    for (auto c : counts) ++histogram[c];
    const auto majority =
        std::max_element(histogram.begin(), histogram.end(), [](auto& a, auto& b) { return a.second < b.second; });
    rep.lambda = majority->first;
    if (histogram.size() > 1) {
        DesignViolation<Flat> v;
        v.majority_count = majority->first;
        v.deviating = tflats.size() - majority->second;
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] != majority->first) {
                v.witness = tflats[i];
                v.witness_count = counts[i];
                break;
            }
        rep.violation = std::move(v);
    }
    return rep;
}

/// lambda_s = lambda * prod_{i=s}^{t-1} (f_n - f_i) / (f_k - f_i)
inline Rational lambda_s(const DesignParams& p, const PmdType& type, int s) {
    if (s < 0 || s > p.t) throw InvalidArgument("s must satisfy 0 <= s <= t");
    if (type.rank() < p.n) throw InvalidArgument("type shorter than the geometry rank");
    Rational r(p.lambda);
    for (int i = s; i < p.t; ++i) {
        const std::int64_t den = type[p.k] - type[i];
        if (den == 0) throw InvalidArgument("degenerate parameters: f_k = f_i");
        r *= Rational(type[p.n] - type[i], den);
    }
    return r;
}

/// Every flat of rank k.
template <class Flat>
FlatFamily<Flat> complete_design(const GeometrySpec& g, int k) {
    return {g, enumerate_flats_of<Flat>(g, k)};
}

/// Point-set design on points 0 .. v-1.
struct ClassicalDesign {
    int v = 0;
    std::vector<std::vector<int>> blocks; // sorted index lists

    int block_size() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().size()); }
    friend bool operator==(const ClassicalDesign&, const ClassicalDesign&) = default;
};

struct ClassicalReport {
    bool ok = true;
    std::int64_t lambda = 0;
    std::vector<int> witness; // a t-subset with a deviating count
    std::int64_t witness_count = 0;
};

/// Brute-force count over all t-subsets of the points.
inline ClassicalReport verify_classical(const ClassicalDesign& d, int t) {
    const int v = d.v;
    std::vector<std::vector<bool>> member;
    for (const auto& b : d.blocks) {
        std::vector<bool> m(v, false);
        for (int x : b) m.at(x) = true;
        member.push_back(std::move(m));
    }
    std::vector<int> sub(t);
    for (int i = 0; i < t; ++i) sub[i] = i;
    ClassicalReport rep;
    bool first = true;
    if (t > v) return rep;
    while (true) {
        std::int64_t c = 0;
        for (const auto& m : member) {
            bool in = true;
            for (int x : sub)
                if (!m[x]) {
                    in = false;
                    break;
                }
            c += in;
        }
        if (first) {
            rep.lambda = c;
            first = false;
        } else if (c != rep.lambda) {
            rep.ok = false;
            rep.witness = sub;
            rep.witness_count = c;
            return rep;
        }
        int i = t - 1;
        while (i >= 0 && sub[i] == v - t + i) --i;
        if (i < 0) break;
        ++sub[i];
        for (int j = i + 1; j < t; ++j) sub[j] = sub[j - 1] + 1;
    }
    return rep;
}

namespace detail {

/// Normalized spanning vector (first nonzero entry 1) of <v>.
inline Row normalize_point(const Field& f, Row v) {
    auto it = std::find_if(v.begin(), v.end(), [](Elem c) { return c != 0; });
    if (it == v.end()) return v;
    const Elem s = f.inv(*it);
    for (auto& x : v) x = f.mul(s, x);
    return v;
}

/// Index of a vector in the lexicographic listing of F_q^d.
inline int vector_index(const Row& v, int q) {
    int idx = 0;
    for (Elem c : v) idx = idx * q + c;
    return idx;
}

} // namespace detail

/// Each subspace U becomes the set of projective points inside it.
inline ClassicalDesign expand_subspace_design(const ProjectiveFamily& fam) {
    const auto& g = fam.geometry();
    const auto pts = projective_points(g.field, g.ambient_dim());
    std::map<Row, int> index;
    for (std::size_t i = 0; i < pts.size(); ++i) index.emplace(pts[i], static_cast<int>(i));
    ClassicalDesign out{static_cast<int>(pts.size()), {}};
    for (const auto& u : fam.blocks()) {
        std::set<int> idx;
        for (auto& v : u.vectors())
            if (!detail::is_zero_row(v)) idx.insert(index.at(detail::normalize_point(g.field, v)));
        out.blocks.emplace_back(idx.begin(), idx.end());
    }
    return out;
}

/// Each coset becomes its point set in F_q^(n-1); valid for t = 2, or t = 3 over F_2.
inline ClassicalDesign expand_affine_design(const AffineFamily& fam, int t) {
    const auto& g = fam.geometry();
    const int q = g.field.order();
    if (!(t == 2 || (t == 3 && q == 2)))
        throw InvalidArgument("affine expansion supports t = 2, or t = 3 with q = 2");
    const auto total = detail::ipow(q, g.ambient_dim());
    if (total > kFlatEnumerationGuard) throw GuardExceeded("too many points");
    ClassicalDesign out{static_cast<int>(total), {}};
    for (const auto& b : fam.blocks()) {
        std::vector<int> idx;
        for (const auto& p : b.points()) idx.push_back(detail::vector_index(p, q));
        std::sort(idx.begin(), idx.end());
        out.blocks.push_back(std::move(idx));
    }
    return out;
}

/// 2-(n, k, lambda) subspace design over F_2 -> classical 3-(2^n, 2^k, lambda).
inline ClassicalDesign ev11_compose(const ProjectiveFamily& fam) {
    if (fam.geometry().field.order() != 2) throw InvalidArgument("composition needs q = 2");
    return expand_affine_design(translate_closure(fam), 3);
}

/// Number of distinct direction subspaces among the blocks.
inline int parallel_classes(const AffineFamily& fam) {
    if (fam.empty()) throw InvalidArgument("parallel classes of an empty family");
    std::set<LinearSubspace> dirs;
    for (const auto& b : fam.blocks()) dirs.insert(b.dir());
    return static_cast<int>(dirs.size());
}

inline int parallel_classes(const ProjectiveFamily&) {
    throw InvalidArgument("parallel classes are defined for affine families only");
}

/// No two blocks are parallel.
template <class Flat>
bool is_skew(const FlatFamily<Flat>& fam) {
    return parallel_classes(fam) == static_cast<int>(fam.size());
}

} // namespace affgeo
