#pragma once

// Matroids given by a rank oracle over a small ordered ground set.
//
// Subsets are bitmasks over the ground set (bit i = element i), so ground
// sets hold at most 64 elements; exhaustive checks are further limited.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "affgeo/error.hpp"
#include "affgeo/flatspace.hpp"
#include "affgeo/galois.hpp"

namespace affgeo {

using Mask = std::uint64_t;

/// Ground-set limit for exhaustive axiom checks (all pairs of subsets).
inline constexpr int kExhaustiveGroundLimit = 12;
/// Ground-set limit for building the lattice of flats.
inline constexpr int kLatticeGroundLimit = 20;

class MatroidOracle {
public:
    using RankFn = std::function<int(Mask)>;

    MatroidOracle(std::vector<std::string> labels, RankFn rank) : labels_(std::move(labels)), rank_(std::move(rank)) {
        if (labels_.size() > 64) throw GuardExceeded("ground set larger than 64 elements");
    }

    int size() const { return static_cast<int>(labels_.size()); }
    Mask ground() const { return size() == 64 ? ~Mask{0} : (Mask{1} << size()) - 1; }
    const std::vector<std::string>& labels() const { return labels_; }
    int rank(Mask x) const { return rank_(x); }
    int rank() const { return rank_(ground()); }

private:
    std::vector<std::string> labels_;
    RankFn rank_;
};

namespace detail {

inline void require_ground_at_most(const MatroidOracle& m, int limit, const char* what) {
    if (m.size() > limit)
        throw GuardExceeded(std::string(what) + " limited to ground sets of " + std::to_string(limit) + " elements");
}

/// Rank of every subset, indexed by mask.
inline std::vector<int> rank_table(const MatroidOracle& m) {
    require_ground_at_most(m, kLatticeGroundLimit, "rank tabulation");
    std::vector<int> t(std::size_t{1} << m.size());
    for (Mask x = 0; x < t.size(); ++x) t[x] = m.rank(x);
    return t;
}

inline Mask closure_from_table(const std::vector<int>& t, int n, Mask x) {
    Mask c = x;
    for (int i = 0; i < n; ++i) {
        const Mask b = Mask{1} << i;
        if (!(x & b) && t[x | b] == t[x]) c |= b;
    }
    return c;
}

inline std::vector<std::string> index_labels(int n) {
    std::vector<std::string> l;
    for (int i = 0; i < n; ++i) l.push_back(std::to_string(i));
    return l;
}

} // namespace detail

inline MatroidOracle free_matroid(int n) {
    if (n < 0) throw InvalidArgument("negative ground set size");
    return {detail::index_labels(n), [](Mask x) { return std::popcount(x); }};
}

/// Edges are the ground set; rank = |V| - number of components of (V, X).
inline MatroidOracle graphic_matroid(int vertices, std::vector<std::pair<int, int>> edges) {
    for (auto [a, b] : edges)
        if (a < 0 || b < 0 || a >= vertices || b >= vertices) throw InvalidArgument("edge endpoint out of range");
    std::vector<std::string> labels;
    for (auto [a, b] : edges) labels.push_back(std::to_string(a) + "-" + std::to_string(b));
    return {std::move(labels), [vertices, edges = std::move(edges)](Mask x) {
                std::vector<int> parent(vertices);
                std::iota(parent.begin(), parent.end(), 0);
                auto find = [&](int v) {
                    while (parent[v] != v) v = parent[v] = parent[parent[v]];
                    return v;
                };
                int merged = 0;
                for (std::size_t i = 0; i < edges.size(); ++i) {
                    if (!(x >> i & 1)) continue;
                    const int a = find(edges[i].first), b = find(edges[i].second);
                    if (a != b) {
                        parent[a] = b;
                        ++merged;
                    }
                }
                return merged;
            }};
}

namespace detail {

inline int span_rank(const Field& f, int d, const std::vector<Row>& pts, Mask x) {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (x >> i & 1) rows.push_back(pts[i]);
    return LinearSubspace(f, d, std::move(rows)).dim();
}

inline int affine_rank(const Field& f, int d, const std::vector<Row>& pts, Mask x) {
    if (x == 0) return 0;
    const int first = std::countr_zero(x);
    std::vector<Row> rows;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!(x >> i & 1)) continue;
        Row r(d);
        for (int j = 0; j < d; ++j) r[j] = f.sub(pts[i][j], pts[first][j]);
        rows.push_back(std::move(r));
    }
    return LinearSubspace(f, d, std::move(rows)).dim() + 1;
}

inline std::vector<std::string> row_labels(const Field& f, const std::vector<Row>& pts) {
    std::vector<std::string> l;
    for (const auto& p : pts) l.push_back(VectorFq(f, p).to_string());
    return l;
}

} // namespace detail

/// All vectors of F_q^d (the zero vector is a loop); rank is linear rank.
inline MatroidOracle vector_matroid(const Field& f, int d) {
    if (detail::ipow(f.order(), d) > 64) throw GuardExceeded("vector matroid ground set larger than 64");
    std::vector<Row> pts;
    for (const auto& v : all_vectors(f, d)) pts.push_back(v.coords());
    auto labels = detail::row_labels(f, pts);
    return {std::move(labels), [f, d, pts = std::move(pts)](Mask x) { return detail::span_rank(f, d, pts, x); }};
}

/// Points of AG/PG as ground set; rank of X is the rank of the flat it spans.
inline MatroidOracle geometry_matroid(const GeometrySpec& g) {
    if (count_points(g) > 64) throw GuardExceeded("geometry has more than 64 points");
    const Field f = g.field;
    const int d = g.ambient_dim();
    if (g.kind == GeometryKind::affine) {
        std::vector<Row> pts;
        for (const auto& v : all_vectors(f, d)) pts.push_back(v.coords());
        auto labels = detail::row_labels(f, pts);
        return {std::move(labels), [f, d, pts = std::move(pts)](Mask x) { return detail::affine_rank(f, d, pts, x); }};
    }
    auto pts = projective_points(f, d);
    auto labels = detail::row_labels(f, pts);
    return {std::move(labels), [f, d, pts = std::move(pts)](Mask x) { return detail::span_rank(f, d, pts, x); }};
}

/// Indices of geometry_matroid's ground set, keyed by point coordinates.
inline std::vector<Row> geometry_points(const GeometrySpec& g) {
    if (g.kind == GeometryKind::projective) return projective_points(g.field, g.ambient_dim());
    std::vector<Row> pts;
    for (const auto& v : all_vectors(g.field, g.ambient_dim())) pts.push_back(v.coords());
    return pts;
}

struct AxiomReport {
    bool ok = true;
    std::string violation; // empty when ok
    std::vector<Mask> witness;
};

/// 0 <= r(X) <= |X|, monotonicity, and submodularity over all pairs of subsets.
inline AxiomReport rank_axioms_check(const MatroidOracle& m) {
    detail::require_ground_at_most(m, kExhaustiveGroundLimit, "rank axiom check");
    const auto t = detail::rank_table(m);
    const Mask n = t.size();
    for (Mask x = 0; x < n; ++x)
        if (t[x] < 0 || t[x] > std::popcount(x)) return {false, "bounds: 0 <= r(X) <= |X| fails", {x}};
    for (Mask x = 0; x < n; ++x)
        for (int i = 0; i < m.size(); ++i) {
            const Mask y = x | (Mask{1} << i);
            if (t[x] > t[y]) return {false, "monotonicity fails", {x, y}};
        }
    for (Mask x = 0; x < n; ++x)
        for (Mask y = 0; y < n; ++y)
            if (t[x | y] + t[x & y] > t[x] + t[y]) return {false, "submodularity fails", {x, y}};
    return {};
}

inline Mask closure(const MatroidOracle& m, Mask x) {
    const int r = m.rank(x);
    Mask c = x;
    for (int i = 0; i < m.size(); ++i) {
        const Mask b = Mask{1} << i;
        if (!(x & b) && m.rank(x | b) == r) c |= b;
    }
    return c;
}

inline bool independent(const MatroidOracle& m, Mask x) { return m.rank(x) == std::popcount(x); }

inline bool is_flat(const MatroidOracle& m, Mask x) { return closure(m, x) == x; }

/// y in cl(E + x) implies x in cl(E + y), for every flat E and x, y outside E.
inline AxiomReport exchange_check(const MatroidOracle& m) {
    detail::require_ground_at_most(m, kExhaustiveGroundLimit, "exchange check");
    const auto t = detail::rank_table(m);
    const int n = m.size();
    for (Mask e = 0; e < t.size(); ++e) {
        if (detail::closure_from_table(t, n, e) != e) continue;
        for (int x = 0; x < n; ++x) {
            const Mask bx = Mask{1} << x;
            if (e & bx) continue;
            const Mask cx = detail::closure_from_table(t, n, e | bx);
            for (int y = 0; y < n; ++y) {
                const Mask by = Mask{1} << y;
                if ((e & by) || !(cx & by)) continue;
                if (!(detail::closure_from_table(t, n, e | by) & bx))
                    return {false, "exchange property fails", {e, bx, by}};
            }
        }
    }
    return {};
}

/// Maximal independent sets.
inline std::vector<Mask> bases(const MatroidOracle& m) {
    detail::require_ground_at_most(m, kLatticeGroundLimit, "basis enumeration");
    const auto t = detail::rank_table(m);
    std::vector<Mask> out;
    for (Mask x = 0; x < t.size(); ++x) {
        if (t[x] != std::popcount(x)) continue;
        bool maximal = true;
        for (int i = 0; i < m.size() && maximal; ++i) {
            const Mask b = Mask{1} << i;
            if (!(x & b) && t[x | b] == std::popcount(x | b)) maximal = false;
        }
        if (maximal) out.push_back(x);
    }
    return out;
}

/// The lattice of flats, ordered by (rank, mask).
class FlatLattice {
public:
    explicit FlatLattice(const MatroidOracle& m) : n_(m.size()) {
        detail::require_ground_at_most(m, kLatticeGroundLimit, "lattice of flats");
        t_ = detail::rank_table(m);
        for (Mask x = 0; x < t_.size(); ++x)
            if (detail::closure_from_table(t_, n_, x) == x) flats_.push_back(x);
        std::sort(flats_.begin(), flats_.end(), [&](Mask a, Mask b) {
            return t_[a] != t_[b] ? t_[a] < t_[b] : a < b;
        });
        for (std::size_t i = 0; i < flats_.size(); ++i) index_[flats_[i]] = i;
    }

    std::size_t size() const { return flats_.size(); }
    const std::vector<Mask>& flats() const { return flats_; }
    Mask flat(std::size_t i) const { return flats_[i]; }
    int rank(std::size_t i) const { return t_[flats_[i]]; }
    int rank_of(Mask x) const { return t_[x]; }
    std::optional<std::size_t> index_of(Mask x) const {
        auto it = index_.find(x);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    Mask closure(Mask x) const { return detail::closure_from_table(t_, n_, x); }

    std::size_t meet(std::size_t i, std::size_t j) const { return index_.at(flats_[i] & flats_[j]); }
    std::size_t join(std::size_t i, std::size_t j) const { return index_.at(closure(flats_[i] | flats_[j])); }
    bool leq(std::size_t i, std::size_t j) const { return (flats_[i] & ~flats_[j]) == 0; }
    std::size_t bottom() const { return 0; }
    std::size_t top() const { return flats_.size() - 1; }

    bool covers(std::size_t upper, std::size_t lower) const {
        if (upper == lower || !leq(lower, upper)) return false;
        for (std::size_t k = 0; k < size(); ++k)
            if (k != upper && k != lower && leq(lower, k) && leq(k, upper)) return false;
        return true;
    }

    std::vector<std::size_t> atoms() const {
        std::vector<std::size_t> a;
        for (std::size_t i = 0; i < size(); ++i)
            if (covers(i, bottom())) a.push_back(i);
        return a;
    }

    /// Every flat is the join of the atoms below it.
    bool is_atomistic() const {
        const auto at = atoms();
        for (std::size_t i = 0; i < size(); ++i) {
            std::size_t acc = bottom();
            for (auto a : at)
                if (leq(a, i)) acc = join(acc, a);
            if (acc != i) return false;
        }
        return true;
    }

    /// Every covering pair differs in rank by one, so each maximal chain
    /// between E < F has length r(F) - r(E).
    bool chain_condition_holds() const {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (covers(j, i) && rank(j) - rank(i) != 1) return false;
        return true;
    }

    /// If E and F both cover E meet F, then E join F covers E and F.
    bool is_semimodular() const {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j) {
                const auto m = meet(i, j);
                if (!covers(i, m) || !covers(j, m)) continue;
                const auto J = join(i, j);
                if (!covers(J, i) || !covers(J, j)) return false;
            }
        return true;
    }

private:
    int n_;
    std::vector<int> t_;
    std::vector<Mask> flats_;
    std::unordered_map<Mask, std::size_t> index_;
};

inline FlatLattice flats_lattice(const MatroidOracle& m) { return FlatLattice(m); }

namespace detail {
inline void require_flat(const MatroidOracle& m, Mask x) {
    if (!is_flat(m, x)) throw InvalidArgument("argument is not a flat");
}
} // namespace detail

/// d(E, F) = 2 r(E v F) - r(E) - r(F)
inline int lattice_distance(const MatroidOracle& m, Mask e, Mask f) {
    detail::require_flat(m, e);
    detail::require_flat(m, f);
    return 2 * m.rank(closure(m, e | f)) - m.rank(e) - m.rank(f);
}

/// d'(E, F) = r(E v F) - min(r(E), r(F))
inline int lattice_distance_prime(const MatroidOracle& m, Mask e, Mask f) {
    detail::require_flat(m, e);
    detail::require_flat(m, f);
    return m.rank(closure(m, e | f)) - std::min(m.rank(e), m.rank(f));
}

/// Flat cardinalities (f_0, ..., f_r) by rank.
struct PmdType {
    std::vector<std::int64_t> f;

    int rank() const { return static_cast<int>(f.size()) - 1; }
    std::int64_t operator[](int i) const { return f.at(i); }
    friend bool operator==(const PmdType&, const PmdType&) = default;
};

/// Raised by pmd_type when two flats of equal rank differ in size.
class NotPmd : public InvalidArgument {
public:
    NotPmd(Mask a, Mask b, int r)
        : InvalidArgument("not a perfect matroid design: two " + std::to_string(r) + "-flats differ in size"),
          first(a), second(b), rank(r) {}
    Mask first, second;
    int rank;
};

inline PmdType pmd_type(const MatroidOracle& m) {
    const FlatLattice lat(m);
    const int r = lat.rank(lat.top());
    PmdType t{std::vector<std::int64_t>(r + 1, -1)};
    std::vector<Mask> seen(r + 1, 0);
    for (Mask x : lat.flats()) {
        const int i = lat.rank_of(x);
        const int c = std::popcount(x);
        if (t.f[i] < 0) {
            t.f[i] = c;
            seen[i] = x;
        } else if (t.f[i] != c) {
            throw NotPmd(seen[i], x, i);
        }
    }
    return t;
}

/// Closed-form type of AG/PG: affine (0, 1, q, ..., q^(n-1)), projective [i]_q.
inline PmdType geometry_type(const GeometrySpec& g) {
    PmdType t;
    const std::int64_t q = g.field.order();
    for (int i = 0; i <= g.rank; ++i) {
        if (g.kind == GeometryKind::affine) t.f.push_back(i == 0 ? 0 : static_cast<std::int64_t>(detail::ipow(q, i - 1)));
        else t.f.push_back((static_cast<std::int64_t>(detail::ipow(q, i)) - 1) / (q - 1));
    }
    return t;
}

/// f'_i = (f_i - f_0) / (f_1 - f_0)
inline PmdType geometrize_type(const PmdType& t) {
    if (t.f.size() < 2 || t.f[1] <= t.f[0]) throw InvalidArgument("degenerate type: f_1 must exceed f_0");
    const std::int64_t den = t.f[1] - t.f[0];
    PmdType g;
    for (auto x : t.f) {
        if ((x - t.f[0]) % den != 0) throw InvalidArgument("type does not geometrize to integers");
        g.f.push_back((x - t.f[0]) / den);
    }
    return g;
}

} // namespace affgeo
