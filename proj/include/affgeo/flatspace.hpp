#pragma once

// Vectors, linear subspaces and affine flats over F_q in canonical form, and
// the coordinatized geometries AG(n-1, q) and PG(n-1, q).
//
// A LinearSubspace always holds its reduced row-echelon basis. An AffineFlat
// is either empty or a coset whose representative is zero at every pivot
// column of its direction, so equality of flats is equality of members.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "affgeo/error.hpp"
#include "affgeo/galois.hpp"

namespace affgeo {

using Row = std::vector<Elem>;

/// Enumeration limit on the number of flats produced by one call.
inline constexpr std::uint64_t kFlatEnumerationGuard = 10'000'000;

class VectorFq {
public:
    VectorFq() = default;
    VectorFq(Field f, Row coords) : field_(std::move(f)), coords_(std::move(coords)) {
        for (Elem c : coords_)
            if (c >= field_.order()) throw InvalidArgument("coordinate out of range");
    }
    static VectorFq zero(const Field& f, int d) { return {f, Row(d, 0)}; }
    static VectorFq unit(const Field& f, int d, int i) {
        Row r(d, 0);
        r.at(i) = f.one();
        return {f, std::move(r)};
    }

    const Field& field() const { return field_; }
    int dim() const { return static_cast<int>(coords_.size()); }
    const Row& coords() const { return coords_; }
    Elem operator[](int i) const { return coords_[i]; }
    bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](Elem c) { return c == 0; });
    }

    VectorFq operator+(const VectorFq& o) const {
        check(o);
        Row r(coords_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.add(coords_[i], o.coords_[i]);
        return {field_, std::move(r)};
    }
    VectorFq operator-(const VectorFq& o) const {
        check(o);
        Row r(coords_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.sub(coords_[i], o.coords_[i]);
        return {field_, std::move(r)};
    }
    VectorFq scaled(Elem c) const {
        Row r(coords_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.mul(c, coords_[i]);
        return {field_, std::move(r)};
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s.push_back(' ');
            s += field_.to_string(coords_[i]);
        }
        return s;
    }

    friend bool operator==(const VectorFq& a, const VectorFq& b) { return a.coords_ == b.coords_; }
    friend auto operator<=>(const VectorFq& a, const VectorFq& b) { return a.coords_ <=> b.coords_; }

private:
    void check(const VectorFq& o) const {
        if (!(field_ == o.field_) || o.coords_.size() != coords_.size())
            throw DomainMismatch("vectors from different spaces");
    }
    Field field_;
    Row coords_;
};

namespace detail {

/// In-place Gauss-Jordan elimination; drops zero rows. Returns pivot columns.
inline std::vector<int> gauss_jordan(const Field& f, std::vector<Row>& rows, int d) {
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < d && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        const Elem s = f.inv(rows[r][c]);
        for (auto& x : rows[r]) x = f.mul(s, x);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Elem m = rows[i][c];
            for (int j = c; j < d; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(m, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

/// v minus its projection onto the RREF basis (zero at every pivot column).
inline Row reduce(const Field& f, const std::vector<Row>& basis, const std::vector<int>& pivots, Row v) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Elem m = v[pivots[i]];
        if (m == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(m, basis[i][j]));
    }
    return v;
}

inline bool is_zero_row(const Row& v) {
    return std::all_of(v.begin(), v.end(), [](Elem c) { return c == 0; });
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

inline std::uint64_t ipow(std::uint64_t b, int n) {
    std::uint64_t r = 1;
    for (int i = 0; i < n; ++i) r = saturating_mul(r, b);
    return r;
}

} // namespace detail

/// Gaussian binomial [d choose k]_q, saturating at UINT64_MAX.
inline std::uint64_t gaussian_binomial(int d, int k, std::uint64_t q) {
    if (k < 0 || k > d) return 0;
    // Product over i < k of (q^(d-i) - 1) / (q^(i+1) - 1), kept exact by
    // multiplying before dividing in 128 bits.
    unsigned __int128 num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        const std::uint64_t a = detail::ipow(q, d - i);
        const std::uint64_t b = detail::ipow(q, i + 1);
        if (a == UINT64_MAX || b == UINT64_MAX) return UINT64_MAX;
        num *= (a - 1);
        den *= (b - 1);
        // Each prefix ratio is an integer (a Gaussian binomial), so reduce.
        const unsigned __int128 g = [&] {
            unsigned __int128 x = num, y = den;
            while (y != 0) {
                const auto t = x % y;
                x = y;
                y = t;
            }
            return x;
        }();
        num /= g;
        den /= g;
        if (num > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(num / den);
}

class LinearSubspace {
public:
    LinearSubspace() = default;

    /// Zero subspace of F_q^d.
    LinearSubspace(Field f, int d) : field_(std::move(f)), d_(d) {}

    /// Row space of `rows` (any spanning set).
    LinearSubspace(Field f, int d, std::vector<Row> rows) : field_(std::move(f)), d_(d), rows_(std::move(rows)) {
        for (const auto& r : rows_)
            if (static_cast<int>(r.size()) != d_) throw DomainMismatch("row length differs from ambient dimension");
        pivots_ = detail::gauss_jordan(field_, rows_, d_);
    }

    const Field& field() const { return field_; }
    int ambient_dim() const { return d_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<Row>& basis() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool contains(const Row& v) const { return detail::is_zero_row(reduce(v)); }
    bool contains(const VectorFq& v) const { return contains(v.coords()); }
    bool contains(const LinearSubspace& o) const {
        same_space(o);
        return std::all_of(o.rows_.begin(), o.rows_.end(), [&](const Row& r) { return contains(r); });
    }
    /// Representative of v modulo this subspace: zero at every pivot column.
    Row reduce(const Row& v) const { return detail::reduce(field_, rows_, pivots_, v); }

    /// Every vector of the subspace, in lexicographic order of coefficient tuples.
    std::vector<Row> vectors() const {
        std::vector<Row> out;
        const int q = field_.order();
        const std::uint64_t total = detail::ipow(q, dim());
        if (total > kFlatEnumerationGuard) throw GuardExceeded("subspace too large to list");
        Row lam(dim(), 0);
        for (std::uint64_t n = 0; n < total; ++n) {
            std::uint64_t x = n;
            for (int i = dim() - 1; i >= 0; --i, x /= q) lam[i] = static_cast<Elem>(x % q);
            Row v(d_, 0);
            for (int i = 0; i < dim(); ++i)
                for (int j = 0; j < d_; ++j) v[j] = field_.add(v[j], field_.mul(lam[i], rows_[i][j]));
            out.push_back(std::move(v));
        }
        return out;
    }

    void same_space(const LinearSubspace& o) const {
        if (!(field_ == o.field_) || d_ != o.d_) throw DomainMismatch("subspaces of different ambient spaces");
    }

    friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
        return a.d_ == b.d_ && a.rows_ == b.rows_;
    }
    /// Dimension, then pivot pattern, then entries row-major.
    friend std::strong_ordering operator<=>(const LinearSubspace& a, const LinearSubspace& b) {
        if (auto c = a.d_ <=> b.d_; c != 0) return c;
        if (auto c = a.dim() <=> b.dim(); c != 0) return c;
        if (auto c = a.pivots_ <=> b.pivots_; c != 0) return c;
        return a.rows_ <=> b.rows_;
    }

private:
    Field field_;
    int d_ = 0;
    std::vector<Row> rows_;
    std::vector<int> pivots_;
};

/// {x : <x, u> = 0 for all u in U}, read directly off the RREF basis.
inline LinearSubspace orthogonal_complement(const LinearSubspace& u) {
    const Field& f = u.field();
    const int d = u.ambient_dim();
    std::vector<bool> is_pivot(d, false);
    for (int c : u.pivots()) is_pivot[c] = true;
    std::vector<Row> kernel;
    for (int free = 0; free < d; ++free) {
        if (is_pivot[free]) continue;
        Row x(d, 0);
        x[free] = f.one();
        for (int i = 0; i < u.dim(); ++i) x[u.pivots()[i]] = f.neg(u.basis()[i][free]);
        kernel.push_back(std::move(x));
    }
    return {f, d, std::move(kernel)};
}

inline LinearSubspace rref(const Field& f, int d, const std::vector<VectorFq>& rows) {
    std::vector<Row> raw;
    for (const auto& v : rows) {
        if (v.dim() != d || !(v.field() == f)) throw DomainMismatch("rows differ in length or field");
        raw.push_back(v.coords());
    }
    return {f, d, std::move(raw)};
}

/// Row reduction of a nonempty list; ambient taken from the first row.
inline LinearSubspace rref(const std::vector<VectorFq>& rows) {
    if (rows.empty()) throw InvalidArgument("rref needs at least one row to fix the ambient dimension");
    if (rows.front().dim() == 0) throw InvalidArgument("empty ambient dimension");
    return rref(rows.front().field(), rows.front().dim(), rows);
}

inline LinearSubspace lin_join(const LinearSubspace& u, const LinearSubspace& v) {
    u.same_space(v);
    std::vector<Row> rows = u.basis();
    rows.insert(rows.end(), v.basis().begin(), v.basis().end());
    return {u.field(), u.ambient_dim(), std::move(rows)};
}

/// Intersection as the kernel of the stacked constraint systems of U and V.
inline LinearSubspace lin_meet(const LinearSubspace& u, const LinearSubspace& v) {
    u.same_space(v);
    return orthogonal_complement(lin_join(orthogonal_complement(u), orthogonal_complement(v)));
}

enum class GeometryKind { affine, projective };

inline std::string to_string(GeometryKind k) { return k == GeometryKind::affine ? "affine" : "projective"; }

/// AG(n-1, q) or PG(n-1, q), described by its matroid rank n.
struct GeometrySpec {
    GeometryKind kind = GeometryKind::affine;
    Field field;
    int rank = 1;

    static GeometrySpec affine(Field f, int rank) { return make(GeometryKind::affine, std::move(f), rank); }
    static GeometrySpec projective(Field f, int rank) { return make(GeometryKind::projective, std::move(f), rank); }
    static GeometrySpec make(GeometryKind kind, Field f, int rank) {
        if (rank < 1) throw InvalidArgument("geometry rank must be >= 1");
        return {kind, std::move(f), rank};
    }

    /// Dimension of the coordinate vector space.
    int ambient_dim() const { return kind == GeometryKind::affine ? rank - 1 : rank; }

    friend bool operator==(const GeometrySpec& a, const GeometrySpec& b) {
        return a.kind == b.kind && a.rank == b.rank && a.field == b.field;
    }
};

class AffineFlat {
public:
    /// The empty flat of F_q^d.
    static AffineFlat empty(Field f, int d) {
        AffineFlat e;
        e.dir_ = LinearSubspace(std::move(f), d);
        return e;
    }

    /// rep + dir, canonicalized.
    static AffineFlat coset(const VectorFq& rep, LinearSubspace dir) {
        if (!(rep.field() == dir.field()) || rep.dim() != dir.ambient_dim())
            throw DomainMismatch("representative and direction from different spaces");
        AffineFlat e;
        e.nonempty_ = true;
        e.rep_ = dir.reduce(rep.coords());
        e.dir_ = std::move(dir);
        return e;
    }

    AffineFlat() = default;

    const Field& field() const { return dir_.field(); }
    int ambient_dim() const { return dir_.ambient_dim(); }
    bool is_empty() const { return !nonempty_; }
    /// Canonical representative; requires a nonempty flat.
    VectorFq rep() const {
        require_nonempty();
        return {field(), rep_};
    }
    const Row& rep_coords() const { return rep_; }
    const LinearSubspace& dir() const { return dir_; }
    /// Geometric dimension of a nonempty flat.
    int dim() const { return dir_.dim(); }

    bool contains(const Row& x) const { return nonempty_ && dir_.reduce(x) == rep_; }
    bool contains(const VectorFq& x) const { return contains(x.coords()); }
    /// this is a subset of other
    bool is_subset_of(const AffineFlat& other) const {
        same_space(other);
        if (!nonempty_) return true;
        if (!other.nonempty_) return false;
        return other.dir_.contains(dir_) && other.contains(rep_);
    }

    std::vector<Row> points() const {
        if (!nonempty_) return {};
        auto vs = dir_.vectors();
        for (auto& v : vs)
            for (int j = 0; j < ambient_dim(); ++j) v[j] = field().add(v[j], rep_[j]);
        std::sort(vs.begin(), vs.end());
        return vs;
    }

    void same_space(const AffineFlat& o) const { dir_.same_space(o.dir_); }

    friend bool operator==(const AffineFlat& a, const AffineFlat& b) {
        return a.nonempty_ == b.nonempty_ && a.dir_ == b.dir_ && a.rep_ == b.rep_;
    }
    /// Empty first, then direction, then representative.
    friend std::strong_ordering operator<=>(const AffineFlat& a, const AffineFlat& b) {
        if (auto c = a.nonempty_ <=> b.nonempty_; c != 0) return c;
        if (auto c = a.dir_ <=> b.dir_; c != 0) return c;
        return a.rep_ <=> b.rep_;
    }

private:
    void require_nonempty() const {
        if (!nonempty_) throw InvalidArgument("operation undefined on the empty flat");
    }
    bool nonempty_ = false;
    Row rep_;
    LinearSubspace dir_;
};

/// Smallest coset containing every point.
inline AffineFlat aff_closure(const std::vector<VectorFq>& points) {
    if (points.empty()) throw InvalidArgument("affine closure of an empty point set");
    const auto& p0 = points.front();
    std::vector<Row> diffs;
    for (const auto& p : points) diffs.push_back((p - p0).coords());
    return AffineFlat::coset(p0, LinearSubspace(p0.field(), p0.dim(), std::move(diffs)));
}

namespace detail {

/// Some u in U with (target - u) in V, if target lies in U + V.
inline std::optional<Row> split_in_sum(const LinearSubspace& u, const LinearSubspace& v, const Row& target) {
    const Field& f = u.field();
    const int d = u.ambient_dim();
    // Rows [basis | tag], where the tag records the U-part of each row.
    std::vector<Row> rows;
    for (const auto& r : u.basis()) {
        Row x = r;
        x.insert(x.end(), r.begin(), r.end());
        rows.push_back(std::move(x));
    }
    for (const auto& r : v.basis()) {
        Row x = r;
        x.resize(2 * d, 0);
        rows.push_back(std::move(x));
    }
    // Eliminate on the first d columns only.
    std::vector<int> pivots;
    std::size_t rk = 0;
    for (int c = 0; c < d && rk < rows.size(); ++c) {
        std::size_t sel = rk;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rk], rows[sel]);
        const Elem s = f.inv(rows[rk][c]);
        for (auto& x : rows[rk]) x = f.mul(s, x);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rk || rows[i][c] == 0) continue;
            const Elem m = rows[i][c];
            for (int j = 0; j < 2 * d; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(m, rows[rk][j]));
        }
        pivots.push_back(c);
        ++rk;
    }
    Row t = target;
    t.resize(2 * d, 0);
    Row upart(d, 0);
    for (std::size_t i = 0; i < rk; ++i) {
        const Elem m = t[pivots[i]];
        if (m == 0) continue;
        for (int j = 0; j < 2 * d; ++j) t[j] = f.sub(t[j], f.mul(m, rows[i][j]));
        for (int j = 0; j < d; ++j) upart[j] = f.add(upart[j], f.mul(m, rows[i][d + j]));
    }
    for (int j = 0; j < d; ++j)
        if (t[j] != 0) return std::nullopt;
    return upart;
}

} // namespace detail

inline AffineFlat aff_meet(const AffineFlat& e, const AffineFlat& f) {
    e.same_space(f);
    if (e.is_empty()) return e;
    if (f.is_empty()) return f;
    const Field& fld = e.field();
    Row diff(e.ambient_dim());
    for (int j = 0; j < e.ambient_dim(); ++j) diff[j] = fld.sub(f.rep_coords()[j], e.rep_coords()[j]);
    auto u = detail::split_in_sum(e.dir(), f.dir(), diff);
    if (!u) return AffineFlat::empty(fld, e.ambient_dim());
    Row x(e.ambient_dim());
    for (int j = 0; j < e.ambient_dim(); ++j) x[j] = fld.add(e.rep_coords()[j], (*u)[j]);
    return AffineFlat::coset(VectorFq(fld, std::move(x)), lin_meet(e.dir(), f.dir()));
}

inline AffineFlat aff_join(const AffineFlat& e, const AffineFlat& f) {
    e.same_space(f);
    if (e.is_empty()) return f;
    if (f.is_empty()) return e;
    std::vector<Row> rows = e.dir().basis();
    rows.insert(rows.end(), f.dir().basis().begin(), f.dir().basis().end());
    rows.push_back((f.rep() - e.rep()).coords());
    return AffineFlat::coset(e.rep(), LinearSubspace(e.field(), e.ambient_dim(), std::move(rows)));
}

// Uniform flat vocabulary shared by the affine and projective geometries.

inline int flat_rank(const AffineFlat& e) { return e.is_empty() ? 0 : e.dim() + 1; }
inline int flat_rank(const LinearSubspace& u) { return u.dim(); }

inline void check_in_geometry(const AffineFlat& e, const GeometrySpec& g) {
    if (g.kind != GeometryKind::affine || !(e.field() == g.field) || e.ambient_dim() != g.ambient_dim())
        throw DomainMismatch("flat does not belong to this affine geometry");
}
inline void check_in_geometry(const LinearSubspace& u, const GeometrySpec& g) {
    if (g.kind != GeometryKind::projective || !(u.field() == g.field) || u.ambient_dim() != g.ambient_dim())
        throw DomainMismatch("flat does not belong to this projective geometry");
}

template <class Flat>
int flat_rank(const Flat& f, const GeometrySpec& g) {
    check_in_geometry(f, g);
    return flat_rank(f);
}

inline AffineFlat meet(const AffineFlat& a, const AffineFlat& b) { return aff_meet(a, b); }
inline AffineFlat join(const AffineFlat& a, const AffineFlat& b) { return aff_join(a, b); }
inline LinearSubspace meet(const LinearSubspace& a, const LinearSubspace& b) { return lin_meet(a, b); }
inline LinearSubspace join(const LinearSubspace& a, const LinearSubspace& b) { return lin_join(a, b); }

/// inner is contained in outer
inline bool is_subflat(const AffineFlat& inner, const AffineFlat& outer) { return inner.is_subset_of(outer); }
inline bool is_subflat(const LinearSubspace& inner, const LinearSubspace& outer) { return outer.contains(inner); }

template <class Flat>
inline constexpr GeometryKind kind_of = std::is_same_v<Flat, AffineFlat> ? GeometryKind::affine
                                                                         : GeometryKind::projective;

/// Number of flats of matroid rank r in the geometry (closed form, saturating).
inline std::uint64_t count_flats(const GeometrySpec& g, int r) {
    const std::uint64_t q = g.field.order();
    const int d = g.ambient_dim();
    if (r < 0 || r > g.rank) return 0;
    if (g.kind == GeometryKind::projective) return gaussian_binomial(d, r, q);
    if (r == 0) return 1;
    return detail::saturating_mul(detail::ipow(q, d - (r - 1)), gaussian_binomial(d, r - 1, q));
}

/// Point count: (q^n - 1)/(q - 1) projective, q^(n-1) affine.
inline std::uint64_t count_points(const GeometrySpec& g) { return count_flats(g, 1); }

/// All k-dimensional subspaces of F_q^d: pivot patterns in lexicographic
/// order, then free entries row-major in lexicographic order.
inline std::vector<LinearSubspace> enumerate_subspaces(const Field& f, int d, int k) {
    if (k < 0 || k > d) throw InvalidArgument("subspace dimension out of range");
    if (gaussian_binomial(d, k, f.order()) > kFlatEnumerationGuard)
        throw GuardExceeded("more than 10^7 subspaces requested");
    std::vector<LinearSubspace> out;
    const int q = f.order();
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    while (true) {
        std::vector<bool> is_pivot(d, false);
        for (int c : piv) is_pivot[c] = true;
        std::vector<std::pair<int, int>> free;
        for (int i = 0; i < k; ++i)
            for (int j = piv[i] + 1; j < d; ++j)
                if (!is_pivot[j]) free.emplace_back(i, j);
        const std::uint64_t total = detail::ipow(q, static_cast<int>(free.size()));
        for (std::uint64_t n = 0; n < total; ++n) {
            std::vector<Row> rows(k, Row(d, 0));
            for (int i = 0; i < k; ++i) rows[i][piv[i]] = f.one();
            std::uint64_t x = n;
            for (int s = static_cast<int>(free.size()) - 1; s >= 0; --s, x /= q)
                rows[free[s].first][free[s].second] = static_cast<Elem>(x % q);
            out.emplace_back(f, d, std::move(rows));
        }
        int i = k - 1;
        while (i >= 0 && piv[i] == d - k + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

/// Cosets of U in lexicographic order of canonical representative.
inline std::vector<AffineFlat> cosets(const LinearSubspace& u) {
    const Field& f = u.field();
    const int d = u.ambient_dim();
    const int q = f.order();
    std::vector<bool> is_pivot(d, false);
    for (int c : u.pivots()) is_pivot[c] = true;
    std::vector<int> free;
    for (int j = 0; j < d; ++j)
        if (!is_pivot[j]) free.push_back(j);
    const std::uint64_t total = detail::ipow(q, static_cast<int>(free.size()));
    if (total > kFlatEnumerationGuard) throw GuardExceeded("more than 10^7 cosets requested");
    std::vector<AffineFlat> out;
    out.reserve(total);
    for (std::uint64_t n = 0; n < total; ++n) {
        Row rep(d, 0);
        std::uint64_t x = n;
        for (int s = static_cast<int>(free.size()) - 1; s >= 0; --s, x /= q) rep[free[s]] = static_cast<Elem>(x % q);
        out.push_back(AffineFlat::coset(VectorFq(f, std::move(rep)), u));
    }
    return out;
}

template <class Flat>
std::vector<Flat> enumerate_flats_of(const GeometrySpec& g, int r);

template <>
inline std::vector<LinearSubspace> enumerate_flats_of<LinearSubspace>(const GeometrySpec& g, int r) {
    if (g.kind != GeometryKind::projective) throw DomainMismatch("expected a projective geometry");
    return enumerate_subspaces(g.field, g.ambient_dim(), r);
}

template <>
inline std::vector<AffineFlat> enumerate_flats_of<AffineFlat>(const GeometrySpec& g, int r) {
    if (g.kind != GeometryKind::affine) throw DomainMismatch("expected an affine geometry");
    if (r < 0 || r > g.rank) throw InvalidArgument("rank out of range");
    if (count_flats(g, r) > kFlatEnumerationGuard) throw GuardExceeded("more than 10^7 flats requested");
    if (r == 0) return {AffineFlat::empty(g.field, g.ambient_dim())};
    std::vector<AffineFlat> out;
    for (const auto& u : enumerate_subspaces(g.field, g.ambient_dim(), r - 1)) {
        auto cs = cosets(u);
        out.insert(out.end(), std::make_move_iterator(cs.begin()), std::make_move_iterator(cs.end()));
    }
    return out;
}

/// Every vector of F_q^d in lexicographic order.
inline std::vector<VectorFq> all_vectors(const Field& f, int d) {
    const int q = f.order();
    const std::uint64_t total = detail::ipow(q, d);
    if (total > kFlatEnumerationGuard) throw GuardExceeded("vector space too large to list");
    std::vector<VectorFq> out;
    out.reserve(total);
    for (std::uint64_t n = 0; n < total; ++n) {
        Row v(d, 0);
        std::uint64_t x = n;
        for (int j = d - 1; j >= 0; --j, x /= q) v[j] = static_cast<Elem>(x % q);
        out.emplace_back(f, std::move(v));
    }
    return out;
}

/// Normalized spanning vector of each projective point of F_q^d, in lexicographic order.
inline std::vector<Row> projective_points(const Field& f, int d) {
    std::vector<Row> out;
    for (const auto& u : enumerate_subspaces(f, d, 1)) out.push_back(u.basis().front());
    std::sort(out.begin(), out.end());
    return out;
}

/// The map x -> (1 : x) applied to a nonempty affine flat of AG(n-1, q).
inline LinearSubspace projective_completion(const AffineFlat& e) {
    if (e.is_empty()) throw InvalidArgument("the empty flat has no projective completion");
    const int d = e.ambient_dim();
    const Field& f = e.field();
    std::vector<Row> rows;
    Row head(d + 1, 0);
    head[0] = f.one();
    std::copy(e.rep_coords().begin(), e.rep_coords().end(), head.begin() + 1);
    rows.push_back(std::move(head));
    for (const auto& r : e.dir().basis()) {
        Row x(d + 1, 0);
        std::copy(r.begin(), r.end(), x.begin() + 1);
        rows.push_back(std::move(x));
    }
    return {f, d + 1, std::move(rows)};
}

inline LinearSubspace projective_completion(const AffineFlat& e, const GeometrySpec& g) {
    check_in_geometry(e, g);
    return projective_completion(e);
}

/// Points of L off the hyperplane x0 = 0, as an affine flat of F_q^(d-1).
inline AffineFlat hyperplane_restriction(const LinearSubspace& l) {
    const int d = l.ambient_dim();
    if (d < 1) throw InvalidArgument("ambient dimension must be >= 1");
    const Field& f = l.field();
    if (l.dim() == 0 || l.pivots().front() != 0) return AffineFlat::empty(f, d - 1);
    Row rep(l.basis().front().begin() + 1, l.basis().front().end());
    std::vector<Row> dir;
    for (int i = 1; i < l.dim(); ++i) dir.emplace_back(l.basis()[i].begin() + 1, l.basis()[i].end());
    return AffineFlat::coset(VectorFq(f, std::move(rep)), LinearSubspace(f, d - 1, std::move(dir)));
}

inline bool parallel(const AffineFlat& e, const AffineFlat& f) {
    if (e.is_empty() || f.is_empty()) throw InvalidArgument("parallelism is undefined for the empty flat");
    e.same_space(f);
    return e.dir() == f.dir();
}

} // namespace affgeo
