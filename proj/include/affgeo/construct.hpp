#pragma once

// Desarguesian spreads, translation closure and its inverse, affine Steiner
// systems from spreads, and graph codes of affine polynomials.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affgeo/error.hpp"
#include "affgeo/family.hpp"
#include "affgeo/flatspace.hpp"
#include "affgeo/galois.hpp"

namespace affgeo {

/// The spread of F_q^n into the 1-dimensional F_{q^k}-subspaces of
/// F_{q^k}^(n/k), each read as a k-dimensional F_q-subspace through the basis
/// {1, beta, ..., beta^(k-1)} of F_{q^k}.
inline ProjectiveFamily desarguesian_spread(int n, int k, const Field& fq) {
    if (k < 1 || n < 1) throw InvalidArgument("spread needs n, k >= 1");
    if (n % k != 0) throw InvalidArgument("a spread needs k | n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    const Field big = Field::make(fq.characteristic(), fq.degree() * k);
    const Embedding emb(fq, big);
    const int blocks_dim = n / k;
    std::vector<LinearSubspace> blocks;
    for (const Row& v : projective_points(big, blocks_dim)) {
        std::vector<Row> rows;
        for (int j = 0; j < k; ++j) {
            Row r;
            r.reserve(n);
            for (Elem c : v)
                for (Elem x : emb.to_coords(big.mul(emb.basis()[j], c))) r.push_back(x);
            rows.push_back(std::move(r));
        }
        blocks.emplace_back(fq, n, std::move(rows));
    }
    return {GeometrySpec::projective(fq, n), std::move(blocks)};
}

inline ProjectiveFamily desarguesian_spread(int n, int k, int q) { return desarguesian_spread(n, k, Field::of_order(q)); }

/// All translates of all blocks: { v + U : U in B, v in V }.
inline AffineFamily translate_closure(const ProjectiveFamily& b) {
    const auto& g = b.geometry();
    std::vector<AffineFlat> out;
    for (const auto& u : b.blocks()) {
        auto cs = cosets(u);
        out.insert(out.end(), std::make_move_iterator(cs.begin()), std::make_move_iterator(cs.end()));
    }
    return {GeometrySpec::affine(g.field, g.ambient_dim() + 1), std::move(out)};
}

/// The blocks through the origin, as linear subspaces.
inline ProjectiveFamily through_zero(const AffineFamily& d) {
    const auto& g = d.geometry();
    const Row origin(g.ambient_dim(), 0);
    std::vector<LinearSubspace> out;
    for (const auto& w : d.blocks())
        if (w.contains(origin)) out.push_back(w.dir());
    return {GeometrySpec::projective(g.field, g.ambient_dim()), std::move(out)};
}

/// Affine S(2, k+1, k*l + 1): translation closure of the Desarguesian spread of F_q^(k*l).
inline AffineFamily affine_steiner(int k, int l, const Field& fq) {
    if (k < 1 || l < 1) throw InvalidArgument("affine_steiner needs k, l >= 1");
    return translate_closure(desarguesian_spread(k * l, k, fq));
}

inline AffineFamily affine_steiner(int k, int l, int q) { return affine_steiner(k, l, Field::of_order(q)); }

/// g = a + sum_i f_i X^(q^i) over F_{q^m}; g(lx + my) = l g(x) + m g(y) whenever l + m = 1.
class AffinePolynomial {
public:
    AffinePolynomial(Field big, int base_order, Elem a, std::vector<Elem> f)
        : big_(std::move(big)), q_(base_order), a_(a), f_(std::move(f)) {}

    const Field& field() const { return big_; }
    Elem constant() const { return a_; }
    const std::vector<Elem>& linear_coeffs() const { return f_; }

    Elem operator()(Elem x) const {
        Elem acc = a_, frob = x;
        for (Elem c : f_) {
            acc = big_.add(acc, big_.mul(c, frob));
            frob = big_.pow(frob, q_);
        }
        return acc;
    }

private:
    Field big_;
    int q_;
    Elem a_;
    std::vector<Elem> f_;
};

/// Every affine polynomial a + f_0 X + ... + f_(t-2) X^(q^(t-2)), in
/// lexicographic order of (a, f_0, ..., f_(t-2)).
inline std::vector<AffinePolynomial> affine_polynomials(const Field& big, int base_order, int t) {
    if (t < 1) throw InvalidArgument("t must be >= 1");
    const std::uint64_t Q = big.order();
    const std::uint64_t total = detail::ipow(Q, t);
    if (total > kFlatEnumerationGuard) throw GuardExceeded("more than 10^7 polynomials requested");
    std::vector<AffinePolynomial> out;
    out.reserve(total);
    std::vector<Elem> c(t);
    for (std::uint64_t n = 0; n < total; ++n) {
        std::uint64_t x = n;
        for (int i = t - 1; i >= 0; --i, x /= Q) c[i] = static_cast<Elem>(x % Q);
        out.emplace_back(big, base_order, c[0], std::vector<Elem>(c.begin() + 1, c.end()));
    }
    return out;
}

/// Coordinate layout of the graph code: a point (x, g(u(x))) of V = F_q^l x F_q^m,
/// where u(x) = rep(U) + sum x_i dir_i(U) and F_{q^m} carries the basis
/// {1, beta, ..., beta^(m-1)}.
struct PolyCodeLayout {
    Field fq;
    Field big;
    Embedding emb;
    int l, m;
    AffineFlat domain; // U inside F_q^m (coordinates in the basis above)

    Elem domain_point(std::span<const Elem> x) const {
        Row u = domain.rep_coords();
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < m; ++j)
                u[j] = fq.add(u[j], fq.mul(x[i], domain.dir().basis()[i][j]));
        return emb.from_coords(u);
    }

    Row graph_point(std::span<const Elem> x, const AffinePolynomial& g) const {
        Row p(x.begin(), x.end());
        const auto& y = emb.to_coords(g(domain_point(x)));
        p.insert(p.end(), y.begin(), y.end());
        return p;
    }

    AffineFlat graph(const AffinePolynomial& g) const {
        std::vector<VectorFq> pts;
        Row x(l, 0);
        pts.emplace_back(fq, graph_point(x, g));
        for (int i = 0; i < l; ++i) {
            x.assign(l, 0);
            x[i] = fq.one();
            pts.emplace_back(fq, graph_point(x, g));
        }
        return aff_closure(pts);
    }
};

inline PolyCodeLayout poly_code_layout(const Field& fq, int m, int l, int t, std::optional<AffineFlat> domain = {}) {
    if (t < 1) throw InvalidArgument("t must be >= 1");
    if (m < 1) throw InvalidArgument("m must be >= 1");
    if (l < t - 1 || l > m) throw InvalidArgument("need t - 1 <= l <= m");
    Field big = Field::make(fq.characteristic(), fq.degree() * m);
    Embedding emb(fq, big);
    if (domain) {
        if (domain->is_empty() || !(domain->field() == fq) || domain->ambient_dim() != m || domain->dim() != l)
            throw InvalidArgument("U must be an l-dimensional affine subspace of F_q^m");
    } else {
        std::vector<Row> rows;
        for (int i = 0; i < l; ++i) rows.push_back(VectorFq::unit(fq, m, i).coords());
        domain = AffineFlat::coset(VectorFq::zero(fq, m), LinearSubspace(fq, m, std::move(rows)));
    }
    return {fq, std::move(big), std::move(emb), l, m, std::move(*domain)};
}

/// The q^(mt) graphs { (x, g(x)) : x in U } of affine polynomials of degree
/// at most q^(t-2), a partial S(t, l+1, l+m+1) in AG(l+m, q).
inline AffineFamily affine_poly_code(const Field& fq, int m, int l, int t, std::optional<AffineFlat> domain = {}) {
    const auto layout = poly_code_layout(fq, m, l, t, std::move(domain));
    std::vector<AffineFlat> blocks;
    for (const auto& g : affine_polynomials(layout.big, fq.order(), t)) blocks.push_back(layout.graph(g));
    return {GeometrySpec::affine(fq, l + m + 1), std::move(blocks)};
}

inline AffineFamily affine_poly_code(int q, int m, int l, int t, std::optional<AffineFlat> domain = {}) {
    return affine_poly_code(Field::of_order(q), m, l, t, std::move(domain));
}

} // namespace affgeo
