#pragma once

// Exact arithmetic in small finite fields F_{p^e}.
//
// Elements are stored as a compact code: the base-p number whose digits are
// the polynomial-basis coordinates, constant coefficient first (most
// significant). Comparing codes therefore compares digit strings
// lexicographically, which is the element order used everywhere in affgeo.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "affgeo/error.hpp"

namespace affgeo {

using Elem = std::uint16_t;

/// Largest supported field order p^e.
inline constexpr int kMaxFieldOrder = 1024;

/// Version tag of the built-in modulus table (least monic irreducible per (p, e)).
inline constexpr int kModulusTableVersion = 1;

namespace detail {

using Poly = std::vector<int>; // coefficients mod p, constant term first

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int mod_inverse(int a, int p) {
    int r = 1;
    for (int b = a % p, n = p - 2; n > 0; n >>= 1, b = b * b % p)
        if (n & 1) r = r * b % p;
    return r;
}

/// Remainder of `f` modulo nonzero `g` over F_p.
inline Poly poly_rem(Poly f, Poly g, int p) {
    poly_trim(f);
    poly_trim(g);
    const int inv_lead = mod_inverse(g.back(), p);
    while (f.size() >= g.size()) {
        const int c = f.back() * inv_lead % p;
        const std::size_t shift = f.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i)
            f[shift + i] = ((f[shift + i] - c * g[i]) % p + p) % p;
        poly_trim(f);
    }
    return f;
}

/// Trial division by every monic polynomial of degree 1 .. deg(f)-1.
inline bool is_irreducible(const Poly& f, int p) {
    const int e = static_cast<int>(f.size()) - 1;
    for (int d = 1; d < e; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long n = 0; n < count; ++n) {
            Poly g(d + 1);
            long long x = n;
            for (int i = 0; i < d; ++i, x /= p) g[i] = static_cast<int>(x % p);
            g[d] = 1;
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

/// Least monic irreducible of degree e, ordered by the integer sum c_i p^i.
inline Poly least_irreducible(int p, int e) {
    long long count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (long long n = 0; n < count; ++n) {
        Poly f(e + 1);
        long long x = n;
        for (int i = 0; i < e; ++i, x /= p) f[i] = static_cast<int>(x % p);
        f[e] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw Error("no irreducible polynomial found"); // unreachable for prime p
}

struct FieldTables {
    int p = 0;
    int e = 0;
    int q = 0;
    Poly modulus;
    std::vector<Elem> add;
    std::vector<Elem> mul;
    std::vector<Elem> neg;
    std::vector<Elem> inv;

    std::vector<int> digits(Elem code) const {
        std::vector<int> d(e);
        for (int i = e - 1; i >= 0; --i, code /= p) d[i] = code % p;
        return d;
    }

    Elem encode(std::span<const int> d) const {
        int code = 0;
        for (int i = 0; i < e; ++i) code = code * p + d[i];
        return static_cast<Elem>(code);
    }

    // Schoolbook product followed by reduction modulo the monic modulus.
    Elem schoolbook_mul(Elem a, Elem b) const {
        const auto da = digits(a);
        const auto db = digits(b);
        Poly prod(2 * e - 1, 0);
        for (int i = 0; i < e; ++i)
            for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        for (int deg = 2 * e - 2; deg >= e; --deg) {
            const int c = prod[deg];
            if (c == 0) continue;
            for (int i = 0; i <= e; ++i)
                prod[deg - e + i] = ((prod[deg - e + i] - c * modulus[i]) % p + p) % p;
        }
        prod.resize(e);
        return encode(prod);
    }

    FieldTables(int p_, int e_, Poly mod) : p(p_), e(e_), modulus(std::move(mod)) {
        q = 1;
        for (int i = 0; i < e; ++i) q *= p;
        add.resize(static_cast<std::size_t>(q) * q);
        mul.resize(static_cast<std::size_t>(q) * q);
        neg.resize(q);
        inv.resize(q, 0);
        std::vector<int> da, db, dc(e);
        for (int a = 0; a < q; ++a) {
            da = digits(static_cast<Elem>(a));
            for (int i = 0; i < e; ++i) dc[i] = (p - da[i]) % p;
            neg[a] = encode(dc);
            for (int b = 0; b < q; ++b) {
                db = digits(static_cast<Elem>(b));
                for (int i = 0; i < e; ++i) dc[i] = (da[i] + db[i]) % p;
                add[a * q + b] = encode(dc);
                mul[a * q + b] = b < a ? mul[b * q + a]
                                       : schoolbook_mul(static_cast<Elem>(a), static_cast<Elem>(b));
            }
        }
        const Elem one = one_code();
        for (int a = 1; a < q; ++a)
            for (int b = 1; b < q; ++b)
                if (mul[a * q + b] == one) {
                    inv[a] = static_cast<Elem>(b);
                    break;
                }
    }

    Elem one_code() const {
        int c = 1;
        for (int i = 1; i < e; ++i) c *= p;
        return static_cast<Elem>(c);
    }
};

} // namespace detail

/// Handle to an immutable field F_{p^e}; cheap to copy.
class Field {
public:
    Field() = default;

    /// Field of order p^e with the built-in modulus. Equal (p, e) share one instance.
    static Field make(int p, int e) {
        if (!detail::is_prime(p)) throw InvalidArgument("p not prime: " + std::to_string(p));
        if (e < 1) throw InvalidArgument("extension degree must be >= 1");
        long long q = 1;
        for (int i = 0; i < e; ++i) {
            q *= p;
            if (q > kMaxFieldOrder)
                throw InvalidArgument("field order " + std::to_string(p) + "^" + std::to_string(e) +
                                      " exceeds limit " + std::to_string(kMaxFieldOrder));
        }
        static std::mutex mu;
        static std::map<std::pair<int, int>, std::shared_ptr<const detail::FieldTables>> cache;
        std::lock_guard lock(mu);
        auto& slot = cache[{p, e}];
        if (!slot) slot = std::make_shared<const detail::FieldTables>(p, e, detail::least_irreducible(p, e));
        return Field(slot);
    }

    /// Field of the given prime-power order.
    static Field of_order(int q) {
        if (q < 2) throw InvalidArgument("field order must be >= 2");
        int p = 2;
        while (q % p != 0) ++p;
        int e = 0;
        for (int r = q; r > 1; r /= p) {
            if (r % p != 0) throw InvalidArgument("not a prime power: " + std::to_string(q));
            ++e;
        }
        return make(p, e);
    }

    bool valid() const { return t_ != nullptr; }
    int characteristic() const { return t_->p; }
    int degree() const { return t_->e; }
    int order() const { return t_->q; }
    /// Monic modulus, constant term first (e + 1 residues).
    const std::vector<int>& modulus() const { return t_->modulus; }

    Elem zero() const { return 0; }
    Elem one() const { return t_->one_code(); }

    Elem add(Elem a, Elem b) const { return t_->add[a * t_->q + b]; }
    Elem neg(Elem a) const { return t_->neg[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const { return t_->mul[a * t_->q + b]; }
    Elem inv(Elem a) const {
        if (a == 0) throw InvalidArgument("inversion of zero");
        return t_->inv[a];
    }
    Elem pow(Elem a, long long n) const {
        if (n < 0) {
            a = inv(a);
            n = -n;
        }
        Elem r = one();
        for (; n > 0; n >>= 1, a = mul(a, a))
            if (n & 1) r = mul(r, a);
        return r;
    }

    /// Embedding of the prime-field residue c (0 <= c < p).
    Elem from_int(long long c) const {
        const int p = t_->p;
        std::vector<int> d(t_->e, 0);
        d[0] = static_cast<int>(((c % p) + p) % p);
        return t_->encode(d);
    }

    std::vector<int> digits(Elem a) const { return t_->digits(a); }
    Elem from_digits(std::span<const int> d) const {
        if (static_cast<int>(d.size()) != t_->e) throw InvalidArgument("wrong number of coordinates");
        for (int x : d)
            if (x < 0 || x >= t_->p) throw InvalidArgument("coordinate out of range");
        return t_->encode(d);
    }

    /// e base-p digits, constant coefficient first; digits above 9 use a-z.
    std::string to_string(Elem a) const {
        std::string s;
        for (int d : digits(a)) s.push_back(static_cast<char>(d < 10 ? '0' + d : 'a' + d - 10));
        return s;
    }

    Elem parse(std::string_view s) const {
        if (static_cast<int>(s.size()) != t_->e)
            throw ParseError("element '" + std::string(s) + "' must have " + std::to_string(t_->e) + " digits");
        std::vector<int> d;
        for (char c : s) {
            int v = -1;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'z') v = c - 'a' + 10;
            if (v < 0 || v >= t_->p) throw ParseError("bad digit in element '" + std::string(s) + "'");
            d.push_back(v);
        }
        return t_->encode(d);
    }

    /// All elements in lexicographic order of their coordinates.
    std::vector<Elem> elements() const {
        std::vector<Elem> out(t_->q);
        for (int i = 0; i < t_->q; ++i) out[i] = static_cast<Elem>(i);
        return out;
    }

    /// Multiplicative order of a nonzero element.
    int multiplicative_order(Elem a) const {
        if (a == 0) throw InvalidArgument("zero has no multiplicative order");
        int n = 1;
        for (Elem x = a; x != one(); x = mul(x, a)) ++n;
        return n;
    }

    /// Least (by code) element generating the multiplicative group.
    Elem primitive_element() const {
        for (int a = 1; a < t_->q; ++a)
            if (multiplicative_order(static_cast<Elem>(a)) == t_->q - 1) return static_cast<Elem>(a);
        throw Error("no primitive element"); // unreachable
    }

    friend bool operator==(const Field& a, const Field& b) {
        if (a.t_ == b.t_) return true;
        if (!a.t_ || !b.t_) return false;
        return a.t_->p == b.t_->p && a.t_->e == b.t_->e && a.t_->modulus == b.t_->modulus;
    }

private:
    explicit Field(std::shared_ptr<const detail::FieldTables> t) : t_(std::move(t)) {}
    std::shared_ptr<const detail::FieldTables> t_;
};

/// Spec-style factory: F_{p^e}.
inline Field field_new(int p, int e) { return Field::make(p, e); }

/// An element bound to its field, with checked arithmetic.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(Field f, Elem code) : field_(std::move(f)), code_(code) {
        if (code_ >= field_.order()) throw InvalidArgument("element code out of range");
    }

    static FieldElem from_digits(const Field& f, std::span<const int> d) { return {f, f.from_digits(d)}; }

    const Field& field() const { return field_; }
    Elem code() const { return code_; }
    std::vector<int> coeffs() const { return field_.digits(code_); }
    bool is_zero() const { return code_ == 0; }

    FieldElem operator+(const FieldElem& o) const { return {field_, checked(o).add(code_, o.code_)}; }
    FieldElem operator-(const FieldElem& o) const { return {field_, checked(o).sub(code_, o.code_)}; }
    FieldElem operator*(const FieldElem& o) const { return {field_, checked(o).mul(code_, o.code_)}; }
    FieldElem operator-() const { return {field_, field_.neg(code_)}; }
    FieldElem inv() const { return {field_, field_.inv(code_)}; }
    FieldElem pow(long long n) const { return {field_, field_.pow(code_, n)}; }

    std::string to_string() const { return field_.to_string(code_); }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return a.code_ == b.code_ && a.field_ == b.field_;
    }
    friend std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << x.to_string(); }

private:
    const Field& checked(const FieldElem& o) const {
        if (!(field_ == o.field_)) throw DomainMismatch("operands belong to different fields");
        return field_;
    }

    Field field_;
    Elem code_ = 0;
};

enum class ArithOp { add, neg, mul, inv, pow };

/// Single dispatch entry point; `b` is ignored for neg/inv and is the exponent for pow.
inline FieldElem arith(ArithOp op, const FieldElem& a, const FieldElem& b) {
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::mul: return a * b;
    case ArithOp::neg: return -a;
    case ArithOp::inv: return a.inv();
    case ArithOp::pow: break;
    }
    throw InvalidArgument("pow takes an integer exponent");
}
inline FieldElem arith(ArithOp op, const FieldElem& a, long long n) {
    if (op != ArithOp::pow) throw InvalidArgument("integer operand only valid for pow");
    return a.pow(n);
}

inline std::vector<FieldElem> elements(const Field& f) {
    std::vector<FieldElem> out;
    out.reserve(f.order());
    for (Elem c : f.elements()) out.emplace_back(f, c);
    return out;
}

/// Ring embedding F_q -> F_{q^m} together with the F_q-coordinate view of F_{q^m}
/// in the basis {1, beta, ..., beta^(m-1)}.
class Embedding {
public:
    Embedding(Field sub, Field sup) : sub_(std::move(sub)), sup_(std::move(sup)) {
        if (sub_.characteristic() != sup_.characteristic())
            throw InvalidArgument("incompatible characteristic");
        if (sup_.degree() % sub_.degree() != 0)
            throw InvalidArgument(std::to_string(sub_.degree()) + " \xe2\x88\xa4 " + std::to_string(sup_.degree()));
        m_ = sup_.degree() / sub_.degree();

        // Send X to the least root of sub's modulus in sup.
        const auto& mod = sub_.modulus();
        Elem root = 0;
        bool found = false;
        for (Elem r : sup_.elements()) {
            if (eval_in_sup(mod, r) == 0) {
                root = r;
                found = true;
                break;
            }
        }
        if (!found) throw Error("modulus has no root in extension"); // unreachable
        image_.resize(sub_.order());
        for (Elem a : sub_.elements()) {
            const auto d = sub_.digits(a);
            std::vector<int> coeffs(d.begin(), d.end());
            Elem acc = 0, power = sup_.one();
            for (int c : coeffs) {
                acc = sup_.add(acc, sup_.mul(sup_.from_int(c), power));
                power = sup_.mul(power, root);
            }
            image_[a] = acc;
        }

        beta_ = sup_.primitive_element();
        basis_.resize(m_);
        Elem pw = sup_.one();
        for (int j = 0; j < m_; ++j, pw = sup_.mul(pw, beta_)) basis_[j] = pw;

        coords_.assign(sup_.order(), {});
        const int q = sub_.order();
        std::vector<Elem> lam(m_, 0);
        long long total = 1;
        for (int j = 0; j < m_; ++j) total *= q;
        for (long long n = 0; n < total; ++n) {
            long long x = n;
            for (int j = m_ - 1; j >= 0; --j, x /= q) lam[j] = static_cast<Elem>(x % q);
            coords_[from_coords(lam)] = lam;
        }
    }

    const Field& sub() const { return sub_; }
    const Field& sup() const { return sup_; }
    int relative_degree() const { return m_; }
    Elem beta() const { return beta_; }
    const std::vector<Elem>& basis() const { return basis_; }

    Elem operator()(Elem a) const { return image_.at(a); }
    FieldElem operator()(const FieldElem& a) const {
        if (!(a.field() == sub_)) throw DomainMismatch("element not in subfield");
        return {sup_, image_[a.code()]};
    }

    /// Coordinates of x in the basis {1, beta, ..., beta^(m-1)}, as sub elements.
    const std::vector<Elem>& to_coords(Elem x) const { return coords_.at(x); }
    Elem from_coords(std::span<const Elem> lam) const {
        if (static_cast<int>(lam.size()) != m_) throw InvalidArgument("wrong coordinate count");
        Elem acc = 0;
        for (int j = 0; j < m_; ++j) acc = sup_.add(acc, sup_.mul(image_[lam[j]], basis_[j]));
        return acc;
    }

private:
    Elem eval_in_sup(const std::vector<int>& poly, Elem x) const {
        Elem acc = 0;
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = sup_.add(sup_.mul(acc, x), sup_.from_int(*it));
        return acc;
    }

    Field sub_, sup_;
    int m_ = 1;
    std::vector<Elem> image_;
    Elem beta_ = 0;
    std::vector<Elem> basis_;
    std::vector<std::vector<Elem>> coords_;
};

inline Embedding embed(const Field& sub, const Field& sup) { return {sub, sup}; }

} // namespace affgeo
