#pragma once

// Arithmetic mod a small prime p, and dense polynomial helpers over F_p.
// Coefficient vectors are ascending by degree and always trimmed.

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace abels {

struct DegreeCapExceeded : std::runtime_error {
    explicit DegreeCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Hard cap on numerator degrees to catch runaway computations. Exceeding it
// throws; it never truncates silently.
inline std::atomic<std::int64_t>& degree_cap() {
    static std::atomic<std::int64_t> cap{4096};
    return cap;
}

inline void set_degree_cap(std::int64_t cap) { degree_cap().store(cap); }

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace fp {

inline std::uint32_t norm(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return (a + b) % p; }
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return (a + p - b) % p; }
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}
inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

inline std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
    if (a == 0) throw std::domain_error("fp::inv of zero");
    // extended Euclid
    std::int64_t t = 0, newt = 1, r = p, newr = a;
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    return norm(t, p);
}

using Poly = std::vector<std::uint32_t>;  // ascending coefficients, trimmed

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline bool is_zero(const Poly& a) { return a.empty(); }

inline std::int64_t degree(const Poly& a) { return static_cast<std::int64_t>(a.size()) - 1; }

inline void check_cap(std::size_t deg) {
    if (static_cast<std::int64_t>(deg) > degree_cap().load())
        throw DegreeCapExceeded("polynomial degree " + std::to_string(deg) + " exceeds cap");
}

inline Poly add(const Poly& a, const Poly& b, std::uint32_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint32_t v = 0;
        if (i < a.size()) v = add(v, a[i], p);
        if (i < b.size()) v = add(v, b[i], p);
        r[i] = v;
    }
    trim(r);
    return r;
}

inline Poly sub(const Poly& a, const Poly& b, std::uint32_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint32_t v = i < a.size() ? a[i] : 0;
        std::uint32_t w = i < b.size() ? b[i] : 0;
        r[i] = sub(v, w, p);
    }
    trim(r);
    return r;
}

inline Poly neg(const Poly& a, std::uint32_t p) {
    Poly r(a);
    for (auto& c : r) c = neg(c, p);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    check_cap(a.size() + b.size() - 2);
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = add(r[i + j], mul(a[i], b[j], p), p);
    }
    trim(r);
    return r;
}

inline Poly scale(const Poly& a, std::uint32_t c, std::uint32_t p) {
    Poly r(a);
    for (auto& x : r) x = mul(x, c, p);
    trim(r);
    return r;
}

inline std::uint32_t eval(const Poly& a, std::uint32_t x, std::uint32_t p) {
    std::uint32_t r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = add(mul(r, x, p), a[i], p);
    return r;
}

// Exact division by (t - root); remainder must vanish.
inline Poly div_by_root(const Poly& a, std::uint32_t root, std::uint32_t p) {
    if (a.empty()) return {};
    Poly q(a.size() - 1, 0);
    std::uint32_t carry = 0;  // running Horner value
    for (std::size_t i = a.size(); i-- > 1;) {
        carry = add(mul(carry, root, p), a[i], p);
        q[i - 1] = carry;
    }
    std::uint32_t rem = add(mul(carry, root, p), a[0], p);
    if (rem != 0) throw std::domain_error("div_by_root: division not exact");
    trim(q);
    return q;
}

// Euclidean division a = q*b + r with deg r < deg b.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, std::uint32_t p) {
    if (b.empty()) throw std::domain_error("divmod by zero polynomial");
    Poly q;
    std::uint32_t lead_inv = inv(b.back(), p);
    while (a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        std::uint32_t c = mul(a.back(), lead_inv, p);
        if (q.size() < shift + 1) q.resize(shift + 1, 0);
        q[shift] = add(q[shift], c, p);
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = sub(a[shift + i], mul(c, b[i], p), p);
        trim(a);
        if (a.empty()) break;
    }
    trim(q);
    return {q, a};
}

// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic.
inline void ext_gcd(const Poly& a, const Poly& b, Poly& g, Poly& u, Poly& v, std::uint32_t p) {
    Poly r0 = a, r1 = b;
    Poly s0 = {1}, s1 = {};
    Poly t0 = {}, t1 = {1};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1, p);
        Poly s = sub(s0, mul(q, s1, p), p);
        Poly t = sub(t0, mul(q, t1, p), p);
        r0 = r1; r1 = r;
        s0 = s1; s1 = s;
        t0 = t1; t1 = t;
    }
    g = r0; u = s0; v = t0;
    if (!g.empty() && g.back() != 1) {
        std::uint32_t c = inv(g.back(), p);
        g = scale(g, c, p);
        u = scale(u, c, p);
        v = scale(v, c, p);
    }
}

// (t - 1)^k as a polynomial.
inline Poly t_minus_one_pow(std::int64_t k, std::uint32_t p) {
    Poly r = {1};
    Poly base = {neg(1u, p), 1};  // -1 + t
    for (std::int64_t i = 0; i < k; ++i) r = mul(r, base, p);
    return r;
}

// t^k as a polynomial.
inline Poly t_pow(std::int64_t k, std::uint32_t p) {
    (void)p;
    Poly r(static_cast<std::size_t>(k) + 1, 0);
    r.back() = 1;
    return r;
}

}  // namespace fp
}  // namespace abels
