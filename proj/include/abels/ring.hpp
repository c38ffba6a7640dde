#pragma once

// Exact elements of R = F_p[t, 1/t, 1/(t-1)] (LaurentLoc backend) and of
// Z[1/p] (ZinvP backend), kept in canonical form:
//   LaurentLoc:  value = N(t) * t^e * (t-1)^f  with N(0) != 0 and N(1) != 0
//                unless N = 0 (then e = f = 0).
//   ZinvP:       value = a / p^k with p not dividing a unless a = 0 (then k = 0).
//
// Values are immutable after canonicalization; all operations return new
// elements.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "fp.hpp"

namespace abels {

using BigInt = boost::multiprecision::cpp_int;

enum class Backend : std::uint8_t { LaurentLoc, ZinvP };

enum class Place : std::uint8_t { AtZero, AtOne, AtInfinity, Real, Padic };

inline const char* place_name(Place pl) {
    switch (pl) {
        case Place::AtZero: return "AtZero";
        case Place::AtOne: return "AtOne";
        case Place::AtInfinity: return "AtInfinity";
        case Place::Real: return "Real";
        case Place::Padic: return "Padic";
    }
    return "?";
}

struct BackendMismatch : std::runtime_error {
    explicit BackendMismatch(const std::string& w) : std::runtime_error(w) {}
};
struct ZeroDenominator : std::runtime_error {
    explicit ZeroDenominator(const std::string& w) : std::runtime_error(w) {}
};
struct NotAUnit : std::runtime_error {
    explicit NotAUnit(const std::string& w) : std::runtime_error(w) {}
};

// +infinity sentinel for valuations of zero.
inline constexpr std::int64_t kValInfinity = std::numeric_limits<std::int64_t>::max();

class RingElem {
  public:
    RingElem() = default;

    static RingElem zero(Backend b, std::uint32_t p) {
        RingElem r;
        r.backend_ = b;
        r.p_ = check_p(p);
        return r;
    }

    static RingElem one(Backend b, std::uint32_t p) {
        RingElem r = zero(b, p);
        if (b == Backend::LaurentLoc)
            r.num_ = {1};
        else
            r.a_ = 1;
        return r;
    }

    static RingElem from_int(Backend b, std::uint32_t p, std::int64_t v) {
        RingElem r = zero(b, p);
        if (b == Backend::LaurentLoc) {
            std::uint32_t c = fp::norm(v, p);
            if (c != 0) r.num_ = {c};
        } else {
            r.a_ = v;
            r.canonicalize_z();
        }
        return r;
    }

    // N(t) * t^e * (t-1)^f, canonicalized.
    static RingElem laurent(std::uint32_t p, fp::Poly num, std::int64_t e, std::int64_t f) {
        RingElem r = zero(Backend::LaurentLoc, p);
        r.num_ = std::move(num);
        for (auto& c : r.num_) c %= p;
        fp::trim(r.num_);
        r.e_ = e;
        r.f_ = f;
        r.canonicalize_l();
        return r;
    }

    // t^e * (t-1)^f (a unit of the localized ring), times a constant u.
    static RingElem monomial(std::uint32_t p, std::uint32_t u, std::int64_t e, std::int64_t f) {
        return laurent(p, fp::Poly{u % p}, e, f);
    }

    // a / p^k.
    static RingElem zinvp(std::uint32_t p, BigInt a, std::int64_t k) {
        if (k < 0) throw std::invalid_argument("zinvp: negative k");
        RingElem r = zero(Backend::ZinvP, p);
        r.a_ = std::move(a);
        r.k_ = k;
        r.canonicalize_z();
        return r;
    }

    Backend backend() const { return backend_; }
    std::uint32_t p() const { return p_; }

    bool is_zero() const {
        return backend_ == Backend::LaurentLoc ? num_.empty() : a_.is_zero();
    }
    bool is_one() const { return *this == one(backend_, p_); }

    // LaurentLoc accessors.
    const fp::Poly& num() const { return num_; }
    std::int64_t e() const { return e_; }
    std::int64_t f() const { return f_; }

    // ZinvP accessors.
    const BigInt& a() const { return a_; }
    std::int64_t k() const { return k_; }

    bool operator==(const RingElem& o) const {
        if (backend_ != o.backend_ || p_ != o.p_) return false;
        if (backend_ == Backend::LaurentLoc)
            return num_ == o.num_ && e_ == o.e_ && f_ == o.f_;
        return a_ == o.a_ && k_ == o.k_;
    }
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    RingElem operator+(const RingElem& o) const {
        require_same(o);
        if (backend_ == Backend::LaurentLoc) {
            if (is_zero()) return o;
            if (o.is_zero()) return *this;
            std::int64_t e = std::min(e_, o.e_);
            std::int64_t f = std::min(f_, o.f_);
            fp::Poly lhs = shifted_num(*this, e, f);
            fp::Poly rhs = shifted_num(o, e, f);
            return laurent(p_, fp::add(lhs, rhs, p_), e, f);
        }
        std::int64_t k = std::max(k_, o.k_);
        BigInt a = a_ * pow_p(k - k_) + o.a_ * pow_p(k - o.k_);
        return zinvp(p_, a, k);
    }

    RingElem operator-() const {
        RingElem r(*this);
        if (backend_ == Backend::LaurentLoc)
            r.num_ = fp::neg(num_, p_);
        else
            r.a_ = -a_;
        return r;
    }

    RingElem operator-(const RingElem& o) const { return *this + (-o); }

    RingElem operator*(const RingElem& o) const {
        require_same(o);
        if (backend_ == Backend::LaurentLoc) {
            if (is_zero() || o.is_zero()) return zero(backend_, p_);
            return laurent(p_, fp::mul(num_, o.num_, p_), e_ + o.e_, f_ + o.f_);
        }
        return zinvp(p_, a_ * o.a_, k_ + o.k_);
    }

    RingElem scaled(std::int64_t c) const {
        if (backend_ == Backend::LaurentLoc) {
            RingElem r(*this);
            r.num_ = fp::scale(num_, fp::norm(c, p_), p_);
            r.canonicalize_l();
            return r;
        }
        return zinvp(p_, a_ * c, k_);
    }

    // Units of F_p[t,1/t,1/(t-1)] are u * t^e * (t-1)^f; of Z[1/p], ±p^(-k)... (signed p powers).
    bool is_unit() const {
        if (is_zero()) return false;
        if (backend_ == Backend::LaurentLoc) return num_.size() == 1;
        return abs(a_) == 1 || is_p_power(abs(a_));
    }

    struct UnitParts {
        std::uint32_t u;   // in F_p^x (LaurentLoc); sign as 1 or p-1 is not used for ZinvP
        std::int64_t e;    // exponent of t (LaurentLoc) or of p (ZinvP)
        std::int64_t f;    // exponent of (t-1); 0 for ZinvP
        bool negative = false;  // ZinvP sign
    };

    UnitParts unit_decompose() const {
        if (!is_unit()) throw NotAUnit("unit_decompose on non-unit");
        if (backend_ == Backend::LaurentLoc) return {num_[0], e_, f_, false};
        UnitParts up;
        up.negative = a_ < 0;
        up.u = 1;
        up.f = 0;
        BigInt m = abs(a_);
        std::int64_t v = 0;
        while (m % p_ == 0) {
            m /= p_;
            ++v;
        }
        up.e = v - k_;
        return up;
    }

    RingElem inv_unit() const {
        if (!is_unit()) throw NotAUnit("inv_unit on non-unit");
        if (backend_ == Backend::LaurentLoc)
            return monomial(p_, fp::inv(num_[0], p_), -e_, -f_);
        UnitParts up = unit_decompose();
        std::int64_t e = -up.e;
        RingElem r = zero(Backend::ZinvP, p_);
        if (e >= 0) {
            r.a_ = pow_p(e);
            r.k_ = 0;
        } else {
            r.a_ = 1;
            r.k_ = -e;
        }
        if (up.negative) r.a_ = -r.a_;
        return r;
    }

    // Divide by a unit (the only division the localized rings support).
    RingElem div_unit(const RingElem& d) const {
        if (d.is_zero()) throw ZeroDenominator("division by zero");
        return *this * d.inv_unit();
    }

    std::int64_t valuation(Place pl) const {
        if (is_zero()) return kValInfinity;
        if (backend_ == Backend::LaurentLoc) {
            switch (pl) {
                case Place::AtZero: return e_;
                case Place::AtOne: return f_;
                case Place::AtInfinity: return -e_ - f_ - fp::degree(num_);
                default: throw BackendMismatch("archimedean place on LaurentLoc");
            }
        }
        switch (pl) {
            case Place::Padic: {
                BigInt m = abs(a_);
                std::int64_t v = 0;
                while (m % p_ == 0) {
                    m /= p_;
                    ++v;
                }
                return v - k_;
            }
            case Place::Real:
                // ceil(log_p |a/p^k|), from exact integer arithmetic.
                return ceil_log_p(abs(a_)) - k_;
            default: throw BackendMismatch("ultrametric place on ZinvP");
        }
    }

    // Entry length: digits (base p) needed at the worst place; 0 for 0 and units of F_p.
    std::int64_t length() const {
        if (is_zero()) return 0;
        if (backend_ == Backend::LaurentLoc) {
            std::int64_t l = 0;
            l = std::max(l, -valuation(Place::AtZero));
            l = std::max(l, -valuation(Place::AtOne));
            l = std::max(l, -valuation(Place::AtInfinity));
            return l;
        }
        // Real place measures log-size directly; Padic place as -valuation.
        std::int64_t l = 0;
        l = std::max(l, valuation(Place::Real));
        l = std::max(l, -valuation(Place::Padic));
        return l;
    }

    // Partial fractions of a LaurentLoc element:
    //   x = poly part (powers t^a, a>=0)
    //     + principal part at zero (powers t^-a, a>=1)
    //     + principal part at one (powers (t-1)^-b, b>=1).
    struct PartialFractions {
        std::map<std::int64_t, std::uint32_t> poly;     // a >= 0 -> coeff
        std::map<std::int64_t, std::uint32_t> at_zero;  // a >= 1 -> coeff of t^-a
        std::map<std::int64_t, std::uint32_t> at_one;   // b >= 1 -> coeff of (t-1)^-b
    };

    PartialFractions partial_fractions() const {
        if (backend_ != Backend::LaurentLoc)
            throw BackendMismatch("partial_fractions needs LaurentLoc");
        PartialFractions out;
        if (is_zero()) return out;
        std::int64_t A = std::max<std::int64_t>(0, -e_);
        std::int64_t B = std::max<std::int64_t>(0, -f_);
        fp::Poly M = num_;
        if (e_ > 0) M = fp::mul(M, fp::t_pow(e_, p_), p_);
        if (f_ > 0) M = fp::mul(M, fp::t_minus_one_pow(f_, p_), p_);
        // x = M / (t^A (t-1)^B)
        fp::Poly tA = fp::t_pow(A, p_);
        fp::Poly sB = fp::t_minus_one_pow(B, p_);
        // Bezout: u*t^A + v*(t-1)^B = 1  (coprime).
        fp::Poly R1, R2;
        if (A == 0 && B == 0) {
            for (std::size_t i = 0; i < M.size(); ++i)
                if (M[i]) out.poly[static_cast<std::int64_t>(i)] = M[i];
            return out;
        }
        if (A == 0) {
            auto [q, r] = fp::divmod(M, sB, p_);
            for (std::size_t i = 0; i < q.size(); ++i)
                if (q[i]) out.poly[static_cast<std::int64_t>(i)] = q[i];
            R2 = r;
            emit_at_one(R2, B, out);
            return out;
        }
        if (B == 0) {
            auto [q, r] = fp::divmod(M, tA, p_);
            for (std::size_t i = 0; i < q.size(); ++i)
                if (q[i]) out.poly[static_cast<std::int64_t>(i)] = q[i];
            R1 = r;
            for (std::size_t i = 0; i < R1.size(); ++i)
                if (R1[i]) out.at_zero[A - static_cast<std::int64_t>(i)] = R1[i];
            return out;
        }
        fp::Poly g, u, v;
        fp::ext_gcd(tA, sB, g, u, v, p_);
        // M/(tA*sB) = M*v/tA + M*u/sB
        fp::Poly Mv = fp::mul(M, v, p_);
        fp::Poly Mu = fp::mul(M, u, p_);
        auto [q1, r1] = fp::divmod(Mv, tA, p_);
        auto [q2, r2] = fp::divmod(Mu, sB, p_);
        fp::Poly q = fp::add(q1, q2, p_);
        for (std::size_t i = 0; i < q.size(); ++i)
            if (q[i]) out.poly[static_cast<std::int64_t>(i)] = q[i];
        for (std::size_t i = 0; i < r1.size(); ++i)
            if (r1[i]) out.at_zero[A - static_cast<std::int64_t>(i)] = r1[i];
        emit_at_one(r2, B, out);
        return out;
    }

    static RingElem from_partial_fractions(std::uint32_t p, const PartialFractions& pf) {
        RingElem acc = zero(Backend::LaurentLoc, p);
        for (auto [a, c] : pf.poly) acc = acc + monomial(p, c, a, 0);
        for (auto [a, c] : pf.at_zero) acc = acc + monomial(p, c, -a, 0);
        for (auto [b, c] : pf.at_one) acc = acc + monomial(p, c, 0, -b);
        return acc;
    }

  private:
    static std::uint32_t check_p(std::uint32_t p) {
        if (!is_prime_u32(p)) throw std::invalid_argument("p must be prime");
        return p;
    }

    void require_same(const RingElem& o) const {
        if (backend_ != o.backend_ || p_ != o.p_)
            throw BackendMismatch("mixed ring backends/characteristics");
    }

    BigInt pow_p(std::int64_t k) const {
        BigInt r = 1;
        for (std::int64_t i = 0; i < k; ++i) r *= p_;
        return r;
    }

    bool is_p_power(BigInt m) const {
        if (m.is_zero()) return false;
        while (m % p_ == 0) m /= p_;
        return m == 1;
    }

    std::int64_t ceil_log_p(const BigInt& m) const {
        // smallest s with p^s >= m; m >= 1.
        if (m <= 1) return 0;
        BigInt acc = 1;
        std::int64_t s = 0;
        while (acc < m) {
            acc *= p_;
            ++s;
        }
        return s;
    }

    // num * t^(e-te) * (t-1)^(f-tf) as a plain polynomial (te <= e, tf <= f).
    static fp::Poly shifted_num(const RingElem& x, std::int64_t te, std::int64_t tf) {
        fp::Poly r = x.num_;
        if (x.e_ > te) r = fp::mul(r, fp::t_pow(x.e_ - te, x.p_), x.p_);
        if (x.f_ > tf) r = fp::mul(r, fp::t_minus_one_pow(x.f_ - tf, x.p_), x.p_);
        return r;
    }

    void emit_at_one(const fp::Poly& r2, std::int64_t B, PartialFractions& out) const {
        // r2/(t-1)^B with deg r2 < B: rewrite r2 in powers of (t-1) by
        // repeated division, r = c + (t-1) r'.
        fp::Poly r = r2;
        for (std::int64_t j = 0; j < B && !fp::is_zero(r); ++j) {
            std::uint32_t c = fp::eval(r, 1, p_);  // coefficient of (t-1)^j
            if (c) out.at_one[B - j] = c;
            r = fp::sub(r, fp::Poly{c}, p_);
            if (!fp::is_zero(r)) r = fp::div_by_root(r, 1, p_);
        }
    }

    void canonicalize_l() {
        fp::trim(num_);
        if (num_.empty()) {
            e_ = 0;
            f_ = 0;
            return;
        }
        std::size_t sh = 0;
        while (sh < num_.size() && num_[sh] == 0) ++sh;
        if (sh) {
            num_.erase(num_.begin(), num_.begin() + static_cast<std::ptrdiff_t>(sh));
            e_ += static_cast<std::int64_t>(sh);
        }
        while (!num_.empty() && fp::eval(num_, 1, p_) == 0) {
            num_ = fp::div_by_root(num_, 1, p_);
            ++f_;
        }
        fp::check_cap(num_.empty() ? 0 : num_.size() - 1);
    }

    void canonicalize_z() {
        if (a_.is_zero()) {
            k_ = 0;
            return;
        }
        while (k_ > 0 && a_ % p_ == 0) {
            a_ /= p_;
            --k_;
        }
    }

    Backend backend_ = Backend::LaurentLoc;
    std::uint32_t p_ = 2;
    fp::Poly num_;          // LaurentLoc numerator
    std::int64_t e_ = 0;    // exponent of t
    std::int64_t f_ = 0;    // exponent of (t-1)
    BigInt a_;              // ZinvP numerator
    std::int64_t k_ = 0;    // ZinvP: value a / p^k
};

}  // namespace abels
