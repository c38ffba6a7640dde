#pragma once

// Abels' group A4(R): upper-triangular 4x4 matrices
//
//   [ 1  x12 x13 x14 ]
//   [ 0  u2  x23 x24 ]
//   [ 0  0   u3  x34 ]
//   [ 0  0   0   1   ]
//
// with x_ij in R and u2, u3 units. Diagonal units are stored as exponent
// pairs: u = t^e (t-1)^f for LaurentLoc, u = p^e for ZinvP (f unused).
// The finite torsion factor F_p^x of the unit group is dropped.
//
// Flavor PowersOfT forces f = 0 on the diagonal (the subgroup with diagonal
// (1, t^n2, t^n3, 1)); FullUnits allows both exponents.

#include <array>
#include <cstdint>

#include "ring.hpp"

namespace abels {

enum class Flavor : std::uint8_t { PowersOfT, FullUnits };

struct FlavorMismatch : std::runtime_error {
    explicit FlavorMismatch(const std::string& w) : std::runtime_error(w) {}
};
struct NotCentral : std::runtime_error {
    explicit NotCentral(const std::string& w) : std::runtime_error(w) {}
};

struct DiagExp {
    std::int64_t e = 0;
    std::int64_t f = 0;
    bool operator==(const DiagExp&) const = default;
    DiagExp operator+(const DiagExp& o) const { return {e + o.e, f + o.f}; }
    DiagExp operator-() const { return {-e, -f}; }
};

class AbelsElem {
  public:
    AbelsElem() = default;

    static AbelsElem identity(Backend b, std::uint32_t p, Flavor fl) {
        AbelsElem g;
        g.backend_ = b;
        g.p_ = p;
        g.flavor_ = fl;
        RingElem z = RingElem::zero(b, p);
        g.x12_ = g.x13_ = g.x14_ = g.x23_ = g.x24_ = g.x34_ = z;
        return g;
    }

    static AbelsElem elementary(Backend b, std::uint32_t p, Flavor fl, int i, int j,
                                const RingElem& x) {
        AbelsElem g = identity(b, p, fl);
        g.entry(i, j) = x;
        return g;
    }

    static AbelsElem diagonal(Backend b, std::uint32_t p, Flavor fl, DiagExp d2, DiagExp d3) {
        AbelsElem g = identity(b, p, fl);
        if (fl == Flavor::PowersOfT && (d2.f != 0 || d3.f != 0))
            throw FlavorMismatch("(t-1) exponents need FullUnits");
        if (b == Backend::ZinvP && (d2.f != 0 || d3.f != 0))
            throw FlavorMismatch("ZinvP diagonal has rank one");
        g.d2_ = d2;
        g.d3_ = d3;
        return g;
    }

    Backend backend() const { return backend_; }
    std::uint32_t p() const { return p_; }
    Flavor flavor() const { return flavor_; }

    const DiagExp& d2() const { return d2_; }
    const DiagExp& d3() const { return d3_; }
    const RingElem& x12() const { return x12_; }
    const RingElem& x13() const { return x13_; }
    const RingElem& x14() const { return x14_; }
    const RingElem& x23() const { return x23_; }
    const RingElem& x24() const { return x24_; }
    const RingElem& x34() const { return x34_; }

    RingElem& entry(int i, int j) {
        if (i == 1 && j == 2) return x12_;
        if (i == 1 && j == 3) return x13_;
        if (i == 1 && j == 4) return x14_;
        if (i == 2 && j == 3) return x23_;
        if (i == 2 && j == 4) return x24_;
        if (i == 3 && j == 4) return x34_;
        throw std::out_of_range("entry index");
    }
    const RingElem& entry(int i, int j) const { return const_cast<AbelsElem*>(this)->entry(i, j); }

    RingElem unit_value(const DiagExp& d) const {
        if (backend_ == Backend::LaurentLoc) return RingElem::monomial(p_, 1, d.e, d.f);
        if (d.e >= 0) {
            BigInt v = 1;
            for (std::int64_t i = 0; i < d.e; ++i) v *= p_;
            return RingElem::zinvp(p_, v, 0);
        }
        return RingElem::zinvp(p_, 1, -d.e);
    }

    bool operator==(const AbelsElem& o) const {
        return backend_ == o.backend_ && p_ == o.p_ && flavor_ == o.flavor_ && d2_ == o.d2_ &&
               d3_ == o.d3_ && x12_ == o.x12_ && x13_ == o.x13_ && x14_ == o.x14_ &&
               x23_ == o.x23_ && x24_ == o.x24_ && x34_ == o.x34_;
    }
    bool operator!=(const AbelsElem& o) const { return !(*this == o); }

    bool is_identity() const { return *this == identity(backend_, p_, flavor_); }

    AbelsElem operator*(const AbelsElem& o) const {
        require_same(o);
        AbelsElem c = identity(backend_, p_, flavor_);
        c.d2_ = d2_ + o.d2_;
        c.d3_ = d3_ + o.d3_;
        RingElem u2A = unit_value(d2_), u3A = unit_value(d3_);
        RingElem u2B = unit_value(o.d2_), u3B = unit_value(o.d3_);
        c.x12_ = o.x12_ + x12_ * u2B;
        c.x13_ = o.x13_ + x12_ * o.x23_ + x13_ * u3B;
        c.x14_ = o.x14_ + x12_ * o.x24_ + x13_ * o.x34_ + x14_;
        c.x23_ = u2A * o.x23_ + x23_ * u3B;
        c.x24_ = u2A * o.x24_ + x23_ * o.x34_ + x24_;
        c.x34_ = u3A * o.x34_ + x34_;
        return c;
    }

    AbelsElem inverse() const {
        AbelsElem b = identity(backend_, p_, flavor_);
        b.d2_ = -d2_;
        b.d3_ = -d3_;
        RingElem u2i = unit_value(b.d2_), u3i = unit_value(b.d3_);
        b.x12_ = -(x12_ * u2i);
        b.x23_ = -(u2i * x23_ * u3i);
        b.x34_ = -(u3i * x34_);
        b.x13_ = (x12_ * u2i * x23_ - x13_) * u3i;
        b.x24_ = u2i * (x23_ * u3i * x34_ - x24_);
        b.x14_ = -(x12_ * b.x24_) - x13_ * b.x34_ - x14_;
        return b;
    }

    // Unique factorization g = d * e12(u12) e23(u23) e34(u34) e13(u13) e24(u24) e14(u14).
    struct NormalForm {
        DiagExp d2, d3;
        RingElem u12, u23, u34, u13, u24, u14;
    };

    NormalForm normal_form() const {
        NormalForm nf;
        nf.d2 = d2_;
        nf.d3 = d3_;
        RingElem a_inv = unit_value(-d2_), b_inv = unit_value(-d3_);
        nf.u12 = x12_;
        nf.u23 = a_inv * x23_;
        nf.u34 = b_inv * x34_;
        nf.u13 = x13_ - nf.u12 * nf.u23;
        nf.u24 = a_inv * x24_ - nf.u23 * nf.u34;
        nf.u14 = x14_ - nf.u12 * nf.u23 * nf.u34 - nf.u12 * nf.u24;
        return nf;
    }

    static AbelsElem from_normal_form(Backend b, std::uint32_t p, Flavor fl,
                                      const NormalForm& nf) {
        AbelsElem g = diagonal(b, p, fl, nf.d2, nf.d3);
        g = g * elementary(b, p, fl, 1, 2, nf.u12);
        g = g * elementary(b, p, fl, 2, 3, nf.u23);
        g = g * elementary(b, p, fl, 3, 4, nf.u34);
        g = g * elementary(b, p, fl, 1, 3, nf.u13);
        g = g * elementary(b, p, fl, 2, 4, nf.u24);
        g = g * elementary(b, p, fl, 1, 4, nf.u14);
        return g;
    }

    // sup over matrix entries of the entry length (diagonal units included).
    std::int64_t matrix_length() const {
        std::int64_t l = 0;
        l = std::max(l, unit_value(d2_).length());
        l = std::max(l, unit_value(d3_).length());
        l = std::max(l, x12_.length());
        l = std::max(l, x13_.length());
        l = std::max(l, x14_.length());
        l = std::max(l, x23_.length());
        l = std::max(l, x24_.length());
        l = std::max(l, x34_.length());
        return l;
    }

    bool is_central() const {
        return d2_ == DiagExp{} && d3_ == DiagExp{} && x12_.is_zero() && x13_.is_zero() &&
               x23_.is_zero() && x24_.is_zero() && x34_.is_zero();
    }

    RingElem center_value() const {
        if (!is_central()) throw NotCentral("center_value on non-central element");
        return x14_;
    }

  private:
    void require_same(const AbelsElem& o) const {
        if (backend_ != o.backend_ || p_ != o.p_) throw BackendMismatch("mixed group backends");
        if (flavor_ != o.flavor_) throw FlavorMismatch("mixed group flavors");
    }

    Backend backend_ = Backend::LaurentLoc;
    std::uint32_t p_ = 2;
    Flavor flavor_ = Flavor::PowersOfT;
    DiagExp d2_, d3_;
    RingElem x12_, x13_, x14_, x23_, x24_, x34_;
};

// Central element wrapper (the x14 slot).
struct CentralElem {
    RingElem x;
    AbelsElem embed(Flavor fl) const {
        return AbelsElem::elementary(x.backend(), x.p(), fl, 1, 4, x);
    }
};

}  // namespace abels
