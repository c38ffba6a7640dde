#pragma once

// Generator alphabet, words, evaluation, and the synthesis of compound
// letters ehat_ij^x (canonical ladder words realizing e_ij(x)).
//
// Alphabet: diagonal letters D2t, D2u, D3t, D3u (conjugating units t and
// (t-1) in diagonal slots 2 and 3) and unipotent letters E12, E13, E23,
// E24, E34 with parameter 1. E14 is not a letter. Each letter carries a
// sign. D2u/D3u require the FullUnits flavor; on the ZinvP backend the
// "t" letters conjugate by p and the "u" letters are unavailable.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "group.hpp"

namespace abels {

enum class LetterKind : std::uint8_t { D2t, D2u, D3t, D3u, E12, E13, E23, E24, E34 };

inline constexpr int kNumLetterKinds = 9;

struct BadIndex : std::runtime_error {
    explicit BadIndex(const std::string& w) : std::runtime_error(w) {}
};

struct GenLetter {
    LetterKind kind;
    std::int8_t sign;  // +1 or -1
    bool operator==(const GenLetter&) const = default;
};

inline GenLetter inv(GenLetter l) { return {l.kind, static_cast<std::int8_t>(-l.sign)}; }

using Word = std::vector<GenLetter>;

inline bool is_diag(LetterKind k) {
    return k == LetterKind::D2t || k == LetterKind::D2u || k == LetterKind::D3t ||
           k == LetterKind::D3u;
}
inline bool is_unipotent(LetterKind k) { return !is_diag(k); }

enum class Slot : std::uint8_t { S12 = 0, S13, S23, S24, S34 };
inline constexpr int kNumSlots = 5;

inline Slot slot_of(LetterKind k) {
    switch (k) {
        case LetterKind::E12: return Slot::S12;
        case LetterKind::E13: return Slot::S13;
        case LetterKind::E23: return Slot::S23;
        case LetterKind::E24: return Slot::S24;
        case LetterKind::E34: return Slot::S34;
        default: throw BadIndex("slot_of on diagonal letter");
    }
}

inline LetterKind letter_of_slot(Slot s) {
    switch (s) {
        case Slot::S12: return LetterKind::E12;
        case Slot::S13: return LetterKind::E13;
        case Slot::S23: return LetterKind::E23;
        case Slot::S24: return LetterKind::E24;
        case Slot::S34: return LetterKind::E34;
    }
    throw BadIndex("letter_of_slot");
}

inline Slot slot_from_indices(int i, int j) {
    if (i == 1 && j == 2) return Slot::S12;
    if (i == 1 && j == 3) return Slot::S13;
    if (i == 2 && j == 3) return Slot::S23;
    if (i == 2 && j == 4) return Slot::S24;
    if (i == 3 && j == 4) return Slot::S34;
    throw BadIndex("slot index (" + std::to_string(i) + "," + std::to_string(j) + ") not in J");
}

inline std::pair<int, int> slot_indices(Slot s) {
    switch (s) {
        case Slot::S12: return {1, 2};
        case Slot::S13: return {1, 3};
        case Slot::S23: return {2, 3};
        case Slot::S24: return {2, 4};
        case Slot::S34: return {3, 4};
    }
    throw BadIndex("slot_indices");
}

// Conjugation action: for diag letter kind k (sign +1), conj by it multiplies
// the slot parameter by t^m (or (t-1)^m for the u-kinds); this returns m.
inline int diag_action(LetterKind k, Slot s) {
    bool slot2 = (k == LetterKind::D2t || k == LetterKind::D2u);
    switch (s) {
        case Slot::S12: return slot2 ? -1 : 0;
        case Slot::S13: return slot2 ? 0 : -1;
        case Slot::S23: return slot2 ? +1 : -1;
        case Slot::S24: return slot2 ? +1 : 0;
        case Slot::S34: return slot2 ? 0 : +1;
    }
    return 0;
}
inline bool is_t_kind(LetterKind k) { return k == LetterKind::D2t || k == LetterKind::D3t; }
inline bool is_u_kind(LetterKind k) { return k == LetterKind::D2u || k == LetterKind::D3u; }

// Canonical ladder letter for a slot: one "up" rung multiplies the parameter
// by t (resp. (t-1)).
inline GenLetter t_rung(Slot s) {
    switch (s) {
        case Slot::S12: return {LetterKind::D2t, -1};
        case Slot::S13: return {LetterKind::D3t, -1};
        case Slot::S23: return {LetterKind::D2t, +1};
        case Slot::S24: return {LetterKind::D2t, +1};
        case Slot::S34: return {LetterKind::D3t, +1};
    }
    throw BadIndex("t_rung");
}
inline GenLetter u_rung(Slot s) {
    GenLetter r = t_rung(s);
    r.kind = (r.kind == LetterKind::D2t) ? LetterKind::D2u : LetterKind::D3u;
    return r;
}

struct EvalContext {
    Backend backend = Backend::LaurentLoc;
    std::uint32_t p = 2;
    Flavor flavor = Flavor::PowersOfT;

    bool operator==(const EvalContext&) const = default;

    AbelsElem identity() const { return AbelsElem::identity(backend, p, flavor); }
    RingElem ring_zero() const { return RingElem::zero(backend, p); }
    RingElem ring_one() const { return RingElem::one(backend, p); }

    bool letter_allowed(LetterKind k) const {
        if (k == LetterKind::D2u || k == LetterKind::D3u)
            return backend == Backend::LaurentLoc && flavor == Flavor::FullUnits;
        return true;
    }

    AbelsElem letter_elem(GenLetter l) const {
        if (!letter_allowed(l.kind)) throw FlavorMismatch("letter not in this alphabet");
        AbelsElem g = identity();
        std::int64_t s = l.sign;
        switch (l.kind) {
            case LetterKind::D2t:
                return AbelsElem::diagonal(backend, p, flavor, {s, 0}, {0, 0});
            case LetterKind::D2u:
                return AbelsElem::diagonal(backend, p, flavor, {0, s}, {0, 0});
            case LetterKind::D3t:
                return AbelsElem::diagonal(backend, p, flavor, {0, 0}, {s, 0});
            case LetterKind::D3u:
                return AbelsElem::diagonal(backend, p, flavor, {0, 0}, {0, s});
            default: {
                auto [i, j] = slot_indices(slot_of(l.kind));
                return AbelsElem::elementary(backend, p, flavor, i, j,
                                             RingElem::from_int(backend, p, s));
            }
        }
        return g;
    }
};

inline Word inverse(const Word& w) {
    Word r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(inv(*it));
    return r;
}

inline Word concat(std::initializer_list<Word> parts) {
    Word r;
    for (const auto& p : parts) r.insert(r.end(), p.begin(), p.end());
    return r;
}

inline Word free_reduce(const Word& w) {
    Word stack;
    stack.reserve(w.size());
    for (const auto& l : w) {
        if (!stack.empty() && stack.back().kind == l.kind && stack.back().sign == -l.sign)
            stack.pop_back();
        else
            stack.push_back(l);
    }
    return stack;
}

inline AbelsElem eval(const Word& w, const EvalContext& ctx) {
    AbelsElem acc = ctx.identity();
    for (const auto& l : w) acc = acc * ctx.letter_elem(l);
    return acc;
}

// [x, y] = x^-1 y^-1 x y as a word.
inline Word commutator(const Word& x, const Word& y) {
    return concat({inverse(x), inverse(y), x, y});
}

inline Word conjugate(const Word& x, const Word& by) {  // x^by = by^-1 x by
    return concat({inverse(by), x, by});
}

inline Word repeat(GenLetter l, std::int64_t n) {
    Word r;
    if (n < 0) {
        l = inv(l);
        n = -n;
    }
    r.assign(static_cast<std::size_t>(n), l);
    return r;
}

// Run of |c| unipotent letters realizing e_slot(c) for a signed coefficient c.
inline Word run_word(Slot s, std::int64_t c) { return repeat({letter_of_slot(s), +1}, c); }

// Signed representative of c mod p with smallest absolute value (ties -> positive).
inline std::int64_t signed_min_rep(std::int64_t c, std::uint32_t p) {
    std::int64_t r = static_cast<std::int64_t>(fp::norm(c, p));
    if (2 * r > static_cast<std::int64_t>(p)) r -= p;
    return r;
}

// ---------------------------------------------------------------------------
// ehat synthesis: canonical word for e_ij(x).
//
// LaurentLoc layout (deposits along one ladder path):
//   [at-one dive]  u^-B  o_B  u  o_{B-1}  u ... o_1  u
//   [at-zero dive] t^-A  z_A  t  z_{A-1}  t ... z_1  t
//   [poly climb]   c_0  t  c_1  t ... c_d  t^-d
// where t/u are the slot's canonical rungs and coefficients are emitted as
// signed-min runs. ZinvP uses base-p digits of a on the t-ladder.
// ---------------------------------------------------------------------------

struct EHat {
    Slot slot;
    RingElem x;
    Word word;
};

inline Word synth_word(Slot s, const RingElem& x) {
    Word w;
    std::uint32_t p = x.p();
    if (x.backend() == Backend::LaurentLoc) {
        auto pf = x.partial_fractions();
        GenLetter tl = t_rung(s), ul = u_rung(s);
        // at-one dive
        std::int64_t B = pf.at_one.empty() ? 0 : pf.at_one.rbegin()->first;
        if (B > 0) {
            Word dive = repeat(inv(ul), B);
            w.insert(w.end(), dive.begin(), dive.end());
            for (std::int64_t b = B; b >= 1; --b) {
                auto it = pf.at_one.find(b);
                if (it != pf.at_one.end()) {
                    Word run = run_word(s, signed_min_rep(it->second, p));
                    w.insert(w.end(), run.begin(), run.end());
                }
                w.push_back(ul);
            }
        }
        // at-zero dive
        std::int64_t A = pf.at_zero.empty() ? 0 : pf.at_zero.rbegin()->first;
        if (A > 0) {
            Word dive = repeat(inv(tl), A);
            w.insert(w.end(), dive.begin(), dive.end());
            for (std::int64_t a = A; a >= 1; --a) {
                auto it = pf.at_zero.find(a);
                if (it != pf.at_zero.end()) {
                    Word run = run_word(s, signed_min_rep(it->second, p));
                    w.insert(w.end(), run.begin(), run.end());
                }
                w.push_back(tl);
            }
        }
        // poly climb
        std::int64_t D = pf.poly.empty() ? -1 : pf.poly.rbegin()->first;
        if (D >= 0) {
            for (std::int64_t k = 0; k <= D; ++k) {
                auto it = pf.poly.find(k);
                if (it != pf.poly.end()) {
                    Word run = run_word(s, signed_min_rep(it->second, p));
                    w.insert(w.end(), run.begin(), run.end());
                }
                if (k < D) w.push_back(tl);
            }
            Word back = repeat(inv(tl), D);
            w.insert(w.end(), back.begin(), back.end());
        }
        return free_reduce(w);
    }
    // ZinvP: a / p^k in base-p digits on the t-ladder.
    if (x.is_zero()) return {};
    BigInt m = abs(x.a());
    int sgn = x.a() < 0 ? -1 : 1;
    std::vector<std::int64_t> digits;  // position i-k carries digit[i]
    while (m != 0) {
        digits.push_back(static_cast<std::int64_t>(m % x.p()));
        m /= x.p();
    }
    GenLetter tl = t_rung(s);
    std::int64_t k = x.k();
    Word dive = repeat(inv(tl), k);
    w.insert(w.end(), dive.begin(), dive.end());
    for (std::size_t i = 0; i < digits.size(); ++i) {
        Word run = run_word(s, sgn * digits[i]);
        w.insert(w.end(), run.begin(), run.end());
        if (i + 1 < digits.size()) w.push_back(tl);
    }
    Word back = repeat(inv(tl), static_cast<std::int64_t>(digits.size()) - 1 - k);
    w.insert(w.end(), back.begin(), back.end());
    return free_reduce(w);
}

inline EHat synth_ehat(int i, int j, const RingElem& x) {
    Slot s = slot_from_indices(i, j);
    return {s, x, synth_word(s, x)};
}

// Committed length bound for the synthesis scheme (regression-tested):
// |word| <= (p+1) * pole_size + p, where pole_size sums max(0, -v) over the
// places of x (plus the poly breadth).
inline std::int64_t synth_size(const RingElem& x) {
    if (x.is_zero()) return 0;
    if (x.backend() == Backend::LaurentLoc) {
        std::int64_t s = 0;
        for (Place pl : {Place::AtZero, Place::AtOne, Place::AtInfinity})
            s += std::max<std::int64_t>(0, -x.valuation(pl));
        return s;
    }
    std::int64_t s = std::max<std::int64_t>(0, -x.valuation(Place::Padic));
    s += std::max<std::int64_t>(0, x.valuation(Place::Real));
    return s;
}

inline std::int64_t synth_cost_bound(std::uint32_t p, const RingElem& x) {
    return (static_cast<std::int64_t>(p) + 1) * synth_size(x) + p;
}

// ---------------------------------------------------------------------------
// Decomposition of Lemma-generq type: g = d * prod of conjugated factors,
// with the u14 slot expanded as the commutator [v12, v24].
// ---------------------------------------------------------------------------

struct ConjFactor {
    Word conj;  // word in diagonal letters
    Word core;  // synthesis word of the recentered parameter
    Word realize() const { return concat({conj, core, inverse(conj)}); }
};

struct Decomposition {
    Word diag;
    std::vector<ConjFactor> factors;
    Word realize() const {
        Word w = diag;
        for (const auto& f : factors) {
            Word r = f.realize();
            w.insert(w.end(), r.begin(), r.end());
        }
        return w;
    }
};

inline Word diag_word(const DiagExp& d2, const DiagExp& d3) {
    return concat({repeat({LetterKind::D2t, +1}, d2.e), repeat({LetterKind::D2u, +1}, d2.f),
                   repeat({LetterKind::D3t, +1}, d3.e), repeat({LetterKind::D3u, +1}, d3.f)});
}

// Conjugator word moving the slot parameter by t^a (t-1)^b.
inline Word conj_word(Slot s, std::int64_t a, std::int64_t b) {
    return concat({repeat(t_rung(s), a), repeat(u_rung(s), b)});
}

// Factor for e_ij(x): gamma * synth(core) * gamma^-1. The conjugator clears
// the t-exponent and any (t-1)-pole; nonnegative (t-1)-powers fold into the
// numerator so that PowersOfT elements need no (t-1) letters.
inline ConjFactor slot_factor(Slot s, const RingElem& x) {
    ConjFactor f;
    if (x.is_zero()) return f;
    if (x.backend() == Backend::LaurentLoc) {
        std::int64_t fpole = std::min<std::int64_t>(x.f(), 0);
        f.conj = conj_word(s, x.e(), fpole);
        f.core = synth_word(s, RingElem::laurent(x.p(), x.num(), 0, x.f() - fpole));
    } else {
        std::int64_t v = x.valuation(Place::Padic);
        f.conj = conj_word(s, v, 0);
        // x = p^v * m with m a p-free integer
        BigInt m = x.a();
        std::int64_t shift = v + x.k();  // multiply back: m = a / p^(v+k) ... a = m * p^shift
        BigInt mm = m;
        for (std::int64_t i = 0; i < shift; ++i) mm /= x.p();
        f.core = synth_word(s, RingElem::zinvp(x.p(), mm, 0));
    }
    return f;
}

inline Decomposition decompose(const AbelsElem& g) {
    Decomposition d;
    auto nf = g.normal_form();
    d.diag = diag_word(nf.d2, nf.d3);
    auto push = [&](Slot s, const RingElem& x) {
        ConjFactor f = slot_factor(s, x);
        if (!f.core.empty()) d.factors.push_back(std::move(f));
    };
    push(Slot::S12, nf.u12);
    push(Slot::S23, nf.u23);
    push(Slot::S34, nf.u34);
    push(Slot::S13, nf.u13);
    push(Slot::S24, nf.u24);
    if (!nf.u14.is_zero()) {
        // u14 = [v12, v24] with v12 = e12(1), v24 = e24(u14).
        ConjFactor v12;
        v12.core = run_word(Slot::S12, 1);
        ConjFactor v24 = slot_factor(Slot::S24, nf.u14);
        ConjFactor v12i = v12, v24i = v24;
        v12i.core = inverse(v12.core);
        v24i.core = inverse(v24.core);
        d.factors.push_back(v12i);
        d.factors.push_back(v24i);
        d.factors.push_back(v12);
        d.factors.push_back(v24);
    }
    return d;
}

inline Word realize(const AbelsElem& g) { return decompose(g).realize(); }

inline std::int64_t word_length_upper(const AbelsElem& g) {
    std::int64_t n = 0;
    auto d = decompose(g);
    n += static_cast<std::int64_t>(d.diag.size());
    for (const auto& f : d.factors)
        n += 2 * static_cast<std::int64_t>(f.conj.size()) + static_cast<std::int64_t>(f.core.size());
    return n;
}

// ---------------------------------------------------------------------------
// Deterministic random words.
// ---------------------------------------------------------------------------

inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 step
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline Word random_word(std::int64_t n, std::uint64_t seed, const EvalContext& ctx) {
    std::mt19937_64 rng(seed);
    std::vector<LetterKind> kinds;
    for (int k = 0; k < kNumLetterKinds; ++k)
        if (ctx.letter_allowed(static_cast<LetterKind>(k)))
            kinds.push_back(static_cast<LetterKind>(k));
    std::uniform_int_distribution<std::size_t> pick(0, kinds.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    Word w;
    w.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        w.push_back({kinds[pick(rng)], static_cast<std::int8_t>(coin(rng) ? 1 : -1)});
    return w;
}

// Random ball-bounded word: reject letters that would push the prefix
// evaluation past the given matrix-length bound.
inline Word random_bounded_word(std::int64_t n, std::uint64_t seed, const EvalContext& ctx,
                                std::int64_t bound) {
    std::mt19937_64 rng(seed);
    std::vector<LetterKind> kinds;
    for (int k = 0; k < kNumLetterKinds; ++k)
        if (ctx.letter_allowed(static_cast<LetterKind>(k)))
            kinds.push_back(static_cast<LetterKind>(k));
    std::uniform_int_distribution<std::size_t> pick(0, kinds.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    Word w;
    AbelsElem acc = ctx.identity();
    for (std::int64_t i = 0; i < n; ++i) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            GenLetter l{kinds[pick(rng)], static_cast<std::int8_t>(coin(rng) ? 1 : -1)};
            AbelsElem nxt = acc * ctx.letter_elem(l);
            if (nxt.matrix_length() <= bound) {
                acc = nxt;
                w.push_back(l);
                break;
            }
        }
    }
    return w;
}

// Null word: random word of length n followed by the inverse of the
// decompose/synthesis realization of its evaluation. Retries with derived
// seeds to land inside [n, 3n]; returns the shortest candidate otherwise.
inline Word random_null_word(std::int64_t n, std::uint64_t seed, const EvalContext& ctx) {
    if (n <= 0) return {};
    Word best;
    bool have = false;
    for (std::uint64_t attempt = 0; attempt < 24; ++attempt) {
        std::int64_t bound = std::max<std::int64_t>(1, n / 16);
        Word w = random_bounded_word(n, split_seed(seed, attempt), ctx, bound);
        Word r = realize(eval(w, ctx));
        Word cand = concat({w, inverse(r)});
        if (static_cast<std::int64_t>(cand.size()) <= 3 * n) return cand;
        if (!have || cand.size() < best.size()) {
            best = cand;
            have = true;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// The transpose-flip automorphism tau: g -> J (g^T)^-1 J. It maps the
// alphabet to itself and exchanges the two "columns" of the claim pairs:
//   E12^s <-> E34^-s, E13^s <-> E24^-s, E23^s -> E23^-s,
//   D2t^s <-> D3t^-s, D2u^s <-> D3u^-s.
// ---------------------------------------------------------------------------

inline GenLetter tau_letter(GenLetter l) {
    auto flip = [&](LetterKind k) { return GenLetter{k, static_cast<std::int8_t>(-l.sign)}; };
    switch (l.kind) {
        case LetterKind::E12: return flip(LetterKind::E34);
        case LetterKind::E34: return flip(LetterKind::E12);
        case LetterKind::E13: return flip(LetterKind::E24);
        case LetterKind::E24: return flip(LetterKind::E13);
        case LetterKind::E23: return flip(LetterKind::E23);
        case LetterKind::D2t: return flip(LetterKind::D3t);
        case LetterKind::D3t: return flip(LetterKind::D2t);
        case LetterKind::D2u: return flip(LetterKind::D3u);
        case LetterKind::D3u: return flip(LetterKind::D2u);
    }
    return l;
}

inline Word tau_word(const Word& w) {
    Word r;
    r.reserve(w.size());
    for (auto l : w) r.push_back(tau_letter(l));
    return r;
}

// ---------------------------------------------------------------------------
// Identity word builders (Hall's identity and friends).
// ---------------------------------------------------------------------------

// Hall: [a^b, [b,c]] [b^c, [c,a]] [c^a, [a,b]]; trivial in every group.
inline Word hall_word(const Word& a, const Word& b, const Word& c) {
    return concat({commutator(conjugate(a, b), commutator(b, c)),
                   commutator(conjugate(b, c), commutator(c, a)),
                   commutator(conjugate(c, a), commutator(a, b))});
}

// Eq-(6) style: [ab, c] vs [a,c]^b [b,c].
inline Word prod_comm_lhs(const Word& a, const Word& b, const Word& c) {
    return commutator(concat({a, b}), c);
}
inline Word prod_comm_rhs(const Word& a, const Word& b, const Word& c) {
    return concat({conjugate(commutator(a, c), b), commutator(b, c)});
}

// Interleaving identity: x1 y1 ... xk yk =
//   x_{1k} y_{1k} [y_{1k},x_{2k}][x_{2k},y_{2k}] ... [y_{(k-1)k},x_{kk}][x_{kk},y_{kk}]
// with x_{ik} = x_i ... x_k. Returns the right-hand side; the bracket count
// is 2(k-1).
inline Word interleave_rhs(const std::vector<Word>& xs, const std::vector<Word>& ys,
                           std::size_t* bracket_count = nullptr) {
    std::size_t k = xs.size();
    auto suffix = [](const std::vector<Word>& v, std::size_t i) {
        Word r;
        for (std::size_t j = i; j < v.size(); ++j) r = concat({r, v[j]});
        return r;
    };
    Word rhs = concat({suffix(xs, 0), suffix(ys, 0)});
    std::size_t brackets = 0;
    for (std::size_t i = 1; i < k; ++i) {
        rhs = concat({rhs, commutator(suffix(ys, i - 1), suffix(xs, i))});
        rhs = concat({rhs, commutator(suffix(xs, i), suffix(ys, i))});
        brackets += 2;
    }
    if (bracket_count) *bracket_count = brackets;
    return rhs;
}
inline Word interleave_lhs(const std::vector<Word>& xs, const std::vector<Word>& ys) {
    Word r;
    for (std::size_t i = 0; i < xs.size(); ++i) r = concat({r, xs[i], ys[i]});
    return r;
}

}  // namespace abels
