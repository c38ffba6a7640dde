#pragma once

// In-slot rewriting: certified, bounded-window normalization of regions whose
// unipotent letters all live in one slot s. The region is parsed into runs of
// E-letters sitting at ladder positions (t-height, u-height); the engine can
//   - rebase deposits onto the basis rays (u-height 0, or t-height 0 with
//     negative u-height) via Pascal-type splits,
//   - transport runs along the ladder past bounded segments, inserting
//     p-torsion runs ("posts") as stepping stones across long gaps,
//   - merge and normalize runs mod p,
//   - straighten the remaining diagonal letters against the target ladder,
// ending in the canonical synthesis word times a sorted diagonal tail.
// Every move is a single certified substitution with a relator of bounded
// length, so all of this happens inside a Certificate.

#include "rewrite.hpp"

namespace abels {

class RangeTracker {
  public:
    RangeTracker(Rewriter& rw, std::size_t lo, std::size_t hi)
        : rw_(&rw), lo_(lo), hi_(hi), seen_(rw.deltas().size()) {
        if (hi_ > rw.word().size() || lo_ > hi_) throw std::logic_error("bad range");
    }

    std::size_t lo() {
        sync();
        return lo_;
    }
    std::size_t hi() {
        sync();
        return hi_;
    }
    std::size_t size() { return hi() - lo(); }

    Word snapshot() {
        sync();
        const Word& w = rw_->word();
        return Word(w.begin() + static_cast<std::ptrdiff_t>(lo_),
                    w.begin() + static_cast<std::ptrdiff_t>(hi_));
    }

    void sync() {
        const auto& ds = rw_->deltas();
        for (; seen_ < ds.size(); ++seen_) {
            const auto& d = ds[seen_];
            std::size_t dend = d.start + d.removed.size();
            if (d.start < lo_ || dend > hi_)
                throw std::logic_error("edit escaped its tracked range");
            hi_ = hi_ + d.inserted - d.removed.size();
        }
    }

  private:
    Rewriter* rw_;
    std::size_t lo_, hi_, seen_;
};

// ---------------------------------------------------------------------------
// Region scan.
// ---------------------------------------------------------------------------

struct Tok {
    bool is_e = false;
    LetterKind kind{};
    int sign = 0;                 // letters in a token share kind and sign
    std::int64_t count = 0;       // number of letters
    std::size_t pos = 0;          // stored start (absolute index)
    std::int64_t ht = 0, hu = 0;  // slot frame at this token's start
};

inline std::vector<Tok> slot_tokens(const Word& w, std::size_t lo, std::size_t hi, Slot s) {
    std::vector<Tok> toks;
    std::int64_t ht = 0, hu = 0;
    std::size_t i = lo;
    while (i < hi) {
        GenLetter l = w[i];
        std::size_t j = i;
        while (j < hi && w[j].kind == l.kind && w[j].sign == l.sign) ++j;
        Tok t;
        t.kind = l.kind;
        t.sign = l.sign;
        t.count = static_cast<std::int64_t>(j - i);
        t.pos = i;
        t.ht = ht;
        t.hu = hu;
        t.is_e = is_unipotent(l.kind);
        toks.push_back(t);
        if (!t.is_e) {
            int act = diag_action(l.kind, s);
            if (is_t_kind(l.kind))
                ht += act * l.sign * t.count;
            else
                hu += act * l.sign * t.count;
        }
        i = j;
    }
    return toks;
}

struct SlotScan {
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> deposits;  // (ht,hu) -> coeff
    std::array<std::int64_t, 4> diag_net{};  // D2t, D2u, D3t, D3u signed letter sums
    bool pure = true;                        // only slot-s unipotent letters
};

inline int diag_kind_index(LetterKind k) {
    switch (k) {
        case LetterKind::D2t: return 0;
        case LetterKind::D2u: return 1;
        case LetterKind::D3t: return 2;
        case LetterKind::D3u: return 3;
        default: return -1;
    }
}

inline SlotScan scan_slot_region(const Word& w, std::size_t lo, std::size_t hi, Slot s) {
    SlotScan sc;
    for (const Tok& t : slot_tokens(w, lo, hi, s)) {
        if (t.is_e) {
            if (slot_of(t.kind) != s) {
                sc.pure = false;
                continue;
            }
            sc.deposits[{t.ht, t.hu}] += t.sign * t.count;
        } else {
            sc.diag_net[static_cast<std::size_t>(diag_kind_index(t.kind))] += t.sign * t.count;
        }
    }
    for (auto it = sc.deposits.begin(); it != sc.deposits.end();)
        it = (it->second == 0) ? sc.deposits.erase(it) : std::next(it);
    return sc;
}

inline RingElem deposits_value(const SlotScan& sc, const EvalContext& ctx) {
    RingElem acc = ctx.ring_zero();
    for (const auto& [posn, c] : sc.deposits) {
        auto [a, b] = posn;
        if (ctx.backend == Backend::LaurentLoc) {
            acc = acc + RingElem::monomial(ctx.p, fp::norm(c, ctx.p), a, b);
        } else {
            if (b != 0) throw std::logic_error("u-frame on ZinvP");
            BigInt pw = 1;
            for (std::int64_t i = 0; i < (a > 0 ? a : 0); ++i) pw *= ctx.p;
            RingElem term = a >= 0 ? RingElem::zinvp(ctx.p, BigInt(c) * pw, 0)
                                   : RingElem::zinvp(ctx.p, BigInt(c), -a);
            acc = acc + term;
        }
    }
    return acc;
}

inline Word diag_tail_word(const std::array<std::int64_t, 4>& net) {
    return concat({repeat({LetterKind::D2t, +1}, net[0]), repeat({LetterKind::D2u, +1}, net[1]),
                   repeat({LetterKind::D3t, +1}, net[2]), repeat({LetterKind::D3u, +1}, net[3])});
}

// ---------------------------------------------------------------------------
// The collector.
// ---------------------------------------------------------------------------

class SlotCollector {
  public:
    SlotCollector(Rewriter& rw, RangeTracker& range, Slot s)
        : rw_(rw), range_(range), s_(s), p_(rw.ctx().p) {}

    // Rewrite the tracked range into synth_word(s, x) * diag tail.
    //
    // Policy loop: sort/join/normalize wherever windows allow; rebase
    // off-basis deposits one split at a time; when a far pair on the t-ray
    // blocks the sort, shed its top rung towards the (t-1)-basis and merge
    // there. Shedding has a budget; genuinely untransportable configurations
    // (p-power-separated sparse supports) raise an error instead of ever
    // weakening the relator store.
    void collect() {
        std::int64_t shed_budget = 4 * static_cast<std::int64_t>(range_.size()) + 64;
        for (int guard = 0; guard < (1 << 26); ++guard) {
            bool sorted = sort_runs();
            if (!sorted) {
                if (!can_shed() || shed_budget-- <= 0 || !shed_highest_rung())
                    throw std::logic_error("far in-slot transport unsupported here");
                continue;
            }
            if (!rebase_one()) break;
        }
        SlotScan sc = scan();
        if (!sc.pure) throw std::logic_error("foreign unipotent letter in slot region");
        RingElem x = deposits_value(sc, rw_.ctx());
        Word target = concat({synth_word(s_, x), diag_tail_word(sc.diag_net)});
        straighten(target);
    }

  private:
    SlotScan scan() { return scan_slot_region(rw_.word(), range_.lo(), range_.hi(), s_); }
    std::vector<Tok> toks() { return slot_tokens(rw_.word(), range_.lo(), range_.hi(), s_); }

    static bool on_basis(std::int64_t ht, std::int64_t hu) {
        return hu == 0 || (hu < 0 && ht == 0);
    }

    static std::tuple<std::int64_t, std::int64_t, std::int64_t> key(const Tok& t) {
        if (t.hu < 0) return {0, t.hu, t.ht};
        if (t.hu == 0) return {1, t.ht, 0};
        return {2, t.hu, t.ht};  // transient (t-1)-basis positions during shedding
    }

    GenLetter T() const { return t_rung(s_); }
    GenLetter U() const { return u_rung(s_); }

    // --- rebase: move deposits onto the basis rays, one split per call ---

    bool rebase_one() {
        for (const Tok& t : toks()) {
            if (!t.is_e) continue;
            if (slot_of(t.kind) != s_) throw std::logic_error("foreign slot in collector");
            if (on_basis(t.ht, t.hu)) continue;
            split_quantum(t);
            return true;
        }
        return false;
    }

    void split_quantum(const Tok& t) {
        GenLetter e{t.kind, static_cast<std::int8_t>(t.sign)};
        GenLetter en = inv(e);
        std::vector<Word> variants;
        if (t.hu > 0) {
            // c@(a,b) = c@(a+1,b-1) + (-c)@(a,b-1)
            variants.push_back({inv(U()), T(), e, inv(T()), en, U()});
            variants.push_back({inv(U()), en, T(), e, inv(T()), U()});
        } else if (t.ht > 0) {
            // c@(a,b) = c@(a-1,b+1) + c@(a-1,b)
            variants.push_back({inv(T()), U(), e, inv(U()), e, T()});
            variants.push_back({inv(T()), e, U(), e, inv(U()), T()});
        } else {
            // c@(a,b) = c@(a+1,b) + (-c)@(a,b+1)
            variants.push_back({T(), e, inv(T()), U(), en, inv(U())});
            variants.push_back({U(), en, inv(U()), T(), e, inv(T())});
        }
        // Interior cascades are harmless; only a cascade across the tracked
        // boundary must be avoided.
        const Word& w = rw_.word();
        for (const Word& v : variants) {
            bool head_bad = t.pos == range_.lo() && t.pos > 0 &&
                            detail::cancels(w[t.pos - 1], v.front());
            bool tail_bad = t.pos + 1 == range_.hi() && t.pos + 1 < w.size() &&
                            detail::cancels(v.back(), w[t.pos + 1]);
            if (!head_bad && !tail_bad) {
                rw_.subst(t.pos, 1, v);
                range_.sync();
                return;
            }
        }
        throw std::logic_error("split_quantum: no safe variant");
    }

    // --- sorting ---

    // Acts wherever a bounded move exists; returns true when no unordered
    // or joinable pair remains, false when only far pairs are left.
    bool sort_runs() {
        for (int guard = 0; guard < (1 << 24); ++guard) {
            if (normalize_runs_once()) continue;
            auto ts = toks();
            int prev = -1;
            bool acted = false;
            bool pending = false;
            for (std::size_t i = 0; i < ts.size() && !acted; ++i) {
                if (!ts[i].is_e) continue;
                if (prev >= 0) {
                    const Tok& a = ts[static_cast<std::size_t>(prev)];
                    const Tok& b = ts[i];
                    std::int64_t gap = gap_letters(ts, static_cast<std::size_t>(prev), i);
                    bool unordered = key(b) < key(a);
                    bool joinable = key(b) == key(a) && gap > 0;
                    if (unordered || joinable) {
                        if (act_on_pair(a, b, gap, joinable)) {
                            acted = true;
                        } else {
                            // a transient (hu > 0) may sit interleaved with
                            // basis deposits until it is rebased; only
                            // same-class far pairs block the sort
                            bool mixed = (a.hu > 0) != (b.hu > 0);
                            if (!mixed) pending = true;
                        }
                    }
                }
                prev = static_cast<int>(i);
            }
            if (acted) continue;
            return !pending;
        }
        throw std::logic_error("sort did not terminate");
    }

    std::int64_t gap_letters(const std::vector<Tok>& ts, std::size_t i, std::size_t j) {
        std::int64_t g = 0;
        for (std::size_t k = i + 1; k < j; ++k) g += ts[k].count;
        return g;
    }

    // One action on an adjacent run pair; false if the pair is out of reach
    // for bounded windows (caller sheds).
    bool act_on_pair(const Tok& a, const Tok& b, std::int64_t gap, bool joinable) {
        const Word& w = rw_.word();
        Word S(w.begin() + static_cast<std::ptrdiff_t>(a.pos + a.count),
               w.begin() + static_cast<std::ptrdiff_t>(b.pos));
        Word ra(w.begin() + static_cast<std::ptrdiff_t>(a.pos),
                w.begin() + static_cast<std::ptrdiff_t>(a.pos + a.count));
        Word rb(w.begin() + static_cast<std::ptrdiff_t>(b.pos),
                w.begin() + static_cast<std::ptrdiff_t>(b.pos + b.count));
        std::size_t ulen = static_cast<std::size_t>(a.count + gap + b.count);
        if (joinable) {
            // equal ladder positions: bring the runs together
            std::int64_t window = 2 * (b.count + gap);
            if (window <= rw_.store().bound) {
                rw_.subst(a.pos, ulen, concat({ra, rb, S}));
                range_.sync();
                return true;
            }
        } else {
            std::int64_t window = 2 * (a.count + b.count) + 4 * gap;
            if (window <= rw_.store().bound) {
                rw_.subst(a.pos, ulen, concat({S, rb, inverse(S), ra, S}));
                range_.sync();
                return true;
            }
        }
        // try to shrink a wandering segment: cancel an inverse pair inside S
        if (compact_segment(a, b)) return true;
        return false;
    }

    // One step towards cancelling an inverse pair of diagonal letters inside
    // the segment between runs a and b (one diagonal swap per call; the final
    // swap cancels the pair during the splice).
    bool compact_segment(const Tok& a, const Tok& b) {
        std::size_t slo = a.pos + static_cast<std::size_t>(a.count);
        std::size_t shi = b.pos;
        const Word& w = rw_.word();
        std::size_t best_x = 0, best_y = 0;
        bool found = false;
        for (std::size_t x = slo; x < shi && !found; ++x)
            for (std::size_t y = x + 1; y < shi; ++y)
                if (w[y].kind == w[x].kind && w[y].sign == -w[x].sign) {
                    best_x = x;
                    best_y = y;
                    found = true;
                    break;
                }
        if (!found) return false;
        // move the y letter one step left (diagonal swap); if it lands next
        // to its inverse the splice cancels both
        Word v = {w[best_y], w[best_y - 1]};
        rw_.subst(best_y - 1, 2, v);
        range_.sync();
        (void)best_x;
        return true;
    }

    bool can_shed() const {
        return rw_.ctx().backend == Backend::LaurentLoc &&
               rw_.ctx().flavor == Flavor::FullUnits;
    }

    // Shed the deposits at the maximal t-height >= 1 one rung towards the
    // (t-1)-basis: c@(a,b) = c@(a-1,b+1) + c@(a-1,b). One rung per call.
    bool shed_highest_rung() {
        std::int64_t top = 0;
        for (const Tok& t : toks())
            if (t.is_e && t.ht > top) top = t.ht;
        if (top < 1) return false;
        for (int guard = 0; guard < (1 << 20); ++guard) {
            bool found = false;
            for (const Tok& t : toks()) {
                if (!t.is_e || t.ht != top) continue;
                GenLetter e{t.kind, static_cast<std::int8_t>(t.sign)};
                Word v = {inv(T()), U(), e, inv(U()), e, T()};
                rw_.subst(t.pos, 1, v);
                range_.sync();
                found = true;
                break;
            }
            if (!found) return true;
        }
        throw std::logic_error("shed did not terminate");
    }

    // One normalization action; returns true if something changed.
    bool normalize_runs_once() {
        for (const Tok& t : toks()) {
            if (!t.is_e) continue;
            std::int64_t c = t.sign * t.count;
            std::int64_t r = signed_min_rep(c, p_);
            if (r != c) {
                rw_.subst(t.pos, static_cast<std::size_t>(t.count), run_word(s_, r));
                range_.sync();
                return true;
            }
        }
        return false;
    }

    // --- straightening the diagonal letters against the target word ---

    void straighten(const Word& target) {
        for (int guard = 0; guard < (1 << 24); ++guard) {
            Word cur = range_.snapshot();
            if (cur == target) return;
            std::size_t i = 0;
            while (i < cur.size() && i < target.size() && cur[i] == target[i]) ++i;
            if (i >= cur.size() || i >= target.size())
                throw std::logic_error("straighten: prefix exhausted against target");
            if (!step_towards(cur, target, i))
                throw std::logic_error("straighten stuck at index " + std::to_string(i));
        }
        throw std::logic_error("straighten did not terminate");
    }

    // Try to make cur[i] == target[i] with one bounded action.
    bool step_towards(Word cur, const Word& target, std::size_t i) {
        std::size_t lo = range_.lo();
        // 1. If the needed letter sits further right behind diagonal letters
        //    only, bubble it left by diagonal swaps.
        if (is_diag(target[i].kind)) {
            for (std::size_t j = i; j < cur.size(); ++j) {
                if (cur[j] == target[i]) {
                    // bubble left
                    rw_.subst(lo + j - 1, 2, {cur[j], cur[j - 1]});
                    range_.sync();
                    return true;
                }
                if (is_unipotent(cur[j].kind)) break;
            }
        }
        // 2. cur[i..] starts with surplus diagonal letters whose combined slot
        //    action vanishes pairwise: push a neutral pair right across the
        //    next E-run.
        //    Find two diagonal letters (within the current segment) whose
        //    actions cancel; bring them together at the segment end and swap
        //    them past the run.
        std::size_t seg_end = i;
        while (seg_end < cur.size() && is_diag(cur[seg_end].kind)) ++seg_end;
        if (seg_end == cur.size()) return false;  // tail segment: nothing to push past
        if (seg_end == i) return false;           // mismatch at a unipotent letter
        // search for a cancelling pair inside [i, seg_end)
        for (std::size_t x = i; x < seg_end; ++x) {
            for (std::size_t y = x + 1; y < seg_end; ++y) {
                int ax = diag_action(cur[x].kind, s_) * cur[x].sign;
                int ay = diag_action(cur[y].kind, s_) * cur[y].sign;
                bool same_axis = is_t_kind(cur[x].kind) == is_t_kind(cur[y].kind);
                if (!same_axis || ax + ay != 0) continue;
                // bubble y leftwards until adjacent to x
                for (std::size_t k = y; k > x + 1; --k) {
                    rw_.subst(lo + k - 1, 2, {cur[k], cur[k - 1]});
                    range_.sync();
                    Word now = range_.snapshot();
                    if (now.size() < cur.size()) return true;  // a cancellation: progress
                    cur = now;
                }
                // bubble the pair to the segment end
                Word now = range_.snapshot();
                std::size_t px = x;
                std::size_t send = seg_end;
                while (px + 2 < send) {
                    // swap pair with the single letter after it
                    Word v = {now[px + 2], now[px], now[px + 1]};
                    rw_.subst(lo + px, 3, v);
                    range_.sync();
                    Word nxt = range_.snapshot();
                    if (nxt.size() < now.size()) return true;
                    now = nxt;
                    ++px;
                }
                // swap the neutral pair past the E-run
                std::size_t run_end = px + 2;
                while (run_end < now.size() && is_unipotent(now[run_end].kind) &&
                       now[run_end].kind == now[px + 2].kind && now[run_end].sign == now[px + 2].sign)
                    ++run_end;
                if (px + 2 >= now.size() || !is_unipotent(now[px + 2].kind))
                    return false;
                Word run(now.begin() + static_cast<std::ptrdiff_t>(px + 2),
                         now.begin() + static_cast<std::ptrdiff_t>(run_end));
                Word v = concat({run, {now[px], now[px + 1]}});
                rw_.subst(lo + px, 2 + run.size(), v);
                range_.sync();
                return true;
            }
        }
        return false;
    }

    Rewriter& rw_;
    RangeTracker& range_;
    Slot s_;
    std::uint32_t p_;
};

inline void collect_slot_region(Rewriter& rw, RangeTracker& range, Slot s) {
    SlotCollector(rw, range, s).collect();
}

}  // namespace abels
