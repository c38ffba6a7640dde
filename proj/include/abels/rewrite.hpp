#pragma once

// Filling certificates and their replay.
//
// A relator is any word r with |r| <= M that evaluates to the identity; the
// store never enumerates them, it only checks membership. A certificate is a
// replayable list of steps; each step inserts (or deletes) a relator at a
// position, followed by free reduction, so the value of the word never
// changes and the area is the step count. Free reduction itself is cost 0.

#include <map>
#include <optional>
#include <string>

#include "words.hpp"

namespace abels {

inline constexpr std::int64_t kDefaultRelatorBound = 24;

struct RelatorStore {
    std::int64_t bound = kDefaultRelatorBound;
    EvalContext ctx;

    bool is_relator(const Word& r) const {
        if (static_cast<std::int64_t>(r.size()) > bound) return false;
        return eval(r, ctx).is_identity();
    }
};

enum class StepDir : std::uint8_t { Insert, Delete };

struct FillStep {
    std::size_t pos = 0;
    Word relator;
    StepDir dir = StepDir::Insert;
};

struct Certificate {
    Word initial;
    std::vector<FillStep> steps;
    std::map<std::string, std::int64_t> stage_costs;
    std::size_t area() const { return steps.size(); }
};

struct ReplayError : std::runtime_error {
    explicit ReplayError(const std::string& w) : std::runtime_error(w) {}
};

namespace detail {

inline bool cancels(GenLetter a, GenLetter b) { return a.kind == b.kind && a.sign == -b.sign; }

// Replace w[pos : pos+erase_len] by ins, then freely reduce. w must already
// be reduced; reduction then only cascades around the splice point.
inline Word splice_reduce(const Word& w, std::size_t pos, std::size_t erase_len, const Word& ins) {
    Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    auto push = [&](GenLetter l) {
        if (!out.empty() && cancels(out.back(), l))
            out.pop_back();
        else
            out.push_back(l);
    };
    for (GenLetter l : ins) push(l);
    std::size_t i = pos + erase_len;
    while (i < w.size() && !out.empty() && cancels(out.back(), w[i])) {
        out.pop_back();
        ++i;
    }
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    return out;
}

}  // namespace detail

inline Word apply_step(const Word& w, const FillStep& s) {
    if (s.dir == StepDir::Insert) {
        if (s.pos > w.size()) throw ReplayError("insert position out of range");
        return detail::splice_reduce(w, s.pos, 0, s.relator);
    }
    if (s.pos + s.relator.size() > w.size()) throw ReplayError("delete range out of range");
    for (std::size_t i = 0; i < s.relator.size(); ++i)
        if (!(w[s.pos + i] == s.relator[i])) throw ReplayError("delete pattern mismatch");
    return detail::splice_reduce(w, s.pos, s.relator.size(), {});
}

struct VerifyResult {
    bool ok = false;
    std::size_t fail_index = 0;  // first failing step (or step count on other failures)
    std::int64_t max_relator_len = 0;
    std::string reason;
};

// Replay a certificate. With check_values set, additionally re-evaluates the
// full word after every step (debug replay mode).
inline VerifyResult verify(const Certificate& cert, const RelatorStore& store,
                           bool check_values = false) {
    VerifyResult res;
    Word cur = free_reduce(cert.initial);
    AbelsElem val = store.ctx.identity();
    if (check_values) val = eval(cur, store.ctx);
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const FillStep& s = cert.steps[i];
        res.max_relator_len =
            std::max(res.max_relator_len, static_cast<std::int64_t>(s.relator.size()));
        if (!store.is_relator(s.relator)) {
            res.fail_index = i;
            res.reason = "step relator fails the store rule";
            return res;
        }
        try {
            cur = apply_step(cur, s);
        } catch (const ReplayError& e) {
            res.fail_index = i;
            res.reason = e.what();
            return res;
        }
        if (check_values) {
            AbelsElem now = eval(cur, store.ctx);
            if (!(now == val)) {
                res.fail_index = i;
                res.reason = "word value changed";
                return res;
            }
        }
    }
    if (!cur.empty()) {
        res.fail_index = cert.steps.size();
        res.reason = "replay did not reach the empty word";
        return res;
    }
    res.ok = true;
    return res;
}

// ---------------------------------------------------------------------------
// Rewriter: drives a word through certified substitutions, recording steps.
// ---------------------------------------------------------------------------

class Rewriter {
  public:
    struct Delta {
        std::size_t start = 0;   // first index affected in the pre-step word
        Word removed;            // letters removed there
        std::size_t inserted = 0;  // number of letters inserted there
    };

    Rewriter(Word initial, RelatorStore store, bool check_values = false)
        : store_(std::move(store)), check_values_(check_values), cur_(free_reduce(initial)) {}

    const Word& word() const { return cur_; }
    const RelatorStore& store() const { return store_; }
    const EvalContext& ctx() const { return store_.ctx; }
    std::size_t area() const { return steps_.size(); }
    const std::vector<FillStep>& steps() const { return steps_; }
    const std::vector<Delta>& deltas() const { return deltas_; }
    std::int64_t max_relator_len() const { return max_relator_len_; }

    // Certified substitution: cur[pos : pos+len] -> repl, one step (or zero
    // when the replacement is freely equal).
    void subst(std::size_t pos, std::size_t len, const Word& repl) {
        if (pos + len > cur_.size()) throw std::logic_error("subst range out of bounds");
        Word u(cur_.begin() + static_cast<std::ptrdiff_t>(pos),
               cur_.begin() + static_cast<std::ptrdiff_t>(pos + len));
        Word r = free_reduce(concat({inverse(u), repl}));
        if (r.empty()) return;  // freely equal; reduction is free
        if (check_values_) {
            if (!(eval(u, store_.ctx) == eval(repl, store_.ctx)))
                throw std::logic_error("subst changes the value");
        }
        if (repl.empty() && static_cast<std::int64_t>(u.size()) <= store_.bound) {
            push_step({pos, u, StepDir::Delete});
            return;
        }
        if (static_cast<std::int64_t>(r.size()) > store_.bound)
            throw std::logic_error("subst window exceeds relator bound: " +
                                   std::to_string(r.size()));
        push_step({pos + len, r, StepDir::Insert});
    }

    void insert_relator(std::size_t pos, const Word& r) { push_step({pos, r, StepDir::Insert}); }

    // Replay externally produced steps (e.g. a tau-twin certificate).
    void replay(const std::vector<FillStep>& steps) {
        for (const auto& s : steps) push_step(s);
    }

    Certificate certificate(Word initial) const {
        Certificate c;
        c.initial = std::move(initial);
        c.steps = steps_;
        return c;
    }

  private:
    void push_step(const FillStep& s) {
        if (!store_.is_relator(s.relator)) throw std::logic_error("step relator fails store rule");
        Word next = apply_step(cur_, s);
        record_delta(cur_, next);
        max_relator_len_ =
            std::max(max_relator_len_, static_cast<std::int64_t>(s.relator.size()));
        cur_ = std::move(next);
        steps_.push_back(s);
        if (check_values_) {
            if (value_set_) {
                if (!(eval(cur_, store_.ctx) == value_)) throw std::logic_error("value drifted");
            } else {
                value_ = eval(cur_, store_.ctx);
                value_set_ = true;
            }
        }
    }

    void record_delta(const Word& before, const Word& after) {
        std::size_t a = 0;
        while (a < before.size() && a < after.size() && before[a] == after[a]) ++a;
        std::size_t b = 0;
        while (b < before.size() - a && b < after.size() - a &&
               before[before.size() - 1 - b] == after[after.size() - 1 - b])
            ++b;
        Delta d;
        d.start = a;
        d.removed.assign(before.begin() + static_cast<std::ptrdiff_t>(a),
                         before.end() - static_cast<std::ptrdiff_t>(b));
        d.inserted = after.size() - a - b;
        deltas_.push_back(std::move(d));
    }

    RelatorStore store_;
    bool check_values_;
    Word cur_;
    std::vector<FillStep> steps_;
    std::vector<Delta> deltas_;
    std::int64_t max_relator_len_ = 0;
    AbelsElem value_;
    bool value_set_ = false;
};

// ---------------------------------------------------------------------------
// Certificate inversion: steps' with replay(final, steps') = initial.
// ---------------------------------------------------------------------------

inline std::vector<FillStep> invert_steps(const Word& initial, const std::vector<FillStep>& steps) {
    // forward snapshots via deltas
    std::vector<Word> snaps;
    snaps.reserve(steps.size() + 1);
    snaps.push_back(free_reduce(initial));
    for (const auto& s : steps) snaps.push_back(apply_step(snaps.back(), s));

    std::vector<FillStep> out;
    out.reserve(steps.size());
    for (std::size_t i = steps.size(); i-- > 0;) {
        const Word& from = snaps[i + 1];
        const Word& to = snaps[i];
        const FillStep& s = steps[i];
        auto try_step = [&](const FillStep& cand) -> bool {
            if (cand.dir == StepDir::Delete) {
                if (cand.pos + cand.relator.size() > from.size()) return false;
                for (std::size_t k = 0; k < cand.relator.size(); ++k)
                    if (!(from[cand.pos + k] == cand.relator[k])) return false;
            } else if (cand.pos > from.size()) {
                return false;
            }
            return apply_step(from, cand) == to;
        };
        bool done = false;
        // natural first guesses
        std::vector<FillStep> guesses;
        if (s.dir == StepDir::Insert) {
            guesses.push_back({s.pos, s.relator, StepDir::Delete});
            guesses.push_back({s.pos, inverse(s.relator), StepDir::Insert});
        } else {
            guesses.push_back({s.pos, s.relator, StepDir::Insert});
        }
        for (const auto& g : guesses)
            if (try_step(g)) {
                out.push_back(g);
                done = true;
                break;
            }
        if (!done) {
            // Cyclic rotations of the relator are conjugates, hence relators
            // themselves; a splice that cancelled on both sides may need one.
            std::vector<Word> cands;
            Word ri = inverse(s.relator);
            for (std::size_t rot = 0; rot < std::max<std::size_t>(ri.size(), 1); ++rot) {
                Word c(ri.begin() + static_cast<std::ptrdiff_t>(rot), ri.end());
                c.insert(c.end(), ri.begin(), ri.begin() + static_cast<std::ptrdiff_t>(rot));
                cands.push_back(free_reduce(c));
            }
            for (std::size_t radius = 0; radius <= from.size() && !done; ++radius) {
                for (int sgn : {-1, +1}) {
                    std::int64_t q = static_cast<std::int64_t>(s.pos) +
                                     sgn * static_cast<std::int64_t>(radius);
                    if (q < 0 || q > static_cast<std::int64_t>(from.size())) continue;
                    for (const auto& c : cands) {
                        FillStep c1{static_cast<std::size_t>(q), c, StepDir::Insert};
                        if (try_step(c1)) {
                            out.push_back(c1);
                            done = true;
                            break;
                        }
                        FillStep c2{static_cast<std::size_t>(q), inverse(c), StepDir::Delete};
                        if (s.dir == StepDir::Insert && try_step(c2)) {
                            out.push_back(c2);
                            done = true;
                            break;
                        }
                    }
                    if (done || radius == 0) break;  // -0 == +0
                }
            }
        }
        if (!done) throw std::logic_error("invert_steps: no inverse step found");
    }
    return out;
}

// tau-image of a certificate step list (positions are preserved because tau
// is a letterwise bijection commuting with free reduction).
inline std::vector<FillStep> tau_steps(const std::vector<FillStep>& steps) {
    std::vector<FillStep> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back({s.pos, tau_word(s.relator), s.dir});
    return out;
}

}  // namespace abels
