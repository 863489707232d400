#ifndef BITFACTOR_SEARCH_HPP
#define BITFACTOR_SEARCH_HPP

#include "bits.hpp"
#include "candidates.hpp"
#include "column.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace bitfactor {

// One step of the solve, as reported to a trace sink. column events carry the
// full column sum s (coefficient plus arrivals), the digits chosen at that
// column if any, and the carries spread forward; take events mark the solver
// returning to a queued head choice after a dead end.
enum class trace_kind : unsigned char { column, take };

struct trace_event {
    trace_kind kind = trace_kind::column;
    std::uint64_t j = 0;
    int a_bit = -1;  // digit set this column, -1 when none
    int b_bit = -1;
    std::uint64_t s = 0;
    unsigned target = 0;
    std::uint64_t in_mask = 0;   // arriving digit indices
    std::uint64_t v = 0;         // spread remainder, valid when !pruned
    unsigned width = 0;
    bool pruned = false;
    std::uint64_t branch_ordinal = 1;  // 1-based count of finished-or-current branches
};

using trace_sink = std::function<void(const trace_event&)>;

struct solve_options {
    bool check_invariants = true;
    trace_sink trace;
};

struct system_solution {
    bigint a;
    bigint b;
    partial_factors digits;
};

namespace detail {

struct branch_frame {
    std::uint64_t j = 0;
    unsigned a_bit = 0;
    unsigned b_bit = 0;
    std::uint64_t known = 0;
    carry_ledger led;
};

}  // namespace detail

// Walk the columns of M = A * B for one exponent split, depth first over the
// head choices. Columns left of m branch two ways on (alpha_j, beta_j),
// columns up to n pin beta_j by parity, everything after is pure checking;
// carries spread forward and are never guessed. A branch survives to the end
// only if, past column m + n, the pending carries pay out exactly the
// remaining digits of M. Returns the first solution in branch order, or
// nothing once every branch has pruned.
inline std::optional<system_solution>
solve_system(const odd_bits& value, const exponent_pair& pair, search_stats& st,
             const solve_options& opt = {}) {
    const unsigned m = pair.m;
    const unsigned n = pair.n;
    const std::uint64_t last = std::uint64_t{m} + n;
    const unsigned N = value.top();
    st.pairs_examined += 1;

    partial_factors pf = partial_factors::make(m, n);
    carry_ledger led;
    led.reset(1);
    std::vector<detail::branch_frame> queued;
    std::uint64_t branch_ordinal = 1;

    auto checked = [&](const carry_ledger& l) {
        if (!opt.check_invariants) return;
        if (!l.views_agree())
            throw internal_error("carry views diverged");
        if (l.acc() > std::uint64_t{m} + 1)
            throw internal_error("carry outgrew the long-multiplication bound");
    };

    auto note_column = [&](std::uint64_t j, int a_bit, int b_bit, std::uint64_t s,
                           unsigned target, std::uint64_t in_mask,
                           const column_outcome& out) {
        if (!opt.trace) return;
        trace_event ev;
        ev.kind = trace_kind::column;
        ev.j = j;
        ev.a_bit = a_bit;
        ev.b_bit = b_bit;
        ev.s = s;
        ev.target = target;
        ev.in_mask = in_mask;
        ev.v = out.v;
        ev.width = out.width;
        ev.pruned = out.status == column_status::contradiction;
        ev.branch_ordinal = branch_ordinal;
        opt.trace(ev);
    };

    std::uint64_t j = 1;
    for (;;) {
        if (j > last && led.empty() && j > N) {
            st.leaves += 1;
            system_solution sol{factor_value(m, pf.alpha), factor_value(n, pf.beta), pf};
            if (opt.check_invariants && sol.a * sol.b != value.to_integer())
                throw internal_error("solution fails to multiply back");
            return sol;
        }

        const unsigned target = value.bit(j);
        const std::uint64_t in_mask = led.arriving_mask();
        int a_bit = -1, b_bit = -1;
        column_outcome out;

        if (j <= last) {
            const coefficient c = column_coefficient(pf, j, st);
            if (c.wants_alpha) {
                const unsigned parity =
                    static_cast<unsigned>(c.known + led.carry_in() + target) & 1;
                st.primitive_ops += 2;
                const auto choices = head_branches(parity);
                queued.push_back({j, choices[1].first, choices[1].second, c.known, led});
                st.branches_opened += 1;
                a_bit = static_cast<int>(choices[0].first);
                b_bit = static_cast<int>(choices[0].second);
                pf.alpha[j] = static_cast<bit_state>(a_bit);
                pf.beta[j] = static_cast<bit_state>(b_bit);
                st.primitive_ops += 2;
                out = resolve_column(c.known + choices[0].first + choices[0].second,
                                     target, led, st);
                if (out.status == column_status::contradiction)
                    throw internal_error("head column failed its own parity");
                out.status = column_status::branched;
            } else if (c.wants_beta) {
                const unsigned parity =
                    static_cast<unsigned>(c.known + led.carry_in() + target) & 1;
                st.primitive_ops += 2;
                const unsigned b = forced_bit(parity);
                pf.beta[j] = static_cast<bit_state>(b);
                b_bit = static_cast<int>(b);
                st.primitive_ops += 1;
                out = resolve_column(c.known + b, target, led, st);
                if (out.status == column_status::contradiction)
                    throw internal_error("forced column failed its own parity");
                out.status = column_status::forced;
            } else {
                out = resolve_column(c.known, target, led, st);
            }
            note_column(j, a_bit, b_bit, c.known + (a_bit > 0) + (b_bit > 0) +
                        static_cast<std::uint64_t>(std::popcount(in_mask)),
                        target, in_mask, out);
        } else {
            out = resolve_column(0, target, led, st);
            note_column(j, -1, -1, std::popcount(in_mask), target, in_mask, out);
        }

        if (out.status == column_status::contradiction) {
            st.leaves += 1;
            if (queued.empty()) return std::nullopt;
            detail::branch_frame f = std::move(queued.back());
            queued.pop_back();
            pf.rollback(static_cast<unsigned>(f.j));
            led = f.led;
            ++branch_ordinal;
            if (opt.trace) {
                trace_event ev;
                ev.kind = trace_kind::take;
                ev.j = f.j;
                ev.a_bit = static_cast<int>(f.a_bit);
                ev.b_bit = static_cast<int>(f.b_bit);
                ev.branch_ordinal = branch_ordinal;
                opt.trace(ev);
            }
            const unsigned take_target = value.bit(f.j);
            const std::uint64_t take_mask = led.arriving_mask();
            pf.alpha[f.j] = static_cast<bit_state>(f.a_bit);
            pf.beta[f.j] = static_cast<bit_state>(f.b_bit);
            st.primitive_ops += 2;
            out = resolve_column(f.known + f.a_bit + f.b_bit, take_target, led, st);
            if (out.status == column_status::contradiction)
                throw internal_error("head column failed its own parity");
            checked(led);
            note_column(f.j, static_cast<int>(f.a_bit), static_cast<int>(f.b_bit),
                        f.known + f.a_bit + f.b_bit +
                            static_cast<std::uint64_t>(std::popcount(take_mask)),
                        take_target, take_mask, out);
            j = f.j + 1;
            continue;
        }

        checked(led);
        ++j;
    }
}

enum class verdict : unsigned char { prime, composite };

struct factor_result {
    verdict kind = verdict::prime;
    bigint a;
    bigint b;
    std::optional<exponent_pair> witness;
    search_stats stats;
};

// Try every exponent split in order; the first surviving branch anywhere
// names a factor pair. If all of them die, no odd split of M exists at all,
// and M is prime.
inline factor_result factor_once(const odd_bits& value, const solve_options& opt = {}) {
    factor_result r;
    for (const exponent_pair& pair : exponent_pairs(value)) {
        auto sol = solve_system(value, pair, r.stats, opt);
        if (sol) {
            r.kind = verdict::composite;
            // square splits can surface either order
            r.a = std::min(sol->a, sol->b);
            r.b = std::max(sol->a, sol->b);
            r.witness = pair;
            return r;
        }
    }
    return r;
}

inline bool decide_prime(const odd_bits& value, const solve_options& opt = {}) {
    return factor_once(value, opt).kind == verdict::prime;
}

// Full prime factorisation of an odd value >= 3, smallest factors first.
// Cofactors of a split go back on the worklist until everything is prime.
inline std::vector<bigint> factor_completely(const bigint& value,
                                             search_stats* total = nullptr,
                                             const solve_options& opt = {}) {
    std::vector<bigint> primes;
    std::vector<bigint> work{value};
    while (!work.empty()) {
        const bigint v = work.back();
        work.pop_back();
        const factor_result r = factor_once(odd_bits::from_integer(v), opt);
        if (total) total->absorb(r.stats);
        if (r.kind == verdict::prime) {
            primes.push_back(v);
        } else {
            work.push_back(r.a);
            work.push_back(r.b);
        }
    }
    std::sort(primes.begin(), primes.end());
    return primes;
}

}  // namespace bitfactor

#endif
