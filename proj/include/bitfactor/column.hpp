#ifndef BITFACTOR_COLUMN_HPP
#define BITFACTOR_COLUMN_HPP

#include "bits.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

namespace bitfactor {

// Work counters. primitive_ops counts single integer operations performed by
// column evaluation: one per term added while accumulating a coefficient, one
// per product of two interior digits, and in resolution one each for the
// carry-in add, the parity check and the target subtract, one per carry
// digit position spread forward, three per accumulator update. Nothing
// outside coefficient
// accumulation, column resolution and carry bookkeeping is counted.
struct search_stats {
    std::uint64_t branches_opened = 0;  // head columns where two choices were queued
    std::uint64_t leaves = 0;           // finished branch ends, pruned or complete
    std::uint64_t columns_resolved = 0;
    std::uint64_t primitive_ops = 0;
    std::uint64_t pairs_examined = 0;

    void absorb(const search_stats& other) {
        branches_opened += other.branches_opened;
        leaves += other.leaves;
        columns_resolved += other.columns_resolved;
        primitive_ops += other.primitive_ops;
        pairs_examined += other.pairs_examined;
    }
};

// One candidate split M = A * B with A = 2^m + sum alpha_i 2^i + 1 and
// B = 2^n + sum beta_j 2^j + 1. Digits 0, m of alpha and 0, n of beta are
// pinned to 1 up front; the interior fills in one column at a time and is
// only ever cleared by backtracking.
struct partial_factors {
    unsigned m = 0;
    unsigned n = 0;
    std::vector<bit_state> alpha;  // size m + 1
    std::vector<bit_state> beta;   // size n + 1

    static partial_factors make(unsigned m, unsigned n) {
        if (m < 1 || m > n) throw out_of_range_error("exponent pair out of order");
        partial_factors pf;
        pf.m = m;
        pf.n = n;
        pf.alpha.assign(m + 1, bit_state::unset);
        pf.beta.assign(n + 1, bit_state::unset);
        pf.alpha[0] = pf.alpha[m] = bit_state::one;
        pf.beta[0] = pf.beta[n] = bit_state::one;
        return pf;
    }

    // Drop every interior digit at column j or above.
    void rollback(unsigned j) {
        for (unsigned i = j; i < m; ++i) alpha[i] = bit_state::unset;
        for (unsigned i = j; i < n; ++i) beta[i] = bit_state::unset;
    }
};

// Column j of the product collects sum_{a+b=j} alpha_a beta_b. With every
// digit below j already decided, the only possibly-open terms are alpha_j
// (while j < m) and beta_j (while j < n); both enter with coefficient 1
// because their partners are the pinned digits at index 0.
struct coefficient {
    std::uint64_t known = 0;
    bool wants_alpha = false;
    bool wants_beta = false;
};

inline coefficient column_coefficient(const partial_factors& pf, std::uint64_t j,
                                      search_stats& st) {
    if (j < 1 || j > std::uint64_t{pf.m} + pf.n)
        throw out_of_range_error("column index outside the product");

    coefficient c;
    const std::uint64_t lo = j > pf.n ? j - pf.n : 0;
    const std::uint64_t hi = j < pf.m ? j : pf.m;
    for (std::uint64_t a = lo; a <= hi; ++a) {
        const std::uint64_t b = j - a;
        if (a == j && j < pf.m) {
            c.wants_alpha = true;
            continue;
        }
        if (b == j && j < pf.n) {
            c.wants_beta = true;
            continue;
        }
        const bit_state va = pf.alpha[static_cast<std::size_t>(a)];
        const bit_state vb = pf.beta[static_cast<std::size_t>(b)];
#ifndef NDEBUG
        if (va == bit_state::unset || vb == bit_state::unset)
            throw internal_error("coefficient read an undecided digit");
#endif
        const bool interior_product =
            a >= 1 && a < pf.m && b >= 1 && b < pf.n;
        if (interior_product) st.primitive_ops += 1;
        st.primitive_ops += 1;
        c.known += static_cast<std::uint64_t>(va) * static_cast<std::uint64_t>(vb);
    }
    return c;
}

// The two digit choices a head column may take, ordered. An even column sum
// needs alpha_j + beta_j even, an odd one needs it odd; each parity leaves
// exactly two assignments.
inline std::array<std::pair<unsigned, unsigned>, 2> head_branches(unsigned parity) {
    if (parity & 1) return {{{0u, 1u}, {1u, 0u}}};
    return {{{0u, 0u}, {1u, 1u}}};
}

// A middle column has beta_j as its only free digit, entering with weight 1,
// so the column's parity pins it outright. Middle columns never fail.
inline unsigned forced_bit(unsigned parity) { return parity & 1; }

// Pending carry digits. Two bookkeeping views of the same quantity:
//
//   * spread: a digit of weight 2^i emitted at column j is parked until
//     column j + i, where it arrives with weight 1. masks[c % window] has
//     bit i set when a digit emitted i columns back is due at column c.
//   * packed: acc is the plain long-multiplication carry into the next
//     column, i.e. every pending digit weighted by 2^(arrival - next).
//
// The spread view is what gets printed and what the equations talk about;
// the packed view is one integer. They stay equal step for step, and debug
// checks insist on it.
class carry_ledger {
  public:
    static constexpr unsigned window = 16;

    void reset(std::uint64_t next_column) {
        masks_.fill(0);
        acc_ = 0;
        next_ = next_column;
    }

    std::uint64_t next_column() const { return next_; }
    std::uint64_t acc() const { return acc_; }
    bool empty() const { return acc_ == 0; }

    // Digit indices arriving at the column about to be resolved.
    std::uint64_t arriving_mask() const { return masks_[next_ % window]; }

    unsigned carry_in() const {
        return static_cast<unsigned>(std::popcount(arriving_mask()));
    }

    // Consume the arrivals at the current column, emit the digits of v, and
    // step to the next column. coeff_and_target = known coefficient plus any
    // digits chosen this column, minus the target digit; the packed carry
    // advances as acc' = (acc + coeff - target) / 2.
    void advance(std::uint64_t v, std::int64_t coeff_minus_target, search_stats& st) {
        masks_[next_ % window] = 0;
        std::uint64_t rest = v >> 1;
        for (unsigned i = 1; rest != 0; ++i, rest >>= 1) {
            st.primitive_ops += 1;
            if (rest & 1) {
                std::uint64_t& slot = masks_[(next_ + i) % window];
#ifndef NDEBUG
                if (slot & (std::uint64_t{1} << i))
                    throw internal_error("carry digit slot already taken");
#endif
                slot |= std::uint64_t{1} << i;
            }
        }
        acc_ = static_cast<std::uint64_t>(
            (static_cast<std::int64_t>(acc_) + coeff_minus_target) / 2);
        st.primitive_ops += 3;
        ++next_;
    }

    // Spread view re-totalled and compared against the packed carry. Linear
    // in the window, only used by checks.
    bool views_agree() const {
        std::uint64_t total = 0;
        for (unsigned t = 0; t < window; ++t)
            total += static_cast<std::uint64_t>(
                         std::popcount(masks_[(next_ + t) % window]))
                     << t;
        return total == acc_;
    }

  private:
    std::array<std::uint64_t, window> masks_{};
    std::uint64_t acc_ = 0;
    std::uint64_t next_ = 1;
};

enum class column_status : unsigned char { forced, branched, check_ok, contradiction };

// What one resolved column produced: the emitted carry digits encode
// v = coefficient + carry-in - target, and width is the highest digit index
// used (necessarily v's bit length minus one).
struct column_outcome {
    column_status status = column_status::check_ok;
    std::uint64_t v = 0;
    unsigned width = 0;
};

// Settle one column: check parity against the target digit and spread the
// even remainder forward as carry digits. The remainder is unique, there is
// never a second way to split it, which is why carries are propagated and
// not searched.
inline column_outcome resolve_column(std::uint64_t coeff, unsigned target,
                                     carry_ledger& led, search_stats& st) {
    st.columns_resolved += 1;
    const std::uint64_t s = coeff + led.carry_in();
    st.primitive_ops += 2;  // carry-in add, parity check
    if (((s ^ target) & 1) != 0)
        return {column_status::contradiction, s, 0};

    const std::uint64_t v = s - target;
    st.primitive_ops += 1;
    const unsigned width =
        v == 0 ? 0u : static_cast<unsigned>(std::bit_width(v) - 1);
    if (width >= carry_ledger::window)
        throw too_large_error("column sum overflows the carry window");
    led.advance(v, static_cast<std::int64_t>(coeff) - target, st);
    return {column_status::check_ok, v, width};
}

}  // namespace bitfactor

#endif
