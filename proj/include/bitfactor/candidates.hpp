#ifndef BITFACTOR_CANDIDATES_HPP
#define BITFACTOR_CANDIDATES_HPP

#include "bits.hpp"

#include <cstdint>
#include <vector>

namespace bitfactor {

// Which total the two factor exponents make. Any odd M = A * B with
// A = 2^m + ... + 1 and B = 2^n + ... + 1 forces m + n to land on the top
// bit index N or one below it: the product's leading term is 2^(m+n) and the
// cross terms can push at most one extra bit upward.
enum class sum_kind : unsigned char { below_top, at_top };

struct exponent_pair {
    unsigned m = 0;
    unsigned n = 0;
    sum_kind kind = sum_kind::below_top;
    unsigned k0 = 0;                  // floor(log2 m)
    std::vector<unsigned char> eps;   // binary digits of m, eps[i] = bit i
};

inline exponent_pair make_exponent_pair(unsigned m, unsigned n, sum_kind kind) {
    exponent_pair p;
    p.m = m;
    p.n = n;
    p.kind = kind;
    unsigned k0 = 0;
    while ((m >> (k0 + 1)) != 0) ++k0;
    p.k0 = k0;
    p.eps.assign(k0 + 1, 0);
    for (unsigned i = 0; i <= k0; ++i) p.eps[i] = (m >> i) & 1;
    return p;
}

// Highest set digit strictly between bit 0 and the top bit; 0 when the value
// is 2^N + 1 and has none.
inline unsigned second_bit_index(const odd_bits& value) {
    for (unsigned j = value.top(); j-- > 1;)
        if (value.bit(j)) return j;
    return 0;
}

// All exponent splits worth trying, in the order they are tried: the
// m + n = N - 1 group first, then m + n = N, each ascending in m with
// m <= n. When the second-highest digit sits at or below N/2 the product
// of two (N - m)-ish factors cannot reach back down to it, so the
// m + n = N group is dropped whole.
inline std::vector<exponent_pair> exponent_pairs(const odd_bits& value) {
    const unsigned N = value.top();
    std::vector<exponent_pair> out;
    if (N < 2) return out;

    for (unsigned m = 1; 2 * m <= N - 1; ++m)
        out.push_back(make_exponent_pair(m, N - 1 - m, sum_kind::below_top));

    const unsigned k = second_bit_index(value);
    if (2 * k > N) {
        for (unsigned m = 1; 2 * m <= N; ++m)
            out.push_back(make_exponent_pair(m, N - m, sum_kind::at_top));
    }
    return out;
}

}  // namespace bitfactor

#endif
