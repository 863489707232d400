#ifndef BITFACTOR_ORACLE_HPP
#define BITFACTOR_ORACLE_HPP

#include "bits.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace bitfactor {

// Reference answers for tests. Nothing here is fast; everything here is
// obviously correct.

struct divisor_split {
    bigint a;  // smallest nontrivial divisor
    bigint b;  // cofactor, a * b == input
};

inline std::optional<divisor_split> trial_division(const bigint& value) {
    if (value < 3 || !boost::multiprecision::bit_test(value, 0))
        throw input_error("trial division wants an odd value >= 3");
    for (bigint d = 3; d * d <= value; d += 2) {
        if (value % d == 0) return divisor_split{d, value / d};
    }
    return std::nullopt;
}

inline bool is_prime_by_division(const bigint& value) {
    return !trial_division(value).has_value();
}

// Every factor pair reachable from one exponent split, found by trying all
// 2^(m-1+n-1) interior digit assignments. Results are sorted by first value.
// Guarded to m+n <= 24 so a careless call cannot wedge a test run.
inline std::vector<std::pair<bigint, bigint>>
exhaustive_system_solve(const odd_bits& value, unsigned m, unsigned n) {
    if (m < 1 || m > n) throw out_of_range_error("exponent pair out of order");
    if (m + n > 24) throw too_large_error("exhaustive solve capped at m+n <= 24");

    const bigint target = value.to_integer();
    std::vector<std::pair<bigint, bigint>> hits;

    const unsigned abits = m - 1, bbits = n - 1;
    const std::uint64_t acount = std::uint64_t{1} << abits;
    const std::uint64_t bcount = std::uint64_t{1} << bbits;
    for (std::uint64_t ai = 0; ai < acount; ++ai) {
        const std::uint64_t a = (std::uint64_t{1} << m) + (ai << 1) + 1;
        for (std::uint64_t bi = 0; bi < bcount; ++bi) {
            const std::uint64_t b = (std::uint64_t{1} << n) + (bi << 1) + 1;
            if (bigint(a) * b == target) hits.emplace_back(a, b);
        }
    }
    std::sort(hits.begin(), hits.end());
    return hits;
}

}  // namespace bitfactor

#endif
