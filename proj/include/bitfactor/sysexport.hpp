#ifndef BITFACTOR_SYSEXPORT_HPP
#define BITFACTOR_SYSEXPORT_HPP

#include "bits.hpp"
#include "candidates.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace bitfactor {

// How many carry digits each column's equation gets on its right side.
//
//   maxsum: enough digits for the worst sum the column can reach, counting
//           every term the coefficient can hold plus every digit an earlier
//           column could park here. Always sound, the default.
//   paper:  the shape the systems take when written out by hand. Interior
//           columns always get at least two carry digits even when the
//           running maximum needs only one (the spare digit just solves to
//           zero), and the tail stops short: no carry may land past the top
//           bit of M, nor on the top bit itself when m+n falls on it, since
//           the top column there is already paid by the boundary product.
enum class width_plan : unsigned char { maxsum, paper };

struct digit_plan {
    width_plan kind = width_plan::maxsum;
    unsigned m = 0;
    unsigned n = 0;
    unsigned top = 0;
    std::uint64_t last = 0;            // final column that carries an equation
    std::vector<unsigned> width;       // width[j], valid for 1 <= j <= last
};

inline digit_plan make_digit_plan(unsigned m, unsigned n, unsigned top, width_plan kind) {
    if (m < 1 || m > n) throw out_of_range_error("exponent pair out of order");
    const std::uint64_t mn = std::uint64_t{m} + n;

    digit_plan plan;
    plan.kind = kind;
    plan.m = m;
    plan.n = n;
    plan.top = top;
    plan.width.assign(1, 0);

    for (std::uint64_t j = 1;; ++j) {
        unsigned arrivals = 0;
        for (std::uint64_t i = 1; i < j && i <= 63; ++i)
            if (plan.width[static_cast<std::size_t>(j - i)] >= i) ++arrivals;

        const std::uint64_t terms =
            j <= mn ? std::min<std::uint64_t>(m, j) - (j > n ? j - n : 0) + 1 : 0;
        if (terms == 0 && arrivals == 0) {
            plan.last = j - 1;
            return plan;
        }
        if (j > mn + 64) throw internal_error("carry spread failed to die out");

        const std::uint64_t peak = terms + arrivals;
        unsigned h = peak == 0 ? 0u : static_cast<unsigned>(std::bit_width(peak) - 1);
        if (kind == width_plan::paper) {
            // interior columns are always written with two carry digits,
            // even where the running maximum only needs one
            if (j >= 2 && j < mn) h = std::max(h, 2u);
            // nothing may land past bit N, and when m+n sits on bit N the
            // top column takes no carries at all: its sum is the lone
            // boundary product plus arrivals and must equal exactly 1
            const std::uint64_t cap = top - (mn == top ? 1 : 0);
            const unsigned room = cap > j ? static_cast<unsigned>(cap - j) : 0u;
            h = std::min(h, room);
        }
        plan.width.push_back(h);
    }
}

namespace detail {

inline std::string product_term(unsigned a, unsigned b, unsigned m, unsigned n) {
    const bool a_pinned = a == 0 || a == m;
    const bool b_pinned = b == 0 || b == n;
    if (a_pinned && b_pinned) return "1";
    if (a_pinned) return "b" + std::to_string(b);
    if (b_pinned) return "a" + std::to_string(a);
    return "a" + std::to_string(a) + "*b" + std::to_string(b);
}

}  // namespace detail

// The whole column system for one exponent split, written symbolically, one
// equation per column. Interior digits print as a<i> and b<j>, the carry
// digit of weight 2^i emitted at column j prints as c[i,j], and g<j> stands
// for digit j of M. Every unknown is declared once on the vars line.
inline std::string export_system(const odd_bits& value, unsigned m, unsigned n,
                                 width_plan kind) {
    const unsigned N = value.top();
    if (m < 1 || m > n || (std::uint64_t{m} + n != N && std::uint64_t{m} + n + 1 != N))
        throw out_of_range_error("exponent pair does not fit the top bit");

    const digit_plan plan = make_digit_plan(m, n, N, kind);
    const std::uint64_t mn = std::uint64_t{m} + n;

    std::string doc = "system: M=" + value.to_integer().str() +
                      " m=" + std::to_string(m) + " n=" + std::to_string(n) + "\n";

    doc += "vars:";
    for (unsigned i = 1; i < m; ++i) doc += " a" + std::to_string(i);
    for (unsigned i = 1; i < n; ++i) doc += " b" + std::to_string(i);
    for (std::uint64_t j = 1; j <= plan.last; ++j)
        for (unsigned i = 1; i <= plan.width[static_cast<std::size_t>(j)]; ++i)
            doc += " c[" + std::to_string(i) + "," + std::to_string(j) + "]";
    doc += "\n";

    for (std::uint64_t j = 1; j <= plan.last; ++j) {
        doc += "col " + std::to_string(j) + ":";
        bool first = true;
        auto push_term = [&](const std::string& t) {
            doc += first ? " " : " + ";
            doc += t;
            first = false;
        };

        if (j <= mn) {
            const std::uint64_t lo = j > n ? j - n : 0;
            const std::uint64_t hi = j < m ? j : m;
            for (std::uint64_t a = lo; a <= hi; ++a)
                push_term(detail::product_term(static_cast<unsigned>(a),
                                               static_cast<unsigned>(j - a), m, n));
        }
        for (std::uint64_t i = 1; i < j && i <= 63; ++i)
            if (plan.width[static_cast<std::size_t>(j - i)] >= i)
                push_term("c[" + std::to_string(i) + "," + std::to_string(j - i) + "]");

        doc += " = g" + std::to_string(j);
        for (unsigned i = 1; i <= plan.width[static_cast<std::size_t>(j)]; ++i)
            doc += " + 2^" + std::to_string(i) + "*c[" + std::to_string(i) + "," +
                   std::to_string(j) + "]";
        doc += "\n";
    }
    return doc;
}

}  // namespace bitfactor

#endif
