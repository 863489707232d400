#ifndef BITFACTOR_BITS_HPP
#define BITFACTOR_BITS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bitfactor {

using bigint = boost::multiprecision::cpp_int;

// Input rejections. Everything here means the caller handed us something the
// method is not defined for; internal_error below means the library itself
// broke an invariant.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct malformed_error : input_error {
    using input_error::input_error;
};
struct not_odd_error : input_error {
    using input_error::input_error;
};
struct too_small_error : input_error {
    using input_error::input_error;
};
struct undecided_bit_error : input_error {
    using input_error::input_error;
};
struct out_of_range_error : input_error {
    using input_error::input_error;
};
struct too_large_error : input_error {
    using input_error::input_error;
};
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

enum class bit_state : unsigned char { zero = 0, one = 1, unset = 2 };

// An odd integer M >= 3 held as its binary digits:
//   M = 2^top + sum_{1 <= i < top} gamma_i 2^i + 1.
// Digits 0 and top are implicitly 1; bit() answers for any index, returning
// 0 above the top. The solver addresses columns straight off this.
class odd_bits {
  public:
    odd_bits() = default;

    static odd_bits from_integer(const bigint& value) {
        if (value < 3) throw too_small_error("value below 3 has no odd factor split");
        if (!boost::multiprecision::bit_test(value, 0))
            throw not_odd_error("even value");
        odd_bits out;
        out.top_ = static_cast<unsigned>(boost::multiprecision::msb(value));
        out.gamma_.assign(out.top_, 0);
        for (unsigned i = 1; i < out.top_; ++i)
            out.gamma_[i] = boost::multiprecision::bit_test(value, i) ? 1 : 0;
        return out;
    }

    unsigned top() const { return top_; }

    unsigned bit(std::uint64_t j) const {
        if (j == 0 || j == top_) return 1;
        if (j > top_) return 0;
        return gamma_[static_cast<std::size_t>(j)];
    }

    bigint to_integer() const {
        bigint v = 1;
        boost::multiprecision::bit_set(v, top_);
        for (unsigned i = 1; i < top_; ++i)
            if (gamma_[i]) boost::multiprecision::bit_set(v, i);
        return v;
    }

  private:
    unsigned top_ = 1;
    std::vector<unsigned char> gamma_;  // index i holds digit gamma_i, [1, top)
};

// Accepts decimal, 0x hex or 0b binary, with an optional leading '+'.
inline bigint parse_integer(const std::string& text) {
    std::size_t pos = 0;
    if (pos < text.size() && text[pos] == '+') ++pos;
    if (pos == text.size()) throw malformed_error("empty number");

    int base = 10;
    if (text.size() - pos > 2 && text[pos] == '0') {
        char c = text[pos + 1];
        if (c == 'x' || c == 'X') {
            base = 16;
            pos += 2;
        } else if (c == 'b' || c == 'B') {
            base = 2;
            pos += 2;
        }
    }

    bigint v = 0;
    bool any = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else
            throw malformed_error(std::string("bad digit '") + c + "'");
        if (d >= base) throw malformed_error(std::string("bad digit '") + c + "'");
        v = v * base + d;
        any = true;
    }
    if (!any) throw malformed_error("empty number");
    return v;
}

inline odd_bits parse_odd(const std::string& text) {
    return odd_bits::from_integer(parse_integer(text));
}

// Value of one factor candidate, 2^m + sum alpha_i 2^i + 1 with every interior
// digit pinned. bits[i] is alpha_i for 1 <= i < m; bits[0] and bits[m] are
// implied 1 and ignored if present.
inline bigint factor_value(unsigned m, const std::vector<bit_state>& bits) {
    bigint v = 1;
    boost::multiprecision::bit_set(v, m);
    for (unsigned i = 1; i < m; ++i) {
        if (i >= bits.size() || bits[i] == bit_state::unset)
            throw undecided_bit_error("factor digit " + std::to_string(i) + " undecided");
        if (bits[i] == bit_state::one) boost::multiprecision::bit_set(v, i);
    }
    return v;
}

inline std::string to_binary_string(const bigint& value) {
    if (value == 0) return "0";
    std::string s;
    for (int i = static_cast<int>(boost::multiprecision::msb(value)); i >= 0; --i)
        s += boost::multiprecision::bit_test(value, static_cast<unsigned>(i)) ? '1' : '0';
    return s;
}

}  // namespace bitfactor

#endif
