#include <bitfactor/search.hpp>
#include <bitfactor/sysexport.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace bitfactor;

namespace {

std::vector<unsigned> widths_of(unsigned m, unsigned n, unsigned top, width_plan kind) {
    const digit_plan plan = make_digit_plan(m, n, top, kind);
    return {plan.width.begin() + 1, plan.width.end()};
}

}  // namespace

TEST_CASE("digit widths for every split of the fourth fermat number") {
    // Hand-tabulated from the written-out systems: four splits run two carry
    // digits wide through the middle, the three with m >= 5 need three.
    const std::vector<unsigned> narrow{1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1, 0};
    const std::vector<unsigned> wide{1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 2, 2, 2, 1, 0};
    CHECK(widths_of(1, 14, 16, width_plan::paper) == narrow);
    CHECK(widths_of(2, 13, 16, width_plan::paper) == narrow);
    CHECK(widths_of(3, 12, 16, width_plan::paper) == narrow);
    CHECK(widths_of(4, 11, 16, width_plan::paper) == narrow);
    CHECK(widths_of(5, 10, 16, width_plan::paper) == wide);
    CHECK(widths_of(6, 9, 16, width_plan::paper) == wide);
    CHECK(widths_of(7, 8, 16, width_plan::paper) == wide);
}

TEST_CASE("the untruncated plan tracks exact running maxima") {
    // the thin split never sums past 3, so one digit per column suffices and
    // the spread dies exactly at the top bit
    const std::vector<unsigned> thin{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0};
    CHECK(widths_of(1, 14, 16, width_plan::maxsum) == thin);
    CHECK(make_digit_plan(1, 14, 16, width_plan::maxsum).last == 16);

    // a mid split spreads one column past the top bit before dying out; the
    // trimmed plan cuts that column off
    const std::vector<unsigned> mid{1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 2, 2, 2, 1, 1, 0};
    CHECK(widths_of(5, 10, 16, width_plan::maxsum) == mid);
    CHECK(make_digit_plan(5, 10, 16, width_plan::maxsum).last == 17);
    CHECK(make_digit_plan(5, 10, 16, width_plan::paper).last == 16);
}

TEST_CASE("width always covers the worst column sum") {
    // 1 + (2^(h+1) - 2) >= terms + possible arrivals, for either plan on the
    // untruncated columns.
    for (unsigned m = 1; m <= 6; ++m) {
        for (unsigned n = m; m + n <= 14; ++n) {
            for (unsigned top = m + n; top <= m + n + 1; ++top) {
                const digit_plan plan = make_digit_plan(m, n, top, width_plan::maxsum);
                for (std::uint64_t j = 1; j <= plan.last; ++j) {
                    std::uint64_t arrivals = 0;
                    for (std::uint64_t i = 1; i < j && i <= 63; ++i)
                        if (plan.width[j - i] >= i) ++arrivals;
                    const std::uint64_t terms =
                        j <= m + n ? std::min<std::uint64_t>(m, j) -
                                         (j > n ? j - n : 0) + 1
                                   : 0;
                    INFO("(" << m << "," << n << ") col " << j);
                    CHECK((std::uint64_t{1} << (plan.width[j] + 1)) - 1 >=
                          terms + arrivals);
                }
            }
        }
    }
}

TEST_CASE("exported system for the thin split, trimmed plan") {
    const std::string expected =
        "system: M=65537 m=1 n=14\n"
        "vars: b1 b2 b3 b4 b5 b6 b7 b8 b9 b10 b11 b12 b13"
        " c[1,1] c[1,2] c[2,2] c[1,3] c[2,3] c[1,4] c[2,4] c[1,5] c[2,5]"
        " c[1,6] c[2,6] c[1,7] c[2,7] c[1,8] c[2,8] c[1,9] c[2,9]"
        " c[1,10] c[2,10] c[1,11] c[2,11] c[1,12] c[2,12] c[1,13] c[2,13]"
        " c[1,14] c[2,14] c[1,15]\n"
        "col 1: b1 + 1 = g1 + 2^1*c[1,1]\n"
        "col 2: b2 + b1 + c[1,1] = g2 + 2^1*c[1,2] + 2^2*c[2,2]\n"
        "col 3: b3 + b2 + c[1,2] = g3 + 2^1*c[1,3] + 2^2*c[2,3]\n"
        "col 4: b4 + b3 + c[1,3] + c[2,2] = g4 + 2^1*c[1,4] + 2^2*c[2,4]\n"
        "col 5: b5 + b4 + c[1,4] + c[2,3] = g5 + 2^1*c[1,5] + 2^2*c[2,5]\n"
        "col 6: b6 + b5 + c[1,5] + c[2,4] = g6 + 2^1*c[1,6] + 2^2*c[2,6]\n"
        "col 7: b7 + b6 + c[1,6] + c[2,5] = g7 + 2^1*c[1,7] + 2^2*c[2,7]\n"
        "col 8: b8 + b7 + c[1,7] + c[2,6] = g8 + 2^1*c[1,8] + 2^2*c[2,8]\n"
        "col 9: b9 + b8 + c[1,8] + c[2,7] = g9 + 2^1*c[1,9] + 2^2*c[2,9]\n"
        "col 10: b10 + b9 + c[1,9] + c[2,8] = g10 + 2^1*c[1,10] + 2^2*c[2,10]\n"
        "col 11: b11 + b10 + c[1,10] + c[2,9] = g11 + 2^1*c[1,11] + 2^2*c[2,11]\n"
        "col 12: b12 + b11 + c[1,11] + c[2,10] = g12 + 2^1*c[1,12] + 2^2*c[2,12]\n"
        "col 13: b13 + b12 + c[1,12] + c[2,11] = g13 + 2^1*c[1,13] + 2^2*c[2,13]\n"
        "col 14: 1 + b13 + c[1,13] + c[2,12] = g14 + 2^1*c[1,14] + 2^2*c[2,14]\n"
        "col 15: 1 + c[1,14] + c[2,13] = g15 + 2^1*c[1,15]\n"
        "col 16: c[1,15] + c[2,14] = g16\n";
    CHECK(export_system(odd_bits::from_integer(65537), 1, 14, width_plan::paper) ==
          expected);
}

TEST_CASE("exported system for a square split") {
    const std::string expected =
        "system: M=9 m=1 n=1\n"
        "vars: c[1,1] c[1,2]\n"
        "col 1: 1 + 1 = g1 + 2^1*c[1,1]\n"
        "col 2: 1 + c[1,1] = g2 + 2^1*c[1,2]\n"
        "col 3: c[1,2] = g3\n";
    CHECK(export_system(odd_bits::from_integer(9), 1, 1, width_plan::paper) == expected);
    CHECK(export_system(odd_bits::from_integer(9), 1, 1, width_plan::maxsum) == expected);
}

TEST_CASE("exported system when the exponents reach the top bit") {
    // m+n lands on bit 4 of 25, so column 3 emits nothing and column 4 is
    // the bare boundary product
    const std::string expected =
        "system: M=25 m=2 n=2\n"
        "vars: a1 b1 c[1,1] c[1,2]\n"
        "col 1: b1 + a1 = g1 + 2^1*c[1,1]\n"
        "col 2: 1 + a1*b1 + 1 + c[1,1] = g2 + 2^1*c[1,2]\n"
        "col 3: a1 + b1 + c[1,2] = g3\n"
        "col 4: 1 = g4\n";
    CHECK(export_system(odd_bits::from_integer(25), 2, 2, width_plan::paper) == expected);
}

TEST_CASE("mismatched pairs are refused") {
    const odd_bits bits = odd_bits::from_integer(45);
    CHECK_THROWS_AS(export_system(bits, 1, 2, width_plan::paper), out_of_range_error);
    CHECK_THROWS_AS(export_system(bits, 3, 2, width_plan::paper), out_of_range_error);
    CHECK_THROWS_AS(export_system(bits, 0, 5, width_plan::paper), out_of_range_error);
    CHECK_NOTHROW(export_system(bits, 2, 3, width_plan::paper));
    CHECK_NOTHROW(export_system(bits, 2, 2, width_plan::paper));
}

TEST_CASE("every unknown is declared exactly once and used") {
    for (const auto& [m, n] : std::vector<std::pair<unsigned, unsigned>>{
             {1, 14}, {4, 11}, {7, 8}}) {
        for (const width_plan kind : {width_plan::maxsum, width_plan::paper}) {
            const std::string doc =
                export_system(odd_bits::from_integer(65537), m, n, kind);
            std::istringstream in(doc);
            std::string line;
            std::getline(in, line);  // system header

            REQUIRE(std::getline(in, line));
            REQUIRE(line.rfind("vars:", 0) == 0);
            std::istringstream vars(line.substr(5));
            std::set<std::string> declared;
            std::string tok;
            while (vars >> tok) {
                INFO(tok << " declared twice");
                CHECK(declared.insert(tok).second);
            }
            CHECK(declared.size() ==
                  (m - 1) + (n - 1) +
                      [&] {
                          const digit_plan plan = make_digit_plan(m, n, 16, kind);
                          std::size_t total = 0;
                          for (std::uint64_t j = 1; j <= plan.last; ++j)
                              total += plan.width[j];
                          return total;
                      }());

            std::set<std::string> used;
            while (std::getline(in, line)) {
                std::string cur;
                auto flush_tok = [&] {
                    if (cur.empty()) return;
                    if (cur[0] == 'a' || cur[0] == 'b' || cur[0] == 'c')
                        if (cur.size() > 1) used.insert(cur);
                    cur.clear();
                };
                for (const char ch : line) {
                    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '[' ||
                        ch == ']' || ch == ',')
                        cur += ch;
                    else
                        flush_tok();
                }
                flush_tok();
            }
            for (const auto& name : declared) {
                INFO(name << " declared but never used");
                CHECK(used.count(name) == 1);
            }
            for (const auto& name : used) {
                if (name[0] == 'g' || name.rfind("col", 0) == 0) continue;
                INFO(name << " used but never declared");
                CHECK(declared.count(name) == 1);
            }
        }
    }
}

TEST_CASE("solver carries stay inside the planned widths") {
    for (unsigned value = 9; value <= 511; value += 2) {
        const odd_bits bits = odd_bits::from_integer(value);
        for (const exponent_pair& p : exponent_pairs(bits)) {
            const digit_plan plan =
                make_digit_plan(p.m, p.n, bits.top(), width_plan::maxsum);
            solve_options opt;
            opt.trace = [&](const trace_event& ev) {
                if (ev.kind != trace_kind::column || ev.pruned) return;
                if (ev.j <= plan.last) {
                    INFO(value << " (" << p.m << "," << p.n << ") col " << ev.j);
                    CHECK(ev.width <= plan.width[ev.j]);
                } else {
                    CHECK(ev.v == 0);
                }
            };
            search_stats st;
            (void)solve_system(bits, p, st, opt);
        }
    }
}
