#ifndef BITFACTOR_BENCH_HPP
#define BITFACTOR_BENCH_HPP

#include "bits.hpp"
#include "search.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace bitfactor {

struct bench_row {
    bigint value;
    unsigned top = 0;
    std::uint64_t pairs = 0;
    std::uint64_t branches = 0;
    std::uint64_t columns = 0;
    std::uint64_t ops = 0;
    double bound = 0.0;
    bool composite = false;
    bigint a;
    bigint b;
    std::uint64_t micros = 0;
};

// Closed-form ceiling on primitive operations, in terms of the value alone:
// 4 (sqrt(M) - 1) (log2 M)^2 + log2 M. Reported next to the measured count.
inline double paper_bound(const bigint& value) {
    const double d = value.convert_to<double>();
    const double lg = std::log2(d);
    return 4.0 * (std::sqrt(d) - 1.0) * lg * lg + lg;
}

// Tighter ceiling in terms of the top bit index: each of the
// 2^floor(N/2) + 2^floor((N-1)/2) - 2 head leaves across all splits costs at
// most 2 N^2 operations, plus N for the trimmings. This one is asserted over
// sweeps in the tests.
inline std::uint64_t ops_bound(unsigned top) {
    if (top > 61) throw too_large_error("operation bound overflows past 61 bits");
    const std::uint64_t leaves =
        (std::uint64_t{1} << (top / 2)) + (std::uint64_t{1} << ((top - 1) / 2)) - 2;
    return 2 * std::uint64_t{top} * top * leaves + top;
}

inline bench_row bench_one(const bigint& value) {
    const odd_bits bits = odd_bits::from_integer(value);
    const auto start = std::chrono::steady_clock::now();
    const factor_result r = factor_once(bits);
    const auto stop = std::chrono::steady_clock::now();

    bench_row row;
    row.value = value;
    row.top = bits.top();
    row.pairs = r.stats.pairs_examined;
    row.branches = r.stats.branches_opened;
    row.columns = r.stats.columns_resolved;
    row.ops = r.stats.primitive_ops;
    row.bound = paper_bound(value);
    row.composite = r.kind == verdict::composite;
    if (row.composite) {
        row.a = r.a;
        row.b = r.b;
    }
    row.micros = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count());
    return row;
}

inline const char* csv_header() {
    return "M,N,pairs,branches,columns,ops,paper_bound,verdict,A,B,micros";
}

inline std::string csv_line(const bench_row& row) {
    char bound[32];
    std::snprintf(bound, sizeof bound, "%.6g", row.bound);
    std::string line = row.value.str();
    line += ",";
    line += std::to_string(row.top);
    line += ",";
    line += std::to_string(row.pairs);
    line += ",";
    line += std::to_string(row.branches);
    line += ",";
    line += std::to_string(row.columns);
    line += ",";
    line += std::to_string(row.ops);
    line += ",";
    line += bound;
    line += row.composite ? ",composite," : ",prime,";
    if (row.composite) {
        line += row.a.str();
        line += ",";
        line += row.b.str();
    } else {
        line += ",";
    }
    line += ",";
    line += std::to_string(row.micros);
    return line;
}

// Benchmark every odd value in [lo, hi], streaming one row at a time.
inline void run_bench(const bigint& lo, const bigint& hi,
                      const std::function<void(const bench_row&)>& sink) {
    bigint v = lo;
    if (v < 3) v = 3;
    if (!boost::multiprecision::bit_test(v, 0)) ++v;
    for (; v <= hi; v += 2) sink(bench_one(v));
}

inline std::vector<bench_row> run_bench(const bigint& lo, const bigint& hi,
                                        std::ostream* csv = nullptr) {
    std::vector<bench_row> rows;
    if (csv) *csv << csv_header() << "\n";
    run_bench(lo, hi, [&](const bench_row& row) {
        if (csv) *csv << csv_line(row) << "\n";
        rows.push_back(row);
    });
    return rows;
}

}  // namespace bitfactor

#endif
