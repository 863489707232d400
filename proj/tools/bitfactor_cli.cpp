// Command line front end: factor odd integers, prove them prime, or dump the
// column systems and search traces behind either answer.
//
//   bitfactor factor 45            prints: 45 = 3 × 15
//   bitfactor is-prime 65537       exit 0 when prime, 3 when composite
//   bitfactor trace 65537 --pair 1,14
//   bitfactor export 65537 --pair 7,8 --widths paper
//   bitfactor bench --odd-range 3:9999 --csv rows.csv
//
// Exit codes: 0 done, 1 bad input, 2 broken internal invariant, 3 composite
// (is-prime only). Everything diagnostic goes to stderr, results to stdout.

#include <bitfactor/bitfactor.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace bitfactor;

constexpr std::uint64_t trace_line_cap = 10000;

std::pair<unsigned, unsigned> parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == text.size())
        throw malformed_error("expected --pair m,n");
    unsigned m = 0, n = 0;
    try {
        std::size_t used = 0;
        m = static_cast<unsigned>(std::stoul(text.substr(0, comma), &used));
        if (used != comma) throw malformed_error("expected --pair m,n");
        n = static_cast<unsigned>(std::stoul(text.substr(comma + 1), &used));
        if (used != text.size() - comma - 1) throw malformed_error("expected --pair m,n");
    } catch (const std::logic_error&) {
        throw malformed_error("expected --pair m,n");
    }
    return {m, n};
}

void require_pair_fits(const odd_bits& bits, unsigned m, unsigned n) {
    const unsigned N = bits.top();
    if (m < 1 || m > n || (std::uint64_t{m} + n != N && std::uint64_t{m} + n + 1 != N))
        throw out_of_range_error("pair " + std::to_string(m) + "," + std::to_string(n) +
                                 " does not fit a value with top bit " + std::to_string(N));
}

nlohmann::json stats_json(const search_stats& st) {
    return {{"pairs", st.pairs_examined},
            {"branches_opened", st.branches_opened},
            {"leaves", st.leaves},
            {"columns_resolved", st.columns_resolved},
            {"primitive_ops", st.primitive_ops}};
}

int run_factor(const std::string& value_text, bool complete, bool as_json) {
    const odd_bits bits = parse_odd(value_text);
    const bigint value = bits.to_integer();

    if (complete) {
        search_stats total;
        const std::vector<bigint> primes = factor_completely(value, &total);
        if (as_json) {
            nlohmann::json out;
            out["input"] = value.str();
            out["verdict"] = primes.size() == 1 ? "prime" : "composite";
            out["factors"] = nlohmann::json::array();
            for (const bigint& p : primes) out["factors"].push_back(p.str());
            out["stats"] = stats_json(total);
            std::cout << out.dump() << "\n";
            return 0;
        }
        if (primes.size() == 1) {
            std::cout << value.str() << " is prime\n";
        } else {
            std::cout << value.str() << " =";
            for (std::size_t i = 0; i < primes.size(); ++i)
                std::cout << (i ? " \xC3\x97 " : " ") << primes[i].str();
            std::cout << "\n";
        }
        return 0;
    }

    const factor_result r = factor_once(bits);
    if (as_json) {
        nlohmann::json out;
        out["input"] = value.str();
        out["verdict"] = r.kind == verdict::prime ? "prime" : "composite";
        out["factors"] = nlohmann::json::array();
        if (r.kind == verdict::composite) {
            out["factors"].push_back(r.a.str());
            out["factors"].push_back(r.b.str());
            out["witness"] = {{"m", r.witness->m}, {"n", r.witness->n}};
        }
        out["stats"] = stats_json(r.stats);
        std::cout << out.dump() << "\n";
        return 0;
    }
    if (r.kind == verdict::prime)
        std::cout << value.str() << " is prime\n";
    else
        std::cout << value.str() << " = " << r.a.str() << " \xC3\x97 " << r.b.str() << "\n";
    return 0;
}

int run_is_prime(const std::string& value_text) {
    const odd_bits bits = parse_odd(value_text);
    const factor_result r = factor_once(bits);
    if (r.kind == verdict::prime) {
        std::cout << bits.to_integer().str() << " is prime\n";
        return 0;
    }
    std::cout << bits.to_integer().str() << " is composite\n";
    return 3;
}

void print_digit_list(std::ostream& os, const char* label, std::uint64_t mask,
                      std::uint64_t col, bool emitted) {
    if (mask == 0) return;
    os << " " << label;
    for (unsigned i = 1; i < 64; ++i)
        if (mask & (std::uint64_t{1} << i))
            os << " c[" << i << "," << (emitted ? col : col - i) << "]";
}

int run_trace(const std::string& value_text, const std::string& pair_text, bool no_limit) {
    const odd_bits bits = parse_odd(value_text);
    const auto [m, n] = parse_pair(pair_text);
    require_pair_fits(bits, m, n);

    std::cout << "system: M=" << bits.to_integer().str() << " m=" << m << " n=" << n
              << "\n";

    std::uint64_t lines = 0;
    bool truncated = false;
    solve_options opt;
    opt.trace = [&](const trace_event& ev) {
        if (!no_limit && lines >= trace_line_cap) {
            truncated = true;
            return;
        }
        ++lines;
        if (ev.kind == trace_kind::take) {
            std::cout << "take " << ev.branch_ordinal << ": col " << ev.j << " a" << ev.j
                      << "=" << ev.a_bit << " b" << ev.j << "=" << ev.b_bit << "\n";
            return;
        }
        std::cout << "col " << ev.j << ":";
        if (ev.a_bit >= 0) std::cout << " a" << ev.j << "=" << ev.a_bit;
        if (ev.b_bit >= 0) std::cout << " b" << ev.j << "=" << ev.b_bit;
        std::cout << " S=" << ev.s << " target=" << ev.target;
        print_digit_list(std::cout, "in", ev.in_mask, ev.j, false);
        if (!ev.pruned) {
            std::uint64_t out_mask = 0;
            std::uint64_t rest = ev.v >> 1;
            for (unsigned i = 1; rest != 0; ++i, rest >>= 1)
                if (rest & 1) out_mask |= std::uint64_t{1} << i;
            print_digit_list(std::cout, "out", out_mask, ev.j, true);
        }
        std::cout << (ev.pruned ? " prune\n" : " ok\n");
    };

    search_stats st;
    const exponent_pair pair = make_exponent_pair(
        m, n, std::uint64_t{m} + n == bits.top() ? sum_kind::at_top : sum_kind::below_top);
    const auto sol = solve_system(bits, pair, st, opt);
    if (sol)
        std::cout << "solution: A=" << sol->a.str() << " B=" << sol->b.str() << "\n";
    else
        std::cout << "exhausted: no solution\n";
    std::cout << "stats: leaves=" << st.leaves << " branches=" << st.branches_opened
              << " columns=" << st.columns_resolved << " ops=" << st.primitive_ops
              << "\n";
    if (truncated)
        std::cerr << "trace truncated at " << trace_line_cap
                  << " lines; pass --no-limit for the rest\n";
    return 0;
}

int run_export(const std::string& value_text, const std::string& pair_text,
               const std::string& widths) {
    const odd_bits bits = parse_odd(value_text);
    const auto [m, n] = parse_pair(pair_text);
    width_plan plan;
    if (widths == "maxsum") plan = width_plan::maxsum;
    else if (widths == "paper") plan = width_plan::paper;
    else
        throw malformed_error("--widths wants maxsum or paper");
    std::cout << export_system(bits, m, n, plan);
    return 0;
}

int run_bench_cmd(const std::string& range_text, const std::string& csv_path) {
    const auto colon = range_text.find(':');
    if (colon == std::string::npos)
        throw malformed_error("expected --odd-range lo:hi");
    const bigint lo = parse_integer(range_text.substr(0, colon));
    const bigint hi = parse_integer(range_text.substr(colon + 1));
    if (lo > hi) throw malformed_error("range runs backwards");

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!csv_path.empty()) {
        file.open(csv_path);
        if (!file) throw input_error("cannot open " + csv_path);
        out = &file;
    }
    *out << csv_header() << "\n";
    run_bench(lo, hi, [&](const bench_row& row) { *out << csv_line(row) << "\n"; });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"factor odd integers by walking the binary columns of M = A * B"};
    app.require_subcommand(1);

    std::string value_text, pair_text, widths = "maxsum", range_text, csv_path;
    bool complete = false, as_json = false, no_limit = false;

    CLI::App* factor_cmd = app.add_subcommand("factor", "find a factor pair or prove prime");
    factor_cmd->add_option("value", value_text, "odd integer, decimal/0x/0b")->required();
    factor_cmd->add_flag("--complete", complete, "recurse to the full prime split");
    factor_cmd->add_flag("--json", as_json, "machine-readable result");

    CLI::App* prime_cmd = app.add_subcommand("is-prime", "primality verdict via exhaustion");
    prime_cmd->add_option("value", value_text, "odd integer")->required();

    CLI::App* trace_cmd = app.add_subcommand("trace", "log every column of one split");
    trace_cmd->add_option("value", value_text, "odd integer")->required();
    trace_cmd->add_option("--pair", pair_text, "exponent pair m,n")->required();
    trace_cmd->add_flag("--no-limit", no_limit, "do not cap trace output");

    CLI::App* export_cmd = app.add_subcommand("export", "print one split's column system");
    export_cmd->add_option("value", value_text, "odd integer")->required();
    export_cmd->add_option("--pair", pair_text, "exponent pair m,n")->required();
    export_cmd->add_option("--widths", widths, "carry digit plan: maxsum|paper");

    CLI::App* bench_cmd = app.add_subcommand("bench", "time a sweep of odd values");
    bench_cmd->add_option("--odd-range", range_text, "inclusive range lo:hi")->required();
    bench_cmd->add_option("--csv", csv_path, "write rows here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (factor_cmd->parsed()) return run_factor(value_text, complete, as_json);
        if (prime_cmd->parsed()) return run_is_prime(value_text);
        if (trace_cmd->parsed()) return run_trace(value_text, pair_text, no_limit);
        if (export_cmd->parsed()) return run_export(value_text, pair_text, widths);
        if (bench_cmd->parsed()) return run_bench_cmd(range_text, csv_path);
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
