#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "avoiders.hpp"
#include "count_cache.hpp"
#include "domino.hpp"
#include "genfun.hpp"
#include "primitive.hpp"
#include "series.hpp"
#include "verify.hpp"

namespace av1324::cli {

/// Exit codes: 0 success, 1 a verified identity failed, 2 bad usage.
enum ExitCode : int { ok = 0, failure = 1, usage = 2 };

struct RunConfig {
    std::string command;
    std::optional<int> n, a, k, order, points, max_n, max_k;
    std::string perm;
    std::string which = "f";
    std::string suite = "all";
    std::string format; // "", "json" or "csv"
    std::string cache_dir;
    int threads = 0;
    bool count_only = false;
    bool strict = false;
};

namespace detail {

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw usage_error(msg);
}

inline CountOracle make_oracle(const RunConfig& cfg) {
    std::optional<std::filesystem::path> dir;
    if (!cfg.cache_dir.empty()) dir = cfg.cache_dir;
    return CountOracle(static_cast<unsigned>(cfg.threads), dir);
}

inline nlohmann::ordered_json series_json(const TruncatedSeries& s) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : s.coeffs()) arr.push_back(c.str());
    return arr;
}

inline int cmd_count(const RunConfig& cfg, std::ostream& out) {
    require(cfg.n.has_value(), "count needs --n");
    require(*cfg.n >= 1, "--n must be >= 1");
    require(cfg.a.has_value() == cfg.k.has_value(), "--a and --k go together");
    if (cfg.a) require(*cfg.a >= 1 && *cfg.k >= 1, "--a and --k must be >= 1");
    CountOracle oracle = make_oracle(cfg);
    const ClassCountTable& t = oracle.table(*cfg.n);
    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["n"] = t.n;
        j["total"] = t.total.str();
        if (cfg.a) {
            j["a"] = *cfg.a;
            j["k"] = *cfg.k;
            j["count"] = t.count(*cfg.a, *cfg.k).str();
        } else {
            auto rows = nlohmann::ordered_json::array();
            for (const auto& [key, c] : t.counts)
                rows.push_back(nlohmann::ordered_json{{"a", key.first}, {"k", key.second}, {"count", c.str()}});
            j["counts"] = std::move(rows);
        }
        out << j.dump() << '\n';
    } else if (cfg.format == "csv") {
        out << "n,a,k,count\n";
        if (cfg.a) {
            out << t.n << ',' << *cfg.a << ',' << *cfg.k << ',' << t.count(*cfg.a, *cfg.k).str() << '\n';
        } else {
            for (const auto& [key, c] : t.counts) out << t.n << ',' << key.first << ',' << key.second << ',' << c.str() << '\n';
            out << t.n << ",,," << t.total.str() << '\n';
        }
    } else {
        out << (cfg.a ? t.count(*cfg.a, *cfg.k) : t.total).str() << '\n';
    }
    return ok;
}

inline int cmd_factor(const RunConfig& cfg, std::ostream& out) {
    require(!cfg.perm.empty(), "factor needs a permutation");
    const Permutation p = parse_permutation(cfg.perm);
    const PrimitiveDecomposition d = factorize(p);
    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["perm"] = to_string(p);
        j["k"] = d.k();
        auto fs = nlohmann::ordered_json::array();
        for (const auto& f : d.factors) fs.push_back(to_string(f));
        j["factors"] = std::move(fs);
        out << j.dump() << '\n';
    } else {
        out << format_product(d.factors) << '\n';
    }
    return ok;
}

inline int cmd_domino(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.perm.empty()) {
        // Accepts either a primitive or a domino in text form.
        if (cfg.perm.find("B:") != std::string::npos) {
            out << to_string(from_domino(parse_domino(cfg.perm))) << '\n';
        } else {
            out << to_string(to_domino(parse_permutation(cfg.perm))) << '\n';
        }
        return ok;
    }
    require(cfg.points.has_value(), "domino needs --points or --perm");
    require(*cfg.points >= 0, "--points must be >= 0");
    const auto all = enumerate_dominoes(*cfg.points);
    if (cfg.count_only) {
        out << all.size() << '\n';
        return ok;
    }
    if (cfg.format == "json") {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& d : all) arr.push_back(to_string(d));
        out << arr.dump() << '\n';
    } else {
        for (const auto& d : all) out << to_string(d) << '\n';
    }
    return ok;
}

inline int cmd_series(const RunConfig& cfg, std::ostream& out) {
    const int order = cfg.order.value_or(11);
    require(order >= 1, "--order must be >= 1");
    if (cfg.which == "g1" || cfg.which == "g2") {
        const int kt = cfg.max_k.value_or(9);
        require(kt >= 0, "--max-k must be >= 0");
        const BivariateSeries b = cfg.which == "g1" ? g1_series(order, kt) : g2_series(order, kt);
        if (cfg.format == "json") {
            nlohmann::ordered_json j;
            j["which"] = cfg.which;
            j["order_x"] = order;
            j["order_t"] = kt;
            auto rows = nlohmann::ordered_json::array();
            for (int n = 0; n <= order; ++n) {
                auto row = nlohmann::ordered_json::array();
                for (int k = 0; k <= kt; ++k) row.push_back(b(n, k).str());
                rows.push_back(std::move(row));
            }
            j["coefficients"] = std::move(rows);
            out << j.dump() << '\n';
        } else {
            out << to_csv(b);
        }
        return ok;
    }

    TruncatedSeries s(order);
    nlohmann::ordered_json meta;
    meta["which"] = cfg.which;
    if (cfg.which == "f") {
        s = f_series(order);
    } else if (cfg.which == "T") {
        require(cfg.a.has_value() && cfg.k.has_value(), "series T needs --a and --k");
        require(*cfg.a >= 1 && *cfg.k >= 0, "series T needs a >= 1, k >= 0");
        meta["a"] = *cfg.a;
        meta["k"] = *cfg.k;
        if (*cfg.a == 1) {
            s = t1k_series(*cfg.k, order);
        } else if (*cfg.a == 2) {
            s = t2k_series(*cfg.k, order);
        } else {
            CountOracle oracle = make_oracle(cfg);
            s = t_ak_bruteforce(oracle, *cfg.a, *cfg.k, order);
            meta["source"] = "enumeration";
        }
    } else {
        throw usage_error("--which must be one of f, T, g1, g2");
    }
    meta["order"] = order;
    if (cfg.format == "json") {
        meta["coefficients"] = series_json(s);
        meta["text"] = to_string(s);
        out << meta.dump() << '\n';
    } else if (cfg.format == "csv") {
        out << "n,coefficient\n";
        for (int n = 0; n <= s.order(); ++n) out << n << ',' << s[n].str() << '\n';
    } else {
        out << to_string(s) << '\n';
    }
    return ok;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto& names = suite_names();
    require(cfg.suite == "all" || std::find(names.begin(), names.end(), cfg.suite) != names.end(),
            "unknown suite: " + cfg.suite);
    VerifyConfig vc;
    vc.max_n = cfg.max_n.value_or(11);
    vc.max_k = cfg.max_k.value_or(9);
    vc.a = cfg.a.value_or(0);
    require(vc.max_n >= 3, "--max-n must be >= 3");
    require(vc.max_k >= 1, "--max-k must be >= 1");
    require(vc.a >= 0, "--a must be >= 1");
    CountOracle oracle = make_oracle(cfg);
    const auto reports = run_suite(cfg.suite, oracle, vc);
    bool all_pass = true;
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        err << (r.pass ? "PASS " : "FAIL ") << r.identity << ' ' << r.params.dump() << '\n';
    }
    if (cfg.format == "csv") {
        out << "identity,params,pass,n,k,residual\n";
        for (const auto& r : reports)
            for (const auto& t : r.residual)
                out << r.identity << ",\"" << r.params.dump() << "\"," << (r.pass ? "true" : "false") << ',' << t.n
                    << ',' << t.k << ',' << t.value.str() << '\n';
    } else {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        out << arr.dump() << '\n';
    }
    return all_pass ? ok : failure;
}

} // namespace detail

/// Parses argv and runs one subcommand, writing payloads to `out` and
/// diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Positional statistics of 1324-avoiding permutations"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--cache-dir", cfg.cache_dir, "Directory for persisted count tables");
        sub->add_option("--threads", cfg.threads, "Worker threads (0 = auto)")->check(CLI::NonNegativeNumber);
        sub->add_flag("--strict", cfg.strict, "Nonzero exit on any failing identity");
    };

    auto* count = app.add_subcommand("count", "Count 1324-avoiders, optionally one positional class");
    count->add_option("--n", cfg.n, "Permutation size");
    count->add_option("--a", cfg.a);
    count->add_option("--k", cfg.k);
    add_common(count);

    auto* factor = app.add_subcommand("factor", "Factor a permutation into primitives");
    factor->add_option("permutation", cfg.perm, "Permutation, e.g. 1243 or 1,2,4,3");
    factor->add_option("--perm", cfg.perm);
    add_common(factor);

    auto* domino = app.add_subcommand("domino", "Dominoes and the primitive bijection");
    domino->add_option("--points", cfg.points);
    domino->add_option("--perm", cfg.perm, "Primitive to map, or domino text to map back");
    domino->add_flag("--count", cfg.count_only, "Print only the number of dominoes");
    add_common(domino);

    auto* series = app.add_subcommand("series", "Generating function coefficients");
    series->add_option("--which", cfg.which)->check(CLI::IsMember({"f", "T", "g1", "g2"}));
    series->add_option("--order", cfg.order);
    series->add_option("--a", cfg.a);
    series->add_option("--k", cfg.k);
    series->add_option("--max-k", cfg.max_k, "t order for g1/g2");
    add_common(series);

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    verify->add_option("--suite", cfg.suite);
    verify->add_option("--max-n", cfg.max_n);
    verify->add_option("--max-k", cfg.max_k);
    verify->add_option("--a", cfg.a, "Conjecture suite: a single value of a");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }

    try {
        if (count->parsed()) return detail::cmd_count(cfg, out);
        if (factor->parsed()) return detail::cmd_factor(cfg, out);
        if (domino->parsed()) return detail::cmd_domino(cfg, out);
        if (series->parsed()) return detail::cmd_series(cfg, out);
        if (verify->parsed()) return detail::cmd_verify(cfg, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"av1324"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace av1324::cli
