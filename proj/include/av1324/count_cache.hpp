#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "avoiders.hpp"

namespace av1324 {

// JSON-lines form of a ClassCountTable: one {"n","a","k","count"} record per
// nonzero class in (a, k) order, then one {"n","total"} record. Counts are
// decimal strings.

inline std::string to_jsonl(const ClassCountTable& t) {
    std::string out;
    for (const auto& [key, c] : t.counts) {
        nlohmann::ordered_json rec;
        rec["n"] = t.n;
        rec["a"] = key.first;
        rec["k"] = key.second;
        rec["count"] = c.str();
        out += rec.dump() + "\n";
    }
    nlohmann::ordered_json total;
    total["n"] = t.n;
    total["total"] = t.total.str();
    out += total.dump() + "\n";
    return out;
}

inline ClassCountTable table_from_jsonl(const std::string& text) {
    ClassCountTable t;
    bool have_n = false, have_total = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto rec = nlohmann::json::parse(line);
        const int n = rec.at("n").get<int>();
        if (have_n && n != t.n) throw std::runtime_error("count cache mixes sizes");
        t.n = n;
        have_n = true;
        if (rec.contains("total")) {
            t.total = BigInt(rec.at("total").get<std::string>());
            have_total = true;
        } else {
            t.counts[{rec.at("a").get<int>(), rec.at("k").get<int>()}] =
                BigInt(rec.at("count").get<std::string>());
        }
    }
    if (!have_total) throw std::runtime_error("count cache has no total record");
    return t;
}

/// Memoised count tables, optionally persisted under a cache directory
/// (one file per n). Safe to share between threads.
class CountOracle {
public:
    explicit CountOracle(unsigned workers = 1, std::optional<std::filesystem::path> cache_dir = std::nullopt)
        : workers_(workers), cache_dir_(std::move(cache_dir)) {}

    const ClassCountTable& table(int n) {
        std::lock_guard lock(mutex_);
        if (auto it = tables_.find(n); it != tables_.end()) return it->second;
        return tables_.emplace(n, load_or_compute(n)).first->second;
    }

    BigInt total(int n) {
        if (n == 0) return 1;
        return table(n).total;
    }
    BigInt count(int n, int a, int k) { return n < 1 ? BigInt(0) : table(n).count(a, k); }

    std::filesystem::path cache_file(int n) const {
        return *cache_dir_ / ("av1324_counts_n" + std::to_string(n) + ".jsonl");
    }

private:
    ClassCountTable load_or_compute(int n) {
        if (cache_dir_) {
            auto path = cache_file(n);
            if (std::filesystem::exists(path)) {
                std::ifstream in(path, std::ios::binary);
                std::stringstream buf;
                buf << in.rdbuf();
                return table_from_jsonl(buf.str());
            }
        }
        ClassCountTable t = count_table(n, workers_);
        if (cache_dir_) {
            std::filesystem::create_directories(*cache_dir_);
            std::ofstream out(cache_file(n), std::ios::binary);
            out << to_jsonl(t);
        }
        return t;
    }

    unsigned workers_;
    std::optional<std::filesystem::path> cache_dir_;
    std::mutex mutex_;
    std::map<int, ClassCountTable> tables_;
};

} // namespace av1324
