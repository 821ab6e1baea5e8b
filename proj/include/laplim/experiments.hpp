#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "laplim/rng.hpp"
#include "laplim/spectral.hpp"
#include "laplim/tree_model.hpp"

namespace laplim {

struct F1Record {
    std::uint64_t stream_seed = 0;
    std::string spec;
    double rho = 0;
};

struct F1Summary {
    double min_radius = 0, max_radius = 0;
    double min_gap = 0, max_gap = 0;  // over sorted neighbors; 0 when n < 2
};

/// Sample the bounded-width family: first star [1,1,1], then uniform draws
/// from {[0],[1],[1,1]} closed by the shift rule, radius at depth K.
/// Record i draws from its own stream, so the output is independent of the
/// worker count; records come back sorted by radius.
inline std::vector<F1Record> sample_f1(int n, int K, std::uint64_t seed, int threads = 1) {
    if (n < 1 || K < 2) throw std::domain_error("sample_f1 requires n >= 1 and K >= 2");
    std::vector<F1Record> records(n);
    const Starlike star3({1, 1, 1});
    const std::vector<Starlike> pool{Starlike::empty(), Starlike({1}), Starlike({1, 1})};

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            SplitMix64 stream = rng_stream(seed, static_cast<std::uint64_t>(i));
            std::uint64_t stream_seed = stream.next();
            SplitMix64 draw(stream_seed);
            std::vector<Starlike> stars{star3};
            for (int j = 2; j <= K; ++j) stars.push_back(pool[draw.next_below(3)]);
            LinearTree g{stars};
            records[i] = {stream_seed, g.str(), radius(g, MatrixKind::Laplacian, 1e-12).value};
        }
    };
    int nt = std::max(threads, 1);
    std::vector<std::thread> extra;
    for (int t = 0; t < nt - 1; ++t) extra.emplace_back(worker);
    worker();
    for (auto& t : extra) t.join();

    std::sort(records.begin(), records.end(), [](const F1Record& a, const F1Record& b) {
        if (a.rho != b.rho) return a.rho < b.rho;
        return a.stream_seed < b.stream_seed;
    });
    return records;
}

inline F1Summary f1_summary(const std::vector<F1Record>& records) {
    F1Summary s;
    if (records.empty()) return s;
    s.min_radius = records.front().rho;
    s.max_radius = records.back().rho;
    bool first = true;
    for (std::size_t i = 1; i < records.size(); ++i) {
        double g = records[i].rho - records[i - 1].rho;
        if (first || g < s.min_gap) s.min_gap = g;
        if (first || g > s.max_gap) s.max_gap = g;
        first = false;
    }
    return s;
}

/// CSV with sorted records and post-hoc neighbor gaps (first row has none).
inline std::string f1_csv(const std::vector<F1Record>& records) {
    std::string csv = "seed,spec,radius,gap\n";
    char b[64];
    for (std::size_t i = 0; i < records.size(); ++i) {
        csv += std::to_string(records[i].stream_seed);
        csv += ",\"";
        csv += records[i].spec;
        csv += "\",";
        std::snprintf(b, sizeof b, "%.12f", records[i].rho);
        csv += b;
        csv += ',';
        if (i > 0) {
            std::snprintf(b, sizeof b, "%.12e", records[i].rho - records[i - 1].rho);
            csv += b;
        }
        csv += '\n';
    }
    return csv;
}

} // namespace laplim
