#pragma once
// Reference implementations for tests. Everything here is deliberately
// naive: per-bit loops, full scans, all-pairs graphs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "classix/data.hpp"

namespace classix::oracle {

inline FingerprintSet random_fingerprints(std::size_t n, std::size_t d, double density,
                                          std::mt19937_64& rng) {
    std::bernoulli_distribution bit(density);
    std::vector<std::string> rows(n, std::string(d, '0'));
    for (auto& r : rows) {
        for (auto& c : r) c = bit(rng) ? '1' : '0';
    }
    return FingerprintSet::from_strings(rows);
}

// Copies of a few prototypes with some bits flipped, shuffled. Gives the
// clustering non-trivial structure.
inline FingerprintSet clustered_fingerprints(std::size_t n, std::size_t d, std::size_t protos,
                                             double flip, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5), f(flip);
    std::vector<std::string> base(protos, std::string(d, '0'));
    for (auto& b : base) {
        for (auto& c : b) c = coin(rng) ? '1' : '0';
    }
    std::uniform_int_distribution<std::size_t> pick(0, protos - 1);
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < n; ++i) {
        std::string r = base[pick(rng)];
        for (auto& c : r) {
            if (f(rng)) c = c == '1' ? '0' : '1';
        }
        rows.push_back(r);
    }
    return FingerprintSet::from_strings(rows);
}

inline DenseDataset random_dense(std::size_t n, std::size_t d, std::size_t blobs, double spread,
                                 std::mt19937_64& rng) {
    std::uniform_real_distribution<double> centre(-10.0, 10.0), noise(-spread, spread);
    std::vector<std::vector<double>> c(blobs, std::vector<double>(d));
    for (auto& v : c) {
        for (auto& x : v) x = centre(rng);
    }
    std::uniform_int_distribution<std::size_t> pick(0, blobs - 1);
    std::vector<double> values;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& b = c[pick(rng)];
        for (std::size_t k = 0; k < d; ++k) values.push_back(b[k] + noise(rng));
    }
    return DenseDataset(n, d, std::move(values));
}

inline std::size_t naive_popcount(const FingerprintSet& f, std::size_t i) {
    std::size_t s = 0;
    for (std::size_t b = 0; b < f.dims(); ++b) s += f.bit(i, b) ? 1 : 0;
    return s;
}

struct BitStats {
    std::size_t inter = 0;
    std::size_t uni = 0;
};

inline BitStats bit_stats(const FingerprintSet& f, std::size_t i, std::size_t j) {
    BitStats s;
    for (std::size_t b = 0; b < f.dims(); ++b) {
        const bool x = f.bit(i, b), y = f.bit(j, b);
        s.inter += (x && y) ? 1 : 0;
        s.uni += (x || y) ? 1 : 0;
    }
    return s;
}

inline double naive_tanimoto(const FingerprintSet& f, std::size_t i, std::size_t j) {
    const auto s = bit_stats(f, i, j);
    if (s.uni == 0) return 0.0;
    return 1.0 - static_cast<double>(s.inter) / static_cast<double>(s.uni);
}

// Exact test D(i,j) <= num/den, with the empty-vector convention.
inline bool naive_tanimoto_within(const FingerprintSet& f, std::size_t i, std::size_t j,
                                  std::int64_t num, std::int64_t den) {
    const auto s = bit_stats(f, i, j);
    if (s.uni == 0) return true;
    const auto inter = static_cast<std::int64_t>(s.inter), uni = static_cast<std::int64_t>(s.uni);
    return den * (uni - inter) <= num * uni;
}

inline double naive_manhattan(const DenseDataset& x, std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.dims(); ++k) s += std::abs(x.row(i)[k] - x.row(j)[k]);
    return s;
}

// Greedy grouping with no pruning. within(a, b) decides membership; score
// gives the sort key.
template <class Within, class ScoreFn>
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> brute_force_groups(
    std::size_t n, ScoreFn score, Within within) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return score(a) < score(b); });
    const std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> group(n, none), starts;
    for (std::size_t p = 0; p < n; ++p) {
        const std::size_t i = idx[p];
        if (group[i] != none) continue;
        group[i] = starts.size();
        for (std::size_t q = p + 1; q < n; ++q) {
            const std::size_t j = idx[q];
            if (group[j] == none && within(i, j)) group[j] = starts.size();
        }
        starts.push_back(i);
    }
    return {group, starts};
}

// Component id per node of the graph with an edge wherever linked(a, b).
template <class Linked>
std::vector<std::size_t> components(std::size_t n, Linked linked) {
    std::vector<std::size_t> comp(n, static_cast<std::size_t>(-1));
    std::size_t next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != static_cast<std::size_t>(-1)) continue;
        std::vector<std::size_t> stack{s};
        comp[s] = next;
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < n; ++b) {
                if (comp[b] == static_cast<std::size_t>(-1) && linked(a, b)) {
                    comp[b] = next;
                    stack.push_back(b);
                }
            }
        }
        ++next;
    }
    return comp;
}

// Renumbers by first appearance.
template <class T>
std::vector<std::int64_t> canonical(const std::vector<T>& labels) {
    std::map<T, std::int64_t> ids;
    std::vector<std::int64_t> out;
    for (const auto& l : labels) {
        out.push_back(ids.try_emplace(l, static_cast<std::int64_t>(ids.size())).first->second);
    }
    return out;
}

// ARI straight from the definition: count agreeing pairs over all pairs.
inline double brute_force_ari(const std::vector<std::int64_t>& a,
                              const std::vector<std::int64_t>& b) {
    const std::size_t n = a.size();
    long double both = 0, only_a = 0, only_b = 0, total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool sa = a[i] == a[j], sb = b[i] == b[j];
            both += sa && sb;
            only_a += sa;
            only_b += sb;
            total += 1;
        }
    }
    const long double expected = only_a * only_b / total;
    const long double max_index = (only_a + only_b) / 2;
    if (max_index == expected) return 1.0;
    return static_cast<double>((both - expected) / (max_index - expected));
}

}  // namespace classix::oracle
