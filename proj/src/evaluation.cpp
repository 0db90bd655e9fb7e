#include "classix/evaluation.hpp"

#include <unordered_map>

#include "classix/error.hpp"

namespace classix {

namespace {

__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

std::vector<std::size_t> dense_ids(std::span<const std::int64_t> labels, std::size_t& count) {
    std::unordered_map<std::int64_t, std::size_t> ids;
    std::vector<std::size_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out[i] = ids.try_emplace(labels[i], ids.size()).first->second;
    }
    count = ids.size();
    return out;
}

u128 pairs(std::uint64_t x) { return x < 2 ? 0 : u128{x} * (x - 1) / 2; }

}  // namespace

ContingencyTable contingency_table(std::span<const std::int64_t> labels_true,
                                   std::span<const std::int64_t> labels_pred) {
    if (labels_true.size() != labels_pred.size()) {
        throw InvalidInput("label vectors differ in length (" + std::to_string(labels_true.size()) +
                           " vs " + std::to_string(labels_pred.size()) + ")");
    }
    std::size_t rows = 0, cols = 0;
    const auto u = dense_ids(labels_true, rows);
    const auto v = dense_ids(labels_pred, cols);
    ContingencyTable t;
    t.counts.assign(rows, std::vector<std::uint64_t>(cols, 0));
    t.row_sums.assign(rows, 0);
    t.col_sums.assign(cols, 0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        ++t.counts[u[i]][v[i]];
        ++t.row_sums[u[i]];
        ++t.col_sums[v[i]];
    }
    t.total = u.size();
    return t;
}

double adjusted_rand_index(std::span<const std::int64_t> labels_true,
                           std::span<const std::int64_t> labels_pred) {
    if (labels_true.size() != labels_pred.size()) {
        throw InvalidInput("label vectors differ in length");
    }
    if (labels_true.size() < 2) throw InvalidInput("ARI needs at least two points");
    const auto t = contingency_table(labels_true, labels_pred);

    u128 index = 0;
    for (const auto& row : t.counts) {
        for (auto c : row) index += pairs(c);
    }
    u128 a = 0, b = 0;
    for (auto r : t.row_sums) a += pairs(r);
    for (auto c : t.col_sums) b += pairs(c);
    const u128 total = pairs(t.total);

    // ARI = (index - ab/total) / ((a+b)/2 - ab/total), multiplied through by
    // 2*total so everything but the last division is an exact integer.
    const i128 ab = static_cast<i128>(a * b);
    const i128 num = 2 * (static_cast<i128>(total * index) - ab);
    const i128 den = static_cast<i128>(total * (a + b)) - 2 * ab;
    if (den == 0) return 1.0;
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

}  // namespace classix
