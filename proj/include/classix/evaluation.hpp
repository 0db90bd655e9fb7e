#pragma once
// Adjusted Rand Index.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace classix {

struct ContingencyTable {
    // counts[u][v]: points with true label index u and predicted label index
    // v; label indices follow first appearance.
    std::vector<std::vector<std::uint64_t>> counts;
    std::vector<std::uint64_t> row_sums;
    std::vector<std::uint64_t> col_sums;
    std::uint64_t total = 0;
};

// Throws InvalidInput on a length mismatch.
ContingencyTable contingency_table(std::span<const std::int64_t> labels_true,
                                   std::span<const std::int64_t> labels_pred);

// Pair counts are exact 128-bit integers (valid for n < 2^31). Throws InvalidInput on a length
// mismatch or fewer than two points. Two single-cluster (or two
// all-singleton) partitions score 1.
double adjusted_rand_index(std::span<const std::int64_t> labels_true,
                           std::span<const std::int64_t> labels_pred);

}  // namespace classix
