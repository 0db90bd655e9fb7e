#include "classix/data.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "classix/error.hpp"

namespace classix {

std::string_view to_string(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::Manhattan: return "manhattan";
        case DistanceKind::Tanimoto: return "tanimoto";
    }
    return "unknown";
}

DistanceKind parse_distance_kind(std::string_view name) {
    if (name == "manhattan") return DistanceKind::Manhattan;
    if (name == "tanimoto") return DistanceKind::Tanimoto;
    throw InvalidInput("unknown metric '" + std::string(name) +
                       "' (expected manhattan or tanimoto)");
}

DenseDataset::DenseDataset(std::size_t n, std::size_t d, std::vector<double> values)
    : n_(n), d_(d), values_(std::move(values)) {
    if (n_ == 0 || d_ == 0) throw InvalidInput("dense dataset must have n > 0 and d > 0");
    if (values_.size() != n_ * d_) throw InvalidInput("dense dataset size mismatch");
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw InvalidInput("non-finite entry at row " + std::to_string(k / d_) + ", column " +
                               std::to_string(k % d_));
        }
    }
}

DenseDataset::DenseDataset(std::size_t n, std::size_t d, std::vector<double> values,
                           std::vector<double> shift)
    : DenseDataset(n, d, std::move(values)) {
    if (shift.size() != d_) throw InvalidInput("shift vector has wrong dimension");
    for (double v : shift) {
        if (!std::isfinite(v)) throw InvalidInput("non-finite shift entry");
    }
    if (std::any_of(values_.begin(), values_.end(), [](double v) { return v < 0.0; })) {
        throw InvalidInput("shifted dataset contains a negative entry");
    }
    shift_ = std::move(shift);
}

DenseDataset DenseDataset::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InvalidInput("dense dataset must have at least one point");
    const std::size_t d = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * d);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != d) {
            throw InvalidInput("row " + std::to_string(i) + " has " +
                               std::to_string(rows[i].size()) + " entries, expected " +
                               std::to_string(d));
        }
        values.insert(values.end(), rows[i].begin(), rows[i].end());
    }
    return DenseDataset(rows.size(), d, std::move(values));
}

std::vector<double> DenseDataset::original_row(std::size_t i) const {
    auto r = row(i);
    std::vector<double> out(r.begin(), r.end());
    if (shift_) {
        for (std::size_t k = 0; k < d_; ++k) out[k] += (*shift_)[k];
    }
    return out;
}

OrthantShiftResult orthant_shift(const DenseDataset& dataset) {
    if (dataset.is_shifted()) throw InvalidInput("dataset is already shifted");
    const std::size_t n = dataset.size();
    const std::size_t d = dataset.dims();

    auto first = dataset.row(0);
    std::vector<double> c(first.begin(), first.end());
    for (std::size_t i = 1; i < n; ++i) {
        auto r = dataset.row(i);
        for (std::size_t k = 0; k < d; ++k) c[k] = std::min(c[k], r[k]);
    }

    std::vector<double> values(dataset.values());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) values[i * d + k] -= c[k];
    }
    DenseDataset shifted(n, d, std::move(values), c);
    return {std::move(shifted), std::move(c)};
}

FingerprintSet::FingerprintSet(std::size_t n, std::size_t d, std::vector<std::uint64_t> words)
    : n_(n), d_(d), words_per_row_(words_for(d)), words_(std::move(words)) {
    if (n_ == 0 || d_ == 0) throw InvalidInput("fingerprint set must have n > 0 and d > 0");
    if (words_.size() != n_ * words_per_row_) throw InvalidInput("fingerprint word count mismatch");
    const std::size_t tail = d_ % kWordBits;
    if (tail != 0) {
        const std::uint64_t pad_mask = ~((std::uint64_t{1} << tail) - 1);
        for (std::size_t i = 0; i < n_; ++i) {
            if (words_[(i + 1) * words_per_row_ - 1] & pad_mask) {
                throw InvalidInput("fingerprint row " + std::to_string(i) +
                                   " has bits set beyond dimension " + std::to_string(d_));
            }
        }
    }
    scores_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        std::uint32_t c = 0;
        for (std::uint64_t w : row(i)) c += static_cast<std::uint32_t>(std::popcount(w));
        scores_[i] = c;
    }
}

FingerprintSet FingerprintSet::from_strings(const std::vector<std::string>& rows) {
    if (rows.empty()) throw InvalidInput("fingerprint set must have at least one row");
    const std::size_t d = rows.front().size();
    const std::size_t wpr = words_for(d);
    std::vector<std::uint64_t> words(rows.size() * wpr, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != d) {
            throw InvalidInput("row " + std::to_string(i) + " has length " +
                               std::to_string(rows[i].size()) + ", expected " + std::to_string(d));
        }
        for (std::size_t b = 0; b < d; ++b) {
            const char ch = rows[i][b];
            if (ch == '1') {
                words[i * wpr + b / kWordBits] |= std::uint64_t{1} << (b % kWordBits);
            } else if (ch != '0') {
                throw InvalidInput("row " + std::to_string(i) + " contains invalid character");
            }
        }
    }
    return FingerprintSet(rows.size(), d, std::move(words));
}

std::string FingerprintSet::row_string(std::size_t i) const {
    std::string s(d_, '0');
    for (std::size_t b = 0; b < d_; ++b) {
        if (bit(i, b)) s[b] = '1';
    }
    return s;
}

namespace {

double pairwise_abs_sum(const double* x, std::size_t n) {
    if (n <= 256) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += std::abs(x[k]);
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_abs_sum(x, half) + pairwise_abs_sum(x + half, n - half);
}

template <class Score>
ScoredOrder<Score> sort_scores(std::vector<Score> scores) {
    ScoredOrder<Score> order;
    order.perm.resize(scores.size());
    std::iota(order.perm.begin(), order.perm.end(), std::size_t{0});
    std::stable_sort(order.perm.begin(), order.perm.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    order.sorted_scores.resize(scores.size());
    for (std::size_t k = 0; k < scores.size(); ++k) order.sorted_scores[k] = scores[order.perm[k]];
    return order;
}

}  // namespace

double manhattan_norm(std::span<const double> x) {
    if (x.size() > 4096) return pairwise_abs_sum(x.data(), x.size());
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
}

DenseOrder score_and_sort(const DenseDataset& data, DistanceKind kind) {
    if (kind != DistanceKind::Manhattan) {
        throw InvalidInput("dense data can only be scored with the manhattan norm");
    }
    std::vector<double> scores(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) scores[i] = manhattan_norm(data.row(i));
    return sort_scores(std::move(scores));
}

FingerprintOrder score_and_sort(const FingerprintSet& data, DistanceKind kind) {
    if (kind != DistanceKind::Tanimoto) {
        throw InvalidInput("fingerprints can only be scored for the tanimoto distance");
    }
    return sort_scores(data.scores());
}

}  // namespace classix
