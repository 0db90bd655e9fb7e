#include "classix/metrics.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "classix/error.hpp"
#include "parallel.hpp"

namespace classix {

namespace {

double pairwise_abs_diff(const double* u, const double* v, std::size_t n) {
    if (n <= 256) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += std::abs(u[k] - v[k]);
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_abs_diff(u, v, half) + pairwise_abs_diff(u + half, v + half, n - half);
}

// Best rational approximation num/den of x in [0, 1] with den <= max_den, by
// continued fractions. Returns false if none is within tol.
bool exact_fraction(double x, std::int64_t max_den, double tol, std::int64_t& num,
                    std::int64_t& den) {
    std::int64_t h_prev = 0, h = 1;  // numerators
    std::int64_t k_prev = 1, k = 0;  // denominators
    double rem = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_real = std::floor(rem);
        if (a_real > 1e12) break;
        const auto a = static_cast<std::int64_t>(a_real);
        const std::int64_t h_next = a * h + h_prev;
        const std::int64_t k_next = a * k + k_prev;
        if (k_next > max_den) break;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
            num = h;
            den = k;
            return true;
        }
        const double frac = rem - a_real;
        if (frac <= 0.0) break;
        rem = 1.0 / frac;
    }
    return false;
}

}  // namespace

double manhattan_distance(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw InvalidInput("manhattan_distance: dimension mismatch (" + std::to_string(u.size()) +
                           " vs " + std::to_string(v.size()) + ")");
    }
    if (u.size() > 4096) return pairwise_abs_diff(u.data(), v.data(), u.size());
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += std::abs(u[k] - v[k]);
    return s;
}

std::uint32_t popcount(std::span<const std::uint64_t> x) noexcept {
    std::uint32_t c = 0;
    for (std::uint64_t w : x) c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
}

std::uint32_t dot(std::span<const std::uint64_t> u, std::span<const std::uint64_t> v) noexcept {
    std::uint32_t c = 0;
    const std::size_t n = u.size() < v.size() ? u.size() : v.size();
    for (std::size_t k = 0; k < n; ++k) c += static_cast<std::uint32_t>(std::popcount(u[k] & v[k]));
    return c;
}

double tanimoto_distance(std::span<const std::uint64_t> u, std::span<const std::uint64_t> v) {
    if (u.size() != v.size()) throw InvalidInput("tanimoto_distance: dimension mismatch");
    std::uint64_t inter = 0;
    std::uint64_t uni = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        inter += static_cast<std::uint64_t>(std::popcount(u[k] & v[k]));
        uni += static_cast<std::uint64_t>(std::popcount(u[k] | v[k]));
    }
    if (uni == 0) throw UndefinedDistance("tanimoto distance of two all-zero vectors");
    return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

double tanimoto_from_dot(std::int64_t dot, std::int64_t alpha_i, std::int64_t alpha_j) {
    if (dot < 0 || dot > alpha_i || dot > alpha_j) {
        throw InvalidInput("tanimoto_from_dot: dot product out of range");
    }
    if (alpha_i + alpha_j <= 0) throw InvalidInput("tanimoto_from_dot: both scores are zero");
    return 1.0 - static_cast<double>(dot) / static_cast<double>(alpha_i + alpha_j - dot);
}

double tanimoto_distance_total(std::uint32_t dot, std::uint32_t alpha_i,
                               std::uint32_t alpha_j) noexcept {
    const std::uint64_t uni = std::uint64_t{alpha_i} + alpha_j - dot;
    if (uni == 0) return 0.0;
    return 1.0 - static_cast<double>(dot) / static_cast<double>(uni);
}

std::vector<double> batch_tanimoto(std::size_t query, IndexRange candidates,
                                   const FingerprintSet& fps) {
    if (query >= fps.size() || candidates.first > candidates.last ||
        candidates.last > fps.size()) {
        throw InvalidInput("batch_tanimoto: index out of range");
    }
    const auto q = fps.row(query);
    const std::uint32_t aq = fps.score(query);
    std::vector<double> out(candidates.last - candidates.first);
    for (std::size_t j = candidates.first; j < candidates.last; ++j) {
        const std::uint32_t aj = fps.score(j);
        if (aq == 0 && aj == 0) {
            out[j - candidates.first] = kUndefinedDistance;
            continue;
        }
        const std::uint32_t d = dot(q, fps.row(j));
        out[j - candidates.first] = tanimoto_distance_total(d, aq, aj);
    }
    return out;
}

void batch_dot(const FingerprintSet& fps, std::size_t query,
               std::span<const std::size_t> candidates, std::span<std::uint32_t> out,
               unsigned threads) {
    const auto q = fps.row(query);
    detail::parallel_chunks(candidates.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) out[t] = dot(q, fps.row(candidates[t]));
    });
}

void batch_manhattan(const DenseDataset& data, std::size_t query,
                     std::span<const std::size_t> candidates, std::span<double> out,
                     unsigned threads) {
    const auto q = data.row(query);
    detail::parallel_chunks(candidates.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            out[t] = manhattan_distance(q, data.row(candidates[t]));
        }
    });
}

TanimotoThreshold::TanimotoThreshold(double radius) : radius_(radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw InvalidInput("tanimoto radius must be a positive finite number");
    }
    if (radius < 1.0) {
        exact_ = exact_fraction(radius, std::int64_t{1} << 20, 1e-15, num_, den_);
    }
}

bool TanimotoThreshold::within(std::uint32_t dot, std::uint32_t alpha_i,
                               std::uint32_t alpha_j) const noexcept {
    if (admits_everything()) return true;
    const std::int64_t uni = std::int64_t{alpha_i} + alpha_j - dot;
    if (uni == 0) return true;
    if (exact_) {
        // 1 - dot/uni <= num/den  <=>  den * (uni - dot) <= num * uni
        return den_ * (uni - dot) <= num_ * uni;
    }
    return 1.0 - static_cast<double>(dot) / static_cast<double>(uni) <= radius_ + 1e-12;
}

bool TanimotoThreshold::score_admits(std::uint32_t alpha_i, std::uint32_t alpha_j) const noexcept {
    if (admits_everything()) return true;
    if (exact_) {
        // alpha_j * (1 - num/den) <= alpha_i  <=>  alpha_j * (den - num) <= alpha_i * den
        return std::int64_t{alpha_j} * (den_ - num_) <= std::int64_t{alpha_i} * den_;
    }
    return static_cast<double>(alpha_j) * (1.0 - radius_) <= static_cast<double>(alpha_i) + 1e-12;
}

}  // namespace classix
