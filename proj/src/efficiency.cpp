#include "classix/efficiency.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "classix/error.hpp"
#include "classix/metrics.hpp"
#include "classix/rng.hpp"
#include "classix/synthgen.hpp"
#include "parallel.hpp"

namespace classix {

namespace {

// Neumaier summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            c_ += (sum_ - t) + x;
        } else {
            c_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + c_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("probability must lie in [0, 1]");
}

std::vector<double> pmf_table(std::size_t n, double p) {
    std::vector<double> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out[k] = binomial_pmf(k, n, p);
    return out;
}

// The similarity threshold s is handled as the Tanimoto radius 1 - s, so
// window and acceptance tests use the same exact integer comparisons as the
// clustering code.
struct Model {
    explicit Model(const EfficiencyQuery& q)
        : alpha(static_cast<std::uint32_t>(q.alpha_i)),
          d(q.d),
          threshold(1.0 - q.s) {}

    bool in_window(std::uint32_t k) const {
        return threshold.score_admits(alpha, k) && threshold.score_admits(k, alpha);
    }
    // lost = set bits of the seed that were flipped off.
    bool accepted(std::uint32_t k, std::uint32_t lost) const {
        return threshold.within(alpha - lost, alpha, k);
    }

    std::uint32_t alpha;
    std::size_t d;
    TanimotoThreshold threshold;
};

struct Probabilities {
    double p1;
    double p2;
};

Probabilities window_probabilities(const EfficiencyQuery& q) {
    validate(q);
    const Model model(q);
    const auto on = pmf_table(q.alpha_i, q.p);
    const auto off = pmf_table(q.d - q.alpha_i, q.p);
    const std::size_t a = q.alpha_i;
    CompensatedSum s1, s2;
    for (std::size_t k = 0; k <= q.d; ++k) {
        if (!model.in_window(static_cast<std::uint32_t>(k))) continue;
        CompensatedSum inner1, inner2;
        // lost bits l, gained bits k + l - a.
        const std::size_t l_lo = a > k ? a - k : 0;
        for (std::size_t l = l_lo; l <= a; ++l) {
            const std::size_t gained = k + l - a;
            if (gained > q.d - a) break;
            const double term = on[l] * off[gained];
            inner1.add(term);
            if (model.accepted(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(l))) {
                inner2.add(term);
            }
        }
        s1.add(inner1.value());
        s2.add(inner2.value());
    }
    const double total = std::min(1.0, s1.value());
    return {total, std::min(total, s2.value())};
}

}  // namespace

void validate(const EfficiencyQuery& q) {
    if (!(q.s > 0.0 && q.s < 1.0)) throw InvalidInput("similarity threshold s must lie in (0, 1)");
    check_probability(q.p);
    if (q.alpha_i > q.d) throw InvalidInput("alpha_i must not exceed d");
    if (q.d > std::numeric_limits<std::uint32_t>::max()) throw InvalidInput("d too large");
}

double binomial_pmf(std::size_t k, std::size_t n, double p) {
    check_probability(p);
    if (k > n) throw InvalidInput("binomial_pmf: k exceeds n");
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    const double nn = static_cast<double>(n);
    const double kk = static_cast<double>(k);
    const double log_pmf = std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) -
                           std::lgamma(nn - kk + 1.0) + kk * std::log(p) +
                           (nn - kk) * std::log1p(-p);
    return std::exp(log_pmf);
}

double score_pmf(std::size_t k, std::size_t alpha_i, std::size_t d, double p) {
    check_probability(p);
    if (alpha_i > d) throw InvalidInput("score_pmf: alpha_i exceeds d");
    if (k > d) throw InvalidInput("score_pmf: k exceeds d");
    CompensatedSum sum;
    for (std::size_t l = alpha_i > k ? alpha_i - k : 0; l <= alpha_i; ++l) {
        const std::size_t gained = k + l - alpha_i;
        if (gained > d - alpha_i) break;
        sum.add(binomial_pmf(l, alpha_i, p) * binomial_pmf(gained, d - alpha_i, p));
    }
    return sum.value();
}

double p1(const EfficiencyQuery& q) { return window_probabilities(q).p1; }

double p2(const EfficiencyQuery& q) { return window_probabilities(q).p2; }

std::optional<double> efficiency(const EfficiencyQuery& q) {
    const auto pr = window_probabilities(q);
    if (pr.p1 == 0.0) return std::nullopt;
    return pr.p2 / pr.p1;
}

SimulatedEfficiency simulate_efficiency(const EfficiencyQuery& q, std::uint64_t n_samples,
                                        std::uint64_t rng_seed) {
    validate(q);
    if (n_samples == 0) throw InvalidInput("n_samples must be at least 1");
    const Model model(q);
    const std::size_t wpr = FingerprintSet::words_for(q.d);
    std::vector<std::uint64_t> seed(wpr, 0);
    for (std::size_t b = 0; b < q.alpha_i; ++b) {
        seed[b / FingerprintSet::kWordBits] |= std::uint64_t{1} << (b % FingerprintSet::kWordBits);
    }

    Rng rng(rng_seed);
    SimulatedEfficiency out;
    out.samples = n_samples;
    for (std::uint64_t t = 0; t < n_samples; ++t) {
        const auto mask = flip_mask(q.d, q.p, rng);
        std::uint32_t score = 0;
        std::uint32_t lost = 0;
        for (std::size_t w = 0; w < wpr; ++w) {
            score += static_cast<std::uint32_t>(std::popcount(seed[w] ^ mask[w]));
            lost += static_cast<std::uint32_t>(std::popcount(seed[w] & mask[w]));
        }
        if (!model.in_window(score)) continue;
        ++out.in_window;
        if (model.accepted(score, lost)) ++out.accepted;
    }
    if (out.in_window > 0) {
        const double m = static_cast<double>(out.in_window);
        out.estimate = static_cast<double>(out.accepted) / m;
        const double adj = (static_cast<double>(out.accepted) + 2.0) / (m + 4.0);
        out.std_error = std::sqrt(adj * (1.0 - adj) / (m + 4.0));
    }
    return out;
}

double manhattan_pruning_efficiency(double radius, double alpha_u, std::size_t d) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidInput("radius must be positive");
    if (!(alpha_u >= 0.0) || !std::isfinite(alpha_u)) throw InvalidInput("alpha_u must be >= 0");
    if (d == 0) throw InvalidInput("d must be at least 1");
    if (alpha_u == 0.0) return 1.0;
    return std::exp(static_cast<double>(d) * -std::log1p(alpha_u / radius));
}

std::vector<EfficiencyPoint> evaluate_grid(const EfficiencyGrid& grid) {
    std::vector<EfficiencyPoint> points;
    for (auto a : grid.alpha_i) {
        for (auto p : grid.p) {
            for (auto s : grid.s) {
                EfficiencyPoint pt;
                pt.query = {a, grid.d, p, s};
                validate(pt.query);
                points.push_back(pt);
            }
        }
    }
    const bool exact = grid.mode != EfficiencyMode::Simulate;
    const bool simulate = grid.mode != EfficiencyMode::Exact;
    detail::parallel_chunks(
        points.size(), grid.threads,
        [&](std::size_t begin, std::size_t end) {
            for (std::size_t q = begin; q < end; ++q) {
                auto& pt = points[q];
                if (exact) {
                    const auto pr = window_probabilities(pt.query);
                    pt.p1 = pr.p1;
                    pt.p2 = pr.p2;
                    if (pr.p1 > 0.0) pt.efficiency = pr.p2 / pr.p1;
                }
                if (simulate) {
                    pt.simulated = simulate_efficiency(pt.query, grid.n_samples,
                                                       child_seed(grid.rng_seed, q));
                }
            }
        },
        1);
    return points;
}

}  // namespace classix
