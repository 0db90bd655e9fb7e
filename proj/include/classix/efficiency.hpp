#pragma once
// How often the score window's early termination is "worth it": the share
// of points inside the window that also pass the similarity threshold.
//
// Model: a seed of score alpha_i in d dimensions; a point is obtained by
// flipping every bit independently with probability p. With s = 1 - radius,
//   P1 = P(alpha_i*s <= alpha_j <= alpha_i/s)       (inside the window)
//   P2 = P(inside the window and similarity >= s)
// and efficiency = P2 / P1.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace classix {

struct EfficiencyQuery {
    std::size_t alpha_i = 0;
    std::size_t d = 0;
    double p = 0.0;
    double s = 0.5;
};

// Throws InvalidInput unless 0 < s < 1, 0 <= p <= 1, alpha_i <= d.
void validate(const EfficiencyQuery& q);

// C(n,k) p^k (1-p)^(n-k), evaluated in log space.
double binomial_pmf(std::size_t k, std::size_t n, double p);

// P(alpha_j = k) for a point drawn around a score-alpha_i seed.
double score_pmf(std::size_t k, std::size_t alpha_i, std::size_t d, double p);

double p1(const EfficiencyQuery& q);
double p2(const EfficiencyQuery& q);
// nullopt when P1 == 0.
std::optional<double> efficiency(const EfficiencyQuery& q);

struct SimulatedEfficiency {
    std::optional<double> estimate;  // nullopt when no sample fell in the window
    // Binomial standard error of the estimate, using the Agresti-Coull
    // adjusted proportion so that it stays positive at 0 and 1.
    double std_error = 0.0;
    std::uint64_t in_window = 0;  // denominator
    std::uint64_t accepted = 0;   // numerator
    std::uint64_t samples = 0;
};

// Samples n_samples noisy copies of a fixed seed with exactly alpha_i set
// bits and counts window membership and threshold passes exactly.
SimulatedEfficiency simulate_efficiency(const EfficiencyQuery& q, std::uint64_t n_samples,
                                        std::uint64_t rng_seed);

// (radius / (radius + alpha_u))^d: volume of the radius ball over the
// volume scanned by the norm window, for the Manhattan norm.
double manhattan_pruning_efficiency(double radius, double alpha_u, std::size_t d);

struct EfficiencyPoint {
    EfficiencyQuery query;
    double p1 = 0.0;
    double p2 = 0.0;
    std::optional<double> efficiency;
    std::optional<SimulatedEfficiency> simulated;
};

enum class EfficiencyMode { Exact, Simulate, Both };

struct EfficiencyGrid {
    std::vector<std::size_t> alpha_i;
    std::vector<double> p;
    std::vector<double> s;
    std::size_t d = 1000;
    EfficiencyMode mode = EfficiencyMode::Exact;
    std::uint64_t n_samples = 100000;
    std::uint64_t rng_seed = 0;
    unsigned threads = 1;
};

// Points in alpha_i-major, then p, then s order. Query number q of the grid
// simulates with child stream q of rng_seed.
std::vector<EfficiencyPoint> evaluate_grid(const EfficiencyGrid& grid);

}  // namespace classix
