#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "classix/efficiency.hpp"
#include "classix/error.hpp"
#include "classix/rng.hpp"
#include "classix/synthgen.hpp"

using namespace classix;

TEST(Binomial, Examples) {
    EXPECT_EQ(binomial_pmf(0, 17, 0.0), 1.0);
    EXPECT_EQ(binomial_pmf(1, 1, 0.5), 0.5);
    EXPECT_NEAR(binomial_pmf(3, 10, 0.3), 120 * std::pow(0.3, 3) * std::pow(0.7, 7), 1e-14);
    double s = 0;
    for (std::size_t k = 0; k <= 20; ++k) s += binomial_pmf(k, 20, 0.3);
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_THROW(binomial_pmf(3, 2, 0.5), InvalidInput);
    EXPECT_THROW(binomial_pmf(0, 2, 1.5), InvalidInput);
}

TEST(Binomial, LargeNStaysFinite) {
    const double mode = binomial_pmf(50000, 100000, 0.5);
    EXPECT_GT(mode, 0.0);
    EXPECT_NEAR(mode, 1.0 / std::sqrt(M_PI * 50000), 1e-6);
    double mean = 0, total = 0;
    for (std::size_t k = 0; k <= 100000; ++k) {
        const double f = binomial_pmf(k, 100000, 0.01);
        mean += k * f;
        total += f;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
    EXPECT_NEAR(mean, 1000.0, 1e-6);
}

TEST(ScorePmf, NoFlipsIsAPointMass) {
    for (std::size_t k = 0; k <= 20; ++k) EXPECT_EQ(score_pmf(k, 7, 20, 0.0), k == 7 ? 1.0 : 0.0);
}

TEST(ScorePmf, Normalized) {
    for (auto [a, d] : {std::pair<std::size_t, std::size_t>{30, 100}, {0, 50}, {500, 2000}, {2000, 2000}}) {
        for (double p : {0.05, 0.3}) {
            double s = 0;
            for (std::size_t k = 0; k <= d; ++k) s += score_pmf(k, a, d, p);
            EXPECT_NEAR(s, 1.0, 1e-10) << a << ' ' << d << ' ' << p;
        }
    }
}

TEST(ScorePmf, MeanMatchesBinomialMoments) {
    const std::size_t a = 30, d = 100;
    const double p = 0.05;
    double mean = 0;
    for (std::size_t k = 0; k <= d; ++k) mean += k * score_pmf(k, a, d, p);
    EXPECT_NEAR(mean, a * (1 - p) + (d - a) * p, 1e-10);
}

TEST(ScorePmf, MatchesMonteCarlo) {
    const std::size_t a = 30, d = 100, trials = 1000000;
    const double p = 0.05;
    Rng rng(99);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        // bits 0..a-1 set; count the flipped score directly.
        const auto m = flip_mask(d, p, rng);
        std::size_t lost = 0, gained = 0;
        for (std::size_t b = 0; b < d; ++b) {
            const bool f = (m[b / 64] >> (b % 64)) & 1;
            if (f && b < a) ++lost;
            if (f && b >= a) ++gained;
        }
        hits += (a - lost + gained) == 29;
    }
    const double expect = score_pmf(29, a, d, p);
    const double se = std::sqrt(expect * (1 - expect) / trials);
    EXPECT_NEAR(static_cast<double>(hits) / trials, expect, 3 * se);
}

TEST(Efficiency, LooseThresholdGivesOne) {
    // s small enough that every in-window point passes.
    const EfficiencyQuery q{20, 100, 0.01, 0.05};
    EXPECT_DOUBLE_EQ(p1(q), p2(q));
    EXPECT_DOUBLE_EQ(*efficiency(q), 1.0);
}

TEST(Efficiency, SubsumAndRanges) {
    Rng rng(4);
    for (int t = 0; t < 200; ++t) {
        const std::size_t d = 1 + rng.below(300);
        const EfficiencyQuery q{rng.below(d + 1), d, rng.uniform(), 0.01 + 0.98 * rng.uniform()};
        const double a = p1(q), b = p2(q);
        ASSERT_GE(b, 0.0);
        ASSERT_LE(b, a);
        ASSERT_LE(a, 1.0 + 1e-12);
    }
}

TEST(Efficiency, UndefinedWhenWindowIsEmpty) {
    // p = 1 flips every bit: score becomes d - alpha = 90, far outside the
    // window around 10.
    const EfficiencyQuery q{10, 100, 1.0, 0.9};
    EXPECT_EQ(p1(q), 0.0);
    EXPECT_FALSE(efficiency(q).has_value());
    EXPECT_FALSE(simulate_efficiency(q, 100, 1).estimate.has_value());
}

TEST(Efficiency, RejectsBadQueries) {
    EXPECT_THROW(p1({10, 100, 0.1, 1.0}), InvalidInput);
    EXPECT_THROW(p1({10, 100, -0.1, 0.5}), InvalidInput);
    EXPECT_THROW(p1({101, 100, 0.1, 0.5}), InvalidInput);
    EXPECT_THROW(simulate_efficiency({10, 100, 0.1, 0.5}, 0, 1), InvalidInput);
}

TEST(Simulation, NoFlipsAlwaysAccepted) {
    const auto sim = simulate_efficiency({40, 200, 0.0, 0.8}, 500, 3);
    ASSERT_TRUE(sim.estimate);
    EXPECT_EQ(*sim.estimate, 1.0);
    EXPECT_EQ(sim.in_window, 500u);
    EXPECT_GT(sim.std_error, 0.0);
}

TEST(Simulation, Deterministic) {
    const EfficiencyQuery q{100, 1000, 0.05, 0.7};
    const auto a = simulate_efficiency(q, 20000, 8), b = simulate_efficiency(q, 20000, 8);
    EXPECT_EQ(a.accepted, b.accepted);
    EXPECT_EQ(a.in_window, b.in_window);
}

TEST(Simulation, AgreesWithExactModel) {
    const EfficiencyQuery q{300, 1000, 0.05, 0.6};
    const auto sim = simulate_efficiency(q, 100000, 17);
    const auto exact = efficiency(q);
    ASSERT_TRUE(sim.estimate && exact);
    EXPECT_LE(std::abs(*sim.estimate - *exact), 3 * sim.std_error);
}

TEST(Simulation, AgreesOnSmallGrid) {
    for (double p : {0.02, 0.05, 0.1}) {
        for (double s : {0.5, 0.6, 0.7}) {
            const EfficiencyQuery q{100, 1000, p, s};
            const auto sim = simulate_efficiency(q, 20000, 23);
            const auto exact = efficiency(q);
            ASSERT_TRUE(exact.has_value());
            if (!sim.estimate) continue;
            EXPECT_LE(std::abs(*sim.estimate - *exact), 3 * sim.std_error) << p << ' ' << s;
        }
    }
}

TEST(ManhattanEfficiency, Formula) {
    EXPECT_EQ(manhattan_pruning_efficiency(1.0, 0.0, 7), 1.0);
    EXPECT_EQ(manhattan_pruning_efficiency(1.0, 1.0, 2), 0.25);
    double prev = 1.0;
    for (std::size_t d = 1; d < 50; ++d) {
        const double e = manhattan_pruning_efficiency(0.7, 0.4, d);
        EXPECT_LT(e, prev);
        EXPECT_GT(e, 0.0);
        prev = e;
    }
    EXPECT_THROW(manhattan_pruning_efficiency(0.0, 1.0, 2), InvalidInput);
}

TEST(Grid, OrderAndThreads) {
    EfficiencyGrid g;
    g.alpha_i = {100, 300};
    g.p = {0.01, 0.05};
    g.s = {0.5, 0.7};
    g.mode = EfficiencyMode::Both;
    g.n_samples = 2000;
    g.rng_seed = 5;
    const auto a = evaluate_grid(g);
    g.threads = 3;
    const auto b = evaluate_grid(g);
    ASSERT_EQ(a.size(), 8u);
    EXPECT_EQ(a[1].query.s, 0.7);
    EXPECT_EQ(a[2].query.p, 0.05);
    EXPECT_EQ(a[4].query.alpha_i, 300u);
    for (std::size_t q = 0; q < a.size(); ++q) {
        EXPECT_EQ(a[q].p1, b[q].p1);
        EXPECT_EQ(a[q].simulated->accepted, b[q].simulated->accepted);
    }
}
