#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "classix/data.hpp"
#include "classix/error.hpp"
#include "classix/io.hpp"
#include "classix/metrics.hpp"
#include "support.hpp"

using namespace classix;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    auto p = std::filesystem::temp_directory_path() / ("classix_test_" + name);
    std::ofstream(p) << contents;
    return p;
}

}  // namespace

TEST(DenseDataset, RejectsBadShapesAndNonFinite) {
    EXPECT_THROW(DenseDataset(0, 2, {}), InvalidInput);
    EXPECT_THROW(DenseDataset(1, 0, {}), InvalidInput);
    EXPECT_THROW(DenseDataset(2, 2, {1, 2, 3}), InvalidInput);
    EXPECT_THROW(DenseDataset(1, 2, {1, std::nan("")}), InvalidInput);
    EXPECT_THROW(DenseDataset(1, 1, {-1.0}, {0.0}), InvalidInput);
}

TEST(OrthantShift, WorkedExample) {
    const auto data = DenseDataset::from_rows({{-2, 1}, {2, -1}});
    EXPECT_EQ(manhattan_norm(data.row(0)), manhattan_norm(data.row(1)));
    const auto res = orthant_shift(data);
    EXPECT_EQ(res.shift, (std::vector<double>{-2, -1}));
    EXPECT_EQ(res.dataset.values(), (std::vector<double>{0, 2, 4, 0}));
    EXPECT_EQ(std::abs(manhattan_norm(res.dataset.row(0)) - manhattan_norm(res.dataset.row(1))), 2);
    EXPECT_EQ(manhattan_distance(data.row(0), data.row(1)), 6);
    EXPECT_EQ(manhattan_distance(res.dataset.row(0), res.dataset.row(1)), 6);
    EXPECT_EQ(res.dataset.original_row(1), (std::vector<double>{2, -1}));
    EXPECT_THROW(orthant_shift(res.dataset), InvalidInput);
}

TEST(OrthantShift, IdentityWhenMinimumIsZero) {
    const auto data = DenseDataset::from_rows({{0, 3}, {2, 0}, {1, 1}});
    const auto res = orthant_shift(data);
    EXPECT_EQ(res.shift, (std::vector<double>{0, 0}));
    EXPECT_EQ(res.dataset.values(), data.values());
}

TEST(OrthantShift, PreservesDistancesOnIntegerData) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> v(-50, 50);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> values(15);
        for (auto& x : values) x = v(rng);
        const DenseDataset data(5, 3, values);
        const auto shifted = orthant_shift(data).dataset;
        for (double x : shifted.values()) EXPECT_GE(x, 0.0);
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) {
                EXPECT_EQ(oracle::naive_manhattan(data, i, j), oracle::naive_manhattan(shifted, i, j));
            }
        }
    }
}

TEST(OrthantShift, PreservesDistancesOnFloats) {
    std::mt19937_64 rng(8);
    const auto data = oracle::random_dense(5, 3, 2, 1.0, rng);
    const auto shifted = orthant_shift(data).dataset;
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            const double a = oracle::naive_manhattan(data, i, j);
            EXPECT_NEAR(oracle::naive_manhattan(shifted, i, j), a, 1e-12 * std::max(1.0, a));
        }
    }
}

TEST(ScoreAndSort, FingerprintTiesKeepIndexOrder) {
    const auto f = FingerprintSet::from_strings({"110", "011", "111"});
    EXPECT_EQ(f.scores(), (std::vector<std::uint32_t>{2, 2, 3}));
    const auto order = score_and_sort(f);
    EXPECT_EQ(order.perm, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(ScoreAndSort, DenseManhattan) {
    const auto data = DenseDataset::from_rows({{3, 0}, {-1, -1}, {0, 0}});
    const auto order = score_and_sort(data);
    EXPECT_EQ(order.perm, (std::vector<std::size_t>{2, 1, 0}));
    EXPECT_EQ(order.sorted_scores, (std::vector<double>{0, 2, 3}));
    EXPECT_THROW(score_and_sort(data, DistanceKind::Tanimoto), InvalidInput);
}

TEST(ScoreAndSort, StableAndIdempotent) {
    std::mt19937_64 rng(3);
    const auto f = oracle::random_fingerprints(300, 12, 0.3, rng);
    const auto order = score_and_sort(f);
    for (std::size_t k = 1; k < order.perm.size(); ++k) {
        const auto a = order.perm[k - 1], b = order.perm[k];
        ASSERT_LE(f.score(a), f.score(b));
        if (f.score(a) == f.score(b)) ASSERT_LT(a, b);
    }
    for (std::size_t k = 0; k < order.perm.size(); ++k) {
        EXPECT_EQ(order.sorted_scores[k], f.score(order.perm[k]));
    }
    // Sorting already sorted data leaves it in place.
    std::vector<std::string> rows;
    for (auto i : order.perm) rows.push_back(f.row_string(i));
    const auto again = score_and_sort(FingerprintSet::from_strings(rows));
    for (std::size_t k = 0; k < again.perm.size(); ++k) EXPECT_EQ(again.perm[k], k);
}

TEST(FingerprintSet, ScoresMatchNaiveCount) {
    std::mt19937_64 rng(4);
    for (std::size_t d : {1, 63, 64, 65, 130, 1000}) {
        const auto f = oracle::random_fingerprints(20, d, 0.4, rng);
        for (std::size_t i = 0; i < f.size(); ++i) {
            EXPECT_EQ(f.score(i), oracle::naive_popcount(f, i));
        }
    }
}

TEST(FingerprintSet, RejectsPaddingBits) {
    EXPECT_THROW(FingerprintSet(1, 3, {0b1000}), InvalidInput);
    EXPECT_NO_THROW(FingerprintSet(1, 3, {0b101}));
}

TEST(FingerprintIo, ParsesBinaryLines) {
    std::istringstream in("101\n011\n");
    const auto f = read_fingerprints(in);
    EXPECT_EQ(f.size(), 2u);
    EXPECT_EQ(f.dims(), 3u);
    EXPECT_EQ(f.scores(), (std::vector<std::uint32_t>{2, 2}));
}

TEST(FingerprintIo, UnequalLengthNamesTheLine) {
    std::istringstream in("101\n01\n");
    try {
        read_fingerprints(in);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_NE(std::string(e.what()).find("dimension mismatch"), std::string::npos);
    }
}

TEST(FingerprintIo, RejectsBadCharacters) {
    std::istringstream in("101\n0a1\n");
    EXPECT_THROW(read_fingerprints(in), ParseError);
}

TEST(FingerprintIo, HexLinesAreBigEndianNibbles) {
    std::istringstream in("0xA\n0x5\n");
    const auto f = read_fingerprints(in, 4);
    EXPECT_EQ(f.row_string(0), "1010");
    EXPECT_EQ(f.row_string(1), "0101");
    std::istringstream partial("0xE\n");
    EXPECT_EQ(read_fingerprints(partial, 3).row_string(0), "111");
    std::istringstream stray("0x1\n");
    EXPECT_THROW(read_fingerprints(stray, 3), ParseError);
    std::istringstream no_dims("0xA\n");
    EXPECT_THROW(read_fingerprints(no_dims), ParseError);
}

TEST(FingerprintIo, RoundTrip) {
    std::mt19937_64 rng(5);
    const auto f = oracle::random_fingerprints(17, 77, 0.5, rng);
    auto path = std::filesystem::temp_directory_path() / "classix_test_fp_roundtrip.txt";
    save_fingerprints(path, f);
    const auto g = load_fingerprints(path);
    EXPECT_EQ(g.words(), f.words());
    EXPECT_EQ(g.dims(), f.dims());
}

TEST(DenseIo, ParsesAndRoundTrips) {
    std::istringstream in("1.0,2.0\n-3.5,0.0\n");
    const auto data = read_dense_csv(in);
    EXPECT_EQ(data.size(), 2u);
    EXPECT_EQ(data.values(), (std::vector<double>{1.0, 2.0, -3.5, 0.0}));

    std::istringstream with_header("x,y\n1,2\n");
    EXPECT_EQ(read_dense_csv(with_header, {true}).size(), 1u);

    std::mt19937_64 rng(6);
    const auto r = oracle::random_dense(9, 4, 2, 3.0, rng);
    auto path = std::filesystem::temp_directory_path() / "classix_test_dense_roundtrip.csv";
    save_dense_csv(path, r);
    EXPECT_EQ(load_dense_csv(path).values(), r.values());
}

TEST(DenseIo, ErrorsCarryLineNumbers) {
    std::istringstream ragged("1,2\n3\n");
    try {
        read_dense_csv(ragged);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    std::istringstream junk("1,2\n3,x\n");
    EXPECT_THROW(read_dense_csv(junk), ParseError);
    EXPECT_THROW(load_dense_csv("/nonexistent/classix.csv"), IoError);
}

TEST(LabelsIo, RoundTrip) {
    const std::vector<std::int64_t> labels{0, 0, 1, 2, 1};
    std::ostringstream out;
    write_labels(out, labels);
    EXPECT_EQ(out.str(), "index,label\n0,0\n1,0\n2,1\n3,2\n4,1\n");
    std::istringstream in(out.str());
    EXPECT_EQ(read_labels(in), labels);
}

TEST(Checksum, DetectsChanges) {
    const auto a = temp_file("sum_a", "0101\n");
    const auto b = temp_file("sum_b", "0111\n");
    EXPECT_EQ(file_checksum(a).size(), 16u);
    EXPECT_EQ(file_checksum(a), file_checksum(a));
    EXPECT_NE(file_checksum(a), file_checksum(b));
}
