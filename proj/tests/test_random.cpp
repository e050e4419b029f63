#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "reprograph/random.hpp"

using namespace reprograph;

TEST_CASE("derive_stream: empty extension is identity") {
    StreamKey k(42);
    CHECK(derive_stream(k, {}) == k);
}

TEST_CASE("derive_stream: distinct tags give distinct generators") {
    StreamKey k(42);
    StreamKey a = derive_stream(k, {3});
    StreamKey b = derive_stream(k, {4});
    bool all_equal = true;
    for (std::uint64_t i = 0; i < 16; ++i)
        if (a.word(i) != b.word(i)) all_equal = false;
    CHECK_FALSE(all_equal);
}

TEST_CASE("derive_stream: path is order-sensitive and composes") {
    StreamKey k(7);
    CHECK(k.child({1, 2}) == k.child(1).child(2));
    CHECK_FALSE(k.child({1, 2}) == k.child({2, 1}));
}

TEST_CASE("determinism: rebuilt key reproduces the sequence byte for byte") {
    // Simulates two separate process runs with the same master seed.
    std::vector<std::uint64_t> first, second;
    {
        StreamKey k = StreamKey(987654321).child({5, 17, 3});
        for (std::uint64_t i = 0; i < 100; ++i) first.push_back(k.word(i));
    }
    {
        StreamKey k = StreamKey(987654321).child({5, 17, 3});
        for (std::uint64_t i = 0; i < 100; ++i) second.push_back(k.word(i));
    }
    CHECK(first == second);
}

TEST_CASE("bernoulli: degenerate probabilities") {
    StreamKey k(1);
    for (std::uint64_t t = 0; t < 64; ++t) {
        CHECK(bernoulli(k.child(t), 0.0) == 0);
        CHECK(bernoulli(k.child(t), 1.0) == 1);
    }
    CHECK_THROWS_AS(bernoulli(k, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(bernoulli(k, 1.1), std::invalid_argument);
}

TEST_CASE("bernoulli: empirical mean at p=0.3 over 1e6 draws") {
    StreamKey k(2024);
    const int n = 1'000'000;
    long sum = 0;
    for (int i = 0; i < n; ++i)
        sum += bernoulli(k.child(static_cast<std::uint64_t>(i)), 0.3);
    double mean = static_cast<double>(sum) / n;
    CHECK(std::fabs(mean - 0.3) < 0.002);  // 4 sigma band, sigma = sqrt(p(1-p)/n)
}

TEST_CASE("binomial: edge cases") {
    StreamKey k(5);
    CHECK(binomial(k, 0, 0.5) == 0);
    CHECK(binomial(k, 7, 1.0) == 7);
    CHECK(binomial(k, 7, 0.0) == 0);
    CHECK_THROWS_AS(binomial(k, 3, 2.0), std::invalid_argument);
}

TEST_CASE("binomial: empirical mean at (n=20, p=0.25) over 1e5 draws") {
    StreamKey k(77);
    const int reps = 100'000;
    double sum = 0;
    for (int i = 0; i < reps; ++i)
        sum += static_cast<double>(binomial(k.child(static_cast<std::uint64_t>(i)), 20, 0.25));
    double mean = sum / reps;
    CHECK(std::fabs(mean - 5.0) < 0.06);
}

TEST_CASE("binomial: prefix coupling makes the draw non-decreasing in n") {
    StreamKey root(31337);
    for (std::uint64_t t = 0; t < 200; ++t) {
        StreamKey k = root.child(t);
        double p = k.child(99).unit(0);
        std::uint64_t prev = 0;
        for (std::uint64_t n = 0; n <= 40; n += 4) {
            std::uint64_t b = binomial(k, n, p);
            CHECK(b >= prev);
            CHECK(b - prev <= 4);  // at most the added trials can succeed
            prev = b;
        }
    }
}

TEST_CASE("binomial: chi-square goodness of fit for Bin(10, 0.3)") {
    // Oracle: exact pmf from binomial coefficients, independent of the sampler.
    const double coeff[11] = {1, 10, 45, 120, 210, 252, 210, 120, 45, 10, 1};
    double pmf[11];
    for (int x = 0; x <= 10; ++x)
        pmf[x] = coeff[x] * std::pow(0.3, x) * std::pow(0.7, 10 - x);

    const int reps = 100'000;
    StreamKey k(40'000'000);
    std::vector<long> counts(11, 0);
    for (int i = 0; i < reps; ++i)
        ++counts[binomial(k.child(static_cast<std::uint64_t>(i)), 10, 0.3)];

    // Bins 0..8 plus a merged tail {9,10} so every expected count is >= 5.
    double chi2 = 0;
    for (int x = 0; x <= 8; ++x) {
        double expected = reps * pmf[x];
        double d = counts[x] - expected;
        chi2 += d * d / expected;
    }
    {
        double expected = reps * (pmf[9] + pmf[10]);
        double d = (counts[9] + counts[10]) - expected;
        chi2 += d * d / expected;
    }
    // df = 9, critical value at significance 1e-3
    CHECK(chi2 < 27.877);
}

TEST_CASE("stream cursor: sequential draws match explicit counters") {
    StreamKey k = StreamKey(11).child(3);
    Stream s(k);
    for (std::uint64_t i = 0; i < 10; ++i) CHECK(s.next_u64() == k.word(i));
}

TEST_CASE("unit draws have 53-bit resolution and live in [0,1)") {
    StreamKey k(999);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        double u = k.unit(i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        double scaled = u * 9007199254740992.0;  // 2^53
        CHECK(scaled == std::floor(scaled));
    }
}
