#include <doctest.h>

#include <cmath>

#include "reprograph/edge_stats.hpp"
#include "reprograph/graph.hpp"
#include "reprograph/graph_io.hpp"
#include "test_util.hpp"

using namespace reprograph;

TEST_CASE("expected_edges: base case and hand-iterated recursion") {
    Params p{0.0, 1.0, 0.2};
    CHECK(expected_edges(0, p, 1, 0) == 0.0);
    CHECK(expected_edges(0, p, 2, 5) == 5.0);
    // m: 0 -> 1 -> 3.4 -> 8.76
    CHECK(expected_edges(1, p, 1, 0) == doctest::Approx(1.0));
    CHECK(expected_edges(2, p, 1, 0) == doctest::Approx(3.4));
    CHECK(expected_edges(3, p, 1, 0) == doctest::Approx(8.76));
}

TEST_CASE("expected_edges: closed form agrees with the recursion to 1e-12") {
    for (Params p : {Params{0.3, 0.5, 0.2}, Params{0.0, 1.0, 0.2}, Params{0.9, 0.7, 0.8}}) {
        for (std::uint32_t n : {1u, 4u, 9u, 16u}) {
            const double rec = expected_edges(n, p, 3, 0);
            const double closed = expected_edges_closed(n, p, 3);
            CHECK(std::fabs(rec - closed) <= 1e-12 * std::max(1.0, std::fabs(rec)));
        }
    }
}

TEST_CASE("expected_edges: critical point closed form 2^n (e0 + b v0 n / 2)") {
    Params p{0.0, 1.0, 0.5};
    for (std::uint32_t n : {1u, 3u, 7u})
        CHECK(expected_edges(n, p, 2, 0) ==
              doctest::Approx(std::pow(2.0, n) * (1.0 * 2.0 * n / 2.0)));
}

TEST_CASE("variance_edges: deterministic parameter corners give zero") {
    for (double a : {0.0, 1.0})
        for (double b : {0.0, 1.0})
            for (double g : {0.0, 1.0})
                for (std::uint32_t n : {0u, 1u, 5u})
                    CHECK(variance_edges(n, Params{a, b, g}, 2, 1) == 0.0);
}

TEST_CASE("variance_edges: single-step hand computation") {
    // v(1) = e0 (2 g (1-g) + a(1-a)) + v0 b(1-b) = 1 * 0.5 + 0 = 0.5
    CHECK(variance_edges(1, Params{0.0, 1.0, 0.5}, 2, 1) == doctest::Approx(0.5));
}

TEST_CASE("edge moments: Monte Carlo agreement from K2") {
    Params p{0.3, 0.5, 0.2};
    StreamKey k(21);
    const int reps = 20000;
    const std::uint32_t n = 3;
    std::vector<double> e3(reps);
    for (int r = 0; r < reps; ++r) {
        auto res = grow(make_preset("k2"), p, n, k.child(static_cast<std::uint64_t>(r)));
        e3[r] = static_cast<double>(res.stats[n].edges);
    }
    const double want_mean = expected_edges(n, p, 2, 1);
    const double want_var = variance_edges(n, p, 2, 1);
    CHECK(std::fabs(test_util::mean(e3) - want_mean) <= 4 * test_util::se_of_mean(e3));
    CHECK(std::fabs(test_util::sample_variance(e3) - want_var) <= 0.05 * want_var);
}

TEST_CASE("classify_edge_regime") {
    auto sparse = classify_edge_regime(Params{0.0, 1.0, 0.2}, 2.0);
    CHECK(sparse.regime == EdgeRegime::sparse);
    CHECK(sparse.limit_value == doctest::Approx(2.0 / 0.6));

    auto crit = classify_edge_regime(Params{0.0, 1.0, 0.5}, 2.0);
    CHECK(crit.regime == EdgeRegime::critical);
    CHECK(crit.limit_value == doctest::Approx(1.0));

    auto dense = classify_edge_regime(Params{0.0, 1.0, 1.0});
    CHECK(dense.regime == EdgeRegime::dense);
    CHECK(dense.limit_value == doctest::Approx(std::log(3.0) / std::log(2.0)));
}

TEST_CASE("martingale_w: base case, beta = 0 rejected") {
    Params p{0.3, 0.5, 0.4};
    // n = 0, K2: (2 + (2g + a - 1)/b * 1) / 1
    const double want = 2.0 + (2 * 0.4 + 0.3 - 1.0) / 0.5;
    CHECK(martingale_w(2.0, 1.0, 0, p) == doctest::Approx(want));
    CHECK_THROWS_AS(martingale_w(2.0, 1.0, 0, Params{0.3, 0.0, 0.4}), std::invalid_argument);
}

TEST_CASE("martingale_w: constant along the deterministic all-one growth") {
    Params p{1.0, 1.0, 1.0};
    auto res = grow(make_preset("k2"), p, 4, StreamKey(22));
    for (const auto& s : res.stats) {
        REQUIRE(s.martingale_w.has_value());
        CHECK(*s.martingale_w == doctest::Approx(4.0));
    }
}

TEST_CASE("martingale_w: one-step conditional mean preserves the value") {
    Params p{0.5, 0.5, 0.5};
    StreamKey k(23);
    GrowOptions keep;
    keep.keep_final = true;
    auto base = grow(make_preset("k2"), p, 4, k, keep);
    const double w4 = *base.stats.back().martingale_w;
    const int reps = 4000;
    std::vector<double> w5(reps);
    for (int r = 0; r < reps; ++r) {
        auto g5 = evolve(*base.final_graph, p, k.child({1000, static_cast<std::uint64_t>(r)}));
        w5[r] = martingale_w(make_stats(g5, p), p);
    }
    CHECK(std::fabs(test_util::mean(w5) - w4) <= 4 * test_util::se_of_mean(w5));
}

TEST_CASE("martingale_w: dense-regime run settles (Cauchy tail over last 5)") {
    Params p{0.9, 1.0, 0.8};
    Caps caps;
    caps.max_edges = 1ull << 24;
    GrowOptions opts;
    opts.caps = caps;
    auto res = grow(make_preset("k2"), p, 12, StreamKey(24), opts);
    std::vector<double> w;
    for (std::size_t i = res.stats.size() - 5; i < res.stats.size(); ++i) {
        REQUIRE(res.stats[i].martingale_w.has_value());
        w.push_back(*res.stats[i].martingale_w);
        CHECK(w.back() >= 0.0);
    }
    double spread = 0;
    for (double v : w) spread = std::max(spread, std::fabs(v - w.back()));
    CHECK(spread < 0.01 * std::max(1.0, w.back()));
}

TEST_CASE("densification_fit: complete-graph growth has exponent near 2") {
    auto res = grow(make_preset("k2"), Params{1.0, 1.0, 1.0}, 10, StreamKey(25));
    CHECK(std::fabs(densification_fit(res.stats) - 2.0) < 0.05);
}

TEST_CASE("densification_fit: deterministic ILT run gives log3/log2") {
    auto res = grow(make_preset("k2"), Params{0.0, 1.0, 1.0}, 10, StreamKey(26));
    CHECK(std::fabs(densification_fit(res.stats) - std::log(3.0) / std::log(2.0)) < 0.05);
}

TEST_CASE("densification_fit: sparse regime slope near 1") {
    auto res = grow(make_preset("k2"), Params{0.0, 1.0, 0.2}, 14, StreamKey(27));
    CHECK(std::fabs(densification_fit(res.stats) - 1.0) < 0.05);
}

TEST_CASE("densification_fit: error reporting") {
    std::vector<double> vs{2, 4, 8, 16, 32, 64, 128, 256};
    std::vector<double> es_zero{0, 0, 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(densification_fit(std::span<const double>(vs), std::span<const double>(es_zero)),
                    std::domain_error);
    std::vector<double> es_const{3, 3, 3, 3, 3, 3, 3, 3};
    CHECK_THROWS_AS(densification_fit(std::span<const double>(vs), std::span<const double>(es_const)),
                    std::domain_error);
    std::vector<double> few_v{2, 4, 8, 16};
    std::vector<double> few_e{1, 2, 3, 4};
    CHECK_THROWS_AS(densification_fit(std::span<const double>(few_v), std::span<const double>(few_e)),
                    std::invalid_argument);
}
