#include <doctest.h>

#include <cmath>
#include <map>

#include "reprograph/degree_chain.hpp"
#include "test_util.hpp"

using namespace reprograph;

TEST_CASE("chain_step: zero is absorbing when beta = 0") {
    Params p{0.7, 0.0, 0.9};
    StreamKey k(1);
    for (std::uint64_t t = 0; t < 50; ++t) CHECK(chain_step(0, p, k.child(t)) == 0);
}

TEST_CASE("chain_step: all-one parameters move x to 2x + 1 deterministically") {
    Params p{1.0, 1.0, 1.0};
    StreamKey k(2);
    for (std::uint64_t t = 0; t < 20; ++t) CHECK(chain_step(5, p, k.child(t)) == 11);
}

TEST_CASE("chain_step: with alpha=gamma=beta=0 only xi matters") {
    Params p{0.0, 0.0, 0.0};
    StreamKey k(3);
    int hits4 = 0, hits0 = 0;
    const int reps = 10000;
    for (int t = 0; t < reps; ++t) {
        auto x = chain_step(4, p, k.child(static_cast<std::uint64_t>(t)));
        if (x == 4) ++hits4;
        else if (x == 0) ++hits0;
        else FAIL("unexpected state");
    }
    CHECK(hits4 + hits0 == reps);
    CHECK(std::fabs(hits4 / double(reps) - 0.5) < 0.02);  // 4 sigma = 0.02
}

TEST_CASE("coupled_step: equal inputs stay equal") {
    Params p{0.4, 0.6, 0.3};
    StreamKey k(5);
    for (std::uint64_t t = 0; t < 100; ++t) {
        auto [a, b] = coupled_step(7, 7, p, k.child(t));
        CHECK(a == b);
    }
}

TEST_CASE("coupled_step: order is preserved path by path") {
    Params p{0.3, 0.5, 0.6};
    StreamKey k(6);
    for (std::uint64_t t = 0; t < 2000; ++t) {
        auto [a, b] = coupled_step(12, 4, p, k.child(t));
        CHECK(a >= b);
    }
}

TEST_CASE("coupled_step: mean contraction factor (1 + 2 gamma + alpha)/2") {
    StreamKey k(7);
    const std::uint64_t x = 40, xh = 10;
    int idx = 0;
    for (Params p : {Params{0.3, 0.5, 0.2}, Params{0.0, 1.0, 0.2}, Params{0.9, 0.5, 0.8}}) {
        const int reps = 50000;
        std::vector<double> diffs(reps);
        for (int r = 0; r < reps; ++r) {
            auto [a, b] = coupled_step(x, xh, p, k.child({static_cast<std::uint64_t>(idx),
                                                          static_cast<std::uint64_t>(r)}));
            diffs[r] = std::fabs(static_cast<double>(a) - static_cast<double>(b));
        }
        const double want = static_cast<double>(x - xh) * p.edge_growth_rate() / 2.0;
        CHECK(std::fabs(test_util::mean(diffs) - want) <= 4 * test_util::se_of_mean(diffs));
        ++idx;
    }
}

TEST_CASE("coupled_step: with alpha=gamma=0 the gap is |x-xh| * xi") {
    Params p{0.0, 0.7, 0.0};
    StreamKey k(8);
    const int reps = 20000;
    std::vector<double> diffs(reps);
    for (int r = 0; r < reps; ++r) {
        auto [a, b] = coupled_step(10, 0, p, k.child(static_cast<std::uint64_t>(r)));
        const double d = static_cast<double>(a) - static_cast<double>(b);
        CHECK((d == 0.0 || d == 10.0));
        diffs[r] = d;
    }
    CHECK(std::fabs(test_util::mean(diffs) - 5.0) <= 4 * test_util::se_of_mean(diffs));
}

TEST_CASE("build_kernel: degenerate rows") {
    SUBCASE("row 0 with beta = 0 is a point mass at 0") {
        auto kern = build_kernel(Params{0.5, 0.0, 0.5}, 8);
        auto row = kern.dense_row(0);
        CHECK(row[0] == doctest::Approx(1.0));
    }
    SUBCASE("row 1 with all parameters 0 is half-half on {0, 1}") {
        auto kern = build_kernel(Params{0.0, 0.0, 0.0}, 8);
        auto row = kern.dense_row(1);
        CHECK(row[0] == doctest::Approx(0.5));
        CHECK(row[1] == doctest::Approx(0.5));
    }
}

TEST_CASE("build_kernel: every row sums to one within 1e-12") {
    for (Params p : {Params{0.3, 0.5, 0.2}, Params{0.0, 1.0, 0.366}, Params{0.9, 0.1, 0.8}}) {
        auto kern = build_kernel(p, 256);
        for (std::uint32_t x = 0; x <= 256; ++x) {
            double s = 0;
            for (double v : kern.rows[x].p) s += v;
            CHECK(std::fabs(s - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("build_kernel: rows match the empirical law of chain_step") {
    Params p{0.25, 0.6, 0.35};
    auto kern = build_kernel(p, 128);
    StreamKey k(11);
    const int reps = 100000;
    int tag = 0;
    for (std::uint32_t x : {0u, 1u, 5u, 20u}) {
        std::vector<double> emp(kern.truncation + 1, 0.0);
        for (int r = 0; r < reps; ++r) {
            auto nx = chain_step(x, p, k.child({static_cast<std::uint64_t>(tag),
                                                static_cast<std::uint64_t>(r)}));
            emp[std::min<std::uint64_t>(nx, kern.truncation)] += 1.0 / reps;
        }
        auto row = kern.dense_row(x);
        double tv = 0;
        for (std::size_t i = 0; i < row.size(); ++i) tv += std::fabs(row[i] - emp[i]);
        CHECK(tv / 2 < 0.01);
        ++tag;
    }
}

TEST_CASE("stationary: alpha=gamma=0, beta=1 gives the exact geometric law") {
    auto kern = build_kernel(Params{0.0, 1.0, 0.0}, 64);
    auto res = stationary_distribution(kern, 1e-13);
    CHECK(res.residual < 1e-13);
    CHECK(res.pi[0] == doctest::Approx(0.0).epsilon(1e-12));
    for (std::uint32_t x = 1; x <= 20; ++x)
        CHECK(res.pi[x] == doctest::Approx(std::pow(2.0, -static_cast<double>(x))).epsilon(1e-9));

    // Long-run simulation agrees: TV < 0.01 over 1e6 steps after burn-in.
    StreamKey k(12);
    std::vector<double> emp(kern.truncation + 1, 0.0);
    std::uint64_t x = 0;
    const std::uint64_t burnin = 1000, steps = 1000000;
    for (std::uint64_t t = 0; t < burnin + steps; ++t) {
        x = chain_step(x, Params{0.0, 1.0, 0.0}, k.child(t));
        if (t >= burnin) emp[std::min<std::uint64_t>(x, kern.truncation)] += 1.0 / steps;
    }
    double tv = 0;
    for (std::size_t i = 0; i < emp.size(); ++i) tv += std::fabs(emp[i] - res.pi[i]);
    CHECK(tv / 2 < 0.01);
}

TEST_CASE("stationary: mean matches 2 beta / (1 - 2 gamma - alpha)") {
    Params p{0.0, 1.0, 0.2};
    auto ad = stationary_adaptive(p);
    CHECK(ad.lump_tol_met);
    CHECK(ad.stationary.lumped_mass < 1e-9);
    const double mean = moment(ad.stationary.pi, 1.0);
    CHECK(std::fabs(mean - 10.0 / 3.0) < 0.01 * 10.0 / 3.0);
}

TEST_CASE("stationary: pi[0] = 0 when beta = 1") {
    auto kern = build_kernel(Params{0.2, 1.0, 0.3}, 512);
    auto res = stationary_distribution(kern);
    CHECK(res.pi[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("stationary: refuses non-decreasing chains") {
    CHECK_THROWS_AS(stationary_distribution(build_kernel(Params{1.0, 0.5, 0.2}, 16)),
                    std::invalid_argument);
    CHECK_THROWS_AS(stationary_distribution(build_kernel(Params{0.2, 0.5, 1.0}, 16)),
                    std::invalid_argument);
}

TEST_CASE("stationary: warnings for transient and absorbing regimes") {
    auto super = stationary_distribution(build_kernel(Params{0.9, 0.5, 0.8}, 64), 1e-10);
    CHECK(super.warnings.size() >= 1);
    auto absorbing = stationary_distribution(build_kernel(Params{0.2, 0.0, 0.2}, 64));
    CHECK(absorbing.warnings.size() >= 1);
    CHECK(absorbing.pi[0] == doctest::Approx(1.0));  // point mass at the absorbing state
}

TEST_CASE("tail_exponent: gamma = (sqrt(3)-1)/2 gives p* = 2 exactly") {
    const double gamma = (std::sqrt(3.0) - 1.0) / 2.0;
    auto p = tail_exponent(Params{0.0, 1.0, gamma});
    REQUIRE(p.has_value());
    CHECK(std::fabs(*p - 2.0) < 1e-8);
}

TEST_CASE("tail_exponent: gamma = 0 below criticality means every moment is finite") {
    CHECK_FALSE(tail_exponent(Params{0.5, 0.3, 0.0}).has_value());
    CHECK_FALSE(tail_exponent(Params{0.0, 1.0, 0.0}).has_value());
}

TEST_CASE("tail_exponent: supercritical returns 0") {
    auto p = tail_exponent(Params{1.0, 0.5, 1.0});
    REQUIRE(p.has_value());
    CHECK(*p == 0.0);
}

TEST_CASE("tail_exponent: alpha=0, gamma=0.2 root lies in (3.7, 3.9)") {
    auto p = tail_exponent(Params{0.0, 1.0, 0.2});
    REQUIRE(p.has_value());
    CHECK(*p > 3.7);
    CHECK(*p < 3.9);
    const double f = std::pow(1.2, *p) + std::pow(0.2, *p) - 2.0;
    CHECK(std::fabs(f) < 1e-8);
}

TEST_CASE("classify_degree_regime") {
    CHECK(classify_degree_regime(Params{0.0, 0.5, 0.2}) == DegreeRegime::subcritical);
    CHECK(classify_degree_regime(Params{1.0, 0.5, 1.0}) == DegreeRegime::supercritical);
    // gamma solving (1+g)(0.5+g) = 1, i.e. g^2 + 1.5 g - 0.5 = 0
    const double g = (-1.5 + std::sqrt(4.25)) / 2.0;
    CHECK(classify_degree_regime(Params{0.5, 0.5, g}) == DegreeRegime::critical);
}

TEST_CASE("moment: point mass and uniform examples") {
    CHECK(moment(std::vector<double>{0.0, 0.0, 1.0}, 3.0) == doctest::Approx(8.0));
    CHECK(moment(std::vector<double>{0.5, 0.5}, 1.0) == doctest::Approx(0.5));
    CHECK(moment(std::vector<double>{0.25, 0.75}, 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(moment(std::vector<double>{1.0}, -1.0), std::invalid_argument);
}

TEST_CASE("conditional_moment_ratio: p = 0 gives exactly 1") {
    auto r = conditional_moment_ratio(50, Params{0.2, 1.0, 0.3}, 0.0, 100, StreamKey(13));
    CHECK(r.parent_ratio == 1.0);
    CHECK(r.child_ratio == 1.0);
}

TEST_CASE("conditional_moment_ratio: p = 1 parent ratio near 1 + gamma") {
    auto r = conditional_moment_ratio(10000, Params{0.0, 1.0, 0.3}, 1.0, 4000, StreamKey(14));
    CHECK(std::fabs(r.parent_ratio - 1.3) < 0.01);
}

TEST_CASE("conditional_moment_ratio: p = -1 child ratio near 1/(alpha+gamma)") {
    auto r = conditional_moment_ratio(10000, Params{0.2, 0.0, 0.3}, -1.0, 4000, StreamKey(15));
    CHECK(std::fabs(r.child_ratio - 2.0) < 0.04);
}

TEST_CASE("trajectory moments: below p* stabilizes, above p* drifts") {
    Params p{0.0, 1.0, 0.2};  // p* ~ 3.81
    StreamKey k(16);
    auto xs = chain_trajectory(1, p, 1000000, k);
    auto window_moment = [&](std::size_t upto, double pw) {
        double s = 0;
        for (std::size_t i = 1000; i < upto; ++i) s += std::pow(double(xs[i]), pw);
        return s / double(upto - 1000);
    };
    const double low_small = window_moment(11000, 2.0);
    const double low_full = window_moment(xs.size(), 2.0);
    CHECK(low_full / low_small > 0.5);
    CHECK(low_full / low_small < 2.0);
    const double high_small = window_moment(11000, 6.0);
    const double high_full = window_moment(xs.size(), 6.0);
    CHECK(high_full / high_small > 2.0);  // running estimate keeps growing
}
