#include <doctest.h>

#include <cmath>
#include <limits>

#include "reprograph/graph_io.hpp"
#include "reprograph/spectral.hpp"

using namespace reprograph;

namespace {

// Independent oracle: direct minimum over all subsets with vol(S) <= vol/2.
double cheeger_brute(const ReproGraph& g) {
    const std::uint32_t n = g.vertex_count();
    const std::uint64_t vol = 2 * g.edge_count();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t S = 1; S < (1u << n) - 1u; ++S) {
        std::uint64_t volS = 0, cross = 0;
        for (std::uint32_t u = 0; u < n; ++u) {
            if (!(S >> u & 1u)) continue;
            volS += g.degree(u);
            for (std::uint32_t v : g.neighbors(u))
                if (!(S >> v & 1u)) ++cross;
        }
        if (volS == 0 || 2 * volS > vol) continue;
        best = std::min(best, static_cast<double>(cross) / static_cast<double>(volS));
    }
    return best;
}

ReproGraph random_connected_graph(std::uint64_t tag) {
    // Evolve K2 twice with beta = 1; stays connected, V = 8.
    StreamKey k = StreamKey(808).child(tag);
    Params p{k.unit(0) * 0.8, 1.0, k.unit(1) * 0.8};
    return evolve(evolve(make_preset("k2"), p, k.child(1)), p, k.child(2));
}

} // namespace

TEST_CASE("normalized_laplacian: K2 and an isolated vertex") {
    auto L = normalized_laplacian(make_preset("k2"));
    CHECK(L.at(0, 0) == 1.0);
    CHECK(L.at(1, 1) == 1.0);
    CHECK(L.at(0, 1) == -1.0);
    CHECK(L.at(1, 0) == -1.0);

    auto single = normalized_laplacian(make_preset("k1"));
    REQUIRE(single.n == 1);
    CHECK(single.at(0, 0) == 0.0);
}

TEST_CASE("eigenvalues: K2, zero matrix, C4") {
    auto k2 = symmetric_eigenvalues(normalized_laplacian(make_preset("k2")));
    CHECK(k2[0] == doctest::Approx(0.0).epsilon(1e-9).scale(1));
    CHECK(k2[1] == doctest::Approx(2.0));

    auto zero = symmetric_eigenvalues(SymMatrix::zero(3));
    for (double v : zero) CHECK(v == 0.0);

    auto c4 = symmetric_eigenvalues(normalized_laplacian(make_preset("c4")));
    REQUIRE(c4.size() == 4);
    CHECK(std::fabs(c4[0] - 0.0) < 1e-9);
    CHECK(std::fabs(c4[1] - 1.0) < 1e-9);
    CHECK(std::fabs(c4[2] - 1.0) < 1e-9);
    CHECK(std::fabs(c4[3] - 2.0) < 1e-9);
}

TEST_CASE("eigenvalues: trace identity and Jacobi cross-check on random matrices") {
    StreamKey k(313);
    for (std::uint64_t t = 0; t < 5; ++t) {
        const std::size_t n = 20;
        SymMatrix m = SymMatrix::zero(n);
        StreamKey kt = k.child(t);
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double v = 2.0 * kt.unit(c++) - 1.0;
                m.at(i, j) = m.at(j, i) = v;
            }
        auto ql = symmetric_eigenvalues(m);
        auto jac = jacobi_eigenvalues(m);
        double sum = 0;
        for (double v : ql) sum += v;
        CHECK(std::fabs(sum - m.trace()) < 1e-8);
        REQUIRE(ql.size() == jac.size());
        for (std::size_t i = 0; i < ql.size(); ++i) CHECK(std::fabs(ql[i] - jac[i]) < 1e-8);
    }
}

TEST_CASE("eigensystem: residual ||L v - lambda v|| is small") {
    auto g = random_connected_graph(1);
    auto L = normalized_laplacian(g);
    auto sys = symmetric_eigensystem(L);
    for (std::size_t j = 0; j < sys.n; ++j) {
        auto v = sys.vector(j);
        double resid = 0;
        for (std::size_t i = 0; i < sys.n; ++i) {
            double lv = 0;
            for (std::size_t k2 = 0; k2 < sys.n; ++k2) lv += L.at(i, k2) * v[k2];
            resid += (lv - sys.values[j] * v[i]) * (lv - sys.values[j] * v[i]);
        }
        CHECK(std::sqrt(resid) < 1e-8);
    }
}

TEST_CASE("eigenvalues: range [0,2], lambda_0 = 0, zero multiplicity = components") {
    StreamKey k(717);
    for (std::uint64_t t = 0; t < 6; ++t) {
        StreamKey kt = k.child(t);
        Params p{kt.unit(0), kt.unit(1), kt.unit(2)};
        auto g = evolve(evolve(make_preset("p4"), p, kt.child(1)), p, kt.child(2));
        auto vals = symmetric_eigenvalues(normalized_laplacian(g));
        CHECK(std::fabs(vals.front()) < 1e-9);
        for (double v : vals) {
            CHECK(v > -1e-9);
            CHECK(v < 2.0 + 1e-9);
        }
        // Multiplicity of eigenvalue 0: isolated vertices contribute a zero
        // diagonal row, so each counts once, like any other component.
        auto comps = connected_components(g);
        std::size_t zeros = 0;
        for (double v : vals)
            if (std::fabs(v) < 1e-8) ++zeros;
        CHECK(zeros == comps.count);
    }
}

TEST_CASE("cheeger_exact: K2, C4, P4") {
    CHECK(cheeger_exact(make_preset("k2")).h == doctest::Approx(1.0));
    CHECK(cheeger_exact(make_preset("c4")).h == doctest::Approx(0.5));
    CHECK(cheeger_exact(make_preset("p4")).h == doctest::Approx(1.0 / 3.0));
    auto cut = cheeger_exact(make_preset("p4"));
    CHECK(cut.side.size() == 2);  // one end pair of the path
}

TEST_CASE("cheeger_exact: agrees with the direct subset oracle") {
    for (std::uint64_t t = 0; t < 6; ++t) {
        auto g = random_connected_graph(t);
        CHECK(cheeger_exact(g).h == doctest::Approx(cheeger_brute(g)));
    }
}

TEST_CASE("cheeger_exact: disconnected gives h = 0 with a component witness") {
    auto g = ReproGraph::from_edges(4, {{0, 1}, {2, 3}});
    auto cut = cheeger_exact(g);
    CHECK(cut.h == 0.0);
    CHECK(cut.side.size() == 2);
}

TEST_CASE("cheeger_exact: size cap raises") {
    CHECK_THROWS_AS(cheeger_exact(ReproGraph::from_edges(23, {{0, 1}})), std::invalid_argument);
}

TEST_CASE("cheeger_sweep: C8 finds the arc cut, K4 matches exact") {
    auto c8 = make_preset("c8");
    auto sys = symmetric_eigensystem(normalized_laplacian(c8));
    CHECK(cheeger_sweep(c8, sys.vector(1)) == doctest::Approx(0.25));

    auto k4 = make_preset("k4");
    auto sys4 = symmetric_eigensystem(normalized_laplacian(k4));
    CHECK(cheeger_sweep(k4, sys4.vector(1)) == doctest::Approx(cheeger_exact(k4).h));
}

TEST_CASE("cheeger_sweep: upper-bounds the exact constant") {
    for (std::uint64_t t = 0; t < 8; ++t) {
        auto g = random_connected_graph(100 + t);
        if (!is_connected(g)) continue;
        auto sys = symmetric_eigensystem(normalized_laplacian(g));
        const double sweep = cheeger_sweep(g, sys.vector(1));
        const double exact = cheeger_exact(g).h;
        CHECK(sweep >= exact - 1e-12);
    }
}

TEST_CASE("cheeger inequality: h^2/2 <= lambda_1 <= 2h on small connected graphs") {
    for (std::uint64_t t = 0; t < 8; ++t) {
        auto g = random_connected_graph(200 + t);
        if (!is_connected(g)) continue;
        const double l1 = symmetric_eigenvalues(normalized_laplacian(g))[1];
        const double h = cheeger_exact(g).h;
        CHECK(h * h / 2.0 <= l1 + 1e-9);
        CHECK(l1 <= 2.0 * h + 1e-9);
    }
}

TEST_CASE("spectral_report: K2") {
    auto rep = spectral_report(make_preset("k2"));
    CHECK(rep.lambda_1 == doctest::Approx(2.0));
    CHECK(rep.lambda_max == doctest::Approx(2.0));
    CHECK(rep.spectral_radius == doctest::Approx(1.0));
    REQUIRE(rep.cheeger_exact.has_value());
    CHECK(*rep.cheeger_exact == doctest::Approx(1.0));
    CHECK(rep.cheeger_sweep_upper == doctest::Approx(1.0));
}

TEST_CASE("spectral_report: disconnected graph reports lambda_1 = 0") {
    auto g = ReproGraph::from_edges(4, {{0, 1}, {2, 3}});
    auto rep = spectral_report(g);
    CHECK(rep.lambda_1 == doctest::Approx(0.0).epsilon(1e-9).scale(1));
    CHECK(rep.cheeger_sweep_upper == 0.0);
    REQUIRE(rep.cheeger_exact.has_value());
    CHECK(*rep.cheeger_exact == 0.0);
}
