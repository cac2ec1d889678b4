#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace siegel;
using th::Rng;

namespace {

// Brute-force minimal nonzero lattice norm min_u u^T Y u over u in [-3,3]^n.
double brute_force_min_norm(const Mat& Y) {
    const int n = static_cast<int>(Y.rows());
    double best = 1e300;
    std::vector<long long> u(n, -3);
    while (true) {
        bool zero = true;
        for (int i = 0; i < n; ++i) zero = zero && u[i] == 0;
        if (!zero) {
            double q = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) q += u[i] * Y(i, j) * u[j];
            best = std::min(best, q);
        }
        int k = 0;
        while (k < n && u[k] == 3) { u[k] = -3; ++k; }
        if (k == n) break;
        ++u[k];
    }
    return best;
}

// Brute-force search for a genus-1 fundamental-domain representative over
// SL(2,Z) words of length <= 6 in {S, T, T^-1}; independent oracle for
// siegel_reduce.
complexd brute_force_reduce_g1(complexd z) {
    auto act = [](int gen, complexd w) {
        if (gen == 0) return -1.0 / w;
        if (gen == 1) return w + 1.0;
        return w - 1.0;
    };
    auto in_domain = [](complexd w) {
        return std::abs(w.real()) <= 0.5 + 1e-9 && std::norm(w) >= 1.0 - 1e-9;
    };
    std::vector<complexd> frontier{z};
    if (in_domain(z)) return z;
    for (int depth = 0; depth < 6; ++depth) {
        std::vector<complexd> next;
        for (complexd w : frontier)
            for (int gen = 0; gen < 3; ++gen) {
                const complexd v = act(gen, w);
                if (in_domain(v)) return v;
                next.push_back(v);
            }
        frontier = std::move(next);
    }
    throw std::runtime_error("brute_force_reduce_g1: no representative found");
}

} // namespace

TEST_CASE("round half to even", "[reduction]") {
    REQUIRE(round_even(0.5) == 0.0);
    REQUIRE(round_even(1.5) == 2.0);
    REQUIRE(round_even(2.5) == 2.0);
    REQUIRE(round_even(-0.5) == 0.0);
    REQUIRE(round_even(-1.5) == -2.0);
    REQUIRE(round_even(0.49) == 0.0);
    REQUIRE(round_even(-0.51) == -1.0);
}

TEST_CASE("minkowski reduction", "[reduction]") {
    SECTION("identity unchanged") {
        const auto r = minkowski_reduce(RealSymMatrix(Mat::Identity(3, 3)));
        REQUIRE((r.reduced - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
        REQUIRE(r.word_length == 0);
    }
    SECTION("already reduced form unchanged") {
        Mat Y(2, 2);
        Y << 2, 1, 1, 2;
        const auto r = minkowski_reduce(RealSymMatrix(Y));
        REQUIRE((r.reduced - Y).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("skew form reduces to a11 = 0.2") {
        Mat Y(2, 2);
        Y << 1, 0.9, 0.9, 1;
        const auto r = minkowski_reduce(RealSymMatrix(Y));
        REQUIRE(std::abs(r.reduced(0, 0) - 0.2) < 1e-12);
        REQUIRE(is_minkowski_reduced(r.reduced));
    }
    SECTION("indefinite input rejected") {
        Mat Y(2, 2);
        Y << 1, 2, 2, 1;
        REQUIRE_THROWS_AS(minkowski_reduce(RealSymMatrix(Y)), not_positive_definite);
    }
    SECTION("matches brute-force shortest vector, keeps det, witness holds") {
        Rng rng(41);
        for (int t = 0; t < 40; ++t) {
            const int n = 2 + static_cast<int>(rng.uniform(0, 3));  // 2..4
            const Mat Y = th::random_pos_def(n, rng, 2.0);
            const auto r = minkowski_reduce(RealSymMatrix(Y));
            REQUIRE(is_minkowski_reduced(r.reduced));
            REQUIRE_FALSE(r.approximate);
            // U unimodular with integer entries
            REQUIRE(is_integral_matrix(r.U, 1e-9));
            REQUIRE(std::abs(std::abs(r.U.determinant()) - 1.0) < 1e-9);
            // witness: reduced == U^T Y U
            REQUIRE((r.reduced - r.U.transpose() * Y * r.U).cwiseAbs().maxCoeff() < 1e-9);
            // det invariance
            REQUIRE(std::abs(r.reduced.determinant() - Y.determinant()) <
                    1e-10 * std::abs(Y.determinant()) + 1e-12);
            // first diagonal entry is the true lattice minimum
            REQUIRE(std::abs(r.reduced(0, 0) - brute_force_min_norm(Y)) < 1e-9);
        }
    }
}

TEST_CASE("siegel reduction genus 1", "[reduction]") {
    SECTION("already reduced point untouched") {
        const auto r = siegel_reduce(SiegelPoint::from_tau(complexd(0.1, 2)));
        REQUIRE(r.word_length == 0);
        REQUIRE(std::abs(r.reduced.tau() - complexd(0.1, 2)) < 1e-14);
    }
    SECTION("0.3 + 0.4i reduces to -0.2 + 1.6i") {
        const auto r = siegel_reduce(SiegelPoint::from_tau(complexd(0.3, 0.4)));
        REQUIRE(std::abs(r.reduced.tau() - complexd(-0.2, 1.6)) < 1e-12);
        REQUIRE(r.transform.integral());
    }
    SECTION("agrees with brute-force SL(2,Z) word search") {
        Rng rng(43);
        int done = 0;
        while (done < 20) {
            const complexd z(rng.uniform(-2, 2), std::exp(rng.uniform(-1.5, 1)));
            const auto r = siegel_reduce(SiegelPoint::from_tau(z));
            if (th::wall_margin(r.reduced) < 1e-4) continue;  // boundary ties excluded
            const complexd w = brute_force_reduce_g1(z);
            REQUIRE(std::abs(r.reduced.tau() - w) < 1e-9);
            ++done;
        }
    }
}

TEST_CASE("siegel reduction properties", "[reduction]") {
    Rng rng(47);
    SECTION("witness, membership, idempotence") {
        for (int g = 1; g <= 2; ++g)
            for (int t = 0; t < 25; ++t) {
                const SiegelPoint z = th::random_point(g, rng);
                const auto r = siegel_reduce(z);
                REQUIRE(in_fundamental_domain(r.reduced));
                REQUIRE(r.transform.integral());
                const SiegelPoint w = sp_action(r.transform, z);
                REQUIRE((w.X() - r.reduced.X()).cwiseAbs().maxCoeff() < 1e-9);
                REQUIRE((w.Y() - r.reduced.Y()).cwiseAbs().maxCoeff() < 1e-9);
                const auto r2 = siegel_reduce(r.reduced);
                REQUIRE((r2.reduced.X() - r.reduced.X()).cwiseAbs().maxCoeff() < 1e-9);
                REQUIRE((r2.reduced.Y() - r.reduced.Y()).cwiseAbs().maxCoeff() < 1e-9);
            }
    }
    SECTION("orbit invariance away from walls") {
        for (int g = 1; g <= 2; ++g) {
            int done = 0;
            while (done < 50) {
                const SiegelPoint z = th::random_point(g, rng);
                const auto r = siegel_reduce(z);
                if (th::wall_margin(r.reduced) < 1e-4) continue;
                const auto M = th::random_integral_word(g, rng, 6);
                const auto r2 = siegel_reduce(sp_action(M, z));
                REQUIRE((r2.reduced.X() - r.reduced.X()).cwiseAbs().maxCoeff() < 1e-6);
                REQUIRE((r2.reduced.Y() - r.reduced.Y()).cwiseAbs().maxCoeff() < 1e-6);
                ++done;
            }
        }
    }
}

TEST_CASE("fundamental domain membership", "[reduction]") {
    REQUIRE(in_fundamental_domain(SiegelPoint(Mat::Zero(2, 2), Mat::Identity(2, 2))));
    REQUIRE(in_fundamental_domain(SiegelPoint::from_tau(complexd(0, 1))));  // wall point
    REQUIRE_FALSE(in_fundamental_domain(SiegelPoint::from_tau(complexd(0.6, 2))));
    REQUIRE_FALSE(in_fundamental_domain(SiegelPoint::from_tau(complexd(0.2, 0.5))));
    REQUIRE_THROWS_AS(
        in_fundamental_domain(SiegelPoint(Mat::Zero(4, 4), Mat::Identity(4, 4))),
        unsupported);
}
