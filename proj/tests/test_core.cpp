#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace siegel;
using th::Rng;

TEST_CASE("siegel point construction and validation", "[core]") {
    SECTION("base point iI2") {
        SiegelPoint z(Mat::Zero(2, 2), Mat::Identity(2, 2));
        REQUIRE(z.genus() == 2);
        REQUIRE(z.Z().isApprox(complexd(0, 1) * CMat::Identity(2, 2)));
    }
    SECTION("1x1 point") {
        Mat X(1, 1), Y(1, 1);
        X(0, 0) = 0.3;
        Y(0, 0) = 0.4;
        SiegelPoint z(X, Y);
        REQUIRE(z.tau() == complexd(0.3, 0.4));
    }
    SECTION("indefinite imaginary part rejected") {
        Mat Y(2, 2);
        Y << 1, 2, 2, 1;  // eigenvalues 3, -1
        REQUIRE_THROWS_AS(SiegelPoint(Mat::Zero(2, 2), Y), not_positive_definite);
    }
    SECTION("order mismatch rejected") {
        REQUIRE_THROWS_AS(SiegelPoint(Mat::Zero(2, 2), Mat::Identity(3, 3)),
                          order_mismatch);
    }
    SECTION("asymmetry beyond tolerance rejected, small asymmetry repaired") {
        Mat X = Mat::Zero(2, 2);
        X(0, 1) = 1e-6;  // X(1,0) stays 0
        REQUIRE_THROWS_AS(SiegelPoint(X, Mat::Identity(2, 2)), not_symmetric);
        X(0, 1) = 1e-9;
        SiegelPoint z(X, Mat::Identity(2, 2));
        REQUIRE(z.X()(0, 1) == z.X()(1, 0));
    }
}

TEST_CASE("symplectic element validation", "[core]") {
    REQUIRE(SymplecticElement::identity(2).integral());
    REQUIRE(SymplecticElement::inversion(3).integral());
    SECTION("asymmetric tAC rejected") {
        Mat C(2, 2);
        C << 1, 0, 1, 1;
        REQUIRE_THROWS_AS(
            SymplecticElement(Mat::Identity(2, 2), Mat::Zero(2, 2), C, Mat::Identity(2, 2)),
            not_symplectic);
    }
    SECTION("scaled identity is not symplectic") {
        REQUIRE_THROWS_AS(SymplecticElement(Mat::Identity(2, 2), Mat::Zero(2, 2),
                                            Mat::Zero(2, 2), 2 * Mat::Identity(2, 2)),
                          not_symplectic);
    }
    SECTION("inverse is a two-sided inverse") {
        Rng rng(11);
        for (int t = 0; t < 10; ++t) {
            const auto M = th::random_integral_word(2, rng);
            const auto P = M * M.inverse();
            REQUIRE((P.A() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);
            REQUIRE(P.B().cwiseAbs().maxCoeff() < 1e-9);
        }
    }
}

TEST_CASE("moebius action", "[core]") {
    SECTION("identity acts trivially") {
        Rng rng(5);
        const SiegelPoint z = th::random_point(3, rng);
        const SiegelPoint w = sp_action(SymplecticElement::identity(3), z);
        REQUIRE((w.X() - z.X()).cwiseAbs().maxCoeff() < 1e-14);
        REQUIRE((w.Y() - z.Y()).cwiseAbs().maxCoeff() < 1e-14);
    }
    SECTION("inversion sends z to -1/z") {
        const SiegelPoint z = SiegelPoint::from_tau(complexd(0, 0.5));
        const SiegelPoint w = sp_action(SymplecticElement::inversion(1), z);
        REQUIRE(std::abs(w.tau() - complexd(0, 2)) < 1e-14);
    }
    SECTION("unitary stabilizer fixes iI") {
        Rng rng(7);
        for (int g : {1, 2, 3}) {
            CMat R(g, g);
            for (int i = 0; i < g; ++i)
                for (int j = 0; j < g; ++j)
                    R(i, j) = complexd(rng.uniform(-1, 1), rng.uniform(-1, 1));
            const CMat Q = Eigen::HouseholderQR<CMat>(R).householderQ();
            SymplecticElement M(Q.real(), Q.imag(), -Q.imag(), Q.real());
            const SiegelPoint iI(Mat::Zero(g, g), Mat::Identity(g, g));
            const SiegelPoint w = sp_action(M, iI);
            REQUIRE(w.X().cwiseAbs().maxCoeff() < 1e-10);
            REQUIRE((w.Y() - Mat::Identity(g, g)).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    SECTION("action composition") {
        Rng rng(13);
        for (int g = 1; g <= 3; ++g)
            for (int t = 0; t < 20; ++t) {
                const auto M1 = th::random_integral_word(g, rng, 4);
                const auto M2 = th::random_integral_word(g, rng, 4);
                const SiegelPoint z = th::random_point(g, rng);
                const SiegelPoint a = sp_action(M1 * M2, z);
                const SiegelPoint b = sp_action(M1, sp_action(M2, z));
                const double scale =
                    1.0 + a.X().cwiseAbs().maxCoeff() + a.Y().cwiseAbs().maxCoeff();
                REQUIRE((a.X() - b.X()).cwiseAbs().maxCoeff() < 1e-9 * scale);
                REQUIRE((a.Y() - b.Y()).cwiseAbs().maxCoeff() < 1e-9 * scale);
            }
    }
    SECTION("genus mismatch") {
        Rng rng(1);
        REQUIRE_THROWS_AS(sp_action(SymplecticElement::identity(2), th::random_point(1, rng)),
                          genus_mismatch);
    }
}

TEST_CASE("invariant distance", "[core]") {
    SECTION("d(Z, Z) = 0") {
        Rng rng(3);
        const SiegelPoint z = th::random_point(2, rng);
        REQUIRE(siegel_distance(z, z) < 1e-7);
    }
    SECTION("d(i, 2i) = log 2") {
        REQUIRE(std::abs(siegel_distance(SiegelPoint::from_tau(complexd(0, 1)),
                                         SiegelPoint::from_tau(complexd(0, 2))) -
                         std::log(2.0)) < 1e-12);
    }
    SECTION("matches the hyperbolic closed form on h1") {
        Rng rng(17);
        for (int t = 0; t < 500; ++t) {
            const complexd z1(rng.uniform(-3, 3), std::exp(rng.uniform(-2, 2)));
            const complexd z2(rng.uniform(-3, 3), std::exp(rng.uniform(-2, 2)));
            const double d = siegel_distance(SiegelPoint::from_tau(z1),
                                             SiegelPoint::from_tau(z2));
            REQUIRE(std::abs(d - th::hyperbolic_distance(z1, z2)) < 1e-10);
        }
    }
    SECTION("invariance under random integral words") {
        Rng rng(19);
        for (int g = 1; g <= 2; ++g)
            for (int t = 0; t < 50; ++t) {
                const auto M = th::random_integral_word(g, rng, 5);
                const SiegelPoint z1 = th::random_point(g, rng);
                const SiegelPoint z2 = th::random_point(g, rng);
                const double d0 = siegel_distance(z1, z2);
                const double d1 = siegel_distance(sp_action(M, z1), sp_action(M, z2));
                REQUIRE(std::abs(d1 - d0) < 1e-8);
            }
    }
    SECTION("symmetry and triangle inequality") {
        Rng rng(23);
        for (int t = 0; t < 200; ++t) {
            const int g = 1 + static_cast<int>(rng.uniform(0, 3));
            const SiegelPoint a = th::random_point(g, rng);
            const SiegelPoint b = th::random_point(g, rng);
            const SiegelPoint c = th::random_point(g, rng);
            const double ab = siegel_distance(a, b);
            REQUIRE(std::abs(ab - siegel_distance(b, a)) < 1e-9);
            REQUIRE(siegel_distance(a, c) <= ab + siegel_distance(b, c) + 1e-9);
        }
    }
    SECTION("cross-ratio eigenvalues lie in [0, 1)") {
        Rng rng(29);
        for (int t = 0; t < 100; ++t) {
            const int g = 1 + static_cast<int>(rng.uniform(0, 3));
            const Vec rho =
                cross_ratio_eigenvalues(th::random_point(g, rng), th::random_point(g, rng));
            for (int k = 0; k < rho.size(); ++k) {
                REQUIRE(rho(k) >= 0.0);
                REQUIRE(rho(k) < 1.0);
            }
        }
    }
}

TEST_CASE("symplectic embedding", "[core]") {
    SECTION("identity pads to identity") {
        const auto M = sp_embed(SymplecticElement::identity(1), 3);
        REQUIRE((M.A() - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("inversion pads with identity on the new block") {
        const auto M = sp_embed(SymplecticElement::inversion(1), 2);
        REQUIRE(M.B()(0, 0) == 1.0);
        REQUIRE(M.C()(0, 0) == -1.0);
        REQUIRE(M.A()(1, 1) == 1.0);
        REQUIRE(M.D()(1, 1) == 1.0);
        REQUIRE(M.integral());
    }
    SECTION("equivariance with point embedding") {
        Rng rng(31);
        for (int t = 0; t < 20; ++t) {
            const auto M = th::random_integral_word(2, rng, 5);
            const SiegelPoint z = th::random_point(2, rng);
            const SiegelPoint a = sp_action(sp_embed(M, 3), embed_point(z, 3));
            const SiegelPoint b = embed_point(sp_action(M, z), 3);
            REQUIRE((a.X() - b.X()).cwiseAbs().maxCoeff() < 1e-10);
            REQUIRE((a.Y() - b.Y()).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    SECTION("target smaller than source") {
        REQUIRE_THROWS_AS(sp_embed(SymplecticElement::identity(3), 2), genus_mismatch);
    }
}
