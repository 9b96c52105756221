#include <cmath>

#include "doctest.h"
#include "expdio/bounds.hpp"

using namespace expdio;

TEST_CASE("even-c z bound") {
    CHECK(mp_z_bound(9, 5, 2, BetaMode::Exact) == doctest::Approx(8239.2778).epsilon(1e-7));
    double big = mp_z_bound(3599, 3597, 10'000'000'000ULL, BetaMode::Conservative);
    CHECK(big == doctest::Approx(123846.40745).epsilon(1e-7));
    CHECK_THROWS_AS(mp_z_bound(3, 5, 2, BetaMode::Exact), std::invalid_argument);
    CHECK_THROWS_AS(mp_z_bound(9, 5, 3, BetaMode::Exact), std::invalid_argument);

    // nonincreasing in beta everywhere, and in alpha on the alpha >= 3 branch
    for (double lc : {1.0, 5.0, 23.0, 100.0}) {
        for (int alpha = 2; alpha <= 12; ++alpha) {
            double prev = INFINITY;
            for (int beta = 1; beta <= 10; ++beta) {
                EvenCBoundInputs in{std::log(15.0), std::log(17.0), alpha, beta, 1.0, lc};
                double v = mp_z_bound(in);
                CHECK(v <= prev);
                prev = v;
            }
        }
        for (int beta = 1; beta <= 6; ++beta) {
            double prev = INFINITY;
            for (int alpha = 3; alpha <= 20; ++alpha) {
                EvenCBoundInputs in{std::log(15.0), std::log(17.0), alpha, beta, 1.0, lc};
                double v = mp_z_bound(in);
                CHECK(v <= prev * (1 + 1e-12));
                prev = v;
            }
        }
    }
}

TEST_CASE("z1 cap") {
    CHECK(z1_cap(3, 5, 1e10, 1e4, 2, 1) == 28);
    // degenerate: tiny right-hand side
    CHECK(z1_cap(1000, 1001, 3, 1, -40, 5) == 1);
    auto lhs = [](double z, int beta) { return beta * z - std::log(z) / std::log(2.0); };
    for (double z2 : {1.0, 10.0, 1e3, 1e5}) {
        for (int beta = 1; beta <= 4; ++beta) {
            auto z = z1_cap(11, 13, 1e10, z2, 3, beta);
            double rhs = 3 + std::log(std::pow(std::log(1e10), 2) / (std::log(11.0) * std::log(13.0)) * z2) / std::log(2.0);
            if (lhs(1, beta) < rhs) CHECK(lhs(double(z), beta) < rhs * kInflate);
            CHECK(lhs(double(z + 1), beta) >= rhs);
            CHECK(z1_cap(11, 13, 1e10, 2 * z2, 3, beta) >= z);
        }
    }
}

TEST_CASE("x1 cap") {
    CHECK(x1_cap(2, 3, 1e10, 1, 2) == 7);
    CHECK(x1_cap(8, 3, 1e10, 1, 2) == 2);
    for (std::uint64_t z2 = 1; z2 < 200; z2 += 7) {
        auto x = x1_cap(6, 7, 1e10, 2, z2);
        double rhs = 3 + std::log(std::log(1e10) / std::log(7.0) * 2 * double(z2)) / std::log(2.0);
        CHECK(double(x) < rhs * kInflate);
        if (x > 1) CHECK(double(x + 1) >= rhs);
        CHECK(x1_cap(6, 7, 1e10, 2, z2 + 1) >= x);
    }
}

TEST_CASE("generalized Fermat filter") {
    CHECK(fermat_filter(3, 3, 3));
    CHECK(fermat_filter(2, 4, 5));
    CHECK_FALSE(fermat_filter(1, 1, 1));
    CHECK(fermat_filter(2, 3, 14));
    CHECK(fermat_pattern(4, 8, 2) == 2);
    CHECK(fermat_pattern(3, 6, 3) == 1);
    CHECK(fermat_pattern(3, 6, 6) == 1);
    CHECK(fermat_pattern(2, 5, 4) == 5);
    CHECK(fermat_pattern(5, 2, 4) == 0);
    CHECK(fermat_pattern(3, 4, 5) == 9);
    CHECK(fermat_pattern(3, 3, 1'000'000'007ULL * 5) == 8);
    CHECK(fermat_pattern(3, 3, 1'000'000'007ULL * 2) == 0);
    CHECK_FALSE(fermat_filter(2, 2, 2));
}
