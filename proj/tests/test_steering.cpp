#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "trustswarm/steering.hpp"

using namespace trustswarm;

namespace {

void expect_vec(const Vec2& got, const Vec2& want, double tol = 1e-12) {
    EXPECT_NEAR(got.x, want.x, tol);
    EXPECT_NEAR(got.y, want.y, tol);
}

Vec2 random_vec(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng)};
}

}  // namespace

TEST(Normalize, Examples) {
    expect_vec(normalize({3, 4}), {0.6, 0.8});
    expect_vec(normalize({0, 0}), {0, 0});
    expect_vec(normalize({-5, 0}), {-1, 0});
}

TEST(Normalize, UnitOrExactlyZero) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> mag(-20, 3);
    for (int i = 0; i < 5000; ++i) {
        Vec2 v = random_vec(rng, std::pow(10.0, mag(rng)));
        Vec2 n = normalize(v);
        if (n == Vec2{}) {
            EXPECT_LT(v.norm(), kZeroLength);
        } else {
            EXPECT_NEAR(n.norm(), 1.0, 1e-9);
        }
    }
    EXPECT_EQ(normalize({1e-13, 0}), Vec2{});
}

TEST(Cohesion, Examples) {
    std::vector<Vec2> two{{10, 0}, {0, 10}};
    expect_vec(cohesion_velocity({0, 0}, two), {5, 5});
    std::vector<Vec2> same{{7, 3}};
    expect_vec(cohesion_velocity({7, 3}, same), {0, 0});
    expect_vec(cohesion_velocity({1, 1}, {}), {0, 0});
}

TEST(Alignment, Examples) {
    std::vector<Vec2> aligned{{1, 0}, {1, 0}};
    expect_vec(alignment_velocity({1, 0}, aligned), {0, 0});
    std::vector<Vec2> spread{{2, 0}, {0, 2}};
    expect_vec(alignment_velocity({0, 0}, spread), {1, 1});
    expect_vec(alignment_velocity({1, 1}, {}), {0, 0});
}

TEST(Separation, Examples) {
    std::vector<Vec2> one{{1, 0}};
    expect_vec(separation_velocity({0, 0}, one), {-1, 0});
    std::vector<Vec2> sym{{1, 0}, {-1, 0}};
    expect_vec(separation_velocity({0, 0}, sym), {0, 0});
    std::vector<Vec2> two{{6, 5}, {5, 7}};
    expect_vec(separation_velocity({5, 5}, two), {-1, -2});
}

TEST(SteeringRules, EmptyNeighbourhoodsAreZero) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        const Vec2 p = random_vec(rng, 500);
        EXPECT_EQ(cohesion_velocity(p, {}), Vec2{});
        EXPECT_EQ(alignment_velocity(p, {}), Vec2{});
        EXPECT_EQ(separation_velocity(p, {}), Vec2{});
    }
}

TEST(Trust, Examples) {
    std::vector<double> ones{1, 1};
    EXPECT_DOUBLE_EQ(update_trust(1, ones), 1.0);
    std::vector<double> one{1};
    EXPECT_DOUBLE_EQ(update_trust(0, one), 0.5);
    std::vector<double> spread{1, 0, -1};
    EXPECT_DOUBLE_EQ(update_trust(-1, spread), -0.5);
    EXPECT_DOUBLE_EQ(update_trust(0.3, {}), 0.3);
}

TEST(Trust, ClosureAndConsensus) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> t(-1, 1);
    std::uniform_int_distribution<int> count(1, 12);
    for (int i = 0; i < 10000; ++i) {
        std::vector<double> ns(static_cast<std::size_t>(count(rng)));
        for (auto& x : ns) x = t(rng);
        const double out = update_trust(t(rng), ns);
        EXPECT_GE(out, -1.0);
        EXPECT_LE(out, 1.0);

        const double c = t(rng);
        std::vector<double> same(ns.size(), c);
        EXPECT_EQ(update_trust(c, same), c);
    }
    std::vector<double> extremes{-1, -1, -1};
    EXPECT_EQ(update_trust(-1, extremes), -1.0);
}

TEST(Steer, Examples) {
    const SteeringWeights w{0.4, 0.4, 0.2};
    expect_vec(steer({1, 0}, 0.0, w, {0.3, -0.7}, {1, 0}, {0, 1}, 10), {1, 0.2});
    expect_vec(steer({0, 0}, 1.0, w, {1, 0}, {1, 0}, {0, 0}, 10), {0.8, 0});
    expect_vec(steer({0, 0}, -1.0, {0.4, 0.0, 0.0}, {1, 0}, {0, 0}, {0, 0}, 10), {-0.4, 0});
}

TEST(Steer, ZeroTrustIgnoresSocialTerms) {
    std::mt19937_64 rng(4);
    const SteeringWeights w{0.4, 0.4, 0.2};
    for (int i = 0; i < 2000; ++i) {
        const Vec2 v = random_vec(rng, 2);
        const Vec2 sep = normalize(random_vec(rng, 1));
        const Vec2 a = steer(v, 0.0, w, normalize(random_vec(rng, 1)), normalize(random_vec(rng, 1)), sep, 2.0);
        const Vec2 b = steer(v, 0.0, w, normalize(random_vec(rng, 1)), normalize(random_vec(rng, 1)), sep, 2.0);
        EXPECT_EQ(a, b);
    }
}

TEST(Steer, MagnitudeNeverExceedsCap) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> t(-1, 1), cap(0.01, 5), wt(0, 1);
    for (int i = 0; i < 20000; ++i) {
        const SteeringWeights w{wt(rng), wt(rng), wt(rng)};
        const double v_max = cap(rng);
        const Vec2 out = steer(random_vec(rng, 10), t(rng), w, normalize(random_vec(rng, 1)),
                               normalize(random_vec(rng, 1)), normalize(random_vec(rng, 1)), v_max);
        EXPECT_LE(out.norm(), v_max);
        EXPECT_TRUE(out.is_finite());
    }
}

TEST(Steer, TrustNegationIsAntisymmetric) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> t(0, 1);
    const SteeringWeights w{0.4, 0.4, 0.2};
    for (int i = 0; i < 2000; ++i) {
        const double tau = t(rng);
        const Vec2 c = normalize(random_vec(rng, 1));
        const Vec2 a = normalize(random_vec(rng, 1));
        const Vec2 pos = steer({}, tau, w, c, a, {}, 0.5);
        const Vec2 neg = steer({}, -tau, w, c, a, {}, 0.5);
        EXPECT_EQ(neg, -pos);
    }
}

TEST(Leader, Examples) {
    expect_vec(leader_velocity({0, 0}, {10, 0}, 1), {1, 0});
    expect_vec(leader_velocity({3, 4}, {3, 4}, 1), {0, 0});
    expect_vec(leader_velocity({0, 0}, {3, 4}, 2), {1.2, 1.6});
}

TEST(Integrate, Examples) {
    const WorldBounds b{500, 500};
    auto [p1, v1] = integrate_position({10, 10}, {1, 2}, b);
    expect_vec(p1, {11, 12});
    expect_vec(v1, {1, 2});

    auto [p2, v2] = integrate_position({499, 10}, {3, 0}, b);
    expect_vec(p2, {498, 10});
    expect_vec(v2, {-3, 0});

    auto [p3, v3] = integrate_position({1, 1}, {-2, -3}, b);
    expect_vec(p3, {1, 2});
    expect_vec(v3, {2, 3});
}

TEST(Integrate, StaysInBoundsAndIsPlainEulerInside) {
    std::mt19937_64 rng(7);
    const WorldBounds b{500, 300};
    std::uniform_real_distribution<double> ux(0, 500), uy(0, 300);
    for (int i = 0; i < 20000; ++i) {
        const Vec2 p{ux(rng), uy(rng)};
        const Vec2 v = clamp_magnitude(random_vec(rng, 50), 50);
        auto [np, nv] = integrate_position(p, v, b);
        EXPECT_TRUE(b.contains(np));
        if (b.contains(p + v)) {
            EXPECT_EQ(np, p + v);
            EXPECT_EQ(nv, v);
        } else {
            EXPECT_DOUBLE_EQ(nv.norm(), v.norm());
        }
    }
}

TEST(Bounds, RejectsDegenerateWorld) {
    EXPECT_THROW((WorldBounds{0, 10}.validate()), std::invalid_argument);
    EXPECT_THROW((SteeringWeights{1.2, 0, 0}.validate()), std::invalid_argument);
}
