#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cva/distribution.hpp"
#include "cva/io.hpp"
#include "cva/poly.hpp"

using namespace cva;

TEST_CASE("poly arithmetic and evaluation") {
    Poly p({1.0, 2.0, 3.0});  // 1 + 2x + 3x^2
    CHECK(p(0.0) == 1.0);
    CHECK(p(2.0) == doctest::Approx(17.0));
    CHECK(p.derivative()(2.0) == doctest::Approx(14.0));
    CHECK(p.antiderivative()(1.0) == doctest::Approx(1.0 + 1.0 + 1.0));
    CHECK(p.integral(0.0, 1.0) == doctest::Approx(3.0));
    Poly q = p * p;
    CHECK(q(1.5) == doctest::Approx(p(1.5) * p(1.5)));
    Poly s = p.shifted(0.7);
    CHECK(s(1.0) == doctest::Approx(p(1.7)));
    CHECK((p - p).is_zero());
}

TEST_CASE("poly roots") {
    Poly lin({-1.0, 2.0});  // 2x - 1
    auto r = lin.roots_in(0.0, 1.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(0.5));

    Poly quad({2.0, -3.0, 1.0});  // (x-1)(x-2)
    r = quad.roots_in(0.0, 3.0);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(r[1] == doctest::Approx(2.0));

    Poly cubic({0.0, -1.0, 0.0, 1.0});  // x^3 - x
    r = cubic.roots_in(-2.0, 2.0);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(-1.0));
    CHECK(r[1] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r[2] == doctest::Approx(1.0));
}

TEST_CASE("uniform basics") {
    Distribution u = Distribution::uniform(0, 1);
    CHECK(u.mean() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(u.cdf(0.4) == doctest::Approx(0.4));
    CHECK(Distribution::uniform(2, 4).mean() == doctest::Approx(3.0));
    CHECK_THROWS(Distribution::uniform(1, 1));
    CHECK(u.integral_cdf(0.4) == doctest::Approx(0.08).epsilon(1e-12));
    CHECK(u.integral_cdf(0.0) == 0.0);
    CHECK(u.conditional_mean(0.36, 1.0) == doctest::Approx(0.68));
}

TEST_CASE("point mass basics") {
    Distribution d = Distribution::point_mass(0.5);
    CHECK(d.mean() == 0.5);
    CHECK(d.cdf_left(0.5) == 0.0);
    CHECK(d.cdf(0.5) == 1.0);
    CHECK(d.integral_cdf(0.58) == doctest::Approx(0.08));
    CHECK(d.conditional_mean(0.0, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("pooled distribution from the worked two-agent example") {
    Distribution f = Distribution::uniform(0, 1);
    Distribution g = pool_interval(f, 0.5, 0.6);
    CHECK(g.mean() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.cdf_left(0.55) == doctest::Approx(0.5));
    CHECK(g.cdf(0.55) == doctest::Approx(0.6));
    CHECK(g.atom_mass_at(0.55) == doctest::Approx(0.1));
    CHECK(g.conditional_mean(0.6, 1.0) == doctest::Approx(0.8));

    Distribution g2 = pool_interval(f, 0.3, 0.8);
    CHECK(g2.atom_mass_at(0.55) == doctest::Approx(0.5));
    CHECK(g2.mean() == doctest::Approx(0.5).epsilon(1e-12));

    Distribution null_info = pool_interval(f, 0.0, 1.0);
    CHECK(null_info.atom_mass_at(0.5) == doctest::Approx(1.0));
}

TEST_CASE("mpc test") {
    Distribution f = Distribution::uniform(0, 1);
    CHECK(is_mpc(Distribution::point_mass(0.5), f));
    CHECK(is_mpc(f, f));
    CHECK_FALSE(is_mpc(f, Distribution::point_mass(0.5)));
    CHECK(is_mpc(pool_interval(f, 0.2, 0.9), f));
    // Same mean, more spread: not a contraction.
    Distribution wide(0, 1, {{0.0, 0.5}, {1.0, 0.5}}, {});
    CHECK_FALSE(is_mpc(wide, f));
    CHECK(is_mpc(f, wide));
}

TEST_CASE("mpc antisymmetry implies identical cdfs at breakpoints") {
    Distribution f = Distribution::uniform(0, 1);
    Distribution g = pool_interval(f, 0.1, 0.4);
    CHECK_FALSE((is_mpc(f, g) && is_mpc(g, f)));
}

TEST_CASE("validation rejects bad inputs") {
    CHECK_THROWS(Distribution(0, 1, {{0.5, 0.5}}, {}));  // mass 0.5 total
    CHECK_THROWS(Distribution(0, 1, {{2.0, 1.0}}, {}));  // atom outside support
    CHECK_THROWS(Distribution(0, 1, {}, {{0, 1, Poly({-1.0})}}));  // negative density
    CHECK_THROWS(Distribution(0, 1, {{0.5, 0.5}, {0.5, 0.5}}, {}));  // duplicate atom
}

TEST_CASE("discretize") {
    Distribution u = Distribution::uniform(0, 1);
    DiscreteInstance inst = discretize(u, 2);
    REQUIRE(inst.points.size() == 2);
    CHECK(inst.points[0] == doctest::Approx(0.25));
    CHECK(inst.points[1] == doctest::Approx(0.75));
    CHECK(inst.masses[0] == doctest::Approx(0.5));
    CHECK(inst.mean() == doctest::Approx(u.mean()).epsilon(1e-12));

    DiscreteInstance pm = discretize(Distribution::point_mass(0.5), 10);
    REQUIRE(pm.points.size() == 1);
    CHECK(pm.points[0] == 0.5);

    Distribution g = pool_interval(u, 0.5, 0.6);
    DiscreteInstance gi = discretize(g, 37);
    CHECK(gi.mean() == doctest::Approx(g.mean()).epsilon(1e-9));
    CHECK_THROWS(discretize(u, 1));
}

TEST_CASE("sampling matches the analytic distribution") {
    std::mt19937_64 rng(7);
    Distribution d = Distribution::point_mass(0.5);
    CHECK(d.sample(rng) == 0.5);

    Distribution u = Distribution::uniform(0, 1);
    const int n = 100000;
    double sum = 0.0;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = u.sample(rng);
        sum += xs[i];
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.004));
    // Kolmogorov-Smirnov against the uniform CDF.
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        ks = std::max(ks, std::abs(xs[i] - (i + 1.0) / n));
        ks = std::max(ks, std::abs(xs[i] - static_cast<double>(i) / n));
    }
    CHECK(ks < 0.01);

    Distribution g = pool_interval(u, 0.5, 0.6);
    int atom_hits = 0;
    const int m = 1000000;
    for (int i = 0; i < m; ++i)
        if (g.sample(rng) == 0.55) ++atom_hits;
    CHECK(static_cast<double>(atom_hits) / m == doctest::Approx(0.1).epsilon(0.01));
}

TEST_CASE("integral_cdf is convex and nondecreasing") {
    Distribution g = pool_interval(Distribution::uniform(0, 1), 0.3, 0.8);
    double prev = -1.0, prev_slope = -1.0;
    for (int k = 0; k <= 100; ++k) {
        double x = k / 100.0 * 1.4;
        double v = g.integral_cdf(x);
        CHECK(v >= prev - 1e-12);
        if (k > 0) {
            double slope = (v - prev) / 0.014;
            CHECK(slope >= prev_slope - 1e-9);
            prev_slope = slope;
        }
        prev = v;
    }
}

TEST_CASE("json round trip") {
    Distribution g = pool_interval(Distribution::uniform(0, 1), 0.5, 0.6);
    std::string s = distribution_to_json(g);
    Distribution back = distribution_from_json(s);
    CHECK(back.lo() == g.lo());
    CHECK(back.hi() == g.hi());
    CHECK(distribution_to_json(back) == s);  // bit-stable
    CHECK(back.cdf(0.55) == g.cdf(0.55));

    CHECK_THROWS(distribution_from_json("{\"lo\":0,\"hi\":1,\"junk\":2}"));
}

TEST_CASE("scenario config parsing") {
    std::string good = R"({
      "R": 0.4,
      "agents": [
        {"prior": {"lo":0,"hi":1,"atoms":[],"pieces":[[0,1,[1,0,0,0]]]}, "c": 0.08}
      ],
      "options": {"tie_rule": "equal", "mc_samples": 1000, "mc_seed": 7, "grid_n": 50}
    })";
    ScenarioConfig cfg = parse_scenario(good);
    CHECK(cfg.scenario.R == 0.4);
    CHECK(cfg.scenario.agents.size() == 1);
    CHECK(cfg.options.tie == TieRule::EqualSplit);
    CHECK(cfg.options.mc_samples == 1000);

    CHECK_THROWS_WITH_AS(parse_scenario("{\"R\": 0.4, \"agents\": []}"),
                         doctest::Contains("agents"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_scenario("{\"R\":0.4,\"agents\":[{\"c\":0.1}]}"),
                         doctest::Contains("prior"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_scenario("{\"R\":0.4,\"bogus\":1,\"agents\":[]}"),
                         doctest::Contains("bogus"), std::invalid_argument);
}
