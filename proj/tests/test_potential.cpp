#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "s2b/io.hpp"
#include "s2b/potential.hpp"

using namespace s2b;

TEST_CASE("grid invariants") {
    const Grid2D g = Grid2D::make(4.0, 64);
    CHECK(g.h() == doctest::Approx(0.125));
    // sum of cell weights is the box area
    CHECK(g.size() * g.cell_weight() == doctest::Approx(64.0).epsilon(1e-12));
    // cell centers: first node at (-L + h/2, -L + h/2)
    CHECK(g.node(0).x == doctest::Approx(-4.0 + 0.0625));
    CHECK(g.node(0).y == doctest::Approx(-4.0 + 0.0625));
    // even n never places a node at the origin
    double rmin = 1e9;
    for (int i = 0; i < g.size(); ++i) rmin = std::min(rmin, norm(g.node(i)));
    CHECK(rmin > 0.0);

    CHECK_THROWS_AS(Grid2D::make(4.0, 7), std::invalid_argument);
    CHECK_THROWS_AS(Grid2D::make(0.0, 64), std::invalid_argument);
}

TEST_CASE("evaluate: gaussian well peak") {
    const auto spec = make_gaussian_wells({{5.0, 1.0, {0.0, 0.0}}});
    CHECK(evaluate(spec, {0.0, 0.0}) == doctest::Approx(-5.0).epsilon(1e-14));
    // superposition of two wells at (+-1, 0), probed at (0, 1)
    const auto two = make_gaussian_wells({{2.0, 1.0, {1.0, 0.0}}, {3.0, 1.0, {-1.0, 0.0}}});
    const double expect = -2.0 * std::exp(-2.0) - 3.0 * std::exp(-2.0);
    CHECK(evaluate(two, {0.0, 1.0}) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("evaluate: circular well") {
    const auto spec = make_circular_well(3.0, 1.0);
    CHECK(evaluate(spec, {2.0, 0.0}) == 0.0);
    CHECK(evaluate(spec, {0.3, 0.2}) == doctest::Approx(-3.0));
}

TEST_CASE("evaluate: a17 family") {
    const auto spec = make_a17(1.0);
    // support boundary value is exactly zero
    CHECK(evaluate(spec, {kA17SupportRadius, 0.0}) == 0.0);
    CHECK(evaluate(spec, {1.0, 1.0}) == 0.0);
    // r = e^{-e}: ln r = -e, ln|ln r| = 1, so V = -e^{2e}/e^2
    const double r = std::exp(-M_E);
    const double expect = -1.0 / (r * r * M_E * M_E);
    CHECK(evaluate(spec, {r, 0.0}) == doctest::Approx(expect).epsilon(1e-13));
    // gamma = 1.5 at a generic interior radius against the closed form
    const auto spec15 = make_a17(1.5);
    const double r2 = 0.05;
    const double t = -std::log(r2), u = std::log(t);
    CHECK(evaluate(spec15, {0.0, r2}) ==
          doctest::Approx(-1.0 / (r2 * r2 * t * t * std::pow(u, 1.5))).epsilon(1e-13));

    CHECK_THROWS_AS(evaluate(spec, {0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(make_a17(0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_a17(-1.0), std::invalid_argument);
}

TEST_CASE("family validation and lookup") {
    CHECK_THROWS_AS(family_from_name("banana_wells"), std::invalid_argument);
    CHECK(family_name(family_from_name("a17_family")) == "a17_family");
    CHECK_THROWS_AS(make_gaussian_wells({{1.0, 0.0, {0, 0}}}), std::invalid_argument);
    CHECK_THROWS_AS(make_circular_well(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("sample_negative_part: repulsive constant gives zero field") {
    std::vector<Term> terms(1);
    terms[0].kind = TermKind::constant;
    terms[0].constant.value = 7.0;
    const auto spec = make_sum_of_terms(std::move(terms));
    const Grid2D grid = Grid2D::make(2.0, 16);
    const SampledField f = sample_negative_part(spec, grid);
    for (double v : f.values) CHECK(v == 0.0);
    CHECK(f.mass() == 0.0);
}

TEST_CASE("sample_negative_part: pure well flips sign") {
    const auto spec = make_gaussian_wells({{5.0, 1.0, {0.0, 0.0}}});
    const Grid2D grid = Grid2D::make(3.0, 24);
    const SampledField f = sample_negative_part(spec, grid);
    for (int i = 0; i < grid.size(); ++i) {
        const Vec2 p = grid.node(i);
        const double expect = 5.0 * std::exp(-(p.x * p.x + p.y * p.y));
        CHECK(f.values[i] == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("sample_negative_part: well minus bump clips where the bump wins") {
    const auto spec =
        make_gaussian_wells({{1.0, 1.0, {0.0, 0.0}}, {-2.0, 0.5, {0.7, 0.0}}});
    const Grid2D grid = Grid2D::make(3.0, 48);
    const SampledField f = sample_negative_part(spec, grid);

    // pointwise max against direct evaluation at random nodes
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> pick(0, grid.size() - 1);
    for (int t = 0; t < 10; ++t) {
        const int i = pick(rng);
        const double v = evaluate(spec, grid.node(i));
        CHECK(f.values[i] == doctest::Approx(std::max(-v, 0.0)).epsilon(1e-14));
    }
    // the node closest to the bump center must be clipped to zero
    int best = 0;
    double bestd = 1e9;
    for (int i = 0; i < grid.size(); ++i) {
        const double d = distance(grid.node(i), {0.7, 0.0});
        if (d < bestd) {
            bestd = d;
            best = i;
        }
    }
    CHECK(f.values[best] == 0.0);
}

TEST_CASE("negative part vanishes wherever V > 0") {
    const auto spec =
        make_gaussian_wells({{1.0, 1.0, {0.0, 0.0}}, {-2.0, 0.5, {0.7, 0.0}}});
    const Grid2D grid = Grid2D::make(3.0, 32);
    const SampledField f = sample_negative_part(spec, grid);
    for (int i = 0; i < grid.size(); ++i) {
        CHECK(f.values[i] >= 0.0);
        if (evaluate(spec, grid.node(i)) > 0.0) CHECK(f.values[i] == 0.0);
    }
}

TEST_CASE("coupling scales the sampled field exactly") {
    const auto base = make_gaussian_wells({{5.0, 1.0, {0.2, -0.3}}});
    const Grid2D grid = Grid2D::make(3.0, 16);
    const SampledField f1 = sample_negative_part(base, grid);
    const SampledField f3 = sample_negative_part(base.with_g(3.0), grid);
    for (int i = 0; i < grid.size(); ++i) CHECK(f3.values[i] == 3.0 * f1.values[i]);
}

TEST_CASE("epsilon_regularize") {
    const Grid2D grid = Grid2D::make(3.0, 16);
    SampledField zero{grid, std::vector<double>(grid.size(), 0.0), {}};

    SUBCASE("mu -> 0 limit is a constant shift") {
        const SampledField f = epsilon_regularize(zero, 1.0, 1e-6);
        for (double v : f.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-5));
    }
    SUBCASE("added amount is eps exp(-mu r), strictly positive, decreasing in r") {
        const SampledField f = epsilon_regularize(zero, 0.5, 2.0);
        REQUIRE(f.epsilon_floor.has_value());
        CHECK(f.epsilon_floor->eps == 0.5);
        CHECK(f.epsilon_floor->mu == 2.0);
        const double floor = 0.5 * std::exp(-2.0 * std::sqrt(2.0) * grid.L);
        for (int i = 0; i < grid.size(); ++i) {
            const double r = norm(grid.node(i));
            CHECK(f.values[i] == doctest::Approx(0.5 * std::exp(-2.0 * r)).epsilon(1e-14));
            CHECK(f.values[i] >= floor);
            CHECK(f.values[i] > 0.0);
        }
        // decreasing along the +x ray of nodes
        double prev = 1e300;
        for (int ix = grid.n / 2; ix < grid.n; ++ix) {
            const int idx = (grid.n / 2) * grid.n + ix;
            CHECK(f.values[idx] < prev);
            prev = f.values[idx];
        }
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(epsilon_regularize(zero, 0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(epsilon_regularize(zero, 1.0, -1.0), std::invalid_argument);
    }
}

TEST_CASE("is_central") {
    CHECK(is_central(make_circular_well(2.0, 1.5)));
    CHECK(is_central(make_a17(1.0)));
    CHECK(is_central(make_gaussian_wells({{1.0, 1.0, {0.0, 0.0}}})));
    CHECK_FALSE(is_central(make_gaussian_wells({{1.0, 1.0, {0.5, 0.0}}})));
}

TEST_CASE("potential JSON round trip") {
    std::vector<PotentialSpec> specs;
    specs.push_back(make_gaussian_wells({{5.0, 1.0, {0.0, 0.0}}, {-1.5, 0.6, {0.8, 0.5}}}, 2.0));
    specs.push_back(make_circular_well(2.0, 1.5, {0.1, -0.2}));
    specs.push_back(make_a17(0.75));
    {
        std::vector<Term> terms(3);
        terms[0].kind = TermKind::constant;
        terms[0].constant.value = 7.0;
        terms[1].kind = TermKind::gaussian;
        terms[1].gaussian = {1.0, 1.0, {0.0, 0.0}};
        terms[2].kind = TermKind::disk;
        terms[2].disk = {1.5, 2.0, {0.0, 0.0}};
        specs.push_back(make_sum_of_terms(std::move(terms), 0.5));
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (const auto& s : specs) {
        const Json j = potential_to_json(s);
        const PotentialSpec back = potential_from_json(nlohmann::json::parse(j.dump()));
        CHECK(back.family == s.family);
        CHECK(back.g == s.g);
        for (int t = 0; t < 20; ++t) {
            const Vec2 p{uni(rng), uni(rng)};
            if (s.family == Family::a17_family && norm(p) == 0.0) continue;
            CHECK(evaluate(back, p) == evaluate(s, p));
        }
    }
}

TEST_CASE("potential JSON rejects unknown keys and bad params") {
    using nlohmann::json;
    CHECK_THROWS_AS(potential_from_json(json::parse(
                        R"({"family":"a17_family","params":{"gamma":1.0},"boost":2})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(potential_from_json(json::parse(
                        R"({"family":"a17_family","params":{"gama":1.0}})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(potential_from_json(json::parse(R"({"family":"nope","params":{}})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(potential_from_json(json::parse(
                        R"({"family":"circular_well","params":{"depth":1.0}})")),
                    std::invalid_argument);
}

TEST_CASE("integral_of_potential is negative for a pure well") {
    const auto spec = make_gaussian_wells({{5.0, 1.0, {0.0, 0.0}}});
    const Grid2D grid = Grid2D::make(4.0, 64);
    const double iv = integral_of_potential(spec, grid);
    CHECK(iv < 0.0);
    // midpoint quadrature of -5 pi exp(-r^2) over a generous box
    CHECK(iv == doctest::Approx(-5.0 * M_PI).epsilon(1e-5));
}
