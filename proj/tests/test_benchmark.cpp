#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>

#include "genomap/benchmark.hpp"

using namespace genomap;

TEST_CASE("suite names and categories") {
    CHECK(kAllFunctions.size() == 10);
    int per_category[5] = {0, 0, 0, 0, 0};
    for (FunctionId id : kAllFunctions) {
        CHECK(parse_function(function_name(id)) == id);
        per_category[static_cast<int>(category_of(id))]++;
        CHECK(parse_category(category_name(category_of(id))) == category_of(id));
    }
    for (int c : per_category) CHECK(c == 2);
    CHECK_THROWS_AS(parse_function("f25"), std::invalid_argument);
    CHECK_THROWS_AS(parse_category("unimodal"), std::invalid_argument);
}

TEST_CASE("base function examples") {
    const std::vector<double> zero{0.0, 0.0};
    CHECK(base_function(FunctionId::sphere, zero) == 0.0);
    const std::vector<double> p{1.0, 2.0};
    CHECK(base_function(FunctionId::sphere, p) == 5.0);

    // 10 * 2 + (1 - 10 cos 2pi) * 2 = 2
    const std::vector<double> ones{1.0, 1.0};
    CHECK(base_function(FunctionId::rastrigin_separable, zero) == doctest::Approx(0.0));
    CHECK(base_function(FunctionId::rastrigin_separable, ones) == doctest::Approx(2.0).epsilon(1e-12));
    const std::vector<double> half{0.5};
    CHECK(base_function(FunctionId::rastrigin_rotated, half) == doctest::Approx(10 + 0.25 + 10).epsilon(1e-12));

    // shifted Rosenbrock: y = z + 1
    const std::vector<double> r{-1.0, -1.0};
    CHECK(base_function(FunctionId::rosenbrock, r) == doctest::Approx(1.0));
    const std::vector<double> cigar{1.0, 1.0};
    CHECK(base_function(FunctionId::bent_cigar, cigar) == doctest::Approx(1.0 + 1e6));
    CHECK(base_function(FunctionId::ellipsoid_rotated, cigar) == doctest::Approx(1.0 + 1e6));
    const std::vector<double> sector{1.0, -1.0};
    CHECK(base_function(FunctionId::attractive_sector, sector) == doctest::Approx(1e4 + 1.0));
}

TEST_CASE("every suite function is zero at its optimum and positive nearby") {
    for (FunctionId id : kAllFunctions) {
        for (std::size_t dim : {1u, 2u, 5u, 10u, 20u}) {
            ProblemInstance inst = make_instance(id, dim, 17);
            CAPTURE(inst.name());
            const std::vector<double> opt(inst.shift().begin(), inst.shift().end());
            CHECK(std::abs(inst.evaluate(opt)) <= 1e-12);
            std::vector<double> off = opt;
            off[0] += 0.1;
            CHECK(inst.evaluate(off) > 0.0);
        }
    }
}

TEST_CASE("instances are deterministic and shifts stay inside [-4, 4]") {
    const ProblemInstance a = make_instance(FunctionId::rastrigin_separable, 2, 5);
    const ProblemInstance b = make_instance(FunctionId::rastrigin_separable, 2, 5);
    CHECK(std::equal(a.shift().begin(), a.shift().end(), b.shift().begin()));
    const ProblemInstance c = make_instance(FunctionId::rastrigin_separable, 2, 6);
    CHECK_FALSE(std::equal(a.shift().begin(), a.shift().end(), c.shift().begin()));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (double v : make_instance(FunctionId::lunacek, 10, seed).shift()) {
            REQUIRE(v >= -4.0);
            REQUIRE(v <= 4.0);
        }
    }
}

TEST_CASE("rotations are orthogonal; separable functions are not rotated") {
    const ProblemInstance rosen = make_instance(FunctionId::rosenbrock, 5, 99);
    CHECK(orthogonality_defect(rosen.rotation(), 5) < 1e-10);
    for (std::size_t n : {2u, 10u, 20u}) {
        RngStream rng(n);
        const auto r = random_rotation(n, rng);
        CHECK(orthogonality_defect(r, n) < 1e-10);
    }
    const ProblemInstance sphere = make_instance(FunctionId::sphere, 3, 1);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(sphere.rotation()[i * 3 + j] == (i == j ? 1.0 : 0.0));
}

TEST_CASE("evaluation counter and length validation") {
    ProblemInstance inst = make_instance(FunctionId::sphere, 2, 3);
    CHECK(inst.eval_count() == 0);
    const std::vector<double> x{0.0, 0.0};
    for (int i = 0; i < 17; ++i) inst.evaluate(x);
    CHECK(inst.eval_count() == 17);
    const std::vector<double> bad{0.0};
    CHECK_THROWS_AS(inst.evaluate(bad), std::invalid_argument);
    CHECK(inst.eval_count() == 17);
    CHECK_THROWS_AS(make_instance(FunctionId::sphere, 0, 1), std::invalid_argument);
}

TEST_CASE("hit criterion") {
    ProblemInstance inst = make_instance(FunctionId::sphere, 2, 3);
    CHECK(inst.is_hit(0.0));
    CHECK(inst.is_hit(1e-8));
    CHECK_FALSE(inst.is_hit(1.0001e-8));
}

TEST_CASE("separable instances are solved by per-axis search") {
    for (FunctionId id : {FunctionId::sphere, FunctionId::rastrigin_separable}) {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            ProblemInstance inst = make_instance(id, 2, seed);
            std::vector<double> x{3.0, -2.0};
            for (std::size_t axis = 0; axis < 2; ++axis) {
                double centre = 0.0, half = 5.0;
                for (int level = 0; level < 7; ++level) {
                    double best_v = std::numeric_limits<double>::infinity(), best_x = centre;
                    for (int k = -1000; k <= 1000; ++k) {
                        x[axis] = centre + half * k / 1000.0;
                        const double v = inst.evaluate(x);
                        if (v < best_v) best_v = v, best_x = x[axis];
                    }
                    centre = best_x;
                    half /= 500.0;
                }
                x[axis] = centre;
            }
            CAPTURE(inst.name());
            CHECK(inst.evaluate(x) < 1e-9);
        }
    }
}

TEST_CASE("no grid point around the optimum beats it") {
    for (FunctionId id : kAllFunctions) {
        ProblemInstance inst = make_instance(id, 2, 8);
        const double cx = inst.shift()[0], cy = inst.shift()[1];
        double lowest = std::numeric_limits<double>::infinity();
        for (int i = -100; i <= 100; ++i) {
            for (int j = -100; j <= 100; ++j) {
                const std::vector<double> x{cx + i * 0.01, cy + j * 0.01};
                lowest = std::min(lowest, inst.evaluate(x));
            }
        }
        CAPTURE(function_name(id));
        CHECK(std::abs(lowest - 0.0) <= 1e-6);
    }
}
