#include "nhknot/bloch.hpp"

#include "nhknot/errors.hpp"
#include "nhknot/linalg2.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace nhknot;
using namespace nhknot::test;

TEST_CASE("presets") {
    const BlochModel m1 = preset(ModelName::model_i, 0.5);
    CHECK(m1.t1 == 1.0);
    CHECK(m1.t2 == 0.5);
    CHECK(m1.t3 == 0.0);
    CHECK(m1.t4 == 0.0);
    CHECK(m1.mu == 1.5);

    const BlochModel m2 = preset(ModelName::model_ii, 1.5);
    CHECK(m2.t1 == 1.0);
    CHECK(m2.t2 == 1.0);
    CHECK(m2.t3 == 1.0);
    CHECK(m2.t4 == 1.5);
    CHECK(m2.mu == 4.5);

    CHECK_THROWS_AS(preset(ModelName::model_i, 0.0), domain_error);
    CHECK_THROWS_AS(preset(ModelName::model_i, -2.0), domain_error);
}

TEST_CASE("custom model positivity check") {
    CHECK_NOTHROW(make_model(1.0, 0.5, 0.0, 0.0, 1.5));
    // mu too small: lower band dips below zero
    CHECK_THROWS_AS(make_model(1.0, 1.0, 0.0, 0.0, 0.5), domain_error);
}

TEST_CASE("d_vector values") {
    const DVector d1 = d_vector(preset(ModelName::model_i, 0.5), 0.0);
    CHECK(d1.dx == doctest::Approx(1.5));
    CHECK(d1.dy == doctest::Approx(0.0));
    CHECK(d1.dz == 0.0);

    const DVector d2 = d_vector(preset(ModelName::model_i, 1.0), pi);
    CHECK(std::abs(d2.dx) < 1e-15);
    CHECK(std::abs(d2.dy) < 1e-15);

    // root of z^3 + z^2 + z + 1 at z = i
    const DVector d3 = d_vector(preset(ModelName::model_ii, 1.0), pi / 2);
    CHECK(std::abs(d3.dx) < 1e-15);
    CHECK(std::abs(d3.dy) < 1e-15);
}

TEST_CASE("bloch_h matrices") {
    const Mat2 h1 = bloch_h(preset(ModelName::model_i, 0.5), 0.0);
    CHECK((h1 - Mat2{1.5, 1.5, 1.5, 1.5}).frobenius_norm() < 1e-14);

    const Mat2 h2 = bloch_h(preset(ModelName::model_i, 1.5), pi);
    CHECK((h2 - Mat2{2.5, -0.5, -0.5, 2.5}).frobenius_norm() < 1e-13);

    const Mat2 h3 = bloch_h(preset(ModelName::model_ii, 1.5), 0.0);
    CHECK((h3 - Mat2{4.5, 4.5, 4.5, 4.5}).frobenius_norm() < 1e-13);
}

TEST_CASE("gap values") {
    CHECK(gap(preset(ModelName::model_i, 1.0), pi) < 1e-12);
    CHECK(gap(preset(ModelName::model_i, 0.5), pi) == doctest::Approx(1.0));
    CHECK(gap(preset(ModelName::model_ii, 1.0), pi / 2) < 1e-12);
}

TEST_CASE("gap closings") {
    const auto c1 = find_gap_closings(preset(ModelName::model_i, 1.0));
    REQUIRE(c1.size() == 1);
    CHECK(std::abs(c1[0] - pi) < 1e-8);

    const auto c2 = find_gap_closings(preset(ModelName::model_ii, 1.0));
    REQUIRE(c2.size() == 3);
    CHECK(std::abs(c2[0] - pi / 2) < 1e-8);
    CHECK(std::abs(c2[1] - pi) < 1e-8);
    CHECK(std::abs(c2[2] - 3 * pi / 2) < 1e-8);

    CHECK(find_gap_closings(preset(ModelName::model_i, 0.5)).empty());
    CHECK(find_gap_closings(preset(ModelName::model_i, 33.97056274847714)).empty());
}

TEST_CASE("bloch invariants on a sampled set") {
    auto rng = make_rng(3);
    for (int i = 0; i < 200; ++i) {
        const BlochModel m = preset(i % 2 ? ModelName::model_i : ModelName::model_ii,
                                    uniform(rng, 0.05, 5.0));
        const double k = uniform(rng, -two_pi, two_pi);
        const Mat2 h = bloch_h(m, k);
        CHECK((h - h.adjoint()).frobenius_norm() < 1e-14 * (1.0 + h.frobenius_norm()));
        CHECK((bloch_h(m, k + two_pi) - h).frobenius_norm() < 1e-12 * (1.0 + h.frobenius_norm()));

        const DVector d = d_vector(m, k);
        const double r = std::hypot(d.dx, d.dy);
        const HermEig e = herm_eig(h);
        CHECK(std::abs(e.e1 - (m.mu - r)) < 1e-12 * (1.0 + m.mu));
        CHECK(std::abs(e.e2 - (m.mu + r)) < 1e-12 * (1.0 + m.mu));
    }
}

TEST_CASE("preset lower band never dips below zero") {
    for (double omega : {0.25, 0.5, 1.0, 1.5, 30.0, 80.0}) {
        for (ModelName name : {ModelName::model_i, ModelName::model_ii}) {
            const BlochModel m = preset(name, omega);
            double lowest = 1e300;
            for (int j = 0; j < 4096; ++j) {
                const double k = two_pi * (j + 0.5) / 4096;
                lowest = std::min(lowest, herm_eig(bloch_h(m, k)).e1);
            }
            CHECK(lowest >= -1e-10);
        }
    }
}
