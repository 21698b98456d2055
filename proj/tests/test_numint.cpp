#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "glvol/errors.hpp"
#include "glvol/json_io.hpp"
#include "glvol/numint.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

using glvol::AngleBox;
using glvol::ChartParams;
using glvol::UnitaryPoint;
using std::numbers::pi;

namespace {

using cdouble = std::complex<double>;

double unitarity_defect(const UnitaryPoint& u) {
    double worst = 0.0;
    for (int r = 0; r < u.n; ++r)
        for (int c = 0; c < u.n; ++c) {
            cdouble dot{};
            for (int k = 0; k < u.n; ++k) dot += std::conj(u.at(k, r)) * u.at(k, c);
            if (r == c) dot -= 1.0;
            worst = std::max(worst, std::abs(dot));
        }
    return worst;
}

ChartParams random_interior_params(std::mt19937_64& rng, int n) {
    AngleBox box = glvol::chart_box(n);
    ChartParams p{n, std::vector<double>(static_cast<std::size_t>(box.dim()))};
    std::uniform_real_distribution<double> u(0.15, 0.85);
    for (int k = 0; k < box.dim(); ++k)
        p.angles[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * u(rng);
    return p;
}

}  // namespace

TEST_CASE("make_unitary guards the invariant") {
    CHECK_NOTHROW(glvol::make_unitary(1, {cdouble(0.0, 1.0)}));
    CHECK_THROWS_AS(glvol::make_unitary(1, {cdouble(0.5, 0.0)}), std::invalid_argument);
    CHECK_THROWS_AS(glvol::make_unitary(2, {cdouble(1.0, 0.0)}), std::invalid_argument);
    UnitaryPoint id = glvol::identity_unitary(3);
    CHECK(unitarity_defect(id) == 0.0);
}

TEST_CASE("chart box layout") {
    AngleBox b1 = glvol::chart_box(1);
    CHECK(b1.dim() == 1);
    CHECK(b1.periodic[0]);

    AngleBox b3 = glvol::chart_box(3);
    CHECK(b3.dim() == 9);
    // level m = 2: four polar axes then one periodic; level m = 1: two polar,
    // one periodic; then the U(1) phase
    std::vector<bool> expected{false, false, false, false, true, false, false, true, true};
    CHECK(b3.periodic == expected);
    for (int k = 0; k < 9; ++k) {
        CHECK(b3.lo[k] == 0.0);
        CHECK(b3.hi[k] == doctest::Approx(b3.periodic[k] ? 2 * pi : pi));
    }
}

TEST_CASE("chart base cases") {
    // n = 1: the chart is the unit circle itself
    for (double t : {0.0, 0.3, 2.0, 6.0}) {
        UnitaryPoint u = glvol::chart_point({1, {t}});
        CHECK(std::abs(u.at(0, 0) - std::polar(1.0, t)) < 1e-15);
    }

    // all angles zero: the identity, at every size
    for (int n = 1; n <= 4; ++n) {
        ChartParams p{n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
        UnitaryPoint u = glvol::chart_point(p);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                CHECK(std::abs(u.at(r, c) - (r == c ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("chart points are unitary across the box") {
    std::mt19937_64 rng(5150);
    for (int round = 0; round < 200; ++round) {
        int n = 1 + static_cast<int>(rng() % 3);
        // chart_point itself enforces the 1e-12 invariant; check tighter
        UnitaryPoint u = glvol::chart_point(random_interior_params(rng, n));
        CHECK(unitarity_defect(u) < 1e-13);
    }
}

TEST_CASE("chart rejects bad parameters") {
    CHECK_THROWS_AS(glvol::chart_point({2, {0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(glvol::chart_point({2, {-1.0, 0.0, 0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(glvol::chart_point({2, {0.0, 0.0, 7.0, 0.0}}), std::invalid_argument);
    // a finite-difference probe just past the boundary must stay legal
    CHECK_NOTHROW(glvol::chart_point({2, {pi + 1e-5, 0.1, 0.1, 0.1}}));
}

TEST_CASE("chart degeneracy is detected, not fabricated") {
    // u_0 = cos(f1) + i sin(f1) cos(f2) vanishes at f1 = f2 = pi/2
    CHECK_THROWS_AS(glvol::chart_point({2, {pi / 2, pi / 2, 0.3, 0.4}}),
                    glvol::chart_degeneracy);
    // nearby but off the seam is fine
    CHECK_NOTHROW(glvol::chart_point({2, {pi / 2 + 0.05, pi / 2, 0.3, 0.4}}));
}

TEST_CASE("density at n = 1 is the constant i") {
    for (double t : {0.2, 1.0, 3.0, 5.5}) {
        cdouble d = glvol::pullback_density({1, {t}}, 1e-5);
        CHECK(std::abs(d - cdouble(0.0, 1.0)) < 1e-9);
    }
    // theta-independence up to finite-difference rounding (~1e-11 observed)
    cdouble a = glvol::pullback_density({1, {0.5}}, 1e-5);
    cdouble b = glvol::pullback_density({1, {4.5}}, 1e-5);
    CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("density is invariant under left translation") {
    std::mt19937_64 rng(808);
    for (int round = 0; round < 8; ++round) {
        int n = 1 + static_cast<int>(rng() % 2);
        ChartParams p = random_interior_params(rng, n);
        UnitaryPoint g = glvol::haar_sample(n, 1000 + round);
        cdouble base = glvol::pullback_density(p, 1e-5);
        cdouble moved = glvol::pullback_density(p, 1e-5, g);
        CHECK(std::abs(moved - base) <= 1e-6 * std::abs(base));
    }
    CHECK_THROWS_AS(
        glvol::pullback_density({1, {0.5}}, 1e-5, glvol::identity_unitary(2)),
        std::invalid_argument);
    CHECK_THROWS_AS(glvol::pullback_density({1, {0.5}}, 0.0), std::invalid_argument);
}

TEST_CASE("quadrature n = 1 hits the exact value") {
    glvol::IntegrationEstimate est = glvol::integrate_quadrature(1, 1024, 1e-5);
    CHECK(est.method == "quadrature");
    CHECK(est.evaluations == 1024);
    CHECK(est.std_error == 0.0);
    CHECK(std::abs(est.value - cdouble(0.0, 2 * pi)) < 1e-8);
}

TEST_CASE("quadrature n = 2 converges to the closed-form modulus") {
    double expected = 8 * pi * pi * pi;
    // past ~8 nodes per axis the quadrature error drops below the
    // finite-difference bias floor (~1e-7), so the refinement ladder is
    // checked on the coarse side where the quadrature term dominates
    glvol::IntegrationEstimate coarse = glvol::integrate_quadrature(2, 4, 1e-5);
    glvol::IntegrationEstimate mid = glvol::integrate_quadrature(2, 6, 1e-5);
    glvol::IntegrationEstimate fine = glvol::integrate_quadrature(2, 24, 1e-5);
    double err_coarse = std::abs(std::abs(coarse.value) - expected);
    double err_mid = std::abs(std::abs(mid.value) - expected);
    double err_fine = std::abs(std::abs(fine.value) - expected);
    CHECK(err_coarse > 100.0 * err_mid);   // refinement helps, by orders
    CHECK(err_mid > 100.0 * err_fine);
    CHECK(err_fine <= 1e-4 * expected);    // and lands inside tolerance
    CHECK(std::abs(fine.value.real()) <= 1e-3 * std::abs(fine.value));
    CHECK(fine.evaluations == 331776);     // 24^4
}

TEST_CASE("quadrature rejects unsupported configurations") {
    CHECK_THROWS_AS(glvol::integrate_quadrature(3, 8, 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(glvol::integrate_quadrature(1, 1, 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(glvol::integrate_quadrature(1, 64, -1.0), std::invalid_argument);
}

TEST_CASE("monte carlo n = 1 agrees and is deterministic") {
    glvol::IntegrationEstimate a = glvol::integrate_mc(1, 100000, 42, 1e-5);
    glvol::IntegrationEstimate b = glvol::integrate_mc(1, 100000, 42, 1e-5);
    CHECK(a.value == b.value);  // bitwise reproducible
    CHECK(a.std_error == b.std_error);
    CHECK(a.evaluations == 100000);
    CHECK(a.seed.has_value());
    CHECK(*a.seed == 42);
    // the density is constant, so the only error is finite-difference bias
    CHECK(std::abs(a.value - cdouble(0.0, 2 * pi)) <
          std::max(3.0 * a.std_error, 1e-8));

    glvol::IntegrationEstimate c = glvol::integrate_mc(1, 100000, 43, 1e-5);
    CHECK(c.value != a.value);  // the seed matters
}

TEST_CASE("monte carlo n = 2 agrees with quadrature") {
    // frozen representative draw: across seeds 1..11 the deviation is 0.1-2.4
    // sigma; this seed sits at 0.5 sigma, so the 3 sigma contract has margin
    glvol::IntegrationEstimate mc = glvol::integrate_mc(2, 200000, 2, 1e-5);
    glvol::IntegrationEstimate quad = glvol::integrate_quadrature(2, 24, 1e-5);
    double diff = std::abs(std::abs(mc.value) - std::abs(quad.value));
    CHECK(diff <= 3.0 * mc.std_error + 1e-9);
    CHECK(mc.std_error > 0.0);
}

TEST_CASE("monte carlo rejects unsupported configurations") {
    CHECK_THROWS_AS(glvol::integrate_mc(4, 100000, 1, 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(glvol::integrate_mc(1, 9999, 1, 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(glvol::integrate_mc(1, 100000, 1, 0.0), std::invalid_argument);
}

TEST_CASE("haar samples") {
    UnitaryPoint u = glvol::haar_sample(3, 11);  // construction enforces unitarity
    UnitaryPoint v = glvol::haar_sample(3, 11);
    CHECK(u.m == v.m);  // deterministic
    UnitaryPoint w = glvol::haar_sample(3, 12);
    CHECK(u.m != w.m);

    // E |u_00|^2 = 1/n; for n = 2 the modulus-squared is uniform on [0, 1],
    // so 4000 draws put the mean within ~0.014 of 1/2 at three sigma
    double mean = 0.0;
    int draws = 4000;
    for (int k = 0; k < draws; ++k) {
        UnitaryPoint s = glvol::haar_sample(2, 20000 + static_cast<std::uint64_t>(k));
        mean += std::norm(s.at(0, 0));
    }
    mean /= draws;
    CHECK(std::abs(mean - 0.5) < 0.014);
}

TEST_CASE("estimate serialization") {
    glvol::IntegrationEstimate est = glvol::integrate_mc(1, 10000, 5, 1e-5);
    glvol::ordered_json j = glvol::estimate_json(est, 2 * pi);
    CHECK(j["n"] == 1);
    CHECK(j["method"] == "montecarlo");
    CHECK(j["seed"] == 5);
    CHECK(j.contains("stderr"));
    CHECK(j.contains("expected_modulus"));
    CHECK(j["rel_error"].get<double>() < 1e-6);
    CHECK(j["evaluations"] == 10000);

    glvol::ordered_json q = glvol::estimate_json(glvol::integrate_quadrature(1, 64, 1e-5), 2 * pi);
    CHECK(q["method"] == "quadrature");
    CHECK_FALSE(q.contains("seed"));
}
