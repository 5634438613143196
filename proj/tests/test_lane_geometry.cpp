#include <doctest.h>

#include <cmath>
#include <sstream>

#include "v2vsf/lane_geometry.hpp"
#include "v2vsf/quadrature.hpp"
#include "oracles.hpp"

using namespace v2vsf;
using lanes::AntennaCase;
using lanes::DistanceModel;

namespace {
const hardcore::HardCoreConfig kFig1Lane{0.1, 5.0, 145.0};   // d = 150
const hardcore::HardCoreConfig kFig2Lane{0.2, 5.0, 45.0};    // d = 50
}  // namespace

TEST_CASE("deploy_field pins the typical vehicle and keeps gaps") {
    rng::Stream rng(11);
    const auto field = lanes::deploy_field(kFig1Lane, kFig1Lane, {5.0}, 4000.0, rng);
    bool has_origin = false;
    for (double x : field.lane1.points) has_origin |= x == 0.0;
    CHECK(has_origin);
    for (std::size_t i = 0; i + 1 < field.lane1.size(); ++i)
        CHECK(field.lane1.points[i + 1] - field.lane1.points[i] > 150.0);

    SUBCASE("same seed, same field") {
        rng::Stream a(77), b(77);
        const auto fa = lanes::deploy_field(kFig1Lane, kFig1Lane, {5.0}, 4000.0, a);
        const auto fb = lanes::deploy_field(kFig1Lane, kFig1Lane, {5.0}, 4000.0, b);
        CHECK(fa.lane1.points == fb.lane1.points);
        CHECK(fa.lane2.points == fb.lane2.points);
    }
    SUBCASE("mean lane-2 count matches lambda_2 * window") {
        double total = 0.0;
        const int reps = 400;
        for (int i = 0; i < reps; ++i) {
            rng::Stream s(rng::derive_seed(500, i));
            total += static_cast<double>(
                lanes::deploy_field(kFig1Lane, kFig1Lane, {5.0}, 4000.0, s).lane2.size());
        }
        const double expected = 8000.0 / 300.0;  // 2 L lambda_2
        CHECK(std::fabs(total / reps - expected) / expected < 0.02);
    }
}

TEST_CASE("nearest_vehicle picks the smallest |x| on the restricted set") {
    lanes::VehicleField f;
    f.lane2.points = {-40.0, 30.0, 120.0};
    CHECK(*lanes::nearest_vehicle(f, AntennaCase::c2_omni) == 30.0);
    CHECK(*lanes::nearest_vehicle(f, AntennaCase::c1_semicircle) == 30.0);
    f.lane2.points = {-10.0, 30.0};
    CHECK(*lanes::nearest_vehicle(f, AntennaCase::c2_omni) == -10.0);
    f.lane2.points = {-10.0};
    CHECK(!lanes::nearest_vehicle(f, AntennaCase::c1_semicircle).has_value());
    f.lane2.points = {};
    CHECK(!lanes::nearest_vehicle(f, AntennaCase::c2_omni).has_value());
}

TEST_CASE("lambda_r closed form and tail-mass identity") {
    CHECK(lanes::lambda_r(0.01, 50.0) == doctest::Approx(std::log(8.0) / 100.0).epsilon(1e-12));
    CHECK(lanes::lambda_r(0.01, 50.0) == doctest::Approx(0.020794).epsilon(1e-4));

    SUBCASE("exp(-2 lambda_r d2) equals the tail mass, across the admissible range") {
        for (double prod = 0.01; prod < 0.495; prod += 0.02) {
            const double d2 = 40.0, l2 = prod / d2;
            const double lr = lanes::lambda_r(l2, d2);
            CHECK(lr > 0.0);
            const double lhs = std::exp(-2.0 * lr * d2);
            const double rhs = ((prod - 2.0) * (prod - 2.0) - 2.0) / 2.0;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            CHECK(lhs == doctest::Approx(1.0 - lanes::cdf_within_two_d(l2, d2)).epsilon(1e-12));
        }
    }
}

TEST_CASE("cdf_within_two_d") {
    CHECK(lanes::cdf_within_two_d(0.01, 50.0) == doctest::Approx(0.875).epsilon(1e-12));
    // integrating the first two pdf branches gives the same mass
    const DistanceModel m(0.01, 50.0, 5.0, AntennaCase::c1_semicircle);
    const double mass = quad::integrate([&](double x) { return m.pdf_horizontal(x); }, 1e-12,
                                        100.0, std::vector<double>{50.0});
    CHECK(mass == doctest::Approx(0.875).epsilon(1e-9));
    // heavy-traffic floor ~0.77
    for (double lp : {0.02, 0.05, 0.1, 0.5}) {
        const double d2 = 50.0;
        if (lp * d2 < 1.0) continue;
        const double l2 = hardcore::first_order_density(lp, d2);
        CHECK(lanes::cdf_within_two_d(l2, d2) >= 2.0 - std::pow(3.0 + std::exp(-2.0), 2) / 8.0 - 1e-12);
    }
    CHECK(lanes::cdf_within_two_d(1e-9, 1e-3) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("pdf_horizontal branches (c1 and c2)") {
    const DistanceModel c1(0.01, 50.0, 5.0, AntennaCase::c1_semicircle);
    CHECK(c1.pdf_horizontal(25.0) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(c1.pdf_horizontal(75.0) == doctest::Approx(0.0075).epsilon(1e-12));
    CHECK(c1.pdf_horizontal(120.0) == doctest::Approx(1.715e-3).epsilon(1e-3));
    CHECK(c1.pdf_horizontal(120.0) ==
          doctest::Approx(c1.lambda_r() * std::exp(-c1.lambda_r() * 120.0)).epsilon(1e-12));

    const DistanceModel c2(0.01, 50.0, 5.0, AntennaCase::c2_omni, /*renormalize=*/false);
    CHECK(c2.pdf_horizontal(20.0) == doctest::Approx(0.02).epsilon(1e-12));

    SUBCASE("c1 pdf is continuous at d_2 and positive everywhere") {
        CHECK(c1.pdf_horizontal(50.0) == doctest::Approx(c1.pdf_horizontal(50.0 + 1e-12)).epsilon(1e-9));
        for (double r : {1.0, 49.0, 51.0, 99.0, 101.0, 500.0, 2000.0})
            CHECK(c1.pdf_horizontal(r) > 0.0);
    }
    SUBCASE("c2 pdf is continuous at d_2/2") {
        CHECK(c2.pdf_horizontal(25.0) == doctest::Approx(c2.pdf_horizontal(25.0 + 1e-9)).epsilon(1e-7));
    }
    SUBCASE("model invariant violations throw") {
        CHECK_THROWS_AS(DistanceModel(0.02, 50.0, 5.0, AntennaCase::c1_semicircle),
                        std::invalid_argument);  // lambda_2 d_2 = 1 > 1/2
        CHECK_THROWS_AS(DistanceModel(0.01, 50.0, 0.0, AntennaCase::c1_semicircle),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)c1.pdf_horizontal(0.0), std::invalid_argument);
    }
}

TEST_CASE("normalization of the horizontal pdfs") {
    SUBCASE("c1 integrates to 1 exactly (quadrature within 1e-9)") {
        for (double prod : {0.1, 0.3, 0.432, 0.5}) {
            const double d2 = 50.0, l2 = prod / d2;
            const DistanceModel m(l2, d2, 5.0, AntennaCase::c1_semicircle);
            const double bulk = quad::integrate([&](double x) { return m.pdf_horizontal(x); },
                                                1e-12, m.tail_start(), m.breakpoints());
            const double tail = m.tail_coefficient() / m.tail_rate() *
                                std::exp(-m.tail_rate() * m.tail_start());
            CHECK(std::fabs(bulk + tail - 1.0) <= 1e-9);
        }
    }
    SUBCASE("c2 mass is recorded and renormalization restores unit mass") {
        const DistanceModel raw(0.01, 50.0, 5.0, AntennaCase::c2_omni, false);
        CHECK(raw.mass() == doctest::Approx(1.0).epsilon(1e-9));  // printed form is normalized
        const DistanceModel ren(0.01, 50.0, 5.0, AntennaCase::c2_omni, true);
        const double bulk = quad::integrate([&](double x) { return ren.pdf_horizontal(x); },
                                            1e-12, ren.tail_start(), ren.breakpoints());
        const double tail = ren.tail_coefficient() / ren.tail_rate() *
                            std::exp(-ren.tail_rate() * ren.tail_start());
        CHECK(std::fabs(bulk + tail - 1.0) <= 1e-9);
    }
}

TEST_CASE("pdf_comm_distance change of variables") {
    const DistanceModel c1(0.01, 50.0, 5.0, AntennaCase::c1_semicircle);
    CHECK(c1.pdf_comm_distance(5.0) == 0.0);
    CHECK(c1.pdf_comm_distance(4.0) == 0.0);
    CHECK(c1.pdf_comm_distance(13.0) == doctest::Approx(13.0 / 12.0 * 0.01).epsilon(1e-12));

    SUBCASE("mass is preserved under the substitution") {
        // integrate f_r over (w_l, inf) in the x-domain
        const double mass =
            quad::integrate([&](double x) { return c1.pdf_horizontal(x); }, 1e-12,
                            c1.tail_start(), c1.breakpoints()) +
            c1.tail_coefficient() / c1.tail_rate() * std::exp(-c1.tail_rate() * c1.tail_start());
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
        // r-domain mass over a slab equals the x-domain mass over its image
        const double r_lo = 6.0, r_hi = 120.0;
        const double x_lo = std::sqrt(r_lo * r_lo - 25.0), x_hi = std::sqrt(r_hi * r_hi - 25.0);
        const double direct = quad::integrate([&](double r) { return c1.pdf_comm_distance(r); },
                                              r_lo, r_hi,
                                              std::vector<double>{std::sqrt(50.0 * 50.0 + 25.0),
                                                                  std::sqrt(100.0 * 100.0 + 25.0)});
        const double xdom = quad::integrate([&](double x) { return c1.pdf_horizontal(x); }, x_lo,
                                            x_hi, c1.breakpoints());
        CHECK(direct == doctest::Approx(xdom).epsilon(1e-7));
    }
}

TEST_CASE("overlap_probability_bound") {
    CHECK(lanes::overlap_probability_bound(0.0, 50.0, 75.0) == doctest::Approx(0.5).epsilon(1e-10));

    SUBCASE("decreasing in lambda_p d_2") {
        double prev = 1.0;
        for (double lpd : {1.0, 5.0, 10.0, 30.0}) {
            const double d2 = 50.0;
            const double v = lanes::overlap_probability_bound(lpd / d2, d2, 75.0);
            CHECK(v < prev);
            CHECK(v > 0.0);
            prev = v;
        }
    }
    SUBCASE("matches a 2D brute-force grid at 1e-6") {
        const double lp = 0.2, d2 = 50.0, r1 = 75.0;
        const double a = lp * (r1 - d2);
        const int n = 3000;
        double brute = 0.0;
        for (int i = 0; i < n; ++i) {
            const double m = (i + 0.5) / n;
            double inner = 0.0;
            const int ni = 600;
            for (int j = 0; j < ni; ++j) {
                const double m2 = m * (j + 0.5) / ni;
                inner += std::exp(-(1.0 - m2) * a);
            }
            brute += std::exp(-(1.0 - m) * lp * d2) * inner * (m / ni);
        }
        brute /= n;
        const double v = lanes::overlap_probability_bound(lp, d2, r1);
        CHECK(std::fabs(v - brute) < 1e-6);
        CHECK(v > 0.0);
        CHECK(v < 0.5);
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS((void)lanes::overlap_probability_bound(0.1, 50.0, 40.0),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)lanes::overlap_probability_bound(0.1, 50.0, 101.0),
                        std::invalid_argument);
    }
}

TEST_CASE("empirical nearest-vehicle distances match the closed forms") {
    const double d2 = kFig2Lane.hard_core();
    const double l2 = hardcore::first_order_density(kFig2Lane.lambda_p, d2);

    SUBCASE("uniform on (0, d_2] conditional on the lane-change zone (KS)") {
        std::size_t discarded = 0;
        const auto xs = lanes::sample_nv_distances(kFig2Lane, AntennaCase::c1_semicircle, 2000.0,
                                                   20000, 616, &discarded);
        std::vector<double> zone;
        for (double x : xs)
            if (x > 0.0 && x <= d2) zone.push_back(x);
        REQUIRE(zone.size() > 5000);
        const double dstat = oracles::ks_statistic_uniform(zone, d2);
        CHECK(dstat < oracles::ks_critical_value(zone.size(), 0.01));
    }
    SUBCASE("c2 samples are symmetric about 0 (sign test)") {
        const auto xs = lanes::sample_nv_distances(kFig2Lane, AntennaCase::c2_omni, 2000.0,
                                                   20000, 303);
        std::size_t pos = 0;
        for (double x : xs) pos += x > 0.0 ? 1 : 0;
        const double n = static_cast<double>(xs.size());
        // 3-sigma band around n/2
        CHECK(std::fabs(pos - 0.5 * n) < 3.0 * 0.5 * std::sqrt(n));
    }
    SUBCASE("serial twin produces identical samples") {
        const auto a =
            lanes::sample_nv_distances(kFig2Lane, AntennaCase::c2_omni, 2000.0, 512, 99);
        const auto b =
            lanes::sample_nv_distances_serial(kFig2Lane, AntennaCase::c2_omni, 2000.0, 512, 99);
        CHECK(a == b);
    }
    SUBCASE("histogram matches the c1 pdf loosely at unit-test scale") {
        const auto xs = lanes::sample_nv_distances(kFig2Lane, AntennaCase::c1_semicircle, 2000.0,
                                                   40000, 2718);
        const DistanceModel m(l2, d2, 5.0, AntennaCase::c1_semicircle);
        const double bw = 10.0;
        std::vector<double> hist(20, 0.0);
        for (double x : xs)
            if (x < 200.0) hist[static_cast<std::size_t>(x / bw)] += 1.0;
        for (auto& h : hist) h /= static_cast<double>(xs.size()) * bw;
        for (std::size_t b = 0; b < hist.size(); ++b) {
            const double mid = (static_cast<double>(b) + 0.5) * bw;
            CHECK(std::fabs(hist[b] - m.pdf_horizontal(mid)) < 0.15 * 2.0 * l2);
        }
    }
}

TEST_CASE("field CSV dump") {
    lanes::VehicleField f;
    f.lane1.points = {-3.0, 0.0};
    f.lane2.points = {2.0};
    f.layout = {5.0};
    std::ostringstream os;
    lanes::write_field_csv(os, f);
    CHECK(os.str() == "lane,x,y\n1,-3,0\n1,0,0\n2,2,5\n");
}
