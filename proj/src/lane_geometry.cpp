#include "v2vsf/lane_geometry.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "v2vsf/quadrature.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace v2vsf::lanes {

const char* to_string(AntennaCase c) {
    return c == AntennaCase::c1_semicircle ? "c1" : "c2";
}

void LaneLayout::validate() const {
    if (!(w_l > 0.0)) throw std::invalid_argument("LaneLayout: w_l must be > 0");
}

VehicleField deploy_field(const hardcore::HardCoreConfig& lane1_cfg,
                          const hardcore::HardCoreConfig& lane2_cfg, const LaneLayout& layout,
                          double half_length, rng::Stream& rng) {
    lane1_cfg.validate();
    lane2_cfg.validate();
    layout.validate();
    if (!(half_length > 0.0)) throw std::invalid_argument("deploy_field: half_length must be > 0");

    if (!lane1_cfg.heavy_traffic() || !lane2_cfg.heavy_traffic()) {
        static bool warned = false;
        if (!warned) {
            warned = true;
            std::cerr << "warning: lambda_p * d < 1 (light traffic); the analytic "
                         "distance model is derived for heavy traffic\n";
        }
    }

    const double L = half_length;
    const double d1 = lane1_cfg.hard_core();

    VehicleField field;
    field.layout = layout;
    field.config1 = lane1_cfg;
    field.config2 = lane2_cfg;

    // Lane 1 on a doubled window so that, after translating the chosen point
    // to the origin, [-L, L] is still fully covered.
    constexpr int kMaxRetries = 64;
    bool placed = false;
    for (int attempt = 0; attempt < kMaxRetries && !placed; ++attempt) {
        hardcore::PointSet1D wide =
            hardcore::sample_mhcp(lane1_cfg.lambda_p, d1, {-2.0 * L, 2.0 * L}, rng);

        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < wide.size(); ++i)
            if (std::fabs(wide.points[i]) <= L) candidates.push_back(i);
        if (candidates.empty()) continue;

        const double x0 = wide.points[candidates[rng.uniform_index(candidates.size())]];
        field.lane1.window = {-L, L};
        for (std::size_t i = 0; i < wide.size(); ++i) {
            const double x = wide.points[i] - x0;
            if (std::fabs(x) <= L) {
                field.lane1.points.push_back(x);
                field.lane1.marks.push_back(wide.marks[i]);
            }
        }
        placed = true;
    }
    if (!placed)
        throw std::runtime_error("deploy_field: lane 1 repeatedly thinned to empty; "
                                 "increase the window or density");

    field.lane2 = hardcore::sample_mhcp(lane2_cfg.lambda_p, lane2_cfg.hard_core(), {-L, L}, rng);
    return field;
}

std::optional<double> nearest_vehicle(const VehicleField& field, AntennaCase antenna) {
    const auto& xs = field.lane2.points;
    std::optional<double> best;
    for (double x : xs) {
        if (antenna == AntennaCase::c1_semicircle && x <= 0.0) continue;
        if (!best || std::fabs(x) < std::fabs(*best) ||
            (std::fabs(x) == std::fabs(*best) && x > *best))
            best = x;
    }
    return best;
}

double lambda_r(double lambda_2, double d_2) {
    const double q = (lambda_2 * d_2 - 2.0) * (lambda_2 * d_2 - 2.0) - 2.0;
    if (!(q > 0.0)) throw std::invalid_argument("lambda_r: requires (lambda_2 d_2 - 2)^2 > 2");
    return std::log(2.0 / q) / (2.0 * d_2);
}

double cdf_within_two_d(double lambda_2, double d_2) {
    const double u = 2.0 - lambda_2 * d_2;
    return 2.0 - u * u / 2.0;
}

double overlap_probability_bound(double lambda_p, double d_2, double r1) {
    if (lambda_p < 0.0) throw std::invalid_argument("overlap_probability_bound: lambda_p >= 0");
    if (!(d_2 < r1) || !(r1 <= 2.0 * d_2))
        throw std::invalid_argument("overlap_probability_bound: requires d_2 < r1 <= 2 d_2");
    const double a = lambda_p * (r1 - d_2);
    const auto outer = [&](double m) {
        const auto inner = [&](double m2) { return std::exp(-(1.0 - m2) * a); };
        return std::exp(-(1.0 - m) * lambda_p * d_2) * quad::integrate(inner, 0.0, m);
    };
    return quad::integrate(outer, 0.0, 1.0);
}

DistanceModel::DistanceModel(double lambda_2, double d_2, double w_l, AntennaCase antenna,
                             bool renormalize)
    : lambda_2_(lambda_2), d_2_(d_2), w_l_(w_l), antenna_(antenna), renormalize_(renormalize) {
    if (!(lambda_2 > 0.0) || !(d_2 > 0.0))
        throw std::invalid_argument("DistanceModel: lambda_2 and d_2 must be > 0");
    if (!(w_l > 0.0)) throw std::invalid_argument("DistanceModel: w_l must be > 0");
    const double prod = lambda_2 * d_2;
    if (!(prod < 0.5 + 1e-12))
        throw std::invalid_argument("DistanceModel: requires lambda_2 * d_2 <= 1/2");
    lambda_r_ = lanes::lambda_r(lambda_2, d_2);  // also checks (prod-2)^2 - 2 > 0

    if (antenna_ == AntennaCase::c2_omni) {
        // The printed c2 pdf is not guaranteed to integrate to 1; record its
        // numeric mass and optionally renormalize.
        const auto f = [this](double x) { return pdf_raw(x); };
        const double bulk = quad::integrate(f, 0.0, tail_start(),
                                            std::vector<double>{d_2_ / 2.0});
        mass_ = bulk + tail_coefficient() / tail_rate() *
                           std::exp(-tail_rate() * tail_start());
    }
}

double DistanceModel::pdf_raw(double r1) const {
    if (r1 <= 0.0) return 0.0;
    if (antenna_ == AntennaCase::c1_semicircle) {
        if (r1 <= d_2_) return lambda_2_;
        if (r1 <= 2.0 * d_2_) return lambda_2_ * (1.0 - lambda_2_ * (r1 - d_2_));
        return lambda_r_ * std::exp(-lambda_r_ * r1);
    }
    // omnidirectional: pdf of |x_NV|
    const double l2 = lambda_2_, d2 = d_2_, lr = lambda_r_;
    if (r1 <= d2 / 2.0) return 2.0 * l2;
    if (r1 <= 1.5 * d2) {
        const double pre = 2.0 * l2 * (1.0 + l2 * d2 / 2.0 - l2 * r1) / (1.0 - l2 * d2);
        const double poly = 1.5 * l2 * d2 - 3.0 * l2 * l2 * d2 * d2 / 8.0 +
                            std::exp(-2.0 * lr * d2) - (l2 + l2 * l2 * d2 / 2.0) * r1 +
                            l2 * l2 * r1 * r1 / 2.0;
        return pre * poly;
    }
    return 2.0 * lr * std::exp(-lr * (2.0 * r1 + d2)) / (1.0 - l2 * d2);
}

double DistanceModel::pdf_horizontal(double r1) const {
    if (!(r1 > 0.0)) throw std::invalid_argument("pdf_horizontal: r1 must be > 0");
    const double f = pdf_raw(r1);
    return renormalize_ ? f / mass_ : f;
}

double DistanceModel::pdf_comm_distance(double r) const {
    if (r <= w_l_) return 0.0;
    const double x = std::sqrt(r * r - w_l_ * w_l_);
    return r / x * pdf_horizontal(x);
}

std::vector<double> DistanceModel::breakpoints() const {
    if (antenna_ == AntennaCase::c1_semicircle) return {d_2_, 2.0 * d_2_};
    return {d_2_ / 2.0, 1.5 * d_2_};
}

double DistanceModel::tail_start() const {
    return antenna_ == AntennaCase::c1_semicircle ? 2.0 * d_2_ : 1.5 * d_2_;
}

double DistanceModel::tail_rate() const {
    return antenna_ == AntennaCase::c1_semicircle ? lambda_r_ : 2.0 * lambda_r_;
}

double DistanceModel::tail_coefficient() const {
    double coef = antenna_ == AntennaCase::c1_semicircle
                      ? lambda_r_
                      : 2.0 * lambda_r_ * std::exp(-lambda_r_ * d_2_) / (1.0 - lambda_2_ * d_2_);
    return renormalize_ ? coef / mass_ : coef;
}

namespace {

std::vector<double> nv_impl(const hardcore::HardCoreConfig& cfg, AntennaCase antenna,
                            double half_length, std::size_t trials, std::uint64_t master_seed,
                            std::size_t* discarded, bool parallel) {
    cfg.validate();
    const double d = cfg.hard_core();
    std::vector<double> samples(trials, std::numeric_limits<double>::quiet_NaN());

    const auto one_trial = [&](std::size_t i) {
        rng::Stream stream(rng::derive_seed(master_seed, i));
        VehicleField f;
        f.lane2 = hardcore::sample_mhcp(cfg.lambda_p, d, {-half_length, half_length}, stream);
        if (auto x = nearest_vehicle(f, antenna)) samples[i] = *x;
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
        for (long long i = 0; i < static_cast<long long>(trials); ++i)
            one_trial(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < trials; ++i) one_trial(i);
    }

    std::vector<double> out;
    out.reserve(trials);
    std::size_t miss = 0;
    for (double v : samples) {
        if (std::isnan(v)) ++miss;
        else out.push_back(v);
    }
    if (discarded) *discarded = miss;
    return out;
}

}  // namespace

std::vector<double> sample_nv_distances(const hardcore::HardCoreConfig& lane2_cfg,
                                        AntennaCase antenna, double half_length,
                                        std::size_t trials, std::uint64_t master_seed,
                                        std::size_t* discarded) {
    return nv_impl(lane2_cfg, antenna, half_length, trials, master_seed, discarded, true);
}

std::vector<double> sample_nv_distances_serial(const hardcore::HardCoreConfig& lane2_cfg,
                                               AntennaCase antenna, double half_length,
                                               std::size_t trials, std::uint64_t master_seed,
                                               std::size_t* discarded) {
    return nv_impl(lane2_cfg, antenna, half_length, trials, master_seed, discarded, false);
}

void write_field_csv(std::ostream& os, const VehicleField& field) {
    os << "lane,x,y\n";
    for (double x : field.lane1.points) os << "1," << x << ",0\n";
    for (double x : field.lane2.points) os << "2," << x << ',' << field.layout.w_l << '\n';
}

}  // namespace v2vsf::lanes
