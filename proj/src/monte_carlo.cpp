#include "v2vsf/monte_carlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "v2vsf/quadrature.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace v2vsf::mc {

void SimConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
    geometry.validate();
    radio.validate();
    const double dmax = std::max(geometry.lane1.hard_core(), geometry.lane2.hard_core());
    if (!(half_length >= 10.0 * dmax))
        throw std::invalid_argument("SimConfig: half_length must cover >= 10 hard-core distances");
    if (sigma_grid.empty()) throw std::invalid_argument("SimConfig: empty sigma grid");
}

std::optional<TrialOutcome> simulate_trial(const lanes::VehicleField& field,
                                           const link::RadioConfig& radio,
                                           lanes::AntennaCase antenna, rng::Stream& rng) {
    const auto x_nv = lanes::nearest_vehicle(field, antenna);
    if (!x_nv) return std::nullopt;

    const double alpha = radio.alpha;
    const double wl = field.layout.w_l;
    const bool front_only = antenna == lanes::AntennaCase::c1_semicircle;

    TrialOutcome out;
    const double r_serve = std::sqrt(*x_nv * *x_nv + wl * wl);
    out.signal = rng.exponential() * std::pow(r_serve, -alpha);

    double interference = 0.0;
    for (double x : field.lane1.points) {
        if (x == 0.0) continue;  // the typical vehicle itself
        if (front_only && x <= 0.0) continue;
        interference += rng.exponential() * std::pow(std::fabs(x), -alpha);
    }
    for (double x : field.lane2.points) {
        if (x == *x_nv) continue;  // the server
        if (front_only && x <= 0.0) continue;
        interference += rng.exponential() * std::pow(std::sqrt(x * x + wl * wl), -alpha);
    }
    out.interference = interference;

    const double denom = interference + radio.rho();
    out.sinr = denom > 0.0 ? out.signal / denom : std::numeric_limits<double>::infinity();
    if (std::isinf(out.sinr)) {
        out.sf = std::nextafter(1.0, 0.0);
        out.clamped = true;
    } else {
        out.sf = out.sinr / (out.sinr + 1.0);
    }
    return out;
}

namespace {

CcdfCurve campaign_impl(const SimConfig& config, bool parallel) {
    config.validate();

    std::vector<double> sf(config.trials, std::numeric_limits<double>::quiet_NaN());
    const auto one_trial = [&](std::size_t i) {
        rng::Stream stream(rng::derive_seed(config.seed, i));
        const lanes::VehicleField field =
            lanes::deploy_field(config.geometry.lane1, config.geometry.lane2,
                                config.geometry.layout, config.half_length, stream);
        if (auto outcome = simulate_trial(field, config.radio, config.antenna, stream))
            sf[i] = outcome->sf;
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32)
#endif
        for (long long i = 0; i < static_cast<long long>(config.trials); ++i)
            one_trial(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < config.trials; ++i) one_trial(i);
    }

    std::vector<double> valid;
    valid.reserve(sf.size());
    for (double v : sf)
        if (!std::isnan(v)) valid.push_back(v);

    CcdfCurve curve;
    curve.grid = config.sigma_grid;
    curve.values = empirical_ccdf(valid, curve.grid);
    curve.kind = CurveKind::monte_carlo;
    curve.antenna = config.antenna;
    curve.meta.seed = config.seed;
    curve.meta.trials = config.trials;
    curve.meta.discarded = config.trials - valid.size();
    curve.meta.window_half_length = config.half_length;
    if (curve.meta.discard_rate() > 0.20)
        curve.meta.config_snapshot += "[warning: discard rate > 20%]";
    return curve;
}

}  // namespace

CcdfCurve run_campaign(const SimConfig& config) { return campaign_impl(config, true); }

CcdfCurve run_campaign_serial(const SimConfig& config) { return campaign_impl(config, false); }

CcdfCurve baseline_ppp_ccdf(const SimConfig& config) {
    config.validate();
    const auto& geo = config.geometry;
    const double alpha = config.radio.alpha;
    const double wl = geo.layout.w_l;
    const double d1 = geo.lane1.hard_core(), d2 = geo.lane2.hard_core();
    const double l1 = hardcore::first_order_density(geo.lane1.lambda_p, d1);
    const double l2 = hardcore::first_order_density(geo.lane2.lambda_p, d2);

    // Flat pair density lambda^2 all the way down to the hard core.
    const double i1 = link::ppp_tail_integral(l1, d1, alpha);

    // Adjacent lane: exponential nearest-distance pdf (one-sided law for the
    // averaging, matching the analytic model's use of the c1 pdf).
    const auto inner = [&](double r1) {
        const auto h = [&](double u) {
            return std::pow(u, alpha - 2.0) * std::pow(1.0 + wl * wl * u * u, -alpha / 2.0);
        };
        return l2 * quad::integrate(h, 0.0, 1.0 / (r1 + d2));
    };
    const double i2 =
        l2 * quad::integrate_exp_tail([&](double r1) { return inner(r1); }, 0.0, l2);

    const double beta = config.antenna == lanes::AntennaCase::c1_semicircle ? 1.0 : 2.0;
    const double base = config.radio.rho() + beta * (i1 + i2);
    const double lam_nv = config.antenna == lanes::AntennaCase::c1_semicircle ? l2 : 2.0 * l2;

    CcdfCurve curve;
    curve.grid = config.sigma_grid;
    curve.kind = CurveKind::baseline_ppp;
    curve.antenna = config.antenna;
    curve.values.reserve(curve.grid.size());
    for (double sigma : curve.grid) {
        const double k = link::mh_from_sf(sigma) * base;
        const auto atten = [&](double x) {
            return std::exp(-k * std::pow(x * x + wl * wl, alpha / 2.0));
        };
        double v = lam_nv * quad::integrate_exp_tail(atten, 0.0, lam_nv);
        curve.values.push_back(v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v));
    }
    return curve;
}

CcdfCurve analytic_ccdf(const SimConfig& config, bool renormalize_c2) {
    config.validate();
    const link::LinkModel model(config.antenna, config.radio, config.geometry, renormalize_c2);
    CcdfCurve curve;
    curve.grid = config.sigma_grid;
    curve.kind = CurveKind::analytic;
    curve.antenna = config.antenna;
    curve.meta.c2_mass = model.distance_model().mass();
    curve.values.reserve(curve.grid.size());
    for (double sigma : curve.grid) curve.values.push_back(model.sf_ccdf(sigma));
    return curve;
}

}  // namespace v2vsf::mc
