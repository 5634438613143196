#include "v2vsf/link_analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "v2vsf/quadrature.hpp"

namespace v2vsf::link {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double RadioConfig::free_space_c() const {
    const double lw = wavelength();
    return lw * lw / (16.0 * kPi * kPi * d0_m * d0_m);
}

double RadioConfig::rho() const {
    if (!(pt_w > 0.0)) throw std::invalid_argument("RadioConfig: pt_w must be > 0");
    return noise_w / (pt_w * free_space_c());
}

void RadioConfig::validate() const {
    if (!(pt_w > 0.0)) throw std::invalid_argument("RadioConfig: pt_w must be > 0");
    if (noise_w < 0.0) throw std::invalid_argument("RadioConfig: noise_w must be >= 0");
    if (!(freq_hz > 0.0)) throw std::invalid_argument("RadioConfig: freq_hz must be > 0");
    if (!(d0_m > 0.0)) throw std::invalid_argument("RadioConfig: d0_m must be > 0");
    if (!(alpha > 1.0))
        throw std::invalid_argument("RadioConfig: alpha must be > 1 (interference integrals diverge)");
}

double target_sinr(double rate_bps, double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("target_sinr: bandwidth must be > 0");
    if (rate_bps < 0.0) throw std::invalid_argument("target_sinr: rate must be >= 0");
    return std::exp2(rate_bps / bandwidth_hz) - 1.0;
}

double mh_from_sf(double sigma) {
    if (sigma < 0.0 || sigma > 1.0) throw std::invalid_argument("mh_from_sf: sigma in [0,1]");
    if (sigma == 1.0) return std::numeric_limits<double>::infinity();
    return sigma / (1.0 - sigma);
}

double sf_from_mh(double mh) {
    if (mh < 0.0) throw std::invalid_argument("sf_from_mh: mh must be >= 0");
    if (std::isinf(mh)) return 1.0;
    return mh / (1.0 + mh);
}

LinkTarget LinkTarget::from_sigma(double sigma) {
    LinkTarget t;
    t.sigma = sigma;
    t.gamma_t = mh_from_sf(sigma);
    return t;
}

LinkTarget LinkTarget::from_rate(double rate_bps, double bandwidth_hz) {
    LinkTarget t;
    t.rate_bps = rate_bps;
    t.bandwidth_hz = bandwidth_hz;
    t.gamma_t = target_sinr(rate_bps, bandwidth_hz);
    t.sigma = sf_from_mh(t.gamma_t);
    return t;
}

void LaneGeometry::validate() const {
    lane1.validate();
    lane2.validate();
    layout.validate();
}

double ppp_tail_integral(double lambda, double a, double alpha) {
    if (!(alpha > 1.0)) throw std::invalid_argument("ppp_tail_integral: alpha must be > 1");
    return lambda * std::pow(a, 1.0 - alpha) / (alpha - 1.0);
}

double interference_i1(double lambda_p, double d_1, double alpha) {
    if (!(alpha > 1.0)) throw std::invalid_argument("interference_i1: alpha must be > 1");
    const double l1 = hardcore::first_order_density(lambda_p, d_1);
    const auto transient = [&](double r) {
        return hardcore::second_order_density(lambda_p, d_1, r) * std::pow(r, -alpha) / l1;
    };
    return quad::integrate(transient, d_1, 2.0 * d_1) + ppp_tail_integral(l1, 2.0 * d_1, alpha);
}

namespace {

// int_{lo}^{inf} ((r1 + r_d)^2 + w_l^2)^{-alpha/2} dr_d via u = 1/(r1 + r_d):
// finite-interval integrand u^{alpha-2} (1 + w_l^2 u^2)^{-alpha/2}.
double path_loss_tail(double r1, double lo, double w_l, double alpha,
                      const quad::QuadOptions& opts = {}) {
    const auto h = [&](double u) {
        return std::pow(u, alpha - 2.0) * std::pow(1.0 + w_l * w_l * u * u, -alpha / 2.0);
    };
    return quad::integrate(h, 0.0, 1.0 / (r1 + lo), opts);
}

}  // namespace

double interference_i2(double lambda_p, double d_2, double w_l, double alpha) {
    if (!(alpha > 1.0)) throw std::invalid_argument("interference_i2: alpha must be > 1");
    const double l2 = hardcore::first_order_density(lambda_p, d_2);
    const double lr = lanes::lambda_r(l2, d_2);
    const quad::QuadOptions inner_opts{1e-12, 1e-10, 4000};

    // Inner integral over the interferer gap r_d: pair-density transient on
    // (d_2, 2 d_2), flat lambda_2^2 from 2 d_2 on.
    const auto inner = [&](double r1) {
        const auto transient = [&](double rd) {
            return hardcore::second_order_density(lambda_p, d_2, rd) / l2 *
                   std::pow((r1 + rd) * (r1 + rd) + w_l * w_l, -alpha / 2.0);
        };
        return quad::integrate(transient, d_2, 2.0 * d_2, inner_opts) +
               l2 * path_loss_tail(r1, 2.0 * d_2, w_l, alpha, inner_opts);
    };

    const lanes::DistanceModel fx(l2, d_2, w_l, lanes::AntennaCase::c1_semicircle);
    const auto outer = [&](double r1) { return fx.pdf_horizontal(r1) * inner(r1); };
    const double bulk = quad::integrate(outer, 0.0, fx.tail_start(), fx.breakpoints());
    const double tail = fx.tail_coefficient() *
                        quad::integrate_exp_tail(inner, fx.tail_start(), lr);
    return bulk + tail;
}

LinkModel::LinkModel(lanes::AntennaCase antenna, const RadioConfig& radio,
                     const LaneGeometry& geometry, bool renormalize_c2)
    : antenna_(antenna),
      radio_(radio),
      geometry_(geometry),
      distance_(hardcore::first_order_density(geometry.lane2.lambda_p, geometry.lane2.hard_core()),
                geometry.lane2.hard_core(), geometry.layout.w_l, antenna, renormalize_c2) {
    radio_.validate();
    geometry_.validate();

    constants_.i1 = interference_i1(geometry_.lane1.lambda_p, geometry_.lane1.hard_core(),
                                    radio_.alpha);
    constants_.i2 = interference_i2(geometry_.lane2.lambda_p, geometry_.lane2.hard_core(),
                                    geometry_.layout.w_l, radio_.alpha);
    constants_.beta = antenna_ == lanes::AntennaCase::c1_semicircle ? 1.0 : 2.0;
    rho_ = radio_.rho();

    const double wl = geometry_.layout.w_l, alpha = radio_.alpha;
    const auto r_alpha = [&](double x) { return std::pow(x * x + wl * wl, alpha / 2.0); };
    const auto weighted = [&](double x) { return r_alpha(x) * distance_.pdf_horizontal(x); };
    moment_r_alpha_ =
        quad::integrate(weighted, 0.0, distance_.tail_start(), distance_.breakpoints()) +
        distance_.tail_coefficient() *
            quad::integrate_exp_tail(r_alpha, distance_.tail_start(), distance_.tail_rate());
}

double LinkModel::exponent_coefficient(double gamma_t, double rho) const {
    return gamma_t * (rho + constants_.sum());
}

double LinkModel::coverage_with_rho(double gamma_t, double rho) const {
    if (gamma_t < 0.0) throw std::invalid_argument("coverage_ccdf: gamma_t must be >= 0");
    const double k = exponent_coefficient(gamma_t, rho);
    const double wl = geometry_.layout.w_l, alpha = radio_.alpha;
    const auto atten = [&](double x) {
        return std::exp(-k * std::pow(x * x + wl * wl, alpha / 2.0));
    };
    const auto weighted = [&](double x) { return atten(x) * distance_.pdf_horizontal(x); };
    const double bulk =
        quad::integrate(weighted, 0.0, distance_.tail_start(), distance_.breakpoints());
    const double tail = distance_.tail_coefficient() *
                        quad::integrate_exp_tail(atten, distance_.tail_start(),
                                                 distance_.tail_rate());
    const double v = bulk + tail;
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

double LinkModel::coverage_ccdf(double gamma_t) const { return coverage_with_rho(gamma_t, rho_); }

double LinkModel::sf_ccdf(double sigma) const {
    if (sigma < 0.0 || sigma >= 1.0) throw std::invalid_argument("sf_ccdf: sigma must be in [0,1)");
    return coverage_ccdf(mh_from_sf(sigma));
}

double LinkModel::approx_small(double gamma_t, bool* clamped) const {
    if (gamma_t < 0.0) throw std::invalid_argument("approx_small: gamma_t must be >= 0");
    const double raw = 1.0 - exponent_coefficient(gamma_t, rho_) * moment_r_alpha_;
    if (clamped) *clamped = raw < 0.0;
    return raw < 0.0 ? 0.0 : raw;
}

double LinkModel::approx_large(double gamma_t) const {
    if (gamma_t < 0.0) throw std::invalid_argument("approx_large: gamma_t must be >= 0");
    const double k = exponent_coefficient(gamma_t, rho_);
    const double wl = geometry_.layout.w_l, alpha = radio_.alpha;
    const double l2 = distance_.lambda_2();
    const auto f = [&](double x) {
        return l2 * std::exp(-k * std::pow(x * x + wl * wl, alpha / 2.0));
    };
    return quad::integrate(f, 0.0, distance_.d_2());
}

double LinkModel::upper_limit(double sigma) const {
    if (sigma < 0.0 || sigma >= 1.0)
        throw std::invalid_argument("upper_limit: sigma must be in [0,1)");
    return coverage_with_rho(mh_from_sf(sigma), 0.0);
}

double LinkModel::sf_ccdf_with_rho(double sigma, double rho) const {
    if (sigma < 0.0 || sigma >= 1.0)
        throw std::invalid_argument("sf_ccdf_with_rho: sigma must be in [0,1)");
    if (rho < 0.0) throw std::invalid_argument("sf_ccdf_with_rho: rho must be >= 0");
    return coverage_with_rho(mh_from_sf(sigma), rho);
}

}  // namespace v2vsf::link
