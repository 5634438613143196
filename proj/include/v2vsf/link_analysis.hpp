#pragma once

#include <limits>
#include <memory>

#include "v2vsf/hardcore.hpp"
#include "v2vsf/lane_geometry.hpp"

namespace v2vsf::link {

struct RadioConfig {
    double pt_w = 1.0;        // transmit power, W
    double noise_w = 1e-12;   // noise power, W
    double freq_hz = 5e9;     // carrier frequency, Hz
    double d0_m = 1.0;        // reference distance, m
    double alpha = 4.0;       // path-loss exponent

    double wavelength() const { return 299792458.0 / freq_hz; }
    // Free-space constant at the reference distance, lambda_w^2/(16 pi^2 d0^2).
    double free_space_c() const;
    // Noise normalized by P_t * C; the only way noise enters the analysis.
    double rho() const;
    void validate() const;
};

// SINR threshold from a Shannon rate target: 2^{R_t/B} - 1.
double target_sinr(double rate_bps, double bandwidth_hz);

// Signal-fraction <-> SINR-like scale: m = sigma/(1-sigma), sigma = m/(1+m).
double mh_from_sf(double sigma);  // sigma = 1 maps to +inf
double sf_from_mh(double mh);

struct LinkTarget {
    double gamma_t = 0.0;     // linear SINR threshold
    double sigma = 0.0;       // SF threshold in [0,1)
    double rate_bps = 0.0;
    double bandwidth_hz = 0.0;

    static LinkTarget from_sigma(double sigma);
    static LinkTarget from_rate(double rate_bps, double bandwidth_hz);
};

struct LaneGeometry {
    hardcore::HardCoreConfig lane1, lane2;
    lanes::LaneLayout layout;
    void validate() const;
};

struct InterferenceConstants {
    double i1 = 0.0;   // own-lane mean interference integral, m^-alpha
    double i2 = 0.0;   // adjacent-lane mean interference integral, m^-alpha
    double beta = 1.0; // 1 for c1, 2 for c2
    double sum() const { return beta * (i1 + i2); }
};

// Mean own-lane interference seen from a retained point: the pair-density
// transient integrated over (d1, 2d1) plus the flat-tail closed form
// lambda_1 (2 d1)^{1-alpha}/(alpha-1).
double interference_i1(double lambda_p, double d_1, double alpha);

// Closed-form flat tail of a power-law interference integral,
// lambda * a^{1-alpha}/(alpha-1); also the whole own-lane constant for a
// replacement PPP of density lambda starting at a.
double ppp_tail_integral(double lambda, double a, double alpha);

// Mean adjacent-lane interference beyond the serving vehicle: interferers at
// horizontal gap r_d > d_2 from the server located at r1, averaged over the
// c1 serving-distance pdf.
double interference_i2(double lambda_p, double d_2, double w_l, double alpha);

// Analytic model for one antenna case: caches the interference constants and
// the serving-distance pdf once per configuration. All evaluations are pure.
class LinkModel {
public:
    LinkModel(lanes::AntennaCase antenna, const RadioConfig& radio, const LaneGeometry& geometry,
              bool renormalize_c2 = true);

    // CCDF of SINR at threshold gamma_t, integrated in the x-domain:
    // int_0^inf exp(-gamma_t (rho + beta (I1+I2)) (x^2+w_l^2)^{alpha/2}) f_x(x) dx.
    double coverage_ccdf(double gamma_t) const;

    // CCDF of the signal fraction: coverage_ccdf(sigma/(1-sigma)).
    double sf_ccdf(double sigma) const;

    // Small-threshold linearization 1 - gamma_t K E[r^alpha], clamped to
    // [0,1]; `clamped` reports when clamping fired.
    double approx_small(double gamma_t, bool* clamped = nullptr) const;

    // Uniform-segment truncation: lambda_2 int_0^{d_2} exp(...) dx.
    double approx_large(double gamma_t) const;

    // sf_ccdf with rho forced to 0 (noise-free upper limit; independent of
    // P_t and N).
    double upper_limit(double sigma) const;

    // Evaluation at an explicit normalized noise (power sweeps reuse the
    // cached interference constants; only rho changes with P_t).
    double sf_ccdf_with_rho(double sigma, double rho) const;

    const InterferenceConstants& constants() const { return constants_; }
    const lanes::DistanceModel& distance_model() const { return distance_; }
    const RadioConfig& radio() const { return radio_; }
    double rho() const { return rho_; }
    lanes::AntennaCase antenna() const { return antenna_; }

private:
    double exponent_coefficient(double gamma_t, double rho) const;
    double coverage_with_rho(double gamma_t, double rho) const;

    lanes::AntennaCase antenna_;
    RadioConfig radio_;
    LaneGeometry geometry_;
    lanes::DistanceModel distance_;
    InterferenceConstants constants_;
    double rho_ = 0.0;
    double moment_r_alpha_ = 0.0;  // E[(x^2+w_l^2)^{alpha/2}] under f_x
};

}  // namespace v2vsf::link
