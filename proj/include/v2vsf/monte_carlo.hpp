#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "v2vsf/ccdf.hpp"
#include "v2vsf/link_analysis.hpp"

namespace v2vsf::mc {

struct SimConfig {
    std::size_t trials = 100000;
    double half_length = 4000.0;  // simulation window [-L, L], m
    std::uint64_t seed = 1;
    lanes::AntennaCase antenna = lanes::AntennaCase::c1_semicircle;
    link::LaneGeometry geometry;
    link::RadioConfig radio;
    std::vector<double> sigma_grid;

    void validate() const;
};

struct TrialOutcome {
    double signal = 0.0;        // S, relative to P_t C
    double interference = 0.0;  // aggregate over both lanes, server excluded
    double sinr = 0.0;          // S / (I + rho); +inf when I + rho == 0
    double sf = 0.0;            // sinr/(sinr+1), in [0,1)
    bool clamped = false;       // sf clamped below 1 (infinite sinr)
};

// One link-level draw on a deployed field: unit-mean exponential fading per
// link, 2D distances with the lane offset, the typical vehicle (origin) and
// the server excluded from interference, c1 restricted to x > 0.
// Returns nullopt when no serving vehicle exists under the case restriction.
std::optional<TrialOutcome> simulate_trial(const lanes::VehicleField& field,
                                           const link::RadioConfig& radio,
                                           lanes::AntennaCase antenna, rng::Stream& rng);

// Empirical SF CCDF from `trials` independent fields. Trial i draws from a
// stream derived from (seed, i), so curves are identical for any worker
// count; the _serial twin is the reference implementation.
CcdfCurve run_campaign(const SimConfig& config);
CcdfCurve run_campaign_serial(const SimConfig& config);

// Same analytic pipeline with the hard-core process replaced by a PPP of
// equal density: flat pair density lambda^2 beyond the hard core and an
// exponential nearest-distance pdf.
CcdfCurve baseline_ppp_ccdf(const SimConfig& config);

// Analytic curve on the same grid, for side-by-side tables.
CcdfCurve analytic_ccdf(const SimConfig& config, bool renormalize_c2 = true);

}  // namespace v2vsf::mc
