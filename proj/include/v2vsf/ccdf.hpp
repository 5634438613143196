#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "v2vsf/lane_geometry.hpp"

namespace v2vsf {

enum class CurveKind { analytic, monte_carlo, baseline_ppp, approx_f1, approx_f2 };

const char* to_string(CurveKind k);

struct CurveMeta {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t discarded = 0;
    double window_half_length = 0.0;
    double c2_mass = 1.0;        // numeric mass of the un-normalized c2 pdf
    bool clamped = false;        // an approx_f1 value was clamped into [0,1]
    std::string config_snapshot;

    double discard_rate() const {
        return trials == 0 ? 0.0 : static_cast<double>(discarded) / static_cast<double>(trials);
    }
};

// A sampled CCDF over a sigma grid, analytic or empirical.
struct CcdfCurve {
    std::vector<double> grid;    // sigma values in [0,1)
    std::vector<double> values;  // probabilities in [0,1]
    CurveKind kind = CurveKind::analytic;
    lanes::AntennaCase antenna = lanes::AntennaCase::c1_semicircle;
    CurveMeta meta;
};

// Default grid: sigma = 0 plus log-spaced MH values in [mh_min, mh_max]
// mapped back through sigma = m/(1+m), so both CCDF tails are resolved.
std::vector<double> default_sigma_grid(std::size_t points = 199, double mh_min = 1e-2,
                                       double mh_max = 1e2);

// Empirical CCDF of `samples` evaluated at each grid sigma (strict >).
std::vector<double> empirical_ccdf(std::vector<double> samples, const std::vector<double>& grid);

// sup-norm distance between two curves on a shared grid.
double sup_distance(const CcdfCurve& a, const CcdfCurve& b);

}  // namespace v2vsf
