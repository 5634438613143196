#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "v2vsf/hardcore.hpp"
#include "v2vsf/rng.hpp"

namespace v2vsf::lanes {

// c1: semicircle antenna, reception restricted to x > 0.
// c2: omnidirectional antenna, full line.
enum class AntennaCase { c1_semicircle, c2_omni };

const char* to_string(AntennaCase c);

struct LaneLayout {
    double w_l = 5.0;  // inter-lane distance, m (two lanes)
    void validate() const;
};

// Two-lane deployment with the typical (receiving) vehicle pinned at the
// origin of lane 1.
struct VehicleField {
    hardcore::PointSet1D lane1;  // contains coordinate 0 (the typical vehicle)
    hardcore::PointSet1D lane2;  // y offset = w_l
    LaneLayout layout;
    hardcore::HardCoreConfig config1, config2;
};

// Palm-conditioned deployment: lane 1 is sampled on a doubled window, a
// retained point is chosen uniformly among those in [-L, L], and the lane is
// translated so that point sits at 0; lane 2 is sampled independently on
// [-L, L]. Emits a warning (stderr, once) when lambda_p * d < 1. Throws after
// bounded retries if lane 1 thins to empty.
VehicleField deploy_field(const hardcore::HardCoreConfig& lane1_cfg,
                          const hardcore::HardCoreConfig& lane2_cfg, const LaneLayout& layout,
                          double half_length, rng::Stream& rng);

// x-coordinate of the serving vehicle: the lane-2 point minimizing |x| over
// the case-restricted set (c1 keeps only x > 0). Empty candidate set yields
// nullopt (caller discards the trial).
std::optional<double> nearest_vehicle(const VehicleField& field, AntennaCase antenna);

// Exponential-tail rate of the nearest-vehicle distance pdf,
// ln(2 / ((lambda_2 d_2 - 2)^2 - 2)) / (2 d_2).
double lambda_r(double lambda_2, double d_2);

// Mass of the nearest-vehicle distance within [0, 2 d_2]:
// 2 - (2 - lambda_2 d_2)^2 / 2.
double cdf_within_two_d(double lambda_2, double d_2);

// Upper bound on the probability that the one-point and void conditions of
// the transient pdf branch overlap; decreasing in lambda_p * d_2.
// Valid for d_2 < r1 <= 2 d_2.
double overlap_probability_bound(double lambda_p, double d_2, double r1);

// Closed-form pdf of the horizontal serving distance (signed |x| for c2),
// piecewise: a uniform segment, a transient branch, and an exponential tail.
class DistanceModel {
public:
    DistanceModel(double lambda_2, double d_2, double w_l, AntennaCase antenna,
                  bool renormalize = true);

    double pdf_horizontal(double r1) const;  // density of |x_NV|, m^-1
    double pdf_comm_distance(double r) const;  // density of sqrt(x^2 + w_l^2), 0 for r <= w_l

    // Piecewise structure, for quadrature in the x-domain.
    std::vector<double> breakpoints() const;  // interior branch boundaries
    double tail_start() const;                // last breakpoint
    double tail_rate() const;                 // decay rate of the last branch
    double tail_coefficient() const;          // pdf(x) = coef * e^{-rate x} past tail_start

    double lambda_2() const { return lambda_2_; }
    double d_2() const { return d_2_; }
    double w_l() const { return w_l_; }
    double lambda_r() const { return lambda_r_; }
    AntennaCase antenna() const { return antenna_; }
    bool renormalized() const { return renormalize_; }
    // Numeric mass of the un-normalized pdf (exactly 1 for c1 by
    // construction; recorded for c2).
    double mass() const { return mass_; }

private:
    double pdf_raw(double r1) const;

    double lambda_2_, d_2_, w_l_, lambda_r_;
    AntennaCase antenna_;
    bool renormalize_;
    double mass_ = 1.0;
};

// Signed nearest-vehicle samples from lane-2-only deployments (the serving
// distance does not depend on lane 1). One sample per non-discarded trial;
// `discarded` counts empty candidate sets. Deterministic for any worker
// count; the _serial twin is the reference implementation.
std::vector<double> sample_nv_distances(const hardcore::HardCoreConfig& lane2_cfg,
                                        AntennaCase antenna, double half_length,
                                        std::size_t trials, std::uint64_t master_seed,
                                        std::size_t* discarded = nullptr);
std::vector<double> sample_nv_distances_serial(const hardcore::HardCoreConfig& lane2_cfg,
                                               AntennaCase antenna, double half_length,
                                               std::size_t trials, std::uint64_t master_seed,
                                               std::size_t* discarded = nullptr);

// Debug dump: `lane,x,y` rows.
void write_field_csv(std::ostream& os, const VehicleField& field);

}  // namespace v2vsf::lanes
