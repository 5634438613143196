#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "v2vsf/rng.hpp"

namespace v2vsf::hardcore {

struct Window1D {
    double lo = 0.0;  // m
    double hi = 0.0;  // m

    double length() const { return hi - lo; }
    void validate() const;
};

// Marked, sorted 1D point pattern on a finite window. The same type carries
// a generating Poisson pattern and its hard-core thinning (marks travel with
// the retained points).
struct PointSet1D {
    std::vector<double> points;  // strictly increasing, within window
    std::vector<double> marks;   // in [0,1], one per point
    Window1D window;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    void validate() const;
};

struct HardCoreConfig {
    double lambda_p = 0.0;  // generating density, m^-1
    double d_v = 0.0;       // vehicle length, m
    double d_s = 0.0;       // safety distance, m

    double hard_core() const { return d_v + d_s; }
    bool heavy_traffic() const { return lambda_p * hard_core() >= 1.0; }
    void validate() const;
};

// Homogeneous PPP on `window` with i.i.d. uniform marks. Points are produced
// already sorted (exponential spacings), count ~ Poisson(lambda_p |window|).
PointSet1D sample_ppp(double lambda_p, const Window1D& window, rng::Stream& rng);

// Dependent thinning: a point survives iff its mark beats every mark within
// the closed ball of radius d. Mark ties (measure zero) go to the lower
// coordinate. Retained points keep pairwise gaps > d.
PointSet1D matern_thin(const PointSet1D& generating, double d);

// Hard-core pattern on `window` free of boundary thinning bias: generates on
// the d-buffered window, thins, then crops.
PointSet1D sample_mhcp(double lambda_p, double d, const Window1D& window, rng::Stream& rng);

// Retained density of the thinned process: (1 - e^{-2 lambda_p d}) / (2d).
double first_order_density(double lambda_p, double d);

// Ordered-pair density at separation r: 0 inside the hard core, a transient
// branch on (d, 2d), and the squared retained density from 2d on.
double second_order_density(double lambda_p, double d, double r);

struct DensityEstimate {
    double first_order = 0.0;            // total count / total window length
    double bin_width = 0.0;              // m
    std::vector<double> bin_lo;          // left bin edges, bins cover (0, r_max]
    std::vector<double> pair_density;    // m^-2, one per bin
    std::size_t reference_points = 0;    // points used after window erosion
};

// Binned pair-density estimator with minus-sampling edge correction:
// reference points are restricted to the window eroded by r_max on both
// sides so every neighbour within r_max is observed.
DensityEstimate estimate_densities(std::span<const PointSet1D> patterns, double bin_width,
                                   double r_max);

// Batch of independent hard-core patterns; realization i uses the stream
// derived from (master_seed, i), so the result is identical for any worker
// count. The _serial twin is the reference implementation.
std::vector<PointSet1D> sample_mhcp_batch(double lambda_p, double d, const Window1D& window,
                                          std::uint64_t master_seed, std::size_t count);
std::vector<PointSet1D> sample_mhcp_batch_serial(double lambda_p, double d,
                                                 const Window1D& window,
                                                 std::uint64_t master_seed, std::size_t count);

// Debug dump: `index,coordinate,mark` rows.
void write_pattern_csv(std::ostream& os, const PointSet1D& pattern);

}  // namespace v2vsf::hardcore
