#include "v2vsf/ccdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "v2vsf/link_analysis.hpp"

namespace v2vsf {

const char* to_string(CurveKind k) {
    switch (k) {
        case CurveKind::analytic: return "analytic";
        case CurveKind::monte_carlo: return "monte-carlo";
        case CurveKind::baseline_ppp: return "baseline-ppp";
        case CurveKind::approx_f1: return "approx-F1";
        case CurveKind::approx_f2: return "approx-F2";
    }
    return "?";
}

std::vector<double> default_sigma_grid(std::size_t points, double mh_min, double mh_max) {
    if (points < 3) throw std::invalid_argument("default_sigma_grid: need >= 3 points");
    if (!(mh_min > 0.0) || !(mh_max > mh_min))
        throw std::invalid_argument("default_sigma_grid: need 0 < mh_min < mh_max");
    std::vector<double> grid;
    grid.reserve(points);
    grid.push_back(0.0);
    const std::size_t n = points - 1;
    const double step = std::log(mh_max / mh_min) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        grid.push_back(link::sf_from_mh(mh_min * std::exp(step * static_cast<double>(i))));
    return grid;
}

std::vector<double> empirical_ccdf(std::vector<double> samples, const std::vector<double>& grid) {
    if (samples.empty()) throw std::invalid_argument("empirical_ccdf: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    std::vector<double> out;
    out.reserve(grid.size());
    for (double s : grid) {
        const auto it = std::upper_bound(samples.begin(), samples.end(), s);
        out.push_back(static_cast<double>(samples.end() - it) / n);
    }
    return out;
}

double sup_distance(const CcdfCurve& a, const CcdfCurve& b) {
    if (a.grid.size() != b.grid.size())
        throw std::invalid_argument("sup_distance: mismatched grids");
    double sup = 0.0;
    for (std::size_t i = 0; i < a.grid.size(); ++i)
        sup = std::max(sup, std::fabs(a.values[i] - b.values[i]));
    return sup;
}

}  // namespace v2vsf
