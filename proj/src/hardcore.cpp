#include "v2vsf/hardcore.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace v2vsf::hardcore {

void Window1D::validate() const {
    if (!(lo < hi)) throw std::invalid_argument("Window1D: requires lo < hi");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("Window1D: bounds must be finite");
}

void PointSet1D::validate() const {
    if (marks.size() != points.size())
        throw std::invalid_argument("PointSet1D: one mark per point required");
    window.validate();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] < window.lo || points[i] > window.hi)
            throw std::invalid_argument("PointSet1D: point outside window");
        if (i > 0 && !(points[i - 1] < points[i]))
            throw std::invalid_argument("PointSet1D: points must be strictly increasing");
        if (marks[i] < 0.0 || marks[i] > 1.0)
            throw std::invalid_argument("PointSet1D: mark outside [0,1]");
    }
}

void HardCoreConfig::validate() const {
    if (!(lambda_p > 0.0)) throw std::invalid_argument("HardCoreConfig: lambda_p must be > 0");
    if (!(d_v > 0.0)) throw std::invalid_argument("HardCoreConfig: d_v must be > 0");
    if (d_s < 0.0) throw std::invalid_argument("HardCoreConfig: d_s must be >= 0");
}

PointSet1D sample_ppp(double lambda_p, const Window1D& window, rng::Stream& rng) {
    if (!(lambda_p > 0.0)) throw std::invalid_argument("sample_ppp: lambda_p must be > 0");
    window.validate();

    PointSet1D out;
    out.window = window;
    out.points.reserve(static_cast<std::size_t>(lambda_p * window.length() * 1.25) + 8);
    out.marks.reserve(out.points.capacity());

    // Exponential spacings give the sorted pattern directly.
    double x = window.lo;
    for (;;) {
        x += rng.exponential() / lambda_p;
        if (x >= window.hi) break;
        out.points.push_back(x);
        out.marks.push_back(rng.uniform01());
    }
    return out;
}

PointSet1D matern_thin(const PointSet1D& generating, double d) {
    if (!(d > 0.0)) throw std::invalid_argument("matern_thin: d must be > 0");
    if (generating.marks.size() != generating.points.size())
        throw std::invalid_argument("matern_thin: generating pattern is missing marks");

    const auto& xs = generating.points;
    const auto& ms = generating.marks;
    const std::size_t n = xs.size();

    PointSet1D out;
    out.window = generating.window;
    out.points.reserve(n / 2 + 1);
    out.marks.reserve(n / 2 + 1);

    // beats(i, j): does i survive the competition against j?
    const auto beats = [&](std::size_t i, std::size_t j) {
        if (ms[i] != ms[j]) return ms[i] > ms[j];
        return xs[i] < xs[j];  // deterministic tie-break
    };

    for (std::size_t i = 0; i < n; ++i) {
        bool keep = true;
        for (std::size_t j = i; j-- > 0 && xs[i] - xs[j] <= d;) {
            if (!beats(i, j)) { keep = false; break; }
        }
        if (keep) {
            for (std::size_t j = i + 1; j < n && xs[j] - xs[i] <= d; ++j) {
                if (!beats(i, j)) { keep = false; break; }
            }
        }
        if (keep) {
            out.points.push_back(xs[i]);
            out.marks.push_back(ms[i]);
        }
    }
    return out;
}

PointSet1D sample_mhcp(double lambda_p, double d, const Window1D& window, rng::Stream& rng) {
    const Window1D buffered{window.lo - d, window.hi + d};
    PointSet1D thinned = matern_thin(sample_ppp(lambda_p, buffered, rng), d);

    PointSet1D out;
    out.window = window;
    for (std::size_t i = 0; i < thinned.size(); ++i) {
        const double x = thinned.points[i];
        if (x >= window.lo && x <= window.hi) {
            out.points.push_back(x);
            out.marks.push_back(thinned.marks[i]);
        }
    }
    return out;
}

double first_order_density(double lambda_p, double d) {
    if (!(lambda_p > 0.0) || !(d > 0.0))
        throw std::invalid_argument("first_order_density: lambda_p and d must be > 0");
    return -std::expm1(-2.0 * lambda_p * d) / (2.0 * d);
}

double second_order_density(double lambda_p, double d, double r) {
    if (r < 0.0) throw std::invalid_argument("second_order_density: r must be >= 0");
    const double li = first_order_density(lambda_p, d);
    if (r <= d) return 0.0;
    if (r < 2.0 * d)
        return 2.0 * li / r + 2.0 * std::expm1(-lambda_p * (2.0 * d + r)) / (r * (2.0 * d + r));
    return li * li;
}

DensityEstimate estimate_densities(std::span<const PointSet1D> patterns, double bin_width,
                                   double r_max) {
    if (patterns.empty()) throw std::invalid_argument("estimate_densities: no patterns");
    if (!(bin_width > 0.0)) throw std::invalid_argument("estimate_densities: bin_width must be > 0");
    if (!(r_max > bin_width)) throw std::invalid_argument("estimate_densities: r_max too small");

    const std::size_t nbins = static_cast<std::size_t>(std::ceil(r_max / bin_width - 1e-9));
    DensityEstimate est;
    est.bin_width = bin_width;
    est.bin_lo.resize(nbins);
    for (std::size_t b = 0; b < nbins; ++b) est.bin_lo[b] = static_cast<double>(b) * bin_width;
    std::vector<double> counts(nbins, 0.0);

    double total_points = 0.0, total_length = 0.0, eroded_length = 0.0;
    for (const auto& pat : patterns) {
        total_points += static_cast<double>(pat.size());
        total_length += pat.window.length();
        const double elo = pat.window.lo + r_max, ehi = pat.window.hi - r_max;
        if (!(elo < ehi))
            throw std::invalid_argument("estimate_densities: window shorter than 2*r_max");
        eroded_length += ehi - elo;

        const auto& xs = pat.points;
        const std::size_t n = xs.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (xs[i] < elo || xs[i] > ehi) continue;  // minus-sampling
            est.reference_points++;
            for (std::size_t j = i + 1; j < n; ++j) {
                const double gap = xs[j] - xs[i];
                if (gap >= r_max) break;
                counts[static_cast<std::size_t>(gap / bin_width)] += 1.0;
            }
            for (std::size_t j = i; j-- > 0;) {
                const double gap = xs[i] - xs[j];
                if (gap >= r_max) break;
                counts[static_cast<std::size_t>(gap / bin_width)] += 1.0;
            }
        }
    }

    est.first_order = total_points / total_length;
    est.pair_density.resize(nbins);
    // Ordered pairs from both sides of each reference point: the intensity
    // measure of one bin is 2 * bin_width * eroded_length.
    for (std::size_t b = 0; b < nbins; ++b)
        est.pair_density[b] = counts[b] / (2.0 * bin_width * eroded_length);
    return est;
}

std::vector<PointSet1D> sample_mhcp_batch(double lambda_p, double d, const Window1D& window,
                                          std::uint64_t master_seed, std::size_t count) {
    std::vector<PointSet1D> out(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        rng::Stream stream(rng::derive_seed(master_seed, static_cast<std::uint64_t>(i)));
        out[static_cast<std::size_t>(i)] = sample_mhcp(lambda_p, d, window, stream);
    }
    return out;
}

std::vector<PointSet1D> sample_mhcp_batch_serial(double lambda_p, double d,
                                                 const Window1D& window,
                                                 std::uint64_t master_seed, std::size_t count) {
    std::vector<PointSet1D> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        rng::Stream stream(rng::derive_seed(master_seed, i));
        out[i] = sample_mhcp(lambda_p, d, window, stream);
    }
    return out;
}

void write_pattern_csv(std::ostream& os, const PointSet1D& pattern) {
    os << "index,coordinate,mark\n";
    for (std::size_t i = 0; i < pattern.size(); ++i)
        os << i << ',' << pattern.points[i] << ',' << pattern.marks[i] << '\n';
}

}  // namespace v2vsf::hardcore
