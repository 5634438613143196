#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace v2vsf::quad {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_intervals = 4000;
};

// Raised when the adaptive scheme cannot reach the requested tolerance.
class IntegrationError : public std::runtime_error {
public:
    explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7,K15) on [a,b].
double integrate(const Fn& f, double a, double b, const QuadOptions& opts = {});

// Same, but the interval is pre-split at the given interior breakpoints
// (branch boundaries of piecewise integrands; points outside (a,b) are
// ignored).
double integrate(const Fn& f, double a, double b, std::span<const double> breakpoints,
                 const QuadOptions& opts = {});

// ∫_a^∞ e^{-rate·x} g(x) dx for rate > 0, via the exact substitution
// t = e^{-rate·x} which maps the tail onto (0, e^{-rate·a}].
double integrate_exp_tail(const Fn& g, double a, double rate, const QuadOptions& opts = {});

// ∫_a^∞ f(x) dx for integrands decaying at least like x^{-2}, via u = 1/x
// (requires a > 0).
double integrate_power_tail(const Fn& f, double a, const QuadOptions& opts = {});

}  // namespace v2vsf::quad
