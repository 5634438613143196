// Throughput comparison of the OpenMP campaign against the serial reference,
// plus the batch pattern sampler. Usage: bench_campaign [trials] [patterns].

#include <chrono>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "v2vsf/monte_carlo.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t trials = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
    const std::size_t patterns = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2000;

    v2vsf::mc::SimConfig cfg;
    cfg.trials = trials;
    cfg.seed = 42;
    cfg.geometry.lane1 = {0.1, 5.0, 145.0};
    cfg.geometry.lane2 = cfg.geometry.lane1;
    cfg.geometry.layout = {5.0};
    cfg.radio = {1.0, 1e-12, 5e9, 1.0, 4.0};
    cfg.sigma_grid = v2vsf::default_sigma_grid();

#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (built without OpenMP)\n";
#endif

    auto t0 = Clock::now();
    const auto serial = v2vsf::mc::run_campaign_serial(cfg);
    const double ts = seconds_since(t0);
    std::cout << "campaign serial : " << trials << " trials in " << ts << " s ("
              << trials / ts << " trials/s)\n";

    t0 = Clock::now();
    const auto parallel = v2vsf::mc::run_campaign(cfg);
    const double tp = seconds_since(t0);
    std::cout << "campaign openmp : " << trials << " trials in " << tp << " s ("
              << trials / tp << " trials/s)  speedup x" << ts / tp << "\n";

    const double sup = v2vsf::sup_distance(serial, parallel);
    std::cout << "curve agreement : sup|serial-openmp| = " << sup
              << (sup == 0.0 ? " (bit-identical)" : " (MISMATCH)") << "\n";

    const v2vsf::hardcore::Window1D window{-5000.0, 5000.0};
    t0 = Clock::now();
    const auto batch_serial =
        v2vsf::hardcore::sample_mhcp_batch_serial(0.2, 50.0, window, 7, patterns);
    const double bs = seconds_since(t0);
    t0 = Clock::now();
    const auto batch_parallel = v2vsf::hardcore::sample_mhcp_batch(0.2, 50.0, window, 7, patterns);
    const double bp = seconds_since(t0);
    std::cout << "batch serial    : " << patterns << " patterns in " << bs << " s\n";
    std::cout << "batch openmp    : " << patterns << " patterns in " << bp << " s  speedup x"
              << bs / bp << "\n";

    bool same = batch_serial.size() == batch_parallel.size();
    for (std::size_t i = 0; same && i < batch_serial.size(); ++i)
        same = batch_serial[i].points == batch_parallel[i].points;
    std::cout << "batch agreement : " << (same ? "bit-identical" : "MISMATCH") << "\n";
    return same && sup == 0.0 ? 0 : 1;
}
