// Timing comparison of the serial reference sweep against the OpenMP one,
// plus an RK4 propagation timing. Run: ptaa-bench [n_sites] [beta_steps]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "ptaa/dynamics.hpp"
#include "ptaa/sweep.hpp"

namespace {

using clock_type = std::chrono::high_resolution_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int n_sites = 50;
    int steps = 400;
    if (argc > 1) n_sites = std::atoi(argv[1]);
    if (argc > 2) steps = std::atoi(argv[2]);
    if (n_sites < 2 || steps < 1) {
        std::fprintf(stderr, "usage: ptaa-bench [n_sites >= 2] [beta_steps >= 1]\n");
        return 1;
    }

    ptaa::LatticeParams params;
    params.n_sites = n_sites;
    params.potential_amp = 0.0;
    params.gain_amp = 2.0;

    const std::vector<double> grid = ptaa::make_beta_grid(0.0, 1.0, steps);
    const int threads = ptaa::sweep_thread_count();

    std::printf("butterfly sweep: n=%d, %d beta points, %d threads\n", n_sites, steps,
                threads);

    auto t0 = clock_type::now();
    const ptaa::ButterflyDataset serial = ptaa::butterfly_sweep_serial(params, grid);
    const double t_serial = seconds_since(t0);
    std::printf("  serial   %8.3f s\n", t_serial);

    t0 = clock_type::now();
    const ptaa::ButterflyDataset parallel = ptaa::butterfly_sweep(params, grid);
    const double t_parallel = seconds_since(t0);
    std::printf("  parallel %8.3f s   speedup %.2fx\n", t_parallel,
                t_serial / t_parallel);

    // spot check: identical grids must give identical spectra bit for bit
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        if (serial.records[i].eigenvalues != parallel.records[i].eigenvalues) {
            std::fprintf(stderr, "mismatch at grid point %zu\n", i);
            return 1;
        }
    }

    params.gain_amp = 2.0;
    params.potential_amp = 4.0;
    params.drive_freq = 3.0;
    const ptaa::StateVector initial = ptaa::delta_state(n_sites, (n_sites + 1) / 2);
    t0 = clock_type::now();
    const ptaa::Trajectory traj =
        ptaa::propagate(params, initial, 10.0, ptaa::default_step_size(params), 100);
    std::printf("rk4 propagation: z=10, dz=%g, %zu samples  %8.3f s\n",
                ptaa::default_step_size(params), traj.samples.size(), seconds_since(t0));
    return 0;
}
