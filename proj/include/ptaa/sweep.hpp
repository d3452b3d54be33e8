#ifndef PTAA_SWEEP_HPP
#define PTAA_SWEEP_HPP

#include <span>
#include <vector>

#include "ptaa/spectral.hpp"

namespace ptaa {

struct ButterflyRecord {
    double beta = 0.0;
    std::vector<cdouble> eigenvalues; // sorted (Re, Im), one full spectrum
};

struct ButterflyDataset {
    std::vector<ButterflyRecord> records; // grid order
    double beta_min = 0.0;
    double beta_max = 1.0;
    int steps = 0;
};

/// Inclusive uniform grid with `steps` points; steps == 1 gives {beta_min}.
std::vector<double> make_beta_grid(double beta_min, double beta_max, int steps);

/// Resolves a worker count: `requested` if positive, else all hardware
/// threads, in both cases capped by the PT_AUBRY_THREADS env var when set.
int sweep_thread_count(int requested = 0);

/// One eigensolve per grid point, OpenMP-parallel over points. Records land
/// at their grid index, so the result is byte-identical for any thread
/// count. A failed point aborts the sweep with EigError naming its beta.
ButterflyDataset butterfly_sweep(const LatticeParams& tmpl,
                                 std::span<const double> beta_grid,
                                 int threads = 0);

/// Plain serial loop kept as the reference implementation; the parallel
/// sweep is tested against it and benchmarked in tools/bench.
ButterflyDataset butterfly_sweep_serial(const LatticeParams& tmpl,
                                        std::span<const double> beta_grid);

} // namespace ptaa

#endif
