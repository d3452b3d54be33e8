#include "ptaa/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include <omp.h>

namespace ptaa {

std::vector<double> make_beta_grid(double beta_min, double beta_max, int steps) {
    if (!std::isfinite(beta_min) || !std::isfinite(beta_max) ||
        beta_min < 0.0 || beta_max > 1.0 || beta_min > beta_max) {
        throw std::invalid_argument("make_beta_grid: need 0 <= beta_min <= beta_max <= 1");
    }
    if (steps < 1) throw std::invalid_argument("make_beta_grid: steps must be >= 1");
    if (steps == 1) return {beta_min};
    std::vector<double> grid(static_cast<std::size_t>(steps));
    const double span = beta_max - beta_min;
    for (int i = 0; i < steps; ++i) {
        grid[static_cast<std::size_t>(i)] =
            beta_min + span * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    grid.back() = beta_max; // exact endpoint regardless of rounding
    return grid;
}

int sweep_thread_count(int requested) {
    int cap = omp_get_max_threads();
    if (const char* env = std::getenv("PT_AUBRY_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            cap = std::min<long>(cap, v);
        }
    }
    int t = requested > 0 ? std::min(requested, cap) : cap;
    return std::max(1, t);
}

namespace {

ButterflyRecord sweep_point(const LatticeParams& tmpl, double beta) {
    LatticeParams p = tmpl;
    p.beta = Beta::real(beta);
    ButterflyRecord rec;
    rec.beta = beta;
    rec.eigenvalues = eig(build_hamiltonian(p)).eigenvalues;
    return rec;
}

void check_grid(std::span<const double> grid) {
    if (grid.empty()) throw std::invalid_argument("butterfly_sweep: empty beta grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || grid[i] < 0.0 || grid[i] > 1.0) {
            std::ostringstream os;
            os << "butterfly_sweep: beta grid point " << i << " = " << grid[i]
               << " outside [0, 1]";
            throw std::invalid_argument(os.str());
        }
    }
}

} // namespace

ButterflyDataset butterfly_sweep(const LatticeParams& tmpl,
                                 std::span<const double> beta_grid, int threads) {
    tmpl.validate();
    check_grid(beta_grid);
    const int n = static_cast<int>(beta_grid.size());
    const int nt = sweep_thread_count(threads);

    ButterflyDataset out;
    out.records.resize(static_cast<std::size_t>(n));
    out.beta_min = beta_grid.front();
    out.beta_max = beta_grid.back();
    out.steps = n;

    // workers write only their own slot; errors are collected and the first
    // one (in grid order) is rethrown after the loop so the report is
    // deterministic too
    std::vector<std::string> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int i = 0; i < n; ++i) {
        try {
            out.records[static_cast<std::size_t>(i)] = sweep_point(tmpl, beta_grid[static_cast<std::size_t>(i)]);
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!errors[static_cast<std::size_t>(i)].empty()) {
            std::ostringstream os;
            os << "butterfly_sweep: beta=" << beta_grid[static_cast<std::size_t>(i)]
               << ": " << errors[static_cast<std::size_t>(i)];
            throw EigError(os.str());
        }
    }
    return out;
}

ButterflyDataset butterfly_sweep_serial(const LatticeParams& tmpl,
                                        std::span<const double> beta_grid) {
    tmpl.validate();
    check_grid(beta_grid);

    ButterflyDataset out;
    out.records.resize(beta_grid.size());
    out.beta_min = beta_grid.front();
    out.beta_max = beta_grid.back();
    out.steps = static_cast<int>(beta_grid.size());
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
        out.records[i] = sweep_point(tmpl, beta_grid[i]);
    }
    return out;
}

} // namespace ptaa
