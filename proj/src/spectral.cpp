#include "ptaa/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <omp.h>

#include "ptaa/sweep.hpp"

namespace ptaa {

namespace {

bool lex_less(const cdouble& a, const cdouble& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

std::string dim_note(const Hamiltonian& h) {
    std::ostringstream os;
    os << "dim=" << h.matrix.rows() << ", |H|_F=" << h.matrix.norm();
    return os.str();
}

} // namespace

ComplexSpectrum eig(const Hamiltonian& h) {
    if (h.matrix.rows() != h.matrix.cols() || h.matrix.rows() < 1) {
        throw std::invalid_argument("eig: matrix must be square and non-empty");
    }
    if (!h.matrix.allFinite()) {
        throw EigError("eig: non-finite Hamiltonian entries (" + dim_note(h) + ")");
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h.matrix, false);
    if (solver.info() != Eigen::Success) {
        throw EigError("eig: QR iteration failed to converge (" + dim_note(h) + ")");
    }
    ComplexSpectrum out;
    out.source_params = h.params;
    out.eigenvalues.assign(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), lex_less);
    return out;
}

EigPairs eig_full(const Hamiltonian& h) {
    if (h.matrix.rows() != h.matrix.cols() || h.matrix.rows() < 1) {
        throw std::invalid_argument("eig_full: matrix must be square and non-empty");
    }
    if (!h.matrix.allFinite()) {
        throw EigError("eig_full: non-finite Hamiltonian entries (" + dim_note(h) + ")");
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h.matrix, true);
    if (solver.info() != Eigen::Success) {
        throw EigError("eig_full: QR iteration failed to converge (" + dim_note(h) + ")");
    }

    const Eigen::Index n = h.matrix.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return lex_less(solver.eigenvalues()(a), solver.eigenvalues()(b));
    });

    EigPairs out;
    out.spectrum.source_params = h.params;
    out.spectrum.eigenvalues.resize(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.spectrum.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(order[static_cast<std::size_t>(k)]);
        out.vectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
    }

    const double h_norm = h.matrix.norm();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double res = (h.matrix * out.vectors.col(k) -
                            out.spectrum.eigenvalues[static_cast<std::size_t>(k)] * out.vectors.col(k))
                               .norm();
        out.max_residual = std::max(out.max_residual, res);
    }
    if (out.max_residual > 1e-10 * h_norm) {
        std::ostringstream os;
        os << "eig_full: residual " << out.max_residual << " exceeds 1e-10 * |H|_F = "
           << 1e-10 * h_norm << " (" << dim_note(h) << ")";
        throw EigError(os.str());
    }
    return out;
}

double spectral_radius(const ComplexSpectrum& s) {
    double r = 0.0;
    for (const cdouble& e : s.eigenvalues) r = std::max(r, std::abs(e));
    return r;
}

double reality_threshold(const ComplexSpectrum& s) {
    return 1e-8 * std::max(1.0, spectral_radius(s));
}

SpectrumAnalytics analyze(const ComplexSpectrum& s) {
    if (s.eigenvalues.empty()) {
        throw std::invalid_argument("analyze: empty spectrum");
    }
    SpectrumAnalytics out;
    for (const cdouble& e : s.eigenvalues) {
        out.max_imag = std::max(out.max_imag, std::abs(e.imag()));
    }
    // eigenvalues are (Re, Im)-sorted, so real parts are already ordered
    const double re_min = s.eigenvalues.front().real();
    const double re_max = s.eigenvalues.back().real();
    out.real_width = re_max - re_min;

    const double eps = reality_threshold(s);
    out.is_real = out.max_imag <= eps;

    const std::size_t n = s.eigenvalues.size();
    if (n >= 3) {
        std::vector<double> spacings(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            spacings[i] = s.eigenvalues[i + 1].real() - s.eigenvalues[i].real();
        }
        std::vector<double> sorted = spacings;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t m = sorted.size();
        const double median = (m % 2 == 1)
                                  ? sorted[m / 2]
                                  : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
        const double cutoff = std::max(10.0 * median, eps);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (spacings[i] > cutoff) {
                out.band_gaps.emplace_back(s.eigenvalues[i].real(),
                                           s.eigenvalues[i + 1].real());
            }
        }
    }
    return out;
}

ThresholdResult find_gamma_pt(const LatticeParams& tmpl, double gamma_max,
                              double tol, int threads) {
    LatticeParams base = tmpl;
    base.gain_amp = 0.0;
    base.validate();
    if (!std::isfinite(gamma_max) || gamma_max <= 0.0) {
        throw std::invalid_argument("find_gamma_pt: gamma_max must be > 0");
    }
    if (!std::isfinite(tol) || tol <= 0.0) {
        throw std::invalid_argument("find_gamma_pt: tol must be > 0");
    }

    ThresholdResult out;
    out.tolerance = tol;

    auto broken = [&](double g) {
        LatticeParams p = base;
        p.gain_amp = g;
        const ComplexSpectrum s = eig(build_hamiltonian(p));
        SpectrumAnalytics a = analyze(s);
        return !a.is_real;
    };

    if (broken(0.0)) {
        throw NumericalError(
            "find_gamma_pt: spectrum is not real at gamma0 = 0; no threshold to bracket");
    }
    ++out.evaluations;

    const bool top_broken = broken(gamma_max);
    ++out.evaluations;

    if (!top_broken) {
        out.bracket_exhausted = true;
        out.gamma_pt = gamma_max;
        out.gamma_low = gamma_max;
        out.gamma_high = gamma_max;
    } else {
        double lo = 0.0;  // real here
        double hi = gamma_max; // broken here
        int bisect_evals = 0;
        while (hi - lo > tol) {
            if (bisect_evals >= 60) {
                std::ostringstream os;
                os << "find_gamma_pt: 60-evaluation cap hit with bracket ["
                   << lo << ", " << hi << "], tol=" << tol;
                throw NumericalError(os.str());
            }
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break; // bracket at floating-point resolution
            if (broken(mid)) hi = mid;
            else lo = mid;
            ++bisect_evals;
            ++out.evaluations;
        }
        out.gamma_low = lo;
        out.gamma_high = hi;
        out.gamma_pt = 0.5 * (lo + hi);
    }

    // coarse post-hoc scan; any broken point below a real point means the
    // real/broken boundary is not a single crossing and the bisection answer
    // should be treated with care
    constexpr int scan_points = 10;
    std::array<int, scan_points> flags{}; // 1 broken, 0 real, -1 failed
    std::array<std::string, scan_points> errors;
    const int nt = sweep_thread_count(threads);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int i = 0; i < scan_points; ++i) {
        try {
            const double g = gamma_max * static_cast<double>(i + 1) / scan_points;
            flags[static_cast<std::size_t>(i)] = broken(g) ? 1 : 0;
        } catch (const std::exception& e) {
            flags[static_cast<std::size_t>(i)] = -1;
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
    for (int i = 0; i < scan_points; ++i) {
        if (flags[static_cast<std::size_t>(i)] < 0) {
            throw EigError("find_gamma_pt: scan point failed: " + errors[static_cast<std::size_t>(i)]);
        }
    }
    out.evaluations += scan_points;
    bool seen_broken = false;
    for (int i = 0; i < scan_points; ++i) {
        const bool b = flags[static_cast<std::size_t>(i)] == 1;
        if (seen_broken && !b) out.monotone_warning = true;
        seen_broken = seen_broken || b;
    }
    return out;
}

} // namespace ptaa
