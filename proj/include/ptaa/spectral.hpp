#ifndef PTAA_SPECTRAL_HPP
#define PTAA_SPECTRAL_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ptaa/lattice.hpp"

namespace ptaa {

/// Eigenvalues sorted lexicographically by (Re, Im).
struct ComplexSpectrum {
    std::vector<cdouble> eigenvalues;
    LatticeParams source_params;
};

ComplexSpectrum eig(const Hamiltonian& h);

/// Spectrum plus right eigenvectors (columns match eigenvalue order).
/// Each pair is residual-checked: ||H v - E v|| <= 1e-10 ||H||_F or EigError.
struct EigPairs {
    ComplexSpectrum spectrum;
    Eigen::MatrixXcd vectors;
    double max_residual = 0.0;
};

EigPairs eig_full(const Hamiltonian& h);

double spectral_radius(const ComplexSpectrum& s);

/// Reality cutoff eps_real = 1e-8 * max(1, spectral radius).
/// Scales with the spectrum so "real" means the same thing at J=1 and J=1e6.
double reality_threshold(const ComplexSpectrum& s);

struct SpectrumAnalytics {
    double max_imag = 0.0;
    double real_width = 0.0; // max Re - min Re
    bool is_real = false;    // max_imag <= eps_real
    /// Gaps (right edge of band k, left edge of band k+1) between clusters of
    /// sorted real parts; a gap is a consecutive spacing exceeding
    /// max(10 * median spacing, eps_real).
    std::vector<std::pair<double, double>> band_gaps;
};

SpectrumAnalytics analyze(const ComplexSpectrum& s);

/// PT-breaking threshold search result. gamma_pt is the bisection midpoint
/// of the final bracket [gamma_low, gamma_high].
struct ThresholdResult {
    double gamma_pt = 0.0;
    double gamma_low = 0.0;
    double gamma_high = 0.0;
    double tolerance = 0.0;
    int evaluations = 0;
    /// Spectrum still real at gamma_max: threshold lies at or above the cap.
    bool bracket_exhausted = false;
    /// Post-hoc 10-point scan saw real/broken out of order, so the
    /// reported threshold may not be the only crossing.
    bool monotone_warning = false;
};

/// Bisects gamma0 in [0, gamma_max] for the smallest gain amplitude with a
/// non-real spectrum, holding every other parameter fixed. The template's
/// own gain_amp is ignored. Throws NumericalError if the spectrum is
/// already non-real at gamma0 = 0, or if the bisection exceeds 60
/// eigensolves before reaching tol.
ThresholdResult find_gamma_pt(const LatticeParams& tmpl, double gamma_max,
                              double tol, int threads = 0);

} // namespace ptaa

#endif
