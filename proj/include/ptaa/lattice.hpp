#ifndef PTAA_LATTICE_HPP
#define PTAA_LATTICE_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ptaa/common.hpp"

namespace ptaa {

/// Incommensuration parameter of the cosine/sine on-site modulation.
/// Keeps the exact p/q form around when the caller supplied one, so
/// rational sweeps and output echoes stay exact.
class Beta {
  public:
    Beta() : Beta(golden()) {}

    static Beta real(double value);
    static Beta fraction(long long p, long long q); // reduced to lowest terms
    static Beta golden();                           // (sqrt(5)-1)/2

    double value() const { return value_; }
    bool is_fraction() const { return rational_; }
    long long num() const; // throws std::logic_error unless is_fraction()
    long long den() const;

    /// "p/q" for fractions, "golden" for the golden ratio, else full-precision decimal.
    std::string str() const;

  private:
    // factories build on this one; the public default constructor delegates
    // to golden(), so using it inside a factory would recurse
    struct Raw {};
    explicit Beta(Raw) {}

    double value_ = 0.0;
    long long num_ = 0;
    long long den_ = 0;
    bool rational_ = false;
    bool golden_ = false;
};

/// Full parameter set for the non-Hermitian tight-binding chain
///   i dc_n/dz = -J (c_{n+1} + c_{n-1}) + i gamma_n c_n
/// with on-site profile
///   d_n = V cos(2 pi beta n + phi_N) + i gamma0 sin(2 pi beta n + phi_N),
/// open ends, sites n = 1..N.
struct LatticeParams {
    int n_sites = 50;
    double hopping = 1.0;       // J > 0
    double potential_amp = 0.0; // V >= 0
    double gain_amp = 1.0;      // gamma0, may be any sign
    Beta beta{};
    double phi0 = 0.0;       // must be an integer multiple of pi
    double drive_freq = 0.0; // omega; 0 means static profile

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Balanced modulation phase phi_N = -pi beta (N + 1) + phi0.
/// This choice pairs site n with site N+1-n so gain cancels loss exactly.
double phase_offset(int n_sites, double beta, double phi0);
double phase_offset(const LatticeParams& params);

/// Complex on-site energies d_n, n = 1..N (stored 0-based).
struct OnSiteProfile {
    std::vector<cdouble> values;
    double phase_offset = 0.0;
};

/// Evaluates the profile in the centered form
///   arg_n = pi beta (2n - N - 1) + phi0
/// which makes the mirror pair arguments exact negations of each other,
/// so check_pt_symmetry holds to machine precision, not just O(eps*N).
OnSiteProfile build_profile(const LatticeParams& params);

struct PtCheck {
    bool symmetric = false;
    double max_violation = 0.0; // max_n |d_{N+1-n} - conj(d_n)|
    double tolerance = 0.0;
};

/// PT condition d_{N+1-n} = conj(d_n); tolerance 1e-12 * (scale + 1).
PtCheck check_pt_symmetry(const OnSiteProfile& profile, double scale);
/// Same with scale = |V| + |gamma0| taken from the parameters.
PtCheck check_pt_symmetry(const OnSiteProfile& profile, const LatticeParams& params);

/// Dense N x N matrix H with H_{n,n+1} = H_{n+1,n} = -J and
/// H_{nn} = Re d_n + i * z_phase * Im d_n, where z_phase = cos(2 pi omega z).
/// The drive only modulates the anti-Hermitian (gain/loss) part.
struct Hamiltonian {
    Eigen::MatrixXcd matrix;
    LatticeParams params;
    double z = 0.0;
    double z_phase = 1.0;
};

Hamiltonian build_hamiltonian(const LatticeParams& params, double z = 0.0);

} // namespace ptaa

#endif
