#include "ptaa/lattice.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ptaa {

namespace {

[[noreturn]] void bad_param(const std::string& field, const std::string& why) {
    throw std::invalid_argument("LatticeParams: " + field + " " + why);
}

} // namespace

Beta Beta::real(double value) {
    if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
        throw std::invalid_argument("Beta: value must be finite in [0, 1]");
    }
    Beta b{Raw{}};
    b.value_ = value;
    b.rational_ = false;
    b.golden_ = false;
    return b;
}

Beta Beta::fraction(long long p, long long q) {
    if (q <= 0 || p < 0 || p > q) {
        throw std::invalid_argument("Beta: fraction must satisfy 0 <= p/q <= 1 with q > 0");
    }
    const long long g = std::gcd(p, q);
    Beta b{Raw{}};
    b.num_ = p / g;
    b.den_ = q / g;
    b.rational_ = true;
    b.golden_ = false;
    b.value_ = static_cast<double>(b.num_) / static_cast<double>(b.den_);
    return b;
}

Beta Beta::golden() {
    // (sqrt(5) - 1) / 2 through long double so the stored double is the
    // correctly rounded value of the exact constant
    Beta b{Raw{}};
    b.value_ = static_cast<double>((std::sqrt(5.0L) - 1.0L) / 2.0L);
    b.golden_ = true;
    return b;
}

long long Beta::num() const {
    if (!rational_) throw std::logic_error("Beta: num() on a non-fraction");
    return num_;
}

long long Beta::den() const {
    if (!rational_) throw std::logic_error("Beta: den() on a non-fraction");
    return den_;
}

std::string Beta::str() const {
    if (golden_) return "golden";
    if (rational_) return std::to_string(num_) + "/" + std::to_string(den_);
    std::ostringstream os;
    os.precision(17);
    os << value_;
    return os.str();
}

void LatticeParams::validate() const {
    if (n_sites < 2) bad_param("n_sites", "must be >= 2");
    if (!std::isfinite(hopping) || hopping <= 0.0) bad_param("hopping", "must be finite and > 0");
    if (!std::isfinite(potential_amp) || potential_amp < 0.0) {
        bad_param("potential_amp", "must be finite and >= 0");
    }
    if (!std::isfinite(gain_amp)) bad_param("gain_amp", "must be finite");
    if (!std::isfinite(beta.value()) || beta.value() < 0.0 || beta.value() > 1.0) {
        bad_param("beta", "must lie in [0, 1]");
    }
    if (!std::isfinite(phi0)) bad_param("phi0", "must be finite");
    // phi0 off the pi-lattice breaks the gain/loss balance silently, so it
    // is rejected rather than accepted with a warning
    if (std::abs(std::remainder(phi0, std::numbers::pi)) > 1e-12) {
        bad_param("phi0", "must be an integer multiple of pi");
    }
    if (!std::isfinite(drive_freq) || drive_freq < 0.0) {
        bad_param("drive_freq", "must be finite and >= 0");
    }
}

double phase_offset(int n_sites, double beta, double phi0) {
    if (n_sites < 1) throw std::invalid_argument("phase_offset: n_sites must be >= 1");
    return -std::numbers::pi * beta * static_cast<double>(n_sites + 1) + phi0;
}

double phase_offset(const LatticeParams& params) {
    params.validate();
    return phase_offset(params.n_sites, params.beta.value(), params.phi0);
}

OnSiteProfile build_profile(const LatticeParams& params) {
    params.validate();
    const int n = params.n_sites;
    const double b = params.beta.value();

    OnSiteProfile prof;
    prof.phase_offset = phase_offset(n, b, params.phi0);
    prof.values.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // 2 pi beta n + phi_N collapses to pi beta (2n - N - 1) + phi0; the
        // integer factor 2n - N - 1 flips sign exactly under n -> N+1-n
        const double m = static_cast<double>(2 * (i + 1) - n - 1);
        const double arg = std::numbers::pi * b * m + params.phi0;
        prof.values[static_cast<std::size_t>(i)] = {
            params.potential_amp * std::cos(arg),
            params.gain_amp * std::sin(arg),
        };
    }
    return prof;
}

PtCheck check_pt_symmetry(const OnSiteProfile& profile, double scale) {
    if (!std::isfinite(scale) || scale < 0.0) {
        throw std::invalid_argument("check_pt_symmetry: scale must be finite and >= 0");
    }
    PtCheck out;
    out.tolerance = 1e-12 * (scale + 1.0);
    const std::size_t n = profile.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cdouble diff = profile.values[n - 1 - i] - std::conj(profile.values[i]);
        out.max_violation = std::max(out.max_violation, std::abs(diff));
    }
    out.symmetric = out.max_violation <= out.tolerance;
    return out;
}

PtCheck check_pt_symmetry(const OnSiteProfile& profile, const LatticeParams& params) {
    return check_pt_symmetry(profile, std::abs(params.potential_amp) + std::abs(params.gain_amp));
}

Hamiltonian build_hamiltonian(const LatticeParams& params, double z) {
    if (!std::isfinite(z)) throw std::invalid_argument("build_hamiltonian: z must be finite");
    const OnSiteProfile prof = build_profile(params);
    const int n = params.n_sites;

    Hamiltonian h;
    h.params = params;
    h.z = z;
    h.z_phase = params.drive_freq > 0.0
                    ? std::cos(2.0 * std::numbers::pi * params.drive_freq * z)
                    : 1.0;
    h.matrix = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const cdouble d = prof.values[static_cast<std::size_t>(i)];
        h.matrix(i, i) = cdouble{d.real(), h.z_phase * d.imag()};
        if (i + 1 < n) {
            h.matrix(i, i + 1) = -params.hopping;
            h.matrix(i + 1, i) = -params.hopping;
        }
    }
    return h;
}

} // namespace ptaa
