#include "ptaa/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ptaa {

StateVector delta_state(int n_sites, int site) {
    if (n_sites < 1) throw std::invalid_argument("delta_state: n_sites must be >= 1");
    if (site < 1 || site > n_sites) {
        std::ostringstream os;
        os << "delta_state: site " << site << " outside 1.." << n_sites;
        throw std::invalid_argument(os.str());
    }
    StateVector s;
    s.amplitudes = Eigen::VectorXcd::Zero(n_sites);
    s.amplitudes(site - 1) = 1.0;
    return s;
}

double intensity(const StateVector& state) {
    return state.amplitudes.squaredNorm();
}

SiteMoments variance(const StateVector& state) {
    const double total = intensity(state);
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw std::invalid_argument("variance: state intensity must be positive and finite");
    }
    const Eigen::Index n = state.amplitudes.size();
    double mean = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        mean += static_cast<double>(i + 1) * std::norm(state.amplitudes(i));
    }
    mean /= total;
    double var = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = static_cast<double>(i + 1) - mean;
        var += d * d * std::norm(state.amplitudes(i));
    }
    var /= total;
    return {std::sqrt(std::max(var, 0.0)), mean};
}

double default_step_size(const LatticeParams& params) {
    if (params.drive_freq > 0.0) {
        return 1e-3 * std::min(1.0, 1.0 / params.drive_freq);
    }
    return 1e-3;
}

namespace {

// dc/dz = -i H(z) c with the tridiagonal stencil applied in place,
// no matrix is ever formed
struct Rhs {
    double hopping;
    double omega;
    std::vector<double> re_d;
    std::vector<double> im_d;

    void operator()(double z, const Eigen::VectorXcd& c, Eigen::VectorXcd& out) const {
        const double drive =
            omega > 0.0 ? std::cos(2.0 * std::numbers::pi * omega * z) : 1.0;
        const Eigen::Index n = c.size();
        constexpr cdouble mi{0.0, -1.0};
        for (Eigen::Index i = 0; i < n; ++i) {
            cdouble hop = 0.0;
            if (i > 0) hop += c(i - 1);
            if (i + 1 < n) hop += c(i + 1);
            const cdouble diag{re_d[static_cast<std::size_t>(i)],
                               drive * im_d[static_cast<std::size_t>(i)]};
            out(i) = mi * (-hopping * hop + diag * c(i));
        }
    }
};

} // namespace

Trajectory propagate(const LatticeParams& params, const StateVector& initial,
                     double z_end, double dz, int sample_every) {
    params.validate();
    if (initial.amplitudes.size() != params.n_sites) {
        throw std::invalid_argument("propagate: state size does not match n_sites");
    }
    if (!std::isfinite(z_end) || z_end <= 0.0) {
        throw std::invalid_argument("propagate: z_end must be finite and > 0");
    }
    if (!std::isfinite(dz) || dz <= 0.0) {
        throw std::invalid_argument("propagate: dz must be finite and > 0");
    }
    // at least 100 steps per drive period, and never coarser than 0.01
    const double dz_cap = 1.0 / (100.0 * std::max(params.drive_freq, 1.0));
    if (dz > dz_cap * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "propagate: dz=" << dz << " exceeds resolution bound " << dz_cap;
        throw std::invalid_argument(os.str());
    }
    if (sample_every < 1) {
        throw std::invalid_argument("propagate: sample_every must be >= 1");
    }
    if (!(intensity(initial) > 0.0)) {
        throw std::invalid_argument("propagate: initial state has zero intensity");
    }
    if (!std::isfinite(initial.z)) {
        throw std::invalid_argument("propagate: initial z must be finite");
    }

    const OnSiteProfile prof = build_profile(params);
    Rhs rhs;
    rhs.hopping = params.hopping;
    rhs.omega = params.drive_freq;
    rhs.re_d.resize(prof.values.size());
    rhs.im_d.resize(prof.values.size());
    for (std::size_t i = 0; i < prof.values.size(); ++i) {
        rhs.re_d[i] = prof.values[i].real();
        rhs.im_d[i] = prof.values[i].imag();
    }

    const double z0 = initial.z;
    const long n_steps = static_cast<long>(std::ceil(z_end / dz - 1e-9));

    Trajectory traj;
    traj.step_size = dz;
    traj.sample_every = sample_every;
    traj.params = params;
    traj.samples.reserve(static_cast<std::size_t>(n_steps / sample_every + 2));

    Eigen::VectorXcd c = initial.amplitudes;
    const Eigen::Index n = c.size();
    Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), tmp(n);

    auto record = [&](double z, const Eigen::VectorXcd& amps) {
        StateVector s{amps, z};
        const SiteMoments m = variance(s);
        traj.samples.push_back({z, intensity(s), m.sigma, m.mean_site, amps});
    };
    record(z0, c);

    for (long i = 0; i < n_steps; ++i) {
        const double z = z0 + static_cast<double>(i) * dz;
        const double z_next =
            (i + 1 == n_steps) ? z0 + z_end : z0 + static_cast<double>(i + 1) * dz;
        const double h = z_next - z;

        rhs(z, c, k1);
        tmp = c + (0.5 * h) * k1;
        rhs(z + 0.5 * h, tmp, k2);
        tmp = c + (0.5 * h) * k2;
        rhs(z + 0.5 * h, tmp, k3);
        tmp = c + h * k3;
        rhs(z + h, tmp, k4);
        c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double total = c.squaredNorm();
        if (!std::isfinite(total) || total > 1e12) {
            std::ostringstream os;
            os << "propagate: intensity " << total << " at z=" << z_next
               << " exceeds overflow guard 1e12 (broken-phase growth; shorten z_end"
               << " or renormalize in segments)";
            throw OverflowError(os.str());
        }
        if ((i + 1) % sample_every == 0 || i + 1 == n_steps) {
            record(z_next, c);
        }
    }
    return traj;
}

double intensity_law_residual(const Trajectory& traj) {
    const std::size_t n = traj.samples.size();
    if (n < 3) {
        throw std::invalid_argument("intensity_law_residual: need at least 3 samples");
    }
    const double h = traj.samples[1].z - traj.samples[0].z;
    if (!(h > 0.0)) {
        throw std::invalid_argument("intensity_law_residual: samples must advance in z");
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double step = traj.samples[k + 1].z - traj.samples[k].z;
        if (std::abs(step - h) > 1e-9 * std::max(1.0, h)) {
            throw std::invalid_argument(
                "intensity_law_residual: samples must be uniformly spaced");
        }
    }

    const OnSiteProfile prof = build_profile(traj.params);
    const double omega = traj.params.drive_freq;

    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const TrajectorySample& s = traj.samples[k];
        const double lhs =
            (traj.samples[k + 1].intensity - traj.samples[k - 1].intensity) / (2.0 * h);
        const double drive =
            omega > 0.0 ? std::cos(2.0 * std::numbers::pi * omega * s.z) : 1.0;
        double rhs = 0.0;
        for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
            rhs += prof.values[static_cast<std::size_t>(i)].imag() *
                   std::norm(s.amplitudes(i));
        }
        rhs *= 2.0 * drive;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

const char* to_string(Localization kind) {
    switch (kind) {
        case Localization::localized: return "localized";
        case Localization::ballistic: return "ballistic";
        case Localization::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

LocalizationVerdict classify(const Trajectory& traj, double z_fit_fraction) {
    if (!(z_fit_fraction > 0.0) || z_fit_fraction > 1.0) {
        throw std::invalid_argument("classify: z_fit_fraction must be in (0, 1]");
    }
    if (traj.samples.size() < 4) {
        throw std::invalid_argument("classify: trajectory has too few samples");
    }
    const double z_first = traj.samples.front().z;
    const double z_last = traj.samples.back().z;
    const double span = z_last - z_first;
    const double need = 50.0 / traj.params.hopping;
    if (span + 1e-9 < need) {
        std::ostringstream os;
        os << "classify: span " << span << " is below the 50/J horizon " << need
           << "; the verdict would reflect transients";
        throw std::invalid_argument(os.str());
    }

    LocalizationVerdict v;
    for (const TrajectorySample& s : traj.samples) {
        v.sigma_max = std::max(v.sigma_max, s.sigma);
    }

    const double window_start = z_last - z_fit_fraction * span;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t m = 0;
    for (const TrajectorySample& s : traj.samples) {
        if (s.z < window_start - 1e-12) continue;
        sx += s.z;
        sy += s.sigma;
        sxx += s.z * s.z;
        sxy += s.z * s.sigma;
        ++m;
    }
    if (m < 3) {
        throw std::invalid_argument("classify: fewer than 3 samples in the fit window");
    }
    const double dm = static_cast<double>(m);
    const double denom = dm * sxx - sx * sx;
    v.slope = denom != 0.0 ? (dm * sxy - sx * sy) / denom : 0.0;
    const double mean_y = sy / dm;
    const double intercept = mean_y - v.slope * (sx / dm);
    double ss_res = 0.0, ss_tot = 0.0;
    for (const TrajectorySample& s : traj.samples) {
        if (s.z < window_start - 1e-12) continue;
        const double fit = intercept + v.slope * s.z;
        ss_res += (s.sigma - fit) * (s.sigma - fit);
        ss_tot += (s.sigma - mean_y) * (s.sigma - mean_y);
    }
    v.slope_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;

    const double quarter = static_cast<double>(traj.params.n_sites) / 4.0;
    const bool escaped = v.sigma_max >= quarter;
    const bool linear_growth = v.slope > 0.05 && v.slope_r2 > 0.9;
    if (linear_growth || escaped) {
        v.kind = Localization::ballistic;
    } else if (v.slope <= 0.05) {
        v.kind = Localization::localized;
    } else {
        v.kind = Localization::indeterminate;
    }
    return v;
}

} // namespace ptaa
