#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ptaa::testing {

std::vector<cdouble> charpoly_tridiag(const std::vector<cdouble>& diag, double j) {
    if (diag.empty()) throw std::invalid_argument("charpoly_tridiag: empty diagonal");
    const double j2 = j * j;
    std::vector<cdouble> p_prev2{1.0};           // p_0
    std::vector<cdouble> p_prev{diag[0], -1.0};  // p_1
    for (std::size_t k = 1; k < diag.size(); ++k) {
        std::vector<cdouble> p(k + 2, 0.0);
        for (std::size_t i = 0; i < p_prev.size(); ++i) {
            p[i] += diag[k] * p_prev[i]; // d_k * p_{k-1}
            p[i + 1] -= p_prev[i];       // -x * p_{k-1}
        }
        for (std::size_t i = 0; i < p_prev2.size(); ++i) {
            p[i] -= j2 * p_prev2[i];
        }
        p_prev2 = std::move(p_prev);
        p_prev = std::move(p);
    }
    return p_prev;
}

std::vector<cdouble> polynomial_roots(const std::vector<cdouble>& coeffs) {
    if (coeffs.size() < 2) {
        throw std::invalid_argument("polynomial_roots: need degree >= 1");
    }
    const cdouble lead = coeffs.back();
    if (std::abs(lead) == 0.0) {
        throw std::invalid_argument("polynomial_roots: zero leading coefficient");
    }
    std::vector<cdouble> c(coeffs);
    for (cdouble& x : c) x /= lead;
    const std::size_t deg = c.size() - 1;

    double radius = 0.0;
    for (std::size_t i = 0; i < deg; ++i) radius = std::max(radius, std::abs(c[i]));
    radius += 1.0; // Cauchy bound on root magnitudes

    // standard non-real, non-unit-modulus seed spread around a circle
    std::vector<cdouble> w(deg);
    cdouble acc{1.0, 0.0};
    const cdouble seed{0.4, 0.9};
    for (cdouble& wi : w) {
        acc *= seed;
        wi = radius * acc;
    }

    auto eval = [&](cdouble x) {
        cdouble r = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    };

    for (int it = 0; it < 500; ++it) {
        double worst = 0.0;
        for (std::size_t i = 0; i < deg; ++i) {
            cdouble denom{1.0, 0.0};
            for (std::size_t k = 0; k < deg; ++k) {
                if (k != i) denom *= (w[i] - w[k]);
            }
            if (std::abs(denom) == 0.0) {
                denom = 1e-30; // collided iterates; the next sweep separates them
            }
            const cdouble delta = eval(w[i]) / denom;
            w[i] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-14 * radius) break;
    }
    return w;
}

std::vector<cdouble> spectrum_oracle(const std::vector<cdouble>& diag, double j) {
    std::vector<cdouble> roots = polynomial_roots(charpoly_tridiag(diag, j));
    std::sort(roots.begin(), roots.end(), [](const cdouble& a, const cdouble& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

std::vector<double> open_chain_levels(int n_sites, double j) {
    std::vector<double> levels(static_cast<std::size_t>(n_sites));
    for (int k = 1; k <= n_sites; ++k) {
        levels[static_cast<std::size_t>(k - 1)] =
            -2.0 * j * std::cos(static_cast<double>(k) * std::numbers::pi /
                                static_cast<double>(n_sites + 1));
    }
    std::sort(levels.begin(), levels.end());
    return levels;
}

Eigen::Matrix2cd dimer_propagator(cdouble d, double j, double z) {
    Eigen::Matrix2cd h;
    h << d, -j, -j, -d;
    const cdouble omega2 = d * d + cdouble(j * j);
    const cdouble omega = std::sqrt(omega2);
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    constexpr cdouble mi{0.0, -1.0};
    if (std::abs(omega) * std::abs(z) < 1e-8) {
        // sin(x)/x -> 1; second-order term is below double precision here
        return id + mi * z * h;
    }
    const cdouble zz{z, 0.0};
    return std::cos(omega * zz) * id + mi * (std::sin(omega * zz) / omega) * h;
}

double multiset_distance(std::vector<cdouble> a, std::vector<cdouble> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("multiset_distance: length mismatch");
    }
    auto lex = [](const cdouble& x, const cdouble& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    };
    std::sort(a.begin(), a.end(), lex);
    std::sort(b.begin(), b.end(), lex);
    std::vector<bool> used(b.size(), false);
    double worst = 0.0;
    for (const cdouble& x : a) {
        std::size_t best = b.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (used[k]) continue;
            const double dist = std::abs(x - b[k]);
            if (dist < best_d) {
                best_d = dist;
                best = k;
            }
        }
        used[best] = true;
        worst = std::max(worst, best_d);
    }
    return worst;
}

std::vector<cdouble> conjugated(const std::vector<cdouble>& values) {
    std::vector<cdouble> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::conj(values[i]);
    return out;
}

} // namespace ptaa::testing
