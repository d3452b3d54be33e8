#include "ptaa/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <ostream>

#include <CLI11.hpp>

namespace ptaa {

Beta parse_beta(const std::string& token) {
    if (token == "golden") return Beta::golden();
    try {
        const auto slash = token.find('/');
        if (slash != std::string::npos) {
            std::size_t used_p = 0, used_q = 0;
            const long long p = std::stoll(token.substr(0, slash), &used_p);
            const long long q = std::stoll(token.substr(slash + 1), &used_q);
            if (used_p != slash || used_q != token.size() - slash - 1) {
                throw std::invalid_argument(token);
            }
            return Beta::fraction(p, q);
        }
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return Beta::real(v);
    } catch (const std::exception&) {
        throw UsageError("--beta: expected 'golden', a fraction p/q, or a real in [0, 1], got '" +
                         token + "'");
    }
}

namespace {

// raw flag storage; one instance backs all four subcommands since exactly
// one of them parses
struct RawOpts {
    int n = 50;
    double j = 1.0;
    double v = 0.0;
    double gamma0 = 1.0;
    std::string beta = "golden";
    double phi0 = 0.0;
    double omega = 0.0;

    double beta_min = 0.0;
    double beta_max = 1.0;
    int beta_steps = 400;

    double gamma_max = 0.0; // 0 means "resolve to 4 J"
    double tol = 1e-4;

    int init_site = 0; // 0 means "resolve to (N + 1) / 2"
    double z_end = 50.0;
    double dz = 0.0; // 0 means "resolve to default_step_size"
    int sample_every = 50;
    bool full_state = false;

    std::string format = "csv";
    std::string out = "-";
};

void add_lattice_flags(CLI::App* cmd, RawOpts& raw, bool with_beta, bool with_gamma0) {
    cmd->add_option("--n", raw.n, "number of lattice sites (>= 2)");
    cmd->add_option("--j", raw.j, "hopping amplitude J (> 0)");
    cmd->add_option("--v", raw.v, "real on-site modulation amplitude V (>= 0)");
    if (with_gamma0) {
        cmd->add_option("--gamma0", raw.gamma0, "gain/loss modulation amplitude");
    }
    if (with_beta) {
        cmd->add_option("--beta", raw.beta,
                        "modulation frequency: 'golden', a fraction p/q, or a real in [0, 1]");
    }
    cmd->add_option("--phi0", raw.phi0, "global phase, integer multiple of pi");
    cmd->add_option("--omega", raw.omega, "drive frequency; 0 disables the drive");
}

void add_io_flags(CLI::App* cmd, RawOpts& raw) {
    cmd->add_option("--format", raw.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", raw.out, "output path, '-' for stdout");
}

[[noreturn]] void usage_fail(const std::string& msg) { throw UsageError(msg); }

} // namespace

RunConfig parse_args(int argc, const char* const* argv) {
    RawOpts raw;
    CLI::App app{"PT-symmetric quasiperiodic chain toolkit: complex spectra,\n"
                 "butterfly sweeps, PT-breaking thresholds, wave-packet dynamics"};
    app.name("pt-aubry");
    app.require_subcommand(1);

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "eigenvalues and analytics for one parameter set");
    add_lattice_flags(spectrum, raw, true, true);
    add_io_flags(spectrum, raw);

    CLI::App* butterfly = app.add_subcommand(
        "butterfly", "eigenvalue sweep over a beta grid (OpenMP parallel)");
    add_lattice_flags(butterfly, raw, false, true);
    butterfly->add_option("--beta-min", raw.beta_min, "grid start (default 0)");
    butterfly->add_option("--beta-max", raw.beta_max, "grid end (default 1)");
    butterfly->add_option("--beta-steps", raw.beta_steps, "grid point count (default 400)");
    add_io_flags(butterfly, raw);

    CLI::App* gamma_pt = app.add_subcommand(
        "gamma-pt", "bisect the PT-breaking gain amplitude");
    add_lattice_flags(gamma_pt, raw, true, false);
    gamma_pt->add_option("--gamma-max", raw.gamma_max, "bracket cap (default 4 J)");
    gamma_pt->add_option("--tol", raw.tol, "bracket width target (default 1e-4)");
    add_io_flags(gamma_pt, raw);

    CLI::App* evolve = app.add_subcommand(
        "evolve", "RK4 wave-packet propagation from a single occupied site");
    add_lattice_flags(evolve, raw, true, true);
    evolve->add_option("--init-site", raw.init_site, "occupied site, 1-based (default center)");
    evolve->add_option("--z-end", raw.z_end, "propagation length (default 50)");
    evolve->add_option("--dz", raw.dz, "RK4 step (default 1e-3, scaled to the drive)");
    evolve->add_option("--sample-every", raw.sample_every, "record every k-th step (default 50)");
    evolve->add_flag("--full-state", raw.full_state, "emit complex amplitudes per sample");
    add_io_flags(evolve, raw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        throw HelpRequested{sub->help()};
    } catch (const CLI::ParseError& e) {
        usage_fail(std::string(e.what()) + " (try --help)");
    }

    RunConfig cfg;
    if (spectrum->parsed()) cfg.command = Command::spectrum;
    else if (butterfly->parsed()) cfg.command = Command::butterfly;
    else if (gamma_pt->parsed()) cfg.command = Command::gamma_pt;
    else cfg.command = Command::evolve;

    try {
        cfg.params.n_sites = raw.n;
        cfg.params.hopping = raw.j;
        cfg.params.potential_amp = raw.v;
        cfg.params.gain_amp = raw.gamma0;
        cfg.params.beta = parse_beta(raw.beta);
        cfg.params.phi0 = raw.phi0;
        cfg.params.drive_freq = raw.omega;
        cfg.params.validate();
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        usage_fail(e.what());
    }
    cfg.beta_token = raw.beta;
    cfg.format = raw.format == "json" ? OutputFormat::json : OutputFormat::csv;
    cfg.out_path = raw.out;

    switch (cfg.command) {
        case Command::spectrum:
            break;
        case Command::butterfly:
            cfg.beta_min = raw.beta_min;
            cfg.beta_max = raw.beta_max;
            cfg.beta_steps = raw.beta_steps;
            if (!(cfg.beta_min >= 0.0 && cfg.beta_min <= cfg.beta_max && cfg.beta_max <= 1.0)) {
                usage_fail("--beta-min/--beta-max: need 0 <= min <= max <= 1");
            }
            if (cfg.beta_steps < 1) usage_fail("--beta-steps: must be >= 1");
            break;
        case Command::gamma_pt:
            cfg.gamma_max = raw.gamma_max > 0.0 ? raw.gamma_max : 4.0 * cfg.params.hopping;
            cfg.tol = raw.tol;
            if (gamma_pt->count("--gamma-max") && raw.gamma_max <= 0.0) {
                usage_fail("--gamma-max: must be > 0");
            }
            if (!(cfg.tol > 0.0)) usage_fail("--tol: must be > 0");
            break;
        case Command::evolve:
            cfg.init_site = evolve->count("--init-site") ? raw.init_site
                                                         : (cfg.params.n_sites + 1) / 2;
            cfg.z_end = raw.z_end;
            cfg.dz = raw.dz > 0.0 ? raw.dz : default_step_size(cfg.params);
            cfg.sample_every = raw.sample_every;
            cfg.full_state = raw.full_state;
            if (cfg.init_site < 1 || cfg.init_site > cfg.params.n_sites) {
                usage_fail("--init-site: must lie in 1..n");
            }
            if (!(cfg.z_end > 0.0)) usage_fail("--z-end: must be > 0");
            if (evolve->count("--dz") && raw.dz <= 0.0) usage_fail("--dz: must be > 0");
            if (cfg.dz > 1.0 / (100.0 * std::max(cfg.params.drive_freq, 1.0)) * (1.0 + 1e-12)) {
                usage_fail("--dz: too coarse; need at least 100 steps per unit z and per drive period");
            }
            if (cfg.sample_every < 1) usage_fail("--sample-every: must be >= 1");
            break;
    }
    return cfg;
}

void run(const RunConfig& cfg, std::ostream& out) {
    std::ofstream file;
    std::ostream* os = &out;
    if (cfg.out_path != "-") {
        file.open(cfg.out_path, std::ios::binary);
        if (!file) throw IoError("cannot open output path '" + cfg.out_path + "'");
        os = &file;
    }

    switch (cfg.command) {
        case Command::spectrum: {
            const ComplexSpectrum s = eig(build_hamiltonian(cfg.params, 0.0));
            emit_spectrum(*os, cfg, s, analyze(s));
            break;
        }
        case Command::butterfly: {
            const std::vector<double> grid =
                make_beta_grid(cfg.beta_min, cfg.beta_max, cfg.beta_steps);
            emit_butterfly(*os, cfg, butterfly_sweep(cfg.params, grid, cfg.threads));
            break;
        }
        case Command::gamma_pt: {
            emit_threshold(*os, cfg,
                           find_gamma_pt(cfg.params, cfg.gamma_max, cfg.tol, cfg.threads));
            break;
        }
        case Command::evolve: {
            const StateVector initial = delta_state(cfg.params.n_sites, cfg.init_site);
            emit_trajectory(*os, cfg,
                            propagate(cfg.params, initial, cfg.z_end, cfg.dz,
                                      cfg.sample_every));
            break;
        }
    }

    os->flush();
    if (!*os) {
        throw IoError("write failed on '" +
                      (cfg.out_path == "-" ? std::string("<stdout>") : cfg.out_path) + "'");
    }
}

int cli_main(int argc, const char* const* argv) {
    try {
        const RunConfig cfg = parse_args(argc, argv);
        run(cfg, std::cout);
        return 0;
    } catch (const HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        // NumericalError and anything unforeseen from the solvers
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace ptaa
