#ifndef PTAA_CLI_HPP
#define PTAA_CLI_HPP

#include <iosfwd>
#include <string>

#include "ptaa/dynamics.hpp"
#include "ptaa/spectral.hpp"
#include "ptaa/sweep.hpp"

namespace ptaa {

enum class Command { spectrum, butterfly, gamma_pt, evolve };

enum class OutputFormat { csv, json };

const char* to_string(Command cmd);
const char* to_string(OutputFormat fmt);

/// Everything a run needs, resolved from flags and defaults. Emitters echo
/// this verbatim into the output header so every file is reproducible.
struct RunConfig {
    Command command = Command::spectrum;
    LatticeParams params;

    // butterfly
    double beta_min = 0.0;
    double beta_max = 1.0;
    int beta_steps = 400;

    // gamma-pt
    double gamma_max = 4.0; // resolved to 4 * J when not given
    double tol = 1e-4;

    // evolve
    int init_site = 0;  // resolved to (N + 1) / 2 when not given
    double z_end = 50.0;
    double dz = 0.0;    // resolved to default_step_size when not given
    int sample_every = 50;
    bool full_state = false;

    OutputFormat format = OutputFormat::csv;
    std::string out_path = "-"; // "-" means stdout
    int threads = 0;            // 0 means sweep_thread_count decides

    /// The --beta token as typed ("golden", "2/5", "0.37"); emitters echo
    /// it verbatim, falling back to params.beta.str() when empty.
    std::string beta_token;
};

/// "golden" | "p/q" | decimal in [0, 1]; throws UsageError otherwise.
Beta parse_beta(const std::string& token);

/// Prints help text and exits 0 (thrown by parse_args on --help).
struct HelpRequested {
    std::string text;
};

/// Parses argv into a validated RunConfig. Unknown flags, malformed or
/// out-of-range values, and missing subcommands all throw UsageError with
/// a diagnostic naming the flag.
RunConfig parse_args(int argc, const char* const* argv);

// Emitters. CSV carries leading '#' provenance lines (full config echo)
// and a trailing '# analytics:' block where applicable; JSON mirrors the
// same content as one object. All numbers carry 17 significant digits so
// parsing them back reproduces the doubles bit for bit.
void emit_spectrum(std::ostream& os, const RunConfig& cfg,
                   const ComplexSpectrum& spectrum,
                   const SpectrumAnalytics& analytics);
void emit_butterfly(std::ostream& os, const RunConfig& cfg,
                    const ButterflyDataset& data);
void emit_threshold(std::ostream& os, const RunConfig& cfg,
                    const ThresholdResult& result);
void emit_trajectory(std::ostream& os, const RunConfig& cfg,
                     const Trajectory& traj);

/// "%.17g" with a ".0" appended to bare integers, so a value column never
/// looks like an index and strtod round-trips the exact double.
std::string format_double(double v);

/// Executes the configured command and writes to cfg.out_path (or `out`
/// when the path is "-").
void run(const RunConfig& cfg, std::ostream& out);

/// main() body: parse, run, map exceptions to exit codes
/// (0 ok, 1 usage, 2 numerical, 3 I/O).
int cli_main(int argc, const char* const* argv);

} // namespace ptaa

#endif
