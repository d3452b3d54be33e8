#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "ptaa/cli.hpp"

namespace ptaa {

const char* to_string(Command cmd) {
    switch (cmd) {
        case Command::spectrum: return "spectrum";
        case Command::butterfly: return "butterfly";
        case Command::gamma_pt: return "gamma-pt";
        case Command::evolve: return "evolve";
    }
    return "spectrum";
}

const char* to_string(OutputFormat fmt) {
    return fmt == OutputFormat::json ? "json" : "csv";
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

namespace {

struct KV {
    std::string key;
    std::string val;
    bool quoted; // JSON string vs bare literal
};

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char esc[8];
                    std::snprintf(esc, sizeof esc, "\\u%04x", c);
                    out += esc;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::vector<KV> config_pairs(const RunConfig& cfg) {
    std::vector<KV> kv;
    kv.push_back({"command", to_string(cfg.command), true});
    kv.push_back({"n", std::to_string(cfg.params.n_sites), false});
    kv.push_back({"j", format_double(cfg.params.hopping), false});
    kv.push_back({"v", format_double(cfg.params.potential_amp), false});
    kv.push_back({"gamma0", format_double(cfg.params.gain_amp), false});
    const std::string beta =
        cfg.beta_token.empty() ? cfg.params.beta.str() : cfg.beta_token;
    kv.push_back({"beta", beta, true});
    kv.push_back({"phi0", format_double(cfg.params.phi0), false});
    kv.push_back({"omega", format_double(cfg.params.drive_freq), false});
    switch (cfg.command) {
        case Command::butterfly:
            kv.push_back({"beta_min", format_double(cfg.beta_min), false});
            kv.push_back({"beta_max", format_double(cfg.beta_max), false});
            kv.push_back({"beta_steps", std::to_string(cfg.beta_steps), false});
            break;
        case Command::gamma_pt:
            kv.push_back({"gamma_max", format_double(cfg.gamma_max), false});
            kv.push_back({"tol", format_double(cfg.tol), false});
            break;
        case Command::evolve:
            kv.push_back({"init_site", std::to_string(cfg.init_site), false});
            kv.push_back({"z_end", format_double(cfg.z_end), false});
            kv.push_back({"dz", format_double(cfg.dz), false});
            kv.push_back({"sample_every", std::to_string(cfg.sample_every), false});
            kv.push_back({"full_state", cfg.full_state ? "true" : "false", false});
            break;
        case Command::spectrum:
            break;
    }
    kv.push_back({"format", to_string(cfg.format), true});
    kv.push_back({"out", cfg.out_path, true});
    return kv;
}

void write_provenance_csv(std::ostream& os, const RunConfig& cfg) {
    os << "# pt-aubry " << to_string(cfg.command) << "\n";
    for (const KV& kv : config_pairs(cfg)) {
        os << "# " << kv.key << "=" << kv.val << "\n";
    }
}

void write_config_json(std::ostream& os, const RunConfig& cfg) {
    os << "  \"config\": {";
    bool first = true;
    for (const KV& kv : config_pairs(cfg)) {
        if (!first) os << ", ";
        first = false;
        os << "\"" << kv.key << "\": ";
        if (kv.quoted) os << "\"" << json_escape(kv.val) << "\"";
        else os << kv.val;
    }
    os << "}";
}

void write_pair_array(std::ostream& os, const std::vector<cdouble>& values) {
    os << "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ",";
        os << "\n    [" << format_double(values[i].real()) << ", "
           << format_double(values[i].imag()) << "]";
    }
    os << "\n  ]";
}

} // namespace

void emit_spectrum(std::ostream& os, const RunConfig& cfg,
                   const ComplexSpectrum& spectrum,
                   const SpectrumAnalytics& analytics) {
    if (cfg.format == OutputFormat::csv) {
        write_provenance_csv(os, cfg);
        os << "index,re_e,im_e\n";
        for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
            const cdouble& e = spectrum.eigenvalues[i];
            os << (i + 1) << "," << format_double(e.real()) << ","
               << format_double(e.imag()) << "\n";
        }
        os << "# analytics: max_imag=" << format_double(analytics.max_imag) << "\n";
        os << "# analytics: real_width=" << format_double(analytics.real_width) << "\n";
        os << "# analytics: is_real=" << (analytics.is_real ? "true" : "false") << "\n";
        os << "# analytics: band_gaps=";
        for (std::size_t i = 0; i < analytics.band_gaps.size(); ++i) {
            if (i) os << " ";
            os << "(" << format_double(analytics.band_gaps[i].first) << ","
               << format_double(analytics.band_gaps[i].second) << ")";
        }
        os << "\n";
        return;
    }
    os << "{\n";
    write_config_json(os, cfg);
    os << ",\n  \"eigenvalues\": ";
    write_pair_array(os, spectrum.eigenvalues);
    os << ",\n  \"analytics\": {\"max_imag\": " << format_double(analytics.max_imag)
       << ", \"real_width\": " << format_double(analytics.real_width)
       << ", \"is_real\": " << (analytics.is_real ? "true" : "false")
       << ", \"band_gaps\": [";
    for (std::size_t i = 0; i < analytics.band_gaps.size(); ++i) {
        if (i) os << ", ";
        os << "[" << format_double(analytics.band_gaps[i].first) << ", "
           << format_double(analytics.band_gaps[i].second) << "]";
    }
    os << "]}\n}\n";
}

void emit_butterfly(std::ostream& os, const RunConfig& cfg,
                    const ButterflyDataset& data) {
    if (cfg.format == OutputFormat::csv) {
        write_provenance_csv(os, cfg);
        os << "beta,re_e,im_e\n";
        for (const ButterflyRecord& rec : data.records) {
            const std::string beta = format_double(rec.beta);
            for (const cdouble& e : rec.eigenvalues) {
                os << beta << "," << format_double(e.real()) << ","
                   << format_double(e.imag()) << "\n";
            }
        }
        return;
    }
    os << "{\n";
    write_config_json(os, cfg);
    os << ",\n  \"records\": [";
    for (std::size_t r = 0; r < data.records.size(); ++r) {
        if (r) os << ",";
        os << "\n    {\"beta\": " << format_double(data.records[r].beta)
           << ", \"eigenvalues\": [";
        const auto& ev = data.records[r].eigenvalues;
        for (std::size_t i = 0; i < ev.size(); ++i) {
            if (i) os << ", ";
            os << "[" << format_double(ev[i].real()) << ", "
               << format_double(ev[i].imag()) << "]";
        }
        os << "]}";
    }
    os << "\n  ]\n}\n";
}

void emit_threshold(std::ostream& os, const RunConfig& cfg,
                    const ThresholdResult& result) {
    if (cfg.format == OutputFormat::csv) {
        write_provenance_csv(os, cfg);
        os << "gamma_pt,gamma_low,gamma_high,tolerance,evaluations,"
              "bracket_exhausted,monotone_warning\n";
        os << format_double(result.gamma_pt) << "," << format_double(result.gamma_low)
           << "," << format_double(result.gamma_high) << ","
           << format_double(result.tolerance) << "," << result.evaluations << ","
           << (result.bracket_exhausted ? "true" : "false") << ","
           << (result.monotone_warning ? "true" : "false") << "\n";
        return;
    }
    os << "{\n";
    write_config_json(os, cfg);
    os << ",\n  \"result\": {\"gamma_pt\": " << format_double(result.gamma_pt)
       << ", \"gamma_low\": " << format_double(result.gamma_low)
       << ", \"gamma_high\": " << format_double(result.gamma_high)
       << ", \"tolerance\": " << format_double(result.tolerance)
       << ", \"evaluations\": " << result.evaluations
       << ", \"bracket_exhausted\": " << (result.bracket_exhausted ? "true" : "false")
       << ", \"monotone_warning\": " << (result.monotone_warning ? "true" : "false")
       << "}\n}\n";
}

void emit_trajectory(std::ostream& os, const RunConfig& cfg,
                     const Trajectory& traj) {
    if (cfg.format == OutputFormat::csv) {
        write_provenance_csv(os, cfg);
        os << "z,intensity,sigma,nbar";
        if (cfg.full_state) {
            for (int i = 1; i <= traj.params.n_sites; ++i) {
                os << ",re_c" << i << ",im_c" << i;
            }
        }
        os << "\n";
        for (const TrajectorySample& s : traj.samples) {
            os << format_double(s.z) << "," << format_double(s.intensity) << ","
               << format_double(s.sigma) << "," << format_double(s.mean_site);
            if (cfg.full_state) {
                for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
                    os << "," << format_double(s.amplitudes(i).real()) << ","
                       << format_double(s.amplitudes(i).imag());
                }
            }
            os << "\n";
        }
        return;
    }
    os << "{\n";
    write_config_json(os, cfg);
    os << ",\n  \"samples\": [";
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        const TrajectorySample& s = traj.samples[k];
        if (k) os << ",";
        os << "\n    {\"z\": " << format_double(s.z)
           << ", \"intensity\": " << format_double(s.intensity)
           << ", \"sigma\": " << format_double(s.sigma)
           << ", \"nbar\": " << format_double(s.mean_site);
        if (cfg.full_state) {
            os << ", \"amplitudes\": [";
            for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
                if (i) os << ", ";
                os << "[" << format_double(s.amplitudes(i).real()) << ", "
                   << format_double(s.amplitudes(i).imag()) << "]";
            }
            os << "]";
        }
        os << "}";
    }
    os << "\n  ]\n}\n";
}

} // namespace ptaa
