#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "ptaa/cli.hpp"

using namespace ptaa;
using nlohmann::json;

namespace {

RunConfig basic_config(Command cmd) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.beta_token = cfg.params.beta.str();
    return cfg;
}

ComplexSpectrum synthetic(std::vector<cdouble> ev) {
    ComplexSpectrum s;
    s.eigenvalues = std::move(ev);
    return s;
}

bool contains_line(const std::string& text, const std::string& line) {
    std::istringstream is(text);
    std::string row;
    while (std::getline(is, row)) {
        if (row == line) return true;
    }
    return false;
}

std::vector<const char*> argv_of(std::initializer_list<const char*> args) {
    return {args};
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("number formatting") {
    CHECK(format_double(1.0) == "1.0");
    CHECK(format_double(-1.0) == "-1.0");
    CHECK(format_double(0.0) == "0.0");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.0) == "2.0");
    CHECK(format_double(1e-4) == "0.0001");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(1.0 / 0.0) == "inf");
    CHECK(format_double(-1.0 / 0.0) == "-inf");

    // 17 significant digits reproduce the double exactly on re-parse
    const double probes[] = {std::sqrt(3.0),  0.6180339887498949, 1.0 / 3.0,
                             5.7735026918962580e-7, -0.0,          1e300,
                             123456789.123456789};
    for (const double v : probes) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("spectrum csv matches the documented shape") {
    const RunConfig cfg = basic_config(Command::spectrum);
    const ComplexSpectrum s = synthetic({{-1.0, 0.0}, {1.0, 0.0}});
    std::ostringstream os;
    emit_spectrum(os, cfg, s, analyze(s));
    const std::string text = os.str();

    CHECK(text.rfind("# pt-aubry spectrum\n", 0) == 0);
    CHECK(contains_line(text, "# command=spectrum"));
    CHECK(contains_line(text, "# n=50"));
    CHECK(contains_line(text, "# beta=golden"));
    CHECK(contains_line(text, "index,re_e,im_e"));
    CHECK(contains_line(text, "1,-1.0,0.0"));
    CHECK(contains_line(text, "2,1.0,0.0"));
    CHECK(contains_line(text, "# analytics: max_imag=0.0"));
    CHECK(contains_line(text, "# analytics: real_width=2.0"));
    CHECK(contains_line(text, "# analytics: is_real=true"));
    CHECK(contains_line(text, "# analytics: band_gaps="));
}

TEST_CASE("broken dimer csv carries full-precision imaginary parts") {
    LatticeParams p;
    p.n_sites = 2;
    p.potential_amp = 0.0;
    p.gain_amp = 2.0;
    p.beta = Beta::fraction(1, 2);
    RunConfig cfg = basic_config(Command::spectrum);
    cfg.params = p;
    cfg.beta_token = "1/2";

    const ComplexSpectrum s = eig(build_hamiltonian(p));
    std::ostringstream os;
    emit_spectrum(os, cfg, s, analyze(s));

    // parse the two data rows back and compare bit for bit
    std::istringstream is(os.str());
    std::string row;
    int seen = 0;
    while (std::getline(is, row)) {
        if (row.empty() || row[0] == '#' || row[0] == 'i') continue;
        const auto c1 = row.find(',');
        const auto c2 = row.find(',', c1 + 1);
        const double re = std::strtod(row.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
        const double im = std::strtod(row.substr(c2 + 1).c_str(), nullptr);
        CHECK(re == s.eigenvalues[static_cast<std::size_t>(seen)].real());
        CHECK(im == s.eigenvalues[static_cast<std::size_t>(seen)].imag());
        CHECK(std::abs(std::abs(im) - std::sqrt(3.0)) < 1e-10);
        ++seen;
    }
    CHECK(seen == 2);
}

TEST_CASE("spectrum json round-trips exactly") {
    LatticeParams p;
    p.n_sites = 7;
    p.gain_amp = 1.3;
    RunConfig cfg = basic_config(Command::spectrum);
    cfg.params = p;
    cfg.format = OutputFormat::json;

    const ComplexSpectrum s = eig(build_hamiltonian(p));
    const SpectrumAnalytics a = analyze(s);
    std::ostringstream os;
    emit_spectrum(os, cfg, s, a);

    const json doc = json::parse(os.str());
    CHECK(doc["config"]["command"] == "spectrum");
    CHECK(doc["config"]["n"] == 7);
    CHECK(doc["config"]["beta"] == "golden");
    CHECK(doc["config"]["gamma0"] == 1.3);
    REQUIRE(doc["eigenvalues"].size() == 7);
    for (std::size_t k = 0; k < 7; ++k) {
        CHECK(doc["eigenvalues"][k][0].get<double>() == s.eigenvalues[k].real());
        CHECK(doc["eigenvalues"][k][1].get<double>() == s.eigenvalues[k].imag());
    }
    CHECK(doc["analytics"]["max_imag"].get<double>() == a.max_imag);
    CHECK(doc["analytics"]["real_width"].get<double>() == a.real_width);
    CHECK(doc["analytics"]["is_real"].get<bool>() == a.is_real);
}

TEST_CASE("butterfly emission") {
    LatticeParams p;
    p.n_sites = 6;
    p.gain_amp = 2.0;
    RunConfig cfg = basic_config(Command::butterfly);
    cfg.params = p;
    cfg.beta_steps = 2;

    const double grid[] = {0.0, 1.0};
    const ButterflyDataset ds = butterfly_sweep(p, grid, 1);

    std::ostringstream os;
    emit_butterfly(os, cfg, ds);
    const std::string text = os.str();
    CHECK(contains_line(text, "beta,re_e,im_e"));
    CHECK(contains_line(text, "# beta_steps=2"));

    int rows = 0;
    std::istringstream is(text);
    std::string row;
    while (std::getline(is, row)) {
        if (row.empty() || row[0] == '#' || row[0] == 'b') continue;
        ++rows;
        const auto c2 = row.rfind(',');
        CHECK(std::abs(std::strtod(row.substr(c2 + 1).c_str(), nullptr)) < 1e-10);
    }
    CHECK(rows == 12);

    cfg.format = OutputFormat::json;
    std::ostringstream js;
    emit_butterfly(js, cfg, ds);
    const json doc = json::parse(js.str());
    REQUIRE(doc["records"].size() == 2);
    CHECK(doc["records"][0]["beta"].get<double>() == 0.0);
    CHECK(doc["records"][1]["beta"].get<double>() == 1.0);
    CHECK(doc["records"][0]["eigenvalues"].size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(doc["records"][1]["eigenvalues"][k][0].get<double>() ==
              ds.records[1].eigenvalues[k].real());
    }
}

TEST_CASE("trajectory emission") {
    LatticeParams p;
    p.n_sites = 5;
    p.potential_amp = 1.0;
    p.gain_amp = 0.0;
    RunConfig cfg = basic_config(Command::evolve);
    cfg.params = p;
    cfg.init_site = 3;
    cfg.z_end = 1.0;
    cfg.dz = 1e-3;
    cfg.sample_every = 500;

    const Trajectory traj = propagate(p, delta_state(5, 3), 1.0, 1e-3, 500);

    std::ostringstream os;
    emit_trajectory(os, cfg, traj);
    const std::string text = os.str();
    CHECK(contains_line(text, "z,intensity,sigma,nbar"));
    CHECK(contains_line(text, "# sample_every=500"));
    std::istringstream is(text);
    std::string row;
    int rows = 0;
    while (std::getline(is, row)) {
        if (row.empty() || row[0] == '#' || row[0] == 'z') continue;
        ++rows;
        // Hermitian run: intensity column pinned to 1
        const auto c1 = row.find(',');
        const auto c2 = row.find(',', c1 + 1);
        const double intensity = std::strtod(row.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
        CHECK(std::abs(intensity - 1.0) <= 1e-8);
    }
    CHECK(rows == 3); // z = 0, 0.5, 1.0

    cfg.full_state = true;
    std::ostringstream fs;
    emit_trajectory(fs, cfg, traj);
    CHECK(contains_line(fs.str(),
                        "z,intensity,sigma,nbar,re_c1,im_c1,re_c2,im_c2,re_c3,im_c3,"
                        "re_c4,im_c4,re_c5,im_c5"));

    cfg.format = OutputFormat::json;
    std::ostringstream js;
    emit_trajectory(js, cfg, traj);
    const json doc = json::parse(js.str());
    REQUIRE(doc["samples"].size() == traj.samples.size());
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        CHECK(doc["samples"][k]["z"].get<double>() == traj.samples[k].z);
        CHECK(doc["samples"][k]["intensity"].get<double>() == traj.samples[k].intensity);
        CHECK(doc["samples"][k]["sigma"].get<double>() == traj.samples[k].sigma);
        REQUIRE(doc["samples"][k]["amplitudes"].size() == 5);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(doc["samples"][k]["amplitudes"][i][0].get<double>() ==
                  traj.samples[k].amplitudes(static_cast<Eigen::Index>(i)).real());
        }
    }
}

TEST_CASE("threshold emission") {
    RunConfig cfg = basic_config(Command::gamma_pt);
    ThresholdResult r;
    r.gamma_pt = 1.00001;
    r.gamma_low = 0.99995;
    r.gamma_high = 1.00005;
    r.tolerance = 1e-4;
    r.evaluations = 28;

    std::ostringstream os;
    emit_threshold(os, cfg, r);
    CHECK(contains_line(os.str(),
                        "gamma_pt,gamma_low,gamma_high,tolerance,evaluations,"
                        "bracket_exhausted,monotone_warning"));
    CHECK(os.str().find(",28,false,false") != std::string::npos);

    cfg.format = OutputFormat::json;
    std::ostringstream js;
    emit_threshold(js, cfg, r);
    const json doc = json::parse(js.str());
    CHECK(doc["result"]["gamma_pt"].get<double>() == r.gamma_pt);
    CHECK(doc["result"]["evaluations"] == 28);
    CHECK(doc["result"]["bracket_exhausted"] == false);
}

TEST_CASE("emission is deterministic") {
    LatticeParams p;
    p.n_sites = 8;
    p.gain_amp = 1.0;
    RunConfig cfg = basic_config(Command::spectrum);
    cfg.params = p;

    std::ostringstream a, b;
    const ComplexSpectrum s1 = eig(build_hamiltonian(p));
    const ComplexSpectrum s2 = eig(build_hamiltonian(p));
    emit_spectrum(a, cfg, s1, analyze(s1));
    emit_spectrum(b, cfg, s2, analyze(s2));
    CHECK(a.str() == b.str());
}

} // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("subcommand parsing with defaults") {
    const auto argv = argv_of({"pt-aubry", "spectrum"});
    const RunConfig cfg = parse_args(static_cast<int>(argv.size()), argv.data());
    CHECK(cfg.command == Command::spectrum);
    CHECK(cfg.params.n_sites == 50);
    CHECK(cfg.params.hopping == 1.0);
    CHECK(cfg.params.potential_amp == 0.0);
    CHECK(cfg.params.gain_amp == 1.0);
    CHECK(cfg.params.beta.str() == "golden");
    CHECK(cfg.params.phi0 == 0.0);
    CHECK(cfg.params.drive_freq == 0.0);
    CHECK(cfg.format == OutputFormat::csv);
    CHECK(cfg.out_path == "-");
}

TEST_CASE("trivial two-site run") {
    const auto argv = argv_of(
        {"pt-aubry", "spectrum", "--n", "2", "--j", "1", "--gamma0", "0", "--beta", "0.5"});
    const RunConfig cfg = parse_args(static_cast<int>(argv.size()), argv.data());
    CHECK(cfg.params.n_sites == 2);
    CHECK(cfg.params.gain_amp == 0.0);
    CHECK(cfg.params.beta.value() == 0.5);
    CHECK(cfg.beta_token == "0.5");
}

TEST_CASE("butterfly configuration") {
    const auto argv = argv_of({"pt-aubry", "butterfly", "--n", "50", "--gamma0", "2",
                               "--v", "0", "--beta-steps", "400"});
    const RunConfig cfg = parse_args(static_cast<int>(argv.size()), argv.data());
    CHECK(cfg.command == Command::butterfly);
    CHECK(cfg.beta_min == 0.0);
    CHECK(cfg.beta_max == 1.0);
    CHECK(cfg.beta_steps == 400);
    CHECK(cfg.params.gain_amp == 2.0);
}

TEST_CASE("evolve configuration resolves drive-aware defaults") {
    const auto argv = argv_of({"pt-aubry", "evolve", "--n", "49", "--v", "4", "--gamma0",
                               "2", "--omega", "3", "--beta", "golden", "--init-site",
                               "25", "--z-end", "50"});
    const RunConfig cfg = parse_args(static_cast<int>(argv.size()), argv.data());
    CHECK(cfg.command == Command::evolve);
    CHECK(cfg.init_site == 25);
    CHECK(cfg.z_end == 50.0);
    CHECK(cfg.dz == doctest::Approx(1e-3 / 3.0));
    CHECK(cfg.sample_every == 50);
    CHECK(!cfg.full_state);

    // center default for init-site
    const auto argv2 = argv_of({"pt-aubry", "evolve", "--n", "49"});
    CHECK(parse_args(static_cast<int>(argv2.size()), argv2.data()).init_site == 25);
}

TEST_CASE("gamma-pt configuration scales the default cap with j") {
    const auto argv = argv_of({"pt-aubry", "gamma-pt", "--n", "2", "--beta", "1/2",
                               "--j", "2"});
    const RunConfig cfg = parse_args(static_cast<int>(argv.size()), argv.data());
    CHECK(cfg.command == Command::gamma_pt);
    CHECK(cfg.gamma_max == 8.0);
    CHECK(cfg.tol == 1e-4);
    CHECK(cfg.params.beta.is_fraction());
}

TEST_CASE("beta token forms") {
    CHECK(parse_beta("golden").str() == "golden");
    CHECK(parse_beta("2/5").num() == 2);
    CHECK(parse_beta("4/8").den() == 2);
    CHECK(parse_beta("0.3").value() == 0.3);
    CHECK_THROWS_AS(parse_beta("1.5"), UsageError);
    CHECK_THROWS_AS(parse_beta("3/2"), UsageError);
    CHECK_THROWS_AS(parse_beta("abc"), UsageError);
    CHECK_THROWS_AS(parse_beta("1/2x"), UsageError);
    CHECK_THROWS_AS(parse_beta(""), UsageError);
}

TEST_CASE("usage errors carry a diagnostic") {
    auto expect_usage = [](std::initializer_list<const char*> args) {
        const auto argv = argv_of(args);
        CHECK_THROWS_AS(parse_args(static_cast<int>(argv.size()), argv.data()),
                        UsageError);
    };
    expect_usage({"pt-aubry"});                                      // missing subcommand
    expect_usage({"pt-aubry", "nonsense"});                          // unknown subcommand
    expect_usage({"pt-aubry", "spectrum", "--whatever", "2"});       // unknown flag
    expect_usage({"pt-aubry", "spectrum", "--beta", "1.5"});         // out of range
    expect_usage({"pt-aubry", "spectrum", "--n", "1"});              // too small
    expect_usage({"pt-aubry", "spectrum", "--j", "-1"});             // bad hopping
    expect_usage({"pt-aubry", "spectrum", "--phi0", "0.5"});         // off the pi lattice
    expect_usage({"pt-aubry", "evolve", "--init-site", "99"});       // outside 1..n
    expect_usage({"pt-aubry", "evolve", "--omega", "3", "--dz", "0.005"}); // drive too coarse
    expect_usage({"pt-aubry", "evolve", "--z-end", "-5"});
    expect_usage({"pt-aubry", "evolve", "--sample-every", "0"});
    expect_usage({"pt-aubry", "butterfly", "--beta", "0.5"});        // swept, not a flag
    expect_usage({"pt-aubry", "butterfly", "--beta-steps", "0"});
    expect_usage({"pt-aubry", "butterfly", "--beta-min", "0.8", "--beta-max", "0.2"});
    expect_usage({"pt-aubry", "gamma-pt", "--gamma0", "1"});         // swept, not a flag
    expect_usage({"pt-aubry", "gamma-pt", "--tol", "0"});
    expect_usage({"pt-aubry", "spectrum", "--format", "xml"});
}

TEST_CASE("help is not an error") {
    const auto argv = argv_of({"pt-aubry", "--help"});
    try {
        parse_args(static_cast<int>(argv.size()), argv.data());
        FAIL("expected HelpRequested");
    } catch (const HelpRequested& h) {
        CHECK(h.text.find("spectrum") != std::string::npos);
        CHECK(h.text.find("butterfly") != std::string::npos);
        CHECK(h.text.find("gamma-pt") != std::string::npos);
        CHECK(h.text.find("evolve") != std::string::npos);
    }
}

TEST_CASE("run writes to the given stream") {
    const auto argv = argv_of({"pt-aubry", "spectrum", "--n", "2", "--gamma0", "0",
                               "--beta", "1/2"});
    const RunConfig cfg = parse_args(static_cast<int>(argv.size()), argv.data());
    std::ostringstream os;
    run(cfg, os);
    CHECK(os.str().find("index,re_e,im_e") != std::string::npos);
    CHECK(os.str().find("# beta=1/2") != std::string::npos);
}

TEST_CASE("run rejects unwritable output paths") {
    auto argv = argv_of({"pt-aubry", "spectrum", "--n", "2", "--out",
                         "/nonexistent-dir-ptaa/out.csv"});
    const RunConfig cfg = parse_args(static_cast<int>(argv.size()), argv.data());
    std::ostringstream os;
    CHECK_THROWS_AS(run(cfg, os), IoError);
}

TEST_CASE("exit codes distinguish failure classes") {
    std::ostringstream captured;
    auto* old = std::cout.rdbuf(captured.rdbuf());
    const auto ok = argv_of({"pt-aubry", "spectrum", "--n", "2", "--gamma0", "0"});
    const int code_ok = cli_main(static_cast<int>(ok.size()), ok.data());
    const auto help = argv_of({"pt-aubry", "--help"});
    const int code_help = cli_main(static_cast<int>(help.size()), help.data());
    std::cout.rdbuf(old);
    CHECK(code_ok == 0);
    CHECK(code_help == 0);

    const auto usage = argv_of({"pt-aubry", "spectrum", "--beta", "7"});
    CHECK(cli_main(static_cast<int>(usage.size()), usage.data()) == 1);

    // broken dimer long enough to trip the overflow guard
    const auto numeric = argv_of({"pt-aubry", "evolve", "--n", "2", "--beta", "1/2",
                                  "--gamma0", "1.5", "--z-end", "20", "--out",
                                  "/dev/null"});
    CHECK(cli_main(static_cast<int>(numeric.size()), numeric.data()) == 2);

    const auto io = argv_of({"pt-aubry", "spectrum", "--n", "2", "--out",
                             "/nonexistent-dir-ptaa/x.csv"});
    CHECK(cli_main(static_cast<int>(io.size()), io.data()) == 3);
}

} // TEST_SUITE
