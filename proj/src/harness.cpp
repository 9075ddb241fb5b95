#include "stablewave/harness.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stablewave/errors.hpp"
#include "stablewave/parallel.hpp"
#include "stablewave/stats.hpp"

namespace stablewave {

namespace {

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: field '" + key + "' expects an integer, got '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: field '" + key + "' expects an unsigned integer, got '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: field '" + key + "' expects a number, got '" + value + "'");
    }
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

int log2_exact(std::int64_t n) {
    int p = 0;
    while ((std::int64_t{1} << p) < n) ++p;
    return p;
}

} // namespace

void ExperimentConfig::apply_override(const std::string& key, const std::string& value) {
    if (key == "mode") mode = value;
    else if (key == "H") sim.H = parse_double(key, value);
    else if (key == "alpha") sim.alpha = parse_double(key, value);
    else if (key == "n_grid") sim.n_grid = parse_long(key, value);
    else if (key == "truncation") sim.truncation = static_cast<int>(parse_long(key, value));
    else if (key == "seed") sim.seed = parse_u64(key, value);
    else if (key == "max_cells") sim.max_cells = parse_long(key, value);
    else if (key == "wavelet") wavelet = value;
    else if (key == "j_min") j_min = static_cast<int>(parse_long(key, value));
    else if (key == "j_max") j_max = static_cast<int>(parse_long(key, value));
    else if (key == "delta") delta = parse_double(key, value);
    else if (key == "replicates") replicates = parse_long(key, value);
    else if (key == "out") out_path = value;
    else if (key == "threads") threads = static_cast<int>(parse_long(key, value));
    else throw ConfigError("config: unknown key '" + key + "'");
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open '" + path + "'");
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(line_no) + " is not key=value: '" +
                              stripped + "'");
        try {
            cfg.apply_override(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("config: line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

int ExperimentConfig::oversample() const { return log2_exact(sim.n_grid) - j_max; }

void ExperimentConfig::validate() const {
    if (mode != "simulate" && mode != "analyze" && mode != "estimate" && mode != "theory" &&
        mode != "mc")
        throw ConfigError("config: mode '" + mode + "' is not one of simulate|analyze|estimate|theory|mc");
    sim.validate();
    if (threads < 1) throw ConfigError("config: threads must be >= 1");
    if (replicates < 0) throw ConfigError("config: replicates must be >= 0");
    if (mode == "analyze" || mode == "estimate" || mode == "mc") {
        if (j_min < 0 || j_min > j_max) throw ConfigError("config: need 0 <= j_min <= j_max");
        if (oversample() < 3)
            throw ConfigError("config: n_grid must be >= 2^(j_max + 3) for the coefficient quadrature");
    }
    if (mode == "theory") {
        if (j_min < 1 || j_min > j_max) throw ConfigError("config: need 1 <= j_min <= j_max");
        if (!(delta > 0.0 && delta < 1.0 / 3.0)) throw ConfigError("config: delta must lie in (0, 1/3)");
    }
    if (mode == "estimate" || mode == "mc") {
        // inference regime: strict interior of the parameter set
        if (!(sim.alpha < 2.0 && sim.H > 1.0 / sim.alpha))
            throw ConfigError("config: estimation requires alpha in (1,2) and H > 1/alpha");
    }
    (void)builtin_wavelet(wavelet); // throws on unknown names
}

std::vector<std::string> ExperimentConfig::provenance() const {
    // Thread count is an execution hint, deliberately left out so serial and
    // parallel runs emit identical bytes.
    std::ostringstream os;
    os << "mode=" << mode << " H=" << format_double(sim.H) << " alpha=" << format_double(sim.alpha)
       << " n_grid=" << sim.n_grid << " truncation=" << sim.truncation << " seed=" << sim.seed
       << " wavelet=" << wavelet << " j_min=" << j_min << " j_max=" << j_max
       << " delta=" << format_double(delta) << " replicates=" << replicates;
    return {std::string(kToolVersion), os.str()};
}

ExperimentConfig parse_cli(std::span<const std::string> args) {
    if (args.empty()) throw ConfigError("usage: stablewave <mode> [--config FILE] [--key value ...]");
    ExperimentConfig cfg;
    // --config (if any) loads first, then overrides apply in CLI order
    std::vector<std::pair<std::string, std::string>> overrides;
    std::string config_path;
    for (std::size_t i = 1; i < args.size(); i += 2) {
        const std::string& key = args[i];
        if (key.rfind("--", 0) != 0)
            throw ConfigError("cli: expected --key, got '" + key + "'");
        if (i + 1 >= args.size()) throw ConfigError("cli: missing value for '" + key + "'");
        const std::string name = key.substr(2);
        if (name == "config") config_path = args[i + 1];
        else overrides.emplace_back(name, args[i + 1]);
    }
    if (!config_path.empty()) cfg = ExperimentConfig::from_file(config_path);
    cfg.mode = args[0];
    for (const auto& [k, v] : overrides) cfg.apply_override(k, v);
    return cfg;
}

RngStream derive_seed(std::uint64_t master, std::uint64_t replicate) {
    return RngStream(master, replicate);
}

SamplePath run_simulate(const ExperimentConfig& cfg) {
    return simulate_path(cfg.sim, 0);
}

WaveletPyramid run_analyze(const ExperimentConfig& cfg) {
    const auto psi = builtin_wavelet(cfg.wavelet);
    const auto path = run_simulate(cfg);
    return analyze(path, psi, cfg.j_min, cfg.j_max, cfg.oversample());
}

EstimateTrace run_estimate(const ExperimentConfig& cfg) {
    return estimate_trace(run_analyze(cfg), cfg.sim.H);
}

std::vector<TheoryRow> run_theory(const ExperimentConfig& cfg) {
    const auto psi = builtin_wavelet(cfg.wavelet);
    KernelProfile profile(cfg.sim.H, cfg.sim.alpha, psi);
    std::vector<TheoryRow> rows;
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
        const auto diag = profile.diagnostic(j, cfg.delta);
        rows.push_back({"e_j", j, cfg.delta, static_cast<double>(diag.e_j), false, 0.0});
        rows.push_back({"g_scale", j, cfg.delta, diag.g_scale, false, 0.0});
        rows.push_back({"r_scale", j, cfg.delta, diag.r_scale, true, diag.r_bound});
    }
    return rows;
}

McReport run_mc(const ExperimentConfig& cfg) {
    const auto psi = builtin_wavelet(cfg.wavelet);
    const int levels = cfg.j_max - cfg.j_min + 1;
    McReport report;
    report.replicates = cfg.replicates;
    report.provenance = cfg.provenance();
    if (cfg.replicates == 0) return report;

    struct Cell {
        double alpha_hat = 0;
        bool flagged = false;
    };
    std::vector<std::vector<Cell>> results(static_cast<std::size_t>(cfg.replicates));
    parallel_for(cfg.replicates, cfg.threads, [&](long rep) {
        const auto path = simulate_path(cfg.sim, static_cast<std::uint64_t>(rep));
        const auto pyr = analyze(path, psi, cfg.j_min, cfg.j_max, cfg.oversample());
        const auto trace = estimate_trace(pyr, cfg.sim.H);
        auto& cells = results[static_cast<std::size_t>(rep)];
        cells.resize(static_cast<std::size_t>(levels));
        for (int l = 0; l < levels; ++l)
            cells[static_cast<std::size_t>(l)] = {trace.rows[static_cast<std::size_t>(l)].alpha_hat,
                                                  trace.rows[static_cast<std::size_t>(l)].flagged};
    });

    for (int l = 0; l < levels; ++l) {
        McRow row;
        row.j = cfg.j_min + l;
        std::vector<double> vals;
        for (const auto& cells : results) {
            const auto& c = cells[static_cast<std::size_t>(l)];
            if (c.flagged) ++row.n_flagged;
            else vals.push_back(c.alpha_hat);
        }
        if (!vals.empty()) {
            std::sort(vals.begin(), vals.end());
            row.alpha_hat_median = quantile_sorted(vals, 0.5);
            row.alpha_hat_iqr = quantile_sorted(vals, 0.75) - quantile_sorted(vals, 0.25);
        }
        report.rows.push_back(row);
    }
    return report;
}

int run(const ExperimentConfig& cfg) {
    cfg.validate();
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw IoError("cannot open output file '" + cfg.out_path + "'");
    if (cfg.mode == "simulate") {
        write_path_csv(out, run_simulate(cfg));
    } else if (cfg.mode == "analyze") {
        write_pyramid_csv(out, run_analyze(cfg));
    } else if (cfg.mode == "estimate") {
        write_trace_csv(out, run_estimate(cfg));
    } else if (cfg.mode == "theory") {
        const auto rows = run_theory(cfg);
        write_theory_csv(out, rows);
    } else if (cfg.mode == "mc") {
        if (cfg.replicates == 0)
            std::cerr << "warning: replicates=0, writing an empty report\n";
        const auto report = run_mc(cfg);
        write_mc_csv(out, report.rows, report.provenance);
    }
    out.flush();
    if (!out) throw IoError("write failed for '" + cfg.out_path + "'");
    return 0;
}

} // namespace stablewave
