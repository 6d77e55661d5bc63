// seqcmf: command-line front end for the sequential global-null tests.
//
//   seqcmf run --input stream.csv --out dir
//   seqcmf simulate --dgp step --replicates 100 --out dir
//   seqcmf cs --input stream.csv --out dir
//   seqcmf calibrate-rho --t-star 750 --alpha 0.1

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "seqcmf/boundary.hpp"
#include "seqcmf/harness.hpp"

namespace fs = std::filesystem;
using namespace seqcmf;

namespace {

constexpr int kExitConfig = 2;

// Flags that override the config file. Only flags actually given are applied.
struct Overrides {
    std::optional<double> alpha, rho, gamma, eps_scale, var_floor, var_ceiling, delta, conc, null_value;
    std::optional<std::size_t> t0, horizon, replicates, bins, grid_stride, checkpoint_stride, threads, knn_k;
    std::optional<std::size_t> grid_points;
    std::optional<double> grid_lo, grid_hi;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> method, dgp, regressor;
    bool early_stop = false;
    std::string config;
    std::string out = ".";

    void add_common(CLI::App* app) {
        app->add_option("--config", config, "Flat JSON config file");
        app->add_option("--out", out, "Output directory")->capture_default_str();
        app->add_option("--alpha", alpha, "Level");
        app->add_option("--rho", rho, "Mixture boundary parameter");
        app->add_option("--t0", t0, "Burn-in time");
        app->add_option("--gamma", gamma, "Weight-threshold decay exponent");
        app->add_option("--eps-scale", eps_scale, "Weight-threshold constant");
        app->add_option("--var-floor", var_floor, "Variance floor l");
        app->add_option("--var-ceiling", var_ceiling, "Variance ceiling");
        app->add_option("--seed", seed, "Base seed");
        app->add_option("--horizon", horizon, "Maximum number of observations");
        app->add_option("--regressor", regressor, "knn | ridge | mlp | oracle | constant");
        app->add_option("--knn-k", knn_k, "Neighbours for kNN");
        app->add_option("--null", null_value, "Constant null value f");
        app->add_option("--checkpoint-stride", checkpoint_stride, "Write a record every n steps");
    }

    void add_method(CLI::App* app) {
        app->add_option("--method", method, "gaavi | binned");
        app->add_option("--bins", bins, "Bins for the binned baseline");
        app->add_flag("--early-stop", early_stop, "Stop at the first rejection");
    }

    void add_simulation(CLI::App* app) {
        app->add_option("--dgp", dgp, "null | step | bump | sine");
        app->add_option("--delta", delta, "Shape amplitude");
        app->add_option("--conc", conc, "Beta concentration c");
        app->add_option("--replicates", replicates, "Monte Carlo replicates");
        app->add_option("--grid-stride", grid_stride, "CDF grid spacing");
        app->add_option("--threads", threads, "Worker threads (0: all cores)");
    }

    void add_grid(CLI::App* app) {
        app->add_option("--grid-lo", grid_lo, "Lowest candidate");
        app->add_option("--grid-hi", grid_hi, "Highest candidate");
        app->add_option("--grid-points", grid_points, "Number of candidates");
    }

    Settings resolve() const {
        Settings s;
        if (!config.empty()) {
            std::ifstream in(config);
            if (!in) throw Error(ErrorKind::InvalidInput, "cannot open config '" + config + "'");
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorKind::InvalidInput, std::string("config is not valid JSON: ") + e.what());
            }
            s = settings_from_json(j, s);
        }
        if (alpha) s.test.alpha = *alpha;
        if (rho) s.test.rho = *rho;
        if (t0) s.test.t0 = *t0;
        if (gamma) s.test.gamma = *gamma;
        if (eps_scale) s.test.eps_scale = *eps_scale;
        if (var_floor) s.test.var_floor = *var_floor;
        if (var_ceiling) s.test.var_ceiling = *var_ceiling;
        if (seed) s.test.seed = *seed;
        if (horizon) s.horizon = *horizon;
        if (replicates) s.replicates = *replicates;
        if (bins) s.bins = *bins;
        if (grid_stride) s.grid_stride = *grid_stride;
        if (checkpoint_stride) s.checkpoint_stride = *checkpoint_stride;
        if (threads) s.threads = *threads;
        if (knn_k) s.regressor.knn_k = *knn_k;
        if (method) s.method = parse_method(*method);
        if (dgp) s.dgp = parse_shape(*dgp);
        if (regressor) s.regressor.kind = parse_regressor_kind(*regressor);
        if (delta) s.delta = *delta;
        if (conc) s.concentration = *conc;
        if (null_value) s.null_value = *null_value;
        if (grid_lo) s.grid_lo = *grid_lo;
        if (grid_hi) s.grid_hi = *grid_hi;
        if (grid_points) s.grid_points = *grid_points;
        if (early_stop) s.early_stop = true;
        for (const auto& w : s.config().warnings()) std::cerr << "warning: " << w << '\n';
        return s;
    }
};

std::ofstream open_out(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw Error(ErrorKind::InvalidInput, "cannot write " + (dir / name).string());
    return os;
}

void write_json(const fs::path& dir, const std::string& name, const nlohmann::json& j) {
    auto os = open_out(dir, name);
    os << j.dump(2) << '\n';
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open input '" + path + "'");
    return in;
}

int cmd_run(const Overrides& o, const std::string& input) {
    const Settings s = o.resolve();
    auto in = open_in(input);
    CsvStream stream(in);
    const fs::path dir(o.out);
    auto records = open_out(dir, s.method == Method::Binned ? "bins.csv" : "records.csv");
    const auto sum = run_stream(stream, stream.kind(), stream.dim(), s, records);
    write_json(dir, "summary.json", sum.to_json(s, stream.kind()));
    std::cout << "n_f=" << (sum.n_f ? std::to_string(*sum.n_f) : std::string("none")) << " t=" << sum.t_consumed
              << '\n';
    return 0;
}

int cmd_simulate(const Overrides& o, const std::string& dump_stream, std::size_t dump_replicate) {
    const Settings s = o.resolve();
    const fs::path dir(o.out);
    if (!dump_stream.empty()) {
        std::ofstream os(dump_stream, std::ios::binary);
        if (!os) throw Error(ErrorKind::InvalidInput, "cannot write " + dump_stream);
        dump_replicate_stream(s, dump_replicate, os);
    }
    const auto res = simulate(s);
    {
        auto os = open_out(dir, "cdf.csv");
        write_cdf(os, res.cdf);
    }
    {
        auto os = open_out(dir, "times.csv");
        write_times(os, res);
    }
    nlohmann::json j;
    j["config"] = settings_to_json(s);
    j["replicates"] = res.n_f.size();
    std::size_t rejected = 0;
    for (const auto& t : res.n_f) rejected += t.has_value();
    j["rejected"] = rejected;
    j["fraction_rejected"] = res.cdf.back().fraction_rejected;
    write_json(dir, "summary.json", j);
    std::cout << "rejected " << rejected << "/" << res.n_f.size() << " by t=" << s.horizon << '\n';
    return 0;
}

int cmd_cs(const Overrides& o, const std::string& input) {
    const Settings s = o.resolve();
    auto in = open_in(input);
    CsvStream stream(in);
    const fs::path dir(o.out);
    auto os = open_out(dir, "cs.csv");
    const auto sum = run_cs(stream, stream.kind(), stream.dim(), s, os);
    write_json(dir, "summary.json", sum.to_json(s, stream.kind()));
    if (sum.survivors.hull)
        std::cout << "hull [" << format_real(sum.survivors.hull->first) << ", "
                  << format_real(sum.survivors.hull->second) << "] survivors=" << sum.survivors.count << '\n';
    else
        std::cout << "no surviving candidates\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential anytime-valid tests of global nulls on conditional means and treatment effects"};
    app.require_subcommand(1);

    Overrides run_o, sim_o, cs_o;
    std::string run_input, cs_input, dump_stream;
    std::size_t dump_replicate = 0;

    auto* run = app.add_subcommand("run", "Test one stream file and write per-step records");
    run_o.add_common(run);
    run_o.add_method(run);
    run->add_option("--input", run_input, "Stream CSV")->required();

    auto* sim = app.add_subcommand("simulate", "Monte Carlo rejection-time CDF on a synthetic DGP");
    sim_o.add_common(sim);
    sim_o.add_method(sim);
    sim_o.add_simulation(sim);
    sim->add_option("--dump-stream", dump_stream, "Also write one replicate's stream to this CSV");
    sim->add_option("--dump-replicate", dump_replicate, "Replicate index for --dump-stream");

    auto* cs = app.add_subcommand("cs", "Grid confidence sequence over constant nulls");
    cs_o.add_common(cs);
    cs_o.add_grid(cs);
    cs->add_option("--input", cs_input, "Stream CSV")->required();

    std::size_t t_star = 0;
    double rho_alpha = 0.1;
    auto* cal = app.add_subcommand("calibrate-rho", "rho that makes the boundary tightest at t*");
    cal->add_option("--t-star", t_star, "Target time")->required();
    cal->add_option("--alpha", rho_alpha, "Level")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) return cmd_run(run_o, run_input);
        if (*sim) return cmd_simulate(sim_o, dump_stream, dump_replicate);
        if (*cs) return cmd_cs(cs_o, cs_input);
        if (*cal) {
            std::printf("%.17g\n", rho_for_target_time(t_star, rho_alpha));
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: line " << e.line() << ": " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const bool config_error = e.kind() == ErrorKind::OutOfRange || e.kind() == ErrorKind::InvalidInput ||
                                  e.kind() == ErrorKind::StreamKindMismatch;
        return config_error ? kExitConfig : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
