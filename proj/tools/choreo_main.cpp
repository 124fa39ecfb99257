// choreo: experiments on N-body choreographies with weak sigma-homogeneous
// interaction and their travelling-wave continuum limit.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "choreo/io.hpp"
#include "choreo/kernels.hpp"
#include "choreo/minimize.hpp"
#include "choreo/parallel.hpp"

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitQuadrature = 3;
constexpr int kExitCollision = 4;
constexpr int kExitNonConvergence = 5;

// JSON config overrides flags; flags override defaults.
class ConfigOverride {
public:
    void bind(const std::string& key, double* target) {
        appliers_[key] = [target](const json& v) { *target = v.get<double>(); };
    }
    void bind(const std::string& key, int* target) {
        appliers_[key] = [target](const json& v) { *target = v.get<int>(); };
    }
    void bind(const std::string& key, long* target) {
        appliers_[key] = [target](const json& v) { *target = v.get<long>(); };
    }
    void bind(const std::string& key, std::string* target) {
        appliers_[key] = [target](const json& v) { *target = v.get<std::string>(); };
    }
    void apply(const std::string& path) {
        if (path.empty()) return;
        std::ifstream in(path);
        if (!in) throw choreo::DomainError("config: cannot open " + path);
        json doc = json::parse(in);
        if (!doc.is_object()) throw choreo::DomainError("config: top level must be an object");
        for (const auto& [key, value] : doc.items()) {
            auto it = appliers_.find(key);
            if (it == appliers_.end())
                throw choreo::DomainError("config: unknown key '" + key + "'");
            it->second(value);
        }
    }

private:
    std::map<std::string, std::function<void(const json&)>> appliers_;
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoull(item));
    }
    return out;
}

void emit(const std::string& payload, const std::string& file) {
    std::cout << payload;
    if (!file.empty()) {
        std::ofstream out(file);
        if (!out) throw choreo::DomainError("cannot open output file " + file);
        out << payload;
    }
}

int cmd_constants(double sigma, const std::string& json_file) {
    const choreo::ModelParams p = choreo::make_params(sigma);
    json doc{{"sigma", p.sigma},
             {"c", p.c},
             {"v2", p.v2},
             {"predicted_min", p.predicted_minimum()},
             {"lambda_1", 4.0 * kPi * kPi}};
    emit(doc.dump(2) + "\n", json_file);
    return kExitOk;
}

int cmd_spectrum(double sigma, int K, int nodes, const std::string& out_file) {
    const choreo::ModelParams p = choreo::make_params(sigma);
    choreo::QuadratureSpec spec;
    spec.nodes = nodes;
    const choreo::Spectrum sp = choreo::compute_spectrum(p, K, spec);
    std::ostringstream csv;
    choreo::write_spectrum_csv(csv, sp);
    emit(csv.str(), out_file);

    double lambda_min = sp.lambda(1);
    int argmin = 1;
    for (int k = 2; k <= K; ++k)
        if (sp.lambda(k) < lambda_min) {
            lambda_min = sp.lambda(k);
            argmin = k;
        }
    std::cerr << "lambda_min = " << choreo::format_double(lambda_min) << " at k = "
              << argmin << "\n";
    if (argmin != 1)
        throw choreo::QuadratureError("spectrum: lambda_min should sit at k = 1");
    return kExitOk;
}

int cmd_simulate(int N, double sigma, double periods, int steps_per_period,
                 const std::string& traj_file, const std::string& summary_file) {
    const choreo::ModelParams p = choreo::make_params(sigma);
    const choreo::NBodyState init = choreo::ngon_state(N, sigma);
    const double omega = choreo::omega_ngon(N, sigma);
    const double period = 2.0 * kPi / omega;
    const double dt = period / steps_per_period;
    const long steps = static_cast<long>(std::llround(periods * steps_per_period));

    const choreo::Trajectory traj = choreo::simulate(init, dt, steps, sigma);
    if (!traj_file.empty()) {
        std::ofstream out(traj_file);
        if (!out) throw choreo::DomainError("cannot open " + traj_file);
        choreo::write_trajectory_csv(out, traj);
    }

    const double e0 = choreo::energy(traj.states.front(), sigma);
    double drift = 0.0;
    for (const auto& st : traj.states)
        drift = std::max(drift, std::abs(choreo::energy(st, sigma) - e0) / std::abs(e0));

    double return_err = 0.0;
    if (periods >= 1.0) {
        // compare the snapshot nearest one period against the start
        const auto& last = traj.states[std::min<std::size_t>(
            traj.states.size() - 1,
            static_cast<std::size_t>(std::llround(steps_per_period / traj.dt * dt)))];
        const auto& first = traj.states.front();
        for (std::size_t i = 0; i < first.positions.size(); ++i)
            return_err = std::max(return_err,
                                  std::abs(last.positions[i] - first.positions[i]));
    }

    const double tau = period / N;
    const double chor_err = choreo::choreography_error(traj, tau);
    const double omega2_gap = std::abs(omega * omega - 4.0 * kPi * kPi * p.v2);

    json doc{{"N", N},
             {"sigma", sigma},
             {"omega", omega},
             {"omega2", omega * omega},
             {"omega2_gap", omega2_gap},
             {"period", period},
             {"dt", dt},
             {"energy_drift", drift},
             {"choreography_error", chor_err},
             {"return_error", return_err}};
    emit(doc.dump(2) + "\n", summary_file);
    return kExitOk;
}

int cmd_minimize(double sigma, int dim, int K, const std::string& seeds_text,
                 const std::string& out_file, const std::string& loop_file,
                 int max_iterations, double grad_tol) {
    const choreo::ModelParams params = choreo::make_params(sigma);
    const std::vector<std::uint64_t> seeds = parse_seed_list(seeds_text);

    choreo::MinimizeOptions opt;
    opt.max_iterations = max_iterations;
    opt.grad_tol = grad_tol;

    std::vector<choreo::ScanRow> rows;
    std::optional<choreo::FourierLoop> best_loop;
    double best_value = std::numeric_limits<double>::infinity();
    bool all_converged = true;
    for (const std::uint64_t seed : seeds) {
        choreo::MinimizeOptions local = opt;
        local.seed = seed;
        const choreo::MinimizeResult r =
            choreo::minimize_action(params, dim, K, std::nullopt, local);
        choreo::ScanRow row;
        row.sigma = sigma;
        row.seed = seed;
        row.predicted_min = params.predicted_minimum();
        row.achieved_min = r.value;
        row.gap = r.value - row.predicted_min;
        row.circle_dist = r.circle_dist;
        row.iterations = r.iterations;
        row.converged = r.converged;
        rows.push_back(row);
        all_converged = all_converged && r.converged;
        if (r.value < best_value) {
            best_value = r.value;
            best_loop = r.loop;
        }
    }
    std::ostringstream csv;
    choreo::write_scan_csv(csv, rows);
    emit(csv.str(), out_file);
    if (best_loop && !loop_file.empty()) {
        std::ofstream out(loop_file);
        if (!out) throw choreo::DomainError("cannot open " + loop_file);
        choreo::write_loop_csv(out, *best_loop);
    }
    return all_converged ? kExitOk : kExitNonConvergence;
}

int cmd_scan(const std::string& sigmas_text, int dim, int K, const std::string& seeds_text,
             const std::string& out_file, int max_iterations, double grad_tol) {
    const std::vector<double> sigmas = parse_double_list(sigmas_text);
    const std::vector<std::uint64_t> seeds = parse_seed_list(seeds_text);
    choreo::MinimizeOptions opt;
    opt.max_iterations = max_iterations;
    opt.grad_tol = grad_tol;
    const std::vector<choreo::ScanRow> rows = choreo::scan_sigma(sigmas, dim, K, seeds, opt);
    std::ostringstream csv;
    choreo::write_scan_csv(csv, rows);
    emit(csv.str(), out_file);
    for (const auto& row : rows)
        if (!row.converged) return kExitNonConvergence;
    return kExitOk;
}

int cmd_converge(double sigma, const std::string& ladder_text, const std::string& out_file) {
    const choreo::ModelParams params = choreo::make_params(sigma);
    std::vector<int> ladder;
    for (double v : parse_double_list(ladder_text)) ladder.push_back(static_cast<int>(v));
    const choreo::FourierLoop circle = choreo::unit_circle();
    const double limit = 4.0 * kPi * kPi * params.v2;

    std::ostringstream csv;
    csv << "N,force_gap,omega2,omega2_gap\n";
    for (const int N : ladder) {
        const choreo::ForceBridge bridge =
            choreo::discrete_force_vs_pv(N, sigma, circle, 0.0, params);
        const double omega = choreo::omega_ngon(N, sigma);
        csv << N << ',' << choreo::format_double(bridge.gap) << ','
            << choreo::format_double(omega * omega) << ','
            << choreo::format_double(std::abs(omega * omega - limit)) << "\n";
    }
    emit(csv.str(), out_file);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"N-body choreographies with weak interaction and their continuum limit"};
    app.require_subcommand(1);

    int threads = 0;
    bool reproducible = false;
    app.add_option("--threads", threads, "worker threads (default: CHOREO_THREADS or 1)");
    app.add_flag("--reproducible", reproducible,
                 "deterministic compensated reductions and scalar kernels");

    // constants
    auto* c_cmd = app.add_subcommand("constants", "print sigma, c, v2, predicted minimum");
    double c_sigma = 0.5;
    std::string c_json, c_config;
    c_cmd->add_option("--sigma", c_sigma, "interaction exponent in (0,1)")->required();
    c_cmd->add_option("--json", c_json, "also write the JSON payload to this file");
    c_cmd->add_option("--config", c_config, "JSON config overriding flags");

    // spectrum
    auto* sp_cmd = app.add_subcommand("spectrum", "d_k and lambda_k of the nonlocal operator");
    double sp_sigma = 0.5;
    int sp_K = 16, sp_nodes = 64;
    std::string sp_out, sp_config;
    sp_cmd->add_option("--sigma", sp_sigma, "interaction exponent")->required();
    sp_cmd->add_option("-K,--modes", sp_K, "number of modes");
    sp_cmd->add_option("--nodes", sp_nodes, "quadrature nodes per half interval");
    sp_cmd->add_option("--out", sp_out, "CSV output file (default stdout only)");
    sp_cmd->add_option("--config", sp_config, "JSON config overriding flags");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "rotating N-gon dynamics");
    int sim_N = 12, sim_spp = 4096;
    double sim_sigma = 0.5, sim_periods = 1.0;
    std::string sim_traj, sim_summary, sim_config;
    sim_cmd->add_option("-N,--bodies", sim_N, "number of bodies")->required();
    sim_cmd->add_option("--sigma", sim_sigma, "interaction exponent")->required();
    sim_cmd->add_option("--periods", sim_periods, "rotation periods to simulate");
    sim_cmd->add_option("--steps-per-period", sim_spp, "integrator steps per period");
    sim_cmd->add_option("--traj", sim_traj, "trajectory CSV output file");
    sim_cmd->add_option("--summary", sim_summary, "summary JSON output file");
    sim_cmd->add_option("--config", sim_config, "JSON config overriding flags");

    // minimize
    auto* min_cmd = app.add_subcommand("minimize", "multistart action minimization");
    double min_sigma = 0.5, min_tol = 1e-5;
    int min_dim = 2, min_K = 8, min_iters = 4000;
    std::string min_seeds = "0", min_out, min_loop = "best_loop.csv", min_config;
    min_cmd->add_option("--sigma", min_sigma, "interaction exponent")->required();
    min_cmd->add_option("--dim", min_dim, "ambient dimension");
    min_cmd->add_option("-K,--modes", min_K, "Fourier truncation");
    min_cmd->add_option("--seeds", min_seeds, "comma-separated seed list (may be empty)");
    min_cmd->add_option("--out", min_out, "scan CSV output file");
    min_cmd->add_option("--loop", min_loop, "best loop CSV output file");
    min_cmd->add_option("--max-iterations", min_iters, "iteration cap");
    min_cmd->add_option("--grad-tol", min_tol, "gradient norm tolerance");
    min_cmd->add_option("--config", min_config, "JSON config overriding flags");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "minimize across a sigma list");
    std::string scan_sigmas = "0.25,0.5,0.75", scan_seeds = "0,1,2,3,4";
    int scan_dim = 2, scan_K = 8, scan_iters = 4000;
    double scan_tol = 1e-5;
    std::string scan_out, scan_config;
    scan_cmd->add_option("--sigmas", scan_sigmas, "comma-separated sigma list");
    scan_cmd->add_option("--dim", scan_dim, "ambient dimension");
    scan_cmd->add_option("-K,--modes", scan_K, "Fourier truncation");
    scan_cmd->add_option("--seeds", scan_seeds, "comma-separated seed list");
    scan_cmd->add_option("--out", scan_out, "CSV output file");
    scan_cmd->add_option("--max-iterations", scan_iters, "iteration cap");
    scan_cmd->add_option("--grad-tol", scan_tol, "gradient norm tolerance");
    scan_cmd->add_option("--config", scan_config, "JSON config overriding flags");

    // converge
    auto* cv_cmd = app.add_subcommand("converge", "discrete-to-continuum force gaps");
    double cv_sigma = 0.5;
    std::string cv_ladder = "64,128,256,512,1024,2048,4096", cv_out, cv_config;
    cv_cmd->add_option("--sigma", cv_sigma, "interaction exponent")->required();
    cv_cmd->add_option("--ladder", cv_ladder, "comma-separated N ladder");
    cv_cmd->add_option("--out", cv_out, "CSV output file");
    cv_cmd->add_option("--config", cv_config, "JSON config overriding flags");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitDomain;
    }

    try {
        if (threads > 0) choreo::set_thread_count(threads);
        if (reproducible) {
            choreo::set_reduce_mode(choreo::ReduceMode::Kahan);
            choreo::kernels::select(choreo::kernels::Isa::Scalar);
        }

        if (app.got_subcommand(c_cmd)) {
            ConfigOverride cfg;
            cfg.bind("sigma", &c_sigma);
            cfg.bind("json", &c_json);
            cfg.apply(c_config);
            return cmd_constants(c_sigma, c_json);
        }
        if (app.got_subcommand(sp_cmd)) {
            ConfigOverride cfg;
            cfg.bind("sigma", &sp_sigma);
            cfg.bind("K", &sp_K);
            cfg.bind("nodes", &sp_nodes);
            cfg.bind("out", &sp_out);
            cfg.apply(sp_config);
            return cmd_spectrum(sp_sigma, sp_K, sp_nodes, sp_out);
        }
        if (app.got_subcommand(sim_cmd)) {
            ConfigOverride cfg;
            cfg.bind("N", &sim_N);
            cfg.bind("sigma", &sim_sigma);
            cfg.bind("periods", &sim_periods);
            cfg.bind("steps_per_period", &sim_spp);
            cfg.bind("traj", &sim_traj);
            cfg.bind("summary", &sim_summary);
            cfg.apply(sim_config);
            return cmd_simulate(sim_N, sim_sigma, sim_periods, sim_spp, sim_traj,
                                sim_summary);
        }
        if (app.got_subcommand(min_cmd)) {
            ConfigOverride cfg;
            cfg.bind("sigma", &min_sigma);
            cfg.bind("dim", &min_dim);
            cfg.bind("K", &min_K);
            cfg.bind("seeds", &min_seeds);
            cfg.bind("out", &min_out);
            cfg.bind("loop", &min_loop);
            cfg.bind("max_iterations", &min_iters);
            cfg.bind("grad_tol", &min_tol);
            cfg.apply(min_config);
            return cmd_minimize(min_sigma, min_dim, min_K, min_seeds, min_out, min_loop,
                                min_iters, min_tol);
        }
        if (app.got_subcommand(scan_cmd)) {
            ConfigOverride cfg;
            cfg.bind("sigmas", &scan_sigmas);
            cfg.bind("dim", &scan_dim);
            cfg.bind("K", &scan_K);
            cfg.bind("seeds", &scan_seeds);
            cfg.bind("out", &scan_out);
            cfg.bind("max_iterations", &scan_iters);
            cfg.bind("grad_tol", &scan_tol);
            cfg.apply(scan_config);
            return cmd_scan(scan_sigmas, scan_dim, scan_K, scan_seeds, scan_out,
                            scan_iters, scan_tol);
        }
        if (app.got_subcommand(cv_cmd)) {
            ConfigOverride cfg;
            cfg.bind("sigma", &cv_sigma);
            cfg.bind("ladder", &cv_ladder);
            cfg.bind("out", &cv_out);
            cfg.apply(cv_config);
            return cmd_converge(cv_sigma, cv_ladder, cv_out);
        }
    } catch (const choreo::CollisionError& e) {
        std::cerr << "collision: " << e.what() << "\n";
        return kExitCollision;
    } catch (const choreo::QuadratureError& e) {
        std::cerr << "quadrature: " << e.what() << "\n";
        return kExitQuadrature;
    } catch (const choreo::ConsistencyError& e) {
        std::cerr << "consistency: " << e.what() << "\n";
        return kExitQuadrature;
    } catch (const choreo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}
