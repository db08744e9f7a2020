// Command line front end for the conditionally-uncorrelated-components
// volatility toolkit. Every subcommand writes a run manifest next to its
// primary output, and failures produce a machine readable error JSON on
// stderr. Exit codes: 0 success, 2 usage, 3 data, 4 non-convergence,
// 1 internal.

#include "cucgarch/baselines.hpp"
#include "cucgarch/bootstrap.hpp"
#include "cucgarch/csv.hpp"
#include "cucgarch/diagnostics.hpp"
#include "cucgarch/pipeline.hpp"
#include "cucgarch/rng.hpp"
#include "cucgarch/simulator.hpp"
#include "cucgarch/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace cucgarch;

std::string manifest_path_for(const std::string& primary_out) {
    const auto slash = primary_out.find_last_of('/');
    const std::string dir = slash == std::string::npos ? "" : primary_out.substr(0, slash + 1);
    return dir + "run_manifest.json";
}

std::string strip_extension(const std::string& path) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
    return path.substr(0, dot);
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

std::vector<double> parse_weights(const std::string& csv) {
    std::vector<double> w;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            w.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw DataError("cannot parse weight '" + cell + "'");
        }
    }
    if (w.empty()) throw DataError("empty weight list");
    return w;
}

std::vector<std::string> rho_columns(int d) {
    std::vector<std::string> cols;
    for (int i = 0; i < d - 1; ++i)
        for (int j = i + 1; j < d; ++j)
            cols.push_back("rho_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    return cols;
}

void write_paths_csv(const VolatilityPaths& paths, const std::vector<std::string>& tags,
                     const std::string& base) {
    const int d = static_cast<int>(paths.cuc_var.cols());
    std::vector<std::string> vol_cols;
    for (int j = 0; j < d; ++j) vol_cols.push_back("cuc_" + std::to_string(j + 1));
    save_table(paths.cuc_var, vol_cols, tags, base + "_vols.csv");

    if (d > 1) save_table(conditional_correlations(paths), rho_columns(d), tags, base + "_rho.csv");

    Matrix hdiag(paths.cuc_var.rows(), d);
    std::vector<std::string> h_cols;
    for (int j = 0; j < d; ++j) {
        h_cols.push_back("h_" + std::to_string(j + 1) + std::to_string(j + 1));
        for (Eigen::Index t = 0; t < hdiag.rows(); ++t)
            hdiag(t, j) = paths.H[static_cast<std::size_t>(t)](j, j);
    }
    save_table(hdiag, h_cols, tags, base + "_hdiag.csv");
}

json params_to_json(const ExtGarchParams& p) {
    json j;
    j["gamma"] = p.gamma;
    j["alpha"] = std::vector<double>(p.alpha.data(), p.alpha.data() + p.alpha.size());
    j["beta"] = p.beta;
    json active = json::array();
    for (int i : p.active) active.push_back(i + 1);
    j["active"] = active;
    return j;
}

struct ManifestWriter {
    json manifest;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::string path = "run_manifest.json";

    void init(int argc, char** argv, const std::string& primary_out) {
        path = manifest_path_for(primary_out);
        manifest["version"] = kVersion;
        manifest["argv"] = json::array();
        for (int i = 0; i < argc; ++i) manifest["argv"].push_back(argv[i]);
        manifest["status"] = "running";
    }

    void finish(const std::string& status, const json& extra = {}) {
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        manifest["status"] = status;
        manifest["elapsed_ms"] = elapsed;
        if (!extra.empty()) manifest["error"] = extra;
        try {
            write_json(manifest, path);
        } catch (const std::exception&) {
            // Never mask the primary error with a manifest write failure.
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multivariate volatility modelling with conditionally uncorrelated components"};
    app.require_subcommand(1);

    // Shared flag storage.
    std::string input, output = "out.json", model_path, baseline_name = "ogarch";
    std::string estimator = "qmle", density = "normal", lag_agg = "sup", weights1, weights2;
    int k0 = 1, restarts = 10, max_evals = 500, nu = 10, max_add = -1, threads = 0;
    int boot_B = 199, boot_burnin = 500, M = 10, sim_n = 1000, reps = 50;
    double epsilon0 = -1.0, tol_D = 1e-4, t_df = 8.0, ged_shape = 1.5, alpha_level = 0.05;
    std::uint64_t seed = 0;
    bool weighted = false, select_bic = false, t_innovations = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "root RNG seed");
        cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
        cmd->add_option("--out", output, "primary output path");
    };
    auto add_opt_flags = [&](CLI::App* cmd) {
        cmd->add_option("--k0", k0, "maximum conditioning lag");
        cmd->add_option("--epsilon0", epsilon0, "weight floor of the weighted objective");
        cmd->add_flag("--weighted", weighted, "use the weighted objective");
        cmd->add_option("--restarts", restarts, "random restarts");
        cmd->add_option("--tol-D", tol_D, "stopping tolerance on successive transforms");
        cmd->add_option("--max-evals", max_evals, "objective evaluations per angle per restart");
        cmd->add_option("--sup-or-sum", lag_agg, "lag aggregation")
            ->check(CLI::IsMember({"sup", "sum"}));
    };
    auto add_garch_flags = [&](CLI::App* cmd) {
        cmd->add_option("--nu", nu, "likelihood burn-in");
        cmd->add_option("--estimator", estimator, "volatility estimator")
            ->check(CLI::IsMember({"qmle", "lade"}));
        cmd->add_option("--density", density, "quasi-likelihood density")
            ->check(CLI::IsMember({"normal", "ged", "t"}));
        cmd->add_option("--t-df", t_df, "Student-t quasi-density degrees of freedom");
        cmd->add_option("--ged-shape", ged_shape, "GED quasi-density shape");
        cmd->add_flag("--select-bic", select_bic, "stepwise BIC cross-term selection");
        cmd->add_option("--max-add", max_add, "max cross terms added by selection");
    };

    CLI::App* c_whiten = app.add_subcommand("whiten", "whiten a return panel");
    c_whiten->add_option("--input", input)->required();
    add_common(c_whiten);

    CLI::App* c_fit = app.add_subcommand("fit", "fit the full model");
    c_fit->add_option("--input", input)->required();
    add_common(c_fit);
    add_opt_flags(c_fit);
    add_garch_flags(c_fit);

    CLI::App* c_boot = app.add_subcommand("boot-test", "bootstrap existence test and intervals");
    c_boot->add_option("--input", input)->required();
    c_boot->add_option("--model", model_path)->required();
    c_boot->add_option("--boot-B", boot_B, "bootstrap replicates");
    c_boot->add_option("--boot-burnin", boot_burnin, "bootstrap recursion burn-in");
    c_boot->add_option("--alpha", alpha_level, "interval level");
    add_common(c_boot);
    add_opt_flags(c_boot);

    CLI::App* c_conf = app.add_subcommand("conf-set", "confidence set for the transform");
    c_conf->add_option("--input", input)->required();
    c_conf->add_option("--model", model_path)->required();
    c_conf->add_option("--boot-B", boot_B, "bootstrap replicates");
    c_conf->add_option("--boot-burnin", boot_burnin, "bootstrap recursion burn-in");
    c_conf->add_option("--alpha", alpha_level, "set level");
    add_common(c_conf);
    add_opt_flags(c_conf);

    CLI::App* c_diag = app.add_subcommand("diagnose", "portmanteau diagnostics of a fit");
    c_diag->add_option("--input", input)->required();
    c_diag->add_option("--model", model_path)->required();
    c_diag->add_option("--M", M, "portmanteau lag count");
    add_common(c_diag);

    CLI::App* c_base = app.add_subcommand("baseline", "fit a baseline model");
    c_base->add_option("--input", input)->required();
    c_base->add_option("--model", baseline_name, "baseline family")
        ->check(CLI::IsMember({"ogarch", "dcc"}));
    add_common(c_base);
    add_garch_flags(c_base);

    CLI::App* c_sim = app.add_subcommand("simulate", "simulate the reference 3-component model");
    c_sim->add_option("--n", sim_n, "sample length");
    c_sim->add_flag("--t-innovations", t_innovations, "Student-t innovations");
    c_sim->add_option("--t-df", t_df, "innovation degrees of freedom");
    add_common(c_sim);

    CLI::App* c_mc = app.add_subcommand("mc-study", "Monte Carlo study of the estimator");
    c_mc->add_option("--n", sim_n, "sample length per replication");
    c_mc->add_option("--reps", reps, "replications");
    add_common(c_mc);
    add_opt_flags(c_mc);
    add_garch_flags(c_mc);

    CLI::App* c_port = app.add_subcommand("portfolio", "portfolio volatility path");
    c_port->add_option("--input", input)->required();
    c_port->add_option("--model", model_path)->required();
    c_port->add_option("--weights", weights1, "comma separated weights")->required();
    c_port->add_option("--weights2", weights2, "second weight vector (cross covariance)");
    add_common(c_port);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints usage / help text
        return rc == 0 ? 0 : 2;
    }

    ManifestWriter manifest;
    manifest.init(argc, argv, output);
    manifest.manifest["seed"] = seed;

    auto make_opt = [&] {
        CucOptConfig opt;
        opt.k0 = k0;
        opt.epsilon0 = epsilon0;
        opt.weighted = weighted;
        opt.lag_agg = lag_agg == "sum" ? LagAggregate::Sum : LagAggregate::Sup;
        opt.restarts = restarts;
        opt.tol_D = tol_D;
        opt.max_evals_per_angle = max_evals;
        opt.seed = derive_seed(seed, 0x0E57ULL);
        return opt;
    };
    auto make_garch = [&] {
        GarchFitConfig g;
        g.nu = nu;
        g.density = density == "ged" ? QuasiDensity::Ged
                    : density == "t" ? QuasiDensity::StudentT
                                     : QuasiDensity::Normal;
        g.t_df = t_df;
        g.ged_shape = ged_shape;
        return g;
    };

    try {
        if (c_whiten->parsed()) {
            const ReturnPanel panel = load_returns(input);
            auto [white, transform] = whiten(panel);
            save_panel(white, output);
            manifest.manifest["n"] = white.values.rows();
            manifest.manifest["d"] = white.values.cols();
        } else if (c_fit->parsed()) {
            const ReturnPanel panel = load_returns(input);
            PipelineConfig cfg;
            cfg.opt = make_opt();
            cfg.garch = make_garch();
            cfg.estimator = estimator;
            cfg.select_bic = select_bic;
            cfg.max_add = max_add;
            cfg.threads = threads;
            const CucModel model = fit_cuc_model(panel, cfg);
            save_model(model, output);
            write_paths_csv(model_paths(model, panel), panel.timestamps,
                            strip_extension(output));
            manifest.manifest["psi_value"] = model.meta.psi_value;
        } else if (c_boot->parsed() || c_conf->parsed()) {
            const ReturnPanel panel = load_returns(input);
            const CucModel model = load_model(model_path);
            const Matrix X = whitened_data(model, panel);
            const auto [Z, residuals] = model_residuals(model, X);

            BootstrapConfig cfg;
            cfg.B = boot_B;
            cfg.burn_in = boot_burnin;
            cfg.seed = seed;
            cfg.opt = make_opt();
            cfg.garch = make_garch();
            cfg.garch.nu = model.meta.nu;
            cfg.threads = threads;

            json out_json;
            if (c_conf->parsed()) {
                cfg.refit_garch = false;
                const auto runs = run_bootstrap(X, model, residuals, cfg);
                std::vector<double> d_draws;
                for (const auto& r : runs) d_draws.push_back(r.d_star);
                out_json["B"] = static_cast<int>(runs.size());
                out_json["alpha"] = alpha_level;
                out_json["c_alpha"] = confidence_set_A(d_draws, alpha_level);
                out_json["d_draws"] = d_draws;
            } else {
                cfg.refit_garch = true;
                const auto runs = run_bootstrap(X, model, residuals, cfg);
                BallFamily balls = build_ball_family(X, cfg.opt.k0, cfg.balls);
                if (cfg.opt.weighted && cfg.opt.epsilon0 >= 0.0)
                    balls.epsilon0 = cfg.opt.epsilon0;
                const double psi_obs =
                    cfg.opt.weighted
                        ? psi_n_weighted(model.A_hat, X, balls, cfg.opt.lag_agg)
                        : psi_n(model.A_hat, X, balls, cfg.opt.lag_agg);

                std::vector<double> psi_star, d_draws;
                for (const auto& r : runs) {
                    psi_star.push_back(r.psi_star);
                    d_draws.push_back(r.d_star);
                }
                int exceed = 0;
                for (double v : psi_star)
                    if (v >= psi_obs) ++exceed;
                out_json["psi_obs"] = psi_obs;
                out_json["psi_star"] = psi_star;
                out_json["p_value"] = static_cast<double>(exceed) / psi_star.size();
                json c_alpha;
                for (double a : {0.01, 0.05, 0.10}) {
                    if (static_cast<double>(psi_star.size()) * a >= 1.0)
                        c_alpha[std::to_string(a).substr(0, 4)] = kth_largest(
                            psi_star, bracket_rank(static_cast<int>(psi_star.size()), a));
                }
                out_json["c_alpha"] = c_alpha;
                out_json["c_alpha_D"] = confidence_set_A(d_draws, alpha_level);

                json intervals;
                const int d = model.dim();
                for (int j = 0; j < d; ++j) {
                    std::vector<double> alphas, betas;
                    for (const auto& r : runs) {
                        alphas.push_back(r.params_star[static_cast<std::size_t>(j)].alpha(j));
                        betas.push_back(r.params_star[static_cast<std::size_t>(j)].beta);
                    }
                    const auto ia = percentile_interval(alphas, alpha_level);
                    const auto ib = percentile_interval(betas, alpha_level);
                    intervals["alpha_" + std::to_string(j + 1)] = {ia.first, ia.second};
                    intervals["beta_" + std::to_string(j + 1)] = {ib.first, ib.second};
                }
                out_json["intervals"] = intervals;
            }
            out_json["seed"] = seed;
            write_json(out_json, output);
        } else if (c_diag->parsed()) {
            const ReturnPanel panel = load_returns(input);
            const CucModel model = load_model(model_path);
            const ReturnPanel centered = mean_delete(panel);
            const VolatilityPaths paths = model_paths(model, panel);
            const QDiagnostics diag = q_diagnostics(centered.values, paths, M);

            const int d = model.dim();
            const int pairs = d * (d + 1) / 2;
            Matrix table(pairs, 4);
            std::vector<std::string> tags;
            int row = 0;
            for (int i = 0; i < d; ++i) {
                for (int j = i; j < d; ++j, ++row) {
                    tags.push_back(std::to_string(i + 1) + std::to_string(j + 1));
                    table(row, 0) = diag.Q.at({i, j});
                    table(row, 1) = diag.p_values.at({i, j});
                    table(row, 2) = diag.stars(i, j);
                    table(row, 3) = M;
                }
            }
            save_table(table, {"Q", "p_value", "stars", "M"}, tags, output, "pair");
        } else if (c_base->parsed()) {
            const ReturnPanel panel = load_returns(input);
            const std::string base = strip_extension(output);
            if (baseline_name == "ogarch") {
                auto [model, paths] = fit_ogarch(panel, make_garch());
                save_model(model, output);
                write_paths_csv(paths, panel.timestamps, base);
            } else {
                DccConfig cfg;
                cfg.garch = make_garch();
                auto [params, paths] = fit_dcc(panel, cfg);
                json j;
                j["theta1"] = params.theta1;
                j["theta2"] = params.theta2;
                j["boundary"] = params.boundary;
                json marginals = json::array();
                for (const auto& m : params.marginals)
                    marginals.push_back({{"omega", m.omega},
                                         {"alpha", m.alpha},
                                         {"beta", m.beta},
                                         {"converged", m.converged}});
                j["marginals"] = marginals;
                write_json(j, output);
                write_paths_csv(paths, panel.timestamps, base);
            }
        } else if (c_sim->parsed()) {
            SimConfig cfg = default_sim_config(sim_n, seed);
            if (t_innovations) {
                cfg.law = InnovationLaw::StudentT;
                cfg.t_df = t_df;
            }
            const Matrix X = simulate_cuc_garch(cfg);
            ReturnPanel panel;
            panel.values = X;
            panel.labels = {"x1", "x2", "x3"};
            save_panel(panel, output);
        } else if (c_mc->parsed()) {
            McConfig cfg;
            cfg.sim = default_sim_config(sim_n, seed);
            cfg.replications = reps;
            cfg.opt = make_opt();
            cfg.garch = make_garch();
            cfg.threads = threads;
            const McSummary summary = monte_carlo_study(cfg);

            const int ncols = static_cast<int>(summary.columns.size());
            Matrix table(5, ncols);
            table.row(0) = summary.mean.transpose();
            table.row(1) = summary.median.transpose();
            table.row(2) = summary.stdev.transpose();
            table.row(3) = summary.bias.transpose();
            table.row(4) = summary.rmse.transpose();
            save_table(table, summary.columns, {"mean", "median", "stdev", "bias", "rmse"},
                       output, "stat");
            save_table(summary.draws, summary.columns, {}, strip_extension(output) + "_draws.csv");
            manifest.manifest["replications"] = summary.replications;
            manifest.manifest["failures"] = summary.failures;
        } else if (c_port->parsed()) {
            const ReturnPanel panel = load_returns(input);
            const CucModel model = load_model(model_path);
            const VolatilityPaths paths = model_paths(model, panel);
            const std::vector<double> w1 = parse_weights(weights1);
            Vector b1 = Eigen::Map<const Vector>(w1.data(), static_cast<Eigen::Index>(w1.size()));
            Vector vol;
            if (!weights2.empty()) {
                const std::vector<double> w2 = parse_weights(weights2);
                Vector b2 =
                    Eigen::Map<const Vector>(w2.data(), static_cast<Eigen::Index>(w2.size()));
                vol = portfolio_vol(model, paths.cuc_var, b1, &b2);
            } else {
                vol = portfolio_vol(model, paths.cuc_var, b1);
            }
            save_table(vol, {"portfolio_var"}, panel.timestamps, output);
        }
        manifest.finish("ok");
        return 0;
    } catch (const ConvergenceError& e) {
        json err{{"error", "non-convergence"}, {"message", e.what()}};
        manifest.finish("error", err);
        std::cerr << err.dump() << "\n";
        return 4;
    } catch (const DataError& e) {
        json err{{"error", "data"}, {"message", e.what()}};
        manifest.finish("error", err);
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const DimensionError& e) {
        json err{{"error", "data"}, {"message", e.what()}};
        manifest.finish("error", err);
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        json err{{"error", "internal"}, {"message", e.what()}};
        manifest.finish("error", err);
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
