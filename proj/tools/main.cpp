// Command-line front end: data generation, inversion, uniqueness
// certification, stability studies, and complexity estimation.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bindft/rng.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include "bindft/comb.hpp"
#include "bindft/errors.hpp"
#include "bindft/io.hpp"
#include "bindft/models.hpp"
#include "bindft/opt.hpp"
#include "bindft/polygon.hpp"
#include "bindft/stability.hpp"
#include "bindft/version.hpp"

using namespace bindft;
using nlohmann::json;

namespace {

struct GlobalOpts {
    bool as_json = false;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    std::string command_line;
};

// every run reports enough to reproduce it
void emit_manifest(const GlobalOpts& g, json& out, double wall_s) {
    out["manifest"] = {{"version", kVersion},
                       {"command", g.command_line},
                       {"wall_time_s", wall_s}};
}

void print_manifest_text(const GlobalOpts& g, double wall_s) {
    std::printf("# bindft %s\n", kVersion);
    std::printf("# command: %s\n", g.command_line.c_str());
    std::printf("# wall_time_s: %.3f\n", wall_s);
}

std::vector<double> parse_csv_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

// "--r 5" or "--r 2..7"
std::pair<int, int> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const int v = std::stoi(s);
        return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

void apply_config_file(const std::string& path, CombConfig& comb, OptConfig& opt) {
    for (const auto& [key, value] : read_config_file(path)) {
        if (key == "epsilon") {
            comb.epsilon = std::stod(value);
            opt.epsilon = std::stod(value);
        } else if (key == "d_max") {
            comb.max_depth = std::stoi(value);
        } else if (key == "norm_p") {
            comb.norm = norm_from_string(value);
            opt.norm = norm_from_string(value);
        } else if (key == "delta") {
            opt.delta = std::stod(value);
        } else if (key == "jump_length_initial") {
            opt.jump_length_initial = std::stod(value);
        } else if (key == "jump_increment") {
            opt.jump_increment = std::stod(value);
        } else if (key == "iterations_per_increment") {
            opt.iterations_per_increment = std::stol(value);
        } else if (key == "max_outer_iterations") {
            opt.max_outer_iterations = std::stol(value);
        } else if (key == "jump_origin") {
            opt.jump_origin = jump_origin_from_string(value);
        } else if (key == "stop_metric") {
            opt.stop_metric = stop_metric_from_string(value);
        } else if (key == "local_min_tol") {
            opt.local_min_tol = std::stod(value);
        } else if (key == "rng_seed") {
            opt.rng_seed = std::stoull(value);
        } else {
            throw CorruptDataError("unknown config key '" + key + "'");
        }
    }
}

int cmd_forward(const GlobalOpts& g, const std::string& vector_path, int band,
                const std::string& digits, const std::string& out_path) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto x = read_vector_file(vector_path);
    int sig = 0;
    if (digits != "full") {
        sig = std::stoi(digits);
        if (sig < 2 || sig > 17) throw std::invalid_argument("digits must be 2..17 or full");
    }
    const auto data = dft_forward(x, band);
    if (!out_path.empty()) {
        write_spectral_file(out_path, data, sig);
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (g.as_json) {
        json out;
        out["n"] = data.n_len;
        out["r"] = data.popcount;
        out["band"] = data.band;
        for (int m = 1; m <= data.band; ++m) {
            out["coefficients"].push_back({{"m", m},
                                           {"re", round_significant(data.coeffs[m - 1].real(), sig)},
                                           {"im", round_significant(data.coeffs[m - 1].imag(), sig)}});
        }
        if (!out_path.empty()) out["file"] = out_path;
        emit_manifest(g, out, wall);
        std::cout << out.dump(2) << '\n';
    } else {
        if (out_path.empty()) {
            write_spectral(std::cout, data, sig);
        } else {
            std::printf("wrote %s\n", out_path.c_str());
        }
        print_manifest_text(g, wall);
    }
    return 0;
}

int cmd_invert(const GlobalOpts& g, const std::string& method, const std::string& data_path,
               const std::string& config_path, std::optional<double> epsilon,
               std::optional<int> dmax, std::optional<std::string> norm, std::uint64_t seed,
               int chains, long progress_every, const std::string& out_path) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto data = read_spectral_file(data_path);

    CombConfig comb;
    OptConfig opt;
    if (!config_path.empty()) apply_config_file(config_path, comb, opt);
    if (epsilon) {
        comb.epsilon = *epsilon;
        opt.epsilon = *epsilon;
    }
    if (dmax) comb.max_depth = *dmax;
    if (norm) {
        comb.norm = norm_from_string(*norm);
        opt.norm = norm_from_string(*norm);
    }
    comb.threads = g.threads;
    opt.rng_seed = seed;
    if (progress_every > 0) {
        comb.progress = [](std::uint64_t tested, int depth) {
            std::fprintf(stderr, "tested=%llu depth=%d\n",
                         static_cast<unsigned long long>(tested), depth);
        };
        opt.progress_every = progress_every;
        opt.progress = [](long iter, double cost, double chi, double s) {
            std::fprintf(stderr, "iter=%ld F=%.6e chi=%.6e S=%.3f\n", iter, cost, chi, s);
        };
    }

    InversionResult result;
    if (method == "comb") {
        result = invert_combinatorial(data, comb);
    } else if (method == "opt") {
        if (chains <= 1) {
            result = invert_optimization(data, opt);
        } else {
            // independent restarts; deepest-minimum reduction with ties to
            // the lowest chain index
            std::vector<InversionResult> results(static_cast<std::size_t>(chains));
            std::vector<std::thread> pool;
            for (int c = 0; c < chains; ++c) {
                pool.emplace_back([&, c] {
                    OptConfig chain_cfg = opt;
                    chain_cfg.rng_seed = splitmix64(opt.rng_seed) ^ static_cast<std::uint64_t>(c);
                    chain_cfg.progress = nullptr;
                    results[static_cast<std::size_t>(c)] = invert_optimization(data, chain_cfg);
                });
            }
            for (auto& th : pool) th.join();
            std::size_t best = 0;
            for (std::size_t c = 1; c < results.size(); ++c) {
                const bool b_hit = results[c].stop_condition == 1;
                const bool cur_hit = results[best].stop_condition == 1;
                if ((b_hit && !cur_hit) ||
                    (b_hit == cur_hit && results[c].achieved_chi < results[best].achieved_chi))
                    best = c;
            }
            result = results[best];
            result.deterministic = chains == 1;
        }
    } else {
        throw std::invalid_argument("method must be comb or opt");
    }

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!out_path.empty()) write_vector_file(out_path, result.solution);

    if (g.as_json) {
        json out;
        out["method"] = method;
        out["solution"] = result.solution.to_string();
        out["chi"] = result.achieved_chi;
        out["stop"] = result.stop_condition;
        out["depth"] = result.depth_found;
        out["tested"] = result.candidates_tested.str();
        out["deterministic"] = result.deterministic;
        if (!out_path.empty()) out["file"] = out_path;
        emit_manifest(g, out, wall);
        std::cout << out.dump(2) << '\n';
    } else {
        if (out_path.empty()) write_vector(std::cout, result.solution);
        std::printf("chi=%.17g stop=%d depth=%d tested=%s\n", result.achieved_chi,
                    result.stop_condition, result.depth_found,
                    result.candidates_tested.str().c_str());
        print_manifest_text(g, wall);
    }
    return result.stop_condition == 1 ? 0 : 2;
}

int cmd_certify(const GlobalOpts& g, int n, int r, int band, const std::string& vector_path) {
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<BinaryVector> x;
    if (!vector_path.empty()) x = read_vector_file(vector_path);
    const auto verdict = certify(n, r, band, x ? &*x : nullptr);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string l0 =
        verdict.certified_band ? std::to_string(*verdict.certified_band) : "none";
    if (g.as_json) {
        json out;
        out["status"] = to_string(verdict.status);
        out["L0"] = l0;
        out["reason"] = to_string(verdict.reason);
        emit_manifest(g, out, wall);
        std::cout << out.dump(2) << '\n';
    } else {
        std::printf("status=%s L0=%s reason=%s\n", to_string(verdict.status).c_str(), l0.c_str(),
                    to_string(verdict.reason).c_str());
        print_manifest_text(g, wall);
    }
    return 0;
}

int cmd_polygons(const GlobalOpts& g, const std::string& vector_path, int order) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto x = read_vector_file(vector_path);
    std::vector<int> orders;
    if (order > 0) {
        orders.push_back(order);
    } else {
        for (const int k : factorize(x.n()))
            if (orders.empty() || orders.back() != k) orders.push_back(k);
    }
    json out;
    out["polygons"] = json::array();
    for (const int k : orders) {
        if (k >= x.n()) continue;
        for (const auto& p : find_polygons(x, k)) {
            std::string indices;
            for (const int pos : p.index_set)
                indices += (indices.empty() ? "" : ",") + std::to_string(pos);
            if (g.as_json) {
                out["polygons"].push_back({{"k", p.order_k},
                                           {"residue", p.residue_m},
                                           {"kind", p.full ? "full" : "empty"},
                                           {"indices", p.index_set}});
            } else {
                std::printf("k=%d residue=%d kind=%s indices=%s\n", p.order_k, p.residue_m,
                            p.full ? "full" : "empty", indices.c_str());
            }
        }
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (g.as_json) {
        emit_manifest(g, out, wall);
        std::cout << out.dump(2) << '\n';
    } else {
        print_manifest_text(g, wall);
    }
    return 0;
}

int cmd_stability(const GlobalOpts& g, int n, const std::string& r_spec, int band, int samples,
                  const std::string& eps_csv, std::uint64_t seed, bool exact,
                  std::uint64_t budget) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto [r_lo, r_hi] = parse_range(r_spec);
    const auto epsilons = parse_csv_doubles(eps_csv);
    json rows = json::array();
    if (!g.as_json)
        std::printf("# N\tr\tL\tJ\texact\tseed\tkappa_mean\tkappa_std\tepsilon\tP\n");
    for (int r = r_lo; r <= r_hi; ++r) {
        StabilityOptions opts;
        opts.samples = samples;
        opts.seed = seed;
        opts.threads = g.threads;
        opts.exact = exact;
        if (budget > 0) opts.eval_budget = budget;
        const auto rep = stability_report(n, r, band, epsilons, opts);
        const auto emit_row = [&](double eps, double p, bool with_eps) {
            if (g.as_json) {
                json row = {{"n", rep.n_len},          {"r", rep.popcount},
                            {"band", rep.band},        {"samples", rep.samples_used},
                            {"exact", rep.exact},      {"seed", rep.seed},
                            {"kappa_mean", rep.kappa_mean}, {"kappa_std", rep.kappa_std}};
                if (with_eps) {
                    row["epsilon"] = eps;
                    row["P"] = p;
                }
                rows.push_back(row);
            } else {
                std::printf("%d\t%d\t%d\t%ld\t%d\t%llu\t%.10g\t%.10g", rep.n_len, rep.popcount,
                            rep.band, rep.samples_used, rep.exact ? 1 : 0,
                            static_cast<unsigned long long>(rep.seed), rep.kappa_mean,
                            rep.kappa_std);
                if (with_eps)
                    std::printf("\t%.10g\t%.10g\n", eps, p);
                else
                    std::printf("\t-\t-\n");
            }
        };
        if (rep.cumulative.empty()) {
            emit_row(0, 0, false);
        } else {
            for (const auto& [eps, p] : rep.cumulative) emit_row(eps, p, true);
        }
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (g.as_json) {
        json out;
        out["rows"] = rows;
        emit_manifest(g, out, wall);
        std::cout << out.dump(2) << '\n';
    } else {
        print_manifest_text(g, wall);
    }
    return 0;
}

int cmd_complexity(const GlobalOpts& g, int n, int r, int dmax) {
    const auto t0 = std::chrono::steady_clock::now();
    const BigInt c = complexity_estimate(n, r, dmax);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (g.as_json) {
        json out;
        out["candidates"] = c.str();
        out["exhaustive"] = omega_size(n, r).str();
        emit_manifest(g, out, wall);
        std::cout << out.dump(2) << '\n';
    } else {
        std::printf("candidates=%s exhaustive=%s\n", c.str().c_str(),
                    omega_size(n, r).str().c_str());
        print_manifest_text(g, wall);
    }
    return 0;
}

int cmd_bench(const GlobalOpts& g, int n, int r, int band, int dmax, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto x = random_omega_sample(n, r, seed, 0);
    const auto data = dft_forward(x, band);
    CombConfig cfg;
    cfg.epsilon = 0.0; // force a full sweep
    cfg.max_depth = dmax;
    cfg.threads = g.threads;
    const auto res = invert_combinatorial(data, cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double rate = static_cast<double>(res.candidates_tested) / res.wall_time_s;
    if (g.as_json) {
        json out;
        out["tested"] = res.candidates_tested.str();
        out["seconds"] = res.wall_time_s;
        out["candidates_per_second"] = rate;
        emit_manifest(g, out, wall);
        std::cout << out.dump(2) << '\n';
    } else {
        std::printf("tested=%s seconds=%.3f rate=%.3g/s\n", res.candidates_tested.str().c_str(),
                    res.wall_time_s, rate);
        print_manifest_text(g, wall);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binary vectors from band-limited DFT data: generation, inversion, "
                 "uniqueness certification, and stability analysis"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (g.threads <= 0) g.threads = 1;
    for (int i = 0; i < argc; ++i) {
        if (i) g.command_line += ' ';
        g.command_line += argv[i];
    }
    app.add_flag("--json", g.as_json, "emit one structured JSON object");
    app.add_option("--threads", g.threads, "worker threads (default: hardware)");

    // forward
    auto* fwd = app.add_subcommand("forward", "DFT coefficients of a vector file");
    std::string fwd_vec, fwd_digits = "full", fwd_out;
    int fwd_band = 1;
    fwd->add_option("--vector", fwd_vec, "binary vector file")->required();
    fwd->add_option("--band,-L", fwd_band, "band limit L")->required();
    fwd->add_option("--digits", fwd_digits, "significant figures (2..17) or 'full'");
    fwd->add_option("--out,-o", fwd_out, "output spectral file (default: stdout)");

    // invert
    auto* inv = app.add_subcommand("invert", "reconstruct a binary vector from spectral data");
    std::string inv_method = "comb", inv_data, inv_config, inv_out;
    std::optional<double> inv_eps;
    std::optional<int> inv_dmax;
    std::optional<std::string> inv_norm;
    std::uint64_t inv_seed = 0;
    int inv_chains = 1;
    long inv_progress = 0;
    inv->add_option("--method", inv_method, "comb | opt")->required();
    inv->add_option("--data", inv_data, "spectral data file")->required();
    inv->add_option("--config", inv_config, "key = value config file");
    inv->add_option("--epsilon", inv_eps, "stop threshold");
    inv->add_option("--dmax", inv_dmax, "maximum swap depth (comb)");
    inv->add_option("--norm", inv_norm, "1 | 2 | inf");
    inv->add_option("--seed", inv_seed, "rng seed (opt)");
    inv->add_option("--chains", inv_chains, "independent restarts (opt)");
    inv->add_option("--progress-every", inv_progress, "progress cadence (opt iterations)");
    inv->add_option("--out,-o", inv_out, "solution vector file");

    // certify
    auto* cert = app.add_subcommand("certify", "uniqueness verdict for (N, r, L)");
    int cert_n = 0, cert_r = 0, cert_band = 0;
    std::string cert_vec;
    cert->add_option("--N", cert_n)->required();
    cert->add_option("--r", cert_r)->required();
    cert->add_option("--L", cert_band)->required();
    cert->add_option("--vector", cert_vec, "vector-specific verdict");

    // polygons
    auto* poly = app.add_subcommand("polygons", "full and empty polygons of a vector");
    std::string poly_vec;
    int poly_k = 0;
    poly->add_option("--vector", poly_vec)->required();
    poly->add_option("--order,-k", poly_k, "polygon order (default: each prime divisor)");

    // stability
    auto* stab = app.add_subcommand("stability", "nearest-neighbor ensemble statistics");
    int stab_n = 0, stab_band = 1, stab_samples = 10'000;
    std::string stab_r, stab_eps = "0,1e-4,1e-3";
    std::uint64_t stab_seed = 0, stab_budget = 0;
    bool stab_exact = false;
    stab->add_option("--N", stab_n)->required();
    stab->add_option("--r", stab_r, "popcount or range r1..r2")->required();
    stab->add_option("--L", stab_band)->required();
    stab->add_option("--J", stab_samples, "sample count");
    stab->add_option("--epsilons", stab_eps, "comma-separated thresholds");
    stab->add_option("--seed", stab_seed);
    stab->add_flag("--exact", stab_exact, "scan the whole set instead of sampling");
    stab->add_option("--budget", stab_budget, "evaluation budget override");

    // complexity
    auto* cx = app.add_subcommand("complexity", "search workload for (N, r, d_max)");
    int cx_n = 0, cx_r = 0, cx_d = 0;
    cx->add_option("--N", cx_n)->required();
    cx->add_option("--r", cx_r)->required();
    cx->add_option("--dmax", cx_d)->required();

    // bench
    auto* bench = app.add_subcommand("bench", "candidate throughput on a random instance");
    int bench_n = 31, bench_r = 15, bench_band = 1, bench_d = 2;
    std::uint64_t bench_seed = 1;
    bench->add_option("--N", bench_n);
    bench->add_option("--r", bench_r);
    bench->add_option("--L", bench_band);
    bench->add_option("--dmax", bench_d);
    bench->add_option("--seed", bench_seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (fwd->parsed()) return cmd_forward(g, fwd_vec, fwd_band, fwd_digits, fwd_out);
        if (inv->parsed())
            return cmd_invert(g, inv_method, inv_data, inv_config, inv_eps, inv_dmax, inv_norm,
                              inv_seed, inv_chains, inv_progress, inv_out);
        if (cert->parsed()) return cmd_certify(g, cert_n, cert_r, cert_band, cert_vec);
        if (poly->parsed()) return cmd_polygons(g, poly_vec, poly_k);
        if (stab->parsed())
            return cmd_stability(g, stab_n, stab_r, stab_band, stab_samples, stab_eps, stab_seed,
                                 stab_exact, stab_budget);
        if (cx->parsed()) return cmd_complexity(g, cx_n, cx_r, cx_d);
        if (bench->parsed()) return cmd_bench(g, bench_n, bench_r, bench_band, bench_d, bench_seed);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
