// mibound: lower bounds on the mutual information of a binary and a finite
// random variable over a variational-distance ball around a reference joint
// distribution, plus confidence floors for plug-in estimates from counts.
//
// Subcommands:
//   mi     print the mutual information of a joint distribution
//   bound  minimize I over the eps-ball and print the bound
//   sweep  write the full gamma curve as CSV
//   ci     counts -> empirical joint -> eps(n, K, delta) -> floor
//
// Exit codes: 0 ok, 2 invalid input, 3 uncertified bound, 4 output I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mibound/mibound.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitUncertified = 3;
constexpr int kExitIo = 4;

struct CommonOpts {
    std::string input;
    std::string unit = "bits";
    std::string policy = "strict";
    double gap_tol = 1e-7;
    int max_iters = 50000;
    bool json = false;
};

void add_solver_flags(CLI::App* cmd, CommonOpts& opt) {
    cmd->add_option("--gap-tol", opt.gap_tol, "duality-gap stopping threshold in nats")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iters", opt.max_iters, "solver iteration cap")
        ->check(CLI::PositiveNumber);
}

void add_common_flags(CLI::App* cmd, CommonOpts& opt, bool with_unit = true) {
    cmd->add_option("input", opt.input, "path to a JSON file or an inline JSON object")
        ->required();
    if (with_unit) {
        cmd->add_option("--unit", opt.unit, "display unit")
            ->check(CLI::IsMember({"bits", "nats"}))
            ->capture_default_str();
    }
    cmd->add_option("--policy", opt.policy, "input validation policy")
        ->check(CLI::IsMember({"strict", "renormalize"}))
        ->capture_default_str();
    cmd->add_flag("--json", opt.json, "machine-readable JSON output");
}

mibound::ValidationPolicy policy_of(const std::string& s) {
    return s == "renormalize" ? mibound::ValidationPolicy::Renormalize
                              : mibound::ValidationPolicy::Strict;
}

// The input argument is inline JSON when it starts with '{', otherwise a path.
mibound::JointDist load_joint(const std::string& input, mibound::ValidationPolicy policy) {
    std::string text;
    if (!input.empty() && input.front() == '{') {
        text = input;
    } else {
        std::ifstream in(input);
        if (!in) throw mibound::ParseError("cannot open input file: " + input);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return mibound::parse_joint_json(text, policy);
}

double in_unit(const mibound::InfoValue& v, const std::string& unit) {
    return unit == "nats" ? v.nats : v.bits();
}

std::string fixed4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

int run_mi(const CommonOpts& opt) {
    const mibound::JointDist p = load_joint(opt.input, policy_of(opt.policy));
    const mibound::InfoValue mi = mibound::mutual_information(p);
    if (opt.json) {
        nlohmann::json out{{"mi_bits", mi.bits()}, {"mi_nats", mi.nats}, {"unit", opt.unit}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << fixed4(in_unit(mi, opt.unit)) << "\n";
    }
    return kExitOk;
}

nlohmann::json bound_json(const mibound::BoundReport& rep, double eps, int n_points) {
    return nlohmann::json{{"bound_bits", rep.bound.bits()},
                          {"bound_nats", rep.bound.nats},
                          {"arg_gamma", rep.arg_gamma},
                          {"i_of_p_bits", rep.i_of_p.bits()},
                          {"i_of_p_nats", rep.i_of_p.nats},
                          {"eps", eps},
                          {"n_points", n_points},
                          {"certified", rep.certified},
                          {"argmin", mibound::joint_to_json(rep.argmin)}};
}

int run_bound(const CommonOpts& opt, double eps, int n_points, bool refine) {
    const mibound::JointDist p = load_joint(opt.input, policy_of(opt.policy));
    const mibound::SolverConfig cfg{opt.gap_tol, opt.max_iters};
    if (refine) {
        const mibound::RefineCheck rc = mibound::refine_lower_bound(p, eps, n_points, cfg);
        if (opt.json) {
            nlohmann::json out = bound_json(rc.coarse, eps, n_points);
            out["refined_bound_bits"] = rc.fine.bound.bits();
            out["refined_n_points"] = 2 * n_points;
            out["refine_delta_bits"] = rc.delta_bits;
            out["grid_converged"] = rc.grid_converged;
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "bound = " << fixed4(in_unit(rc.coarse.bound, opt.unit)) << " " << opt.unit
                      << "\n";
            std::cout << "arg_gamma = " << mibound::format_sig(rc.coarse.arg_gamma, 6) << "\n";
            std::cout << "I(p) = " << fixed4(in_unit(rc.coarse.i_of_p, opt.unit)) << " " << opt.unit
                      << "\n";
            std::cout << "refined bound (" << 2 * n_points
                      << " points) = " << fixed4(in_unit(rc.fine.bound, opt.unit)) << " " << opt.unit
                      << ", delta = " << mibound::format_sig(rc.delta_bits, 6) << " bits ("
                      << (rc.grid_converged ? "grid sufficient" : "grid NOT sufficient") << ")\n";
        }
        return (rc.coarse.certified && rc.fine.certified) ? kExitOk : kExitUncertified;
    }
    const mibound::BoundReport rep = mibound::lower_bound(p, eps, n_points, cfg);
    if (opt.json) {
        std::cout << bound_json(rep, eps, n_points).dump() << "\n";
    } else {
        std::cout << "bound = " << fixed4(in_unit(rep.bound, opt.unit)) << " " << opt.unit << "\n";
        std::cout << "arg_gamma = " << mibound::format_sig(rep.arg_gamma, 6) << "\n";
        std::cout << "I(p) = " << fixed4(in_unit(rep.i_of_p, opt.unit)) << " " << opt.unit << "\n";
    }
    return rep.certified ? kExitOk : kExitUncertified;
}

int run_sweep(const CommonOpts& opt, double eps, int n_points, const std::string& out_path) {
    const mibound::JointDist p = load_joint(opt.input, policy_of(opt.policy));
    const mibound::SolverConfig cfg{opt.gap_tol, opt.max_iters};
    const mibound::BoundReport rep = mibound::lower_bound(p, eps, n_points, cfg);
    std::string summary = "wrote " + std::to_string(rep.curve.size()) + " rows; min I = " +
                          fixed4(in_unit(rep.bound, opt.unit)) + " " + opt.unit + " at gamma = " +
                          mibound::format_sig(rep.arg_gamma, 6);
    if (out_path.empty() || out_path == "-") {
        mibound::write_curve_csv(std::cout, rep.curve);
        std::cerr << summary << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot open output file: " << out_path << "\n";
            return kExitIo;
        }
        mibound::write_curve_csv(out, rep.curve);
        if (!out.good()) {
            std::cerr << "error: failed writing output file: " << out_path << "\n";
            return kExitIo;
        }
        std::cout << summary << " -> " << out_path << "\n";
    }
    return rep.certified ? kExitOk : kExitUncertified;
}

int run_ci(const CommonOpts& opt, double delta, int n_points) {
    std::ifstream in(opt.input);
    if (!in) throw mibound::ParseError("cannot open counts file: " + opt.input);
    const mibound::CountsTable counts = mibound::parse_counts(in);
    const mibound::SolverConfig cfg{opt.gap_tol, opt.max_iters};
    const mibound::ConfidenceReport rep = mibound::mi_confidence_floor(counts, delta, n_points, cfg);
    if (opt.json) {
        nlohmann::json out{{"i_hat_bits", rep.i_hat.bits()},
                           {"i_hat_nats", rep.i_hat.nats},
                           {"n", rep.n},
                           {"k", rep.k},
                           {"delta", rep.delta},
                           {"eps", rep.eps},
                           {"floor_bits", rep.bound_report.bound.bits()},
                           {"floor_nats", rep.bound_report.bound.nats},
                           {"arg_gamma", rep.bound_report.arg_gamma},
                           {"certified", rep.bound_report.certified}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "I(p_hat) = " << fixed4(in_unit(rep.i_hat, opt.unit)) << " " << opt.unit
                  << "  (n = " << rep.n << ", K = " << rep.k << ")\n";
        std::cout << "eps = " << mibound::format_sig(rep.eps, 6) << "  (delta = "
                  << mibound::format_sig(rep.delta, 6) << ")\n";
        std::cout << "floor = " << fixed4(in_unit(rep.bound_report.bound, opt.unit)) << " "
                  << opt.unit << "\n";
    }
    return rep.bound_report.certified ? kExitOk : kExitUncertified;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lower bounds on mutual information over a variational-distance ball"};
    app.require_subcommand(1);

    CommonOpts mi_opt, bound_opt, sweep_opt, ci_opt;
    double eps = 0.0;
    double sweep_eps = 0.0;
    double delta = 0.05;
    int n_points = 1000;
    int sweep_points = 1000;
    int ci_points = 1000;
    bool refine = false;
    std::string out_path;

    CLI::App* mi = app.add_subcommand("mi", "mutual information of a joint distribution");
    add_common_flags(mi, mi_opt);

    CLI::App* bound = app.add_subcommand("bound", "minimized mutual information over the eps-ball");
    add_common_flags(bound, bound_opt);
    bound->add_option("--eps", eps, "variational-distance radius in [0,2]")
        ->required()
        ->check(CLI::Range(0.0, 2.0));
    bound->add_option("--points", n_points, "gamma grid size")->check(CLI::PositiveNumber);
    bound->add_flag("--refine", refine, "re-run with doubled grid and report the change");
    add_solver_flags(bound, bound_opt);

    CLI::App* sweep = app.add_subcommand("sweep", "write the gamma curve as CSV");
    add_common_flags(sweep, sweep_opt);
    sweep->add_option("--eps", sweep_eps, "variational-distance radius in [0,2]")
        ->required()
        ->check(CLI::Range(0.0, 2.0));
    sweep->add_option("--points", sweep_points, "gamma grid size")->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_path, "CSV output path (default: stdout)");
    add_solver_flags(sweep, sweep_opt);

    CLI::App* ci = app.add_subcommand("ci", "confidence floor from a counts file");
    ci->add_option("input", ci_opt.input, "counts file: two lines of nonnegative integers")
        ->required();
    ci->add_option("--unit", ci_opt.unit, "display unit")
        ->check(CLI::IsMember({"bits", "nats"}))
        ->capture_default_str();
    ci->add_option("--delta", delta, "failure probability in (0,1)")->capture_default_str();
    ci->add_option("--points", ci_points, "gamma grid size")->check(CLI::PositiveNumber);
    ci->add_flag("--json", ci_opt.json, "machine-readable JSON output");
    add_solver_flags(ci, ci_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (mi->parsed()) return run_mi(mi_opt);
        if (bound->parsed()) return run_bound(bound_opt, eps, n_points, refine);
        if (sweep->parsed()) return run_sweep(sweep_opt, sweep_eps, sweep_points, out_path);
        if (ci->parsed()) return run_ci(ci_opt, delta, ci_points);
    } catch (const mibound::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
