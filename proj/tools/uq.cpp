// Command line front end for the chaos-expansion library: basis evaluation,
// the two study drivers, and the two convergence sweeps. A JSON config file
// mirrors ExperimentConfig; explicit flags override file values.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uq/errors.hpp"
#include "uq/experiments.hpp"
#include "uq/maxent.hpp"

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Flag storage for one run/sweep subcommand.
struct RunOpts {
    std::string config_file;
    std::string basis;
    int n_basis = 0;
    int n_samples = 0;
    int n_labeled = 0;
    double beta = 0.0;
    double t_end = 0.0;
    double step = 0.0;
    double report_dt = 0.0;
    std::uint64_t seed = 0;
    int repeats = 0;
    int n_mc = 0;
    std::vector<int> list;
    std::string out_dir;
};

void add_common_options(CLI::App* cmd, RunOpts& o) {
    cmd->add_option("--config", o.config_file, "JSON config file (flags override it)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--basis", o.basis, "Basis kind: maxent, apc or both");
    cmd->add_option("--n-basis", o.n_basis, "Chaos basis size n_B");
    cmd->add_option("--n-samples", o.n_samples, "Sample count n_D");
    cmd->add_option("--beta", o.beta, "Gaussian prior width (0 = uniform prior)");
    cmd->add_option("--t-end", o.t_end, "End of the integration window");
    cmd->add_option("--step", o.step, "Integrator step size");
    cmd->add_option("--report-dt", o.report_dt, "Spacing of CSV output rows");
    cmd->add_option("--seed", o.seed, "Base seed for random draws");
    cmd->add_option("--out", o.out_dir, "Output directory");
}

// True when the option exists on this subcommand and was given on the line.
bool given(const CLI::App* cmd, const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

// Start from defaults or the config file, then lay explicit flags on top.
uq::ExperimentConfig resolve(const CLI::App* cmd, const RunOpts& o,
                             const std::string& experiment) {
    uq::ExperimentConfig c;
    if (given(cmd, "--config"))
        c = uq::load_config(o.config_file);
    c.experiment = experiment;
    if (given(cmd, "--basis")) c.basis = o.basis;
    if (given(cmd, "--n-basis")) c.n_basis = o.n_basis;
    if (given(cmd, "--n-samples")) c.n_samples = o.n_samples;
    if (given(cmd, "--n-labeled")) c.n_labeled = o.n_labeled;
    if (given(cmd, "--beta")) c.beta = o.beta;
    if (given(cmd, "--t-end")) c.t_end = o.t_end;
    if (given(cmd, "--step")) c.step = o.step;
    if (given(cmd, "--report-dt")) c.report_dt = o.report_dt;
    if (given(cmd, "--seed")) c.seed = o.seed;
    if (given(cmd, "--repeats")) c.repeats = o.repeats;
    if (given(cmd, "--n-mc")) c.n_mc = o.n_mc;
    if (given(cmd, "--out")) c.out_dir = o.out_dir;
    if (given(cmd, "--list")) {
        if (experiment == "sweep-basis")
            c.basis_list = o.list;
        else
            c.sample_list = o.list;
    }
    return c;
}

void print_files(const std::vector<std::string>& files) {
    for (const auto& f : files)
        std::cout << f << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chaos-expansion uncertainty propagation for linear random ODEs"};
    app.require_subcommand(1);

    // basis eval
    auto* basis_cmd = app.add_subcommand("basis", "Basis utilities");
    basis_cmd->require_subcommand(1);
    auto* eval_cmd = basis_cmd->add_subcommand("eval", "Evaluate the maxent basis");
    std::string nodes_file;
    std::vector<double> query;
    double eval_beta = 0.0;
    eval_cmd->add_option("--nodes", nodes_file, "Node file, one node per line")
        ->required()
        ->check(CLI::ExistingFile);
    eval_cmd->add_option("--query", query, "Query point coordinates")
        ->required()
        ->delimiter(',');
    eval_cmd->add_option("--beta", eval_beta, "Gaussian prior width");

    // run example1 / example2
    auto* run_cmd = app.add_subcommand("run", "Run a study");
    run_cmd->require_subcommand(1);
    RunOpts ex1_opts, ex2_opts;
    auto* ex1_cmd = run_cmd->add_subcommand(
        "example1", "Random-decay study with analytic reference moments");
    add_common_options(ex1_cmd, ex1_opts);
    auto* ex2_cmd = run_cmd->add_subcommand(
        "example2", "Sparse-data two-step study with Monte Carlo reference");
    add_common_options(ex2_cmd, ex2_opts);
    ex2_cmd->add_option("--n-labeled", ex2_opts.n_labeled, "Labeled node count n_D'");
    ex2_cmd->add_option("--n-mc", ex2_opts.n_mc, "Monte Carlo reference sample count");

    // sweep basis / sweep samples
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a convergence sweep");
    sweep_cmd->require_subcommand(1);
    RunOpts sb_opts, ss_opts;
    auto* sb_cmd = sweep_cmd->add_subcommand(
        "basis", "Errors at t = 10 as the basis grows");
    add_common_options(sb_cmd, sb_opts);
    sb_cmd->add_option("--list", sb_opts.list, "Basis sizes to sweep")->delimiter(',');
    auto* ss_cmd = sweep_cmd->add_subcommand(
        "samples", "Error statistics over repeated random sample draws");
    add_common_options(ss_cmd, ss_opts);
    ss_cmd->add_option("--list", ss_opts.list, "Sample counts to sweep")->delimiter(',');
    ss_cmd->add_option("--repeats", ss_opts.repeats, "Repetitions per sample count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval_cmd->parsed()) {
            const uq::NodeSet nodes = uq::NodeSet::load(nodes_file);
            Eigen::VectorXd q(static_cast<Eigen::Index>(query.size()));
            for (std::size_t i = 0; i < query.size(); ++i)
                q(static_cast<Eigen::Index>(i)) = query[i];
            const uq::MaxentEvaluation ev = uq::eval_basis(nodes, q, eval_beta);
            std::cout << "psi:";
            for (Eigen::Index i = 0; i < ev.psi.size(); ++i)
                std::cout << ' ' << num(ev.psi(i));
            std::cout << "\nlambda:";
            for (Eigen::Index i = 0; i < ev.lambda.size(); ++i)
                std::cout << ' ' << num(ev.lambda(i));
            std::cout << "\niterations: " << ev.iterations
                      << "\nresidual: " << num(ev.residual_norm) << '\n';
        } else if (ex1_cmd->parsed()) {
            print_files(uq::run_example1(resolve(ex1_cmd, ex1_opts, "example1")));
        } else if (ex2_cmd->parsed()) {
            uq::ExperimentConfig c = resolve(ex2_cmd, ex2_opts, "example2");
            if (ex2_cmd->count("--t-end") == 0 && ex2_cmd->count("--config") == 0)
                c.t_end = 10.0;
            print_files(uq::run_example2(c));
        } else if (sb_cmd->parsed()) {
            print_files(uq::run_basis_sweep(resolve(sb_cmd, sb_opts, "sweep-basis")));
        } else if (ss_cmd->parsed()) {
            uq::ExperimentConfig c = resolve(ss_cmd, ss_opts, "sweep-samples");
            if (ss_cmd->count("--n-basis") == 0 && ss_cmd->count("--config") == 0)
                c.n_basis = 5;
            print_files(uq::run_sample_study(c));
        }
    } catch (const uq::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
