#ifndef UQ_EXPERIMENTS_HPP
#define UQ_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uq/approx.hpp"
#include "uq/basis.hpp"
#include "uq/measure.hpp"
#include "uq/surrogate.hpp"

namespace uq {

// Shared settings for the study drivers. Mirrored one-to-one by the JSON
// config file accepted by the command line tool.
struct ExperimentConfig {
    std::string experiment;        // "example1", "example2", "sweep-basis", "sweep-samples"
    std::string basis = "both";    // "maxent", "apc" or "both"
    int n_basis = 8;               // chaos basis size n_B
    int n_samples = 500;           // sample count n_D
    int n_labeled = 10;            // labeled node count n_D' (two-step study)
    double beta = 0.0;
    double t_begin = 0.0;
    double t_end = 30.0;
    double step = 0.01;
    double report_dt = 0.1;        // spacing of rows in output CSVs
    std::uint64_t seed = 0;
    int repeats = 100;             // repetitions of the sample-size study
    int n_mc = 50000;              // Monte Carlo reference sample count
    std::vector<int> basis_list = {2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<int> sample_list = {50, 100, 200, 500};
    std::string out_dir = ".";

    void validate() const;
};

ExperimentConfig load_config(const std::filesystem::path& json_file);

// Decay study: dx/dt = a(D) x, a(D) = -(1+D)/2, D uniform on [-1,1], x(0) = 1.
inline double example1_coefficient(double d) { return -0.5 * (1.0 + d); }

// Two-step study: a(D) = D^(alpha-1) (1-D)^(gamma-1), alpha = 2, gamma = 1/2,
// D uniform on (0,1).
double example2_coefficient(double d);

struct AnalyticMoments {
    double mean = 0.0;
    double variance = 0.0;
};

// Closed-form moments of the decay study:
//   mean(t) = (1 - e^-t)/t, variance(t) = (1 - e^-2t)/(2t) - mean(t)^2.
AnalyticMoments analytic_moments_example1(double t);

// Reference moment curves to compare surrogate output against.
struct ReferenceSeries {
    std::vector<double> times;
    std::vector<double> mean;
    std::vector<double> variance;
    std::string kind;          // "analytic" or "monte-carlo"
    bool degenerate = false;   // single-sample Monte Carlo warning
};

ReferenceSeries analytic_reference(const std::vector<double>& times);

// Per-sample exact solutions x(t, D) = exp(a(D) t) averaged over seeded
// uniform draws from [lo, hi]; variance uses the unbiased estimator.
ReferenceSeries monte_carlo_reference(const std::function<double(double)>& coefficient,
                                      int n_samples, const std::vector<double>& times,
                                      std::uint64_t seed, double lo, double hi);

// Relative moment errors eps(t) = |1 - estimate/reference|.
struct ErrorSeries {
    std::vector<double> times;
    std::vector<double> err_mean;
    std::vector<double> err_variance;
    std::string reference;
};

ErrorSeries compute_errors(const MomentSeries& estimate, const ReferenceSeries& reference);

// Aggregated dual-solver effort, reported in run metadata.
struct SolverStatsSummary {
    long evaluations = 0;
    long total_iterations = 0;
    int max_iterations = 0;
    double max_residual = 0.0;
};

// One scalar chaos run: surrogate assembly, integration, moment recovery,
// downsampled to the reporting grid.
struct ScalarRun {
    MomentSeries series;
    SolverStatsSummary solver;
    double ridge_jitter = 0.0;
};

ScalarRun run_scalar_chaos(const Basis& basis, const EmpiricalMeasure& measure,
                           const std::function<double(double)>& coefficient, double x0,
                           double t_begin, double t_end, double step, double report_dt);

// Decay study with the standard node/sample layout (uniform nodes on [-1,1],
// midpoint sample grid) for one basis kind.
struct Example1Run {
    ScalarRun run;
    ErrorSeries errors; // against the analytic moments
};

Example1Run example1_run(BasisKind kind, int n_basis, const EmpiricalMeasure& measure,
                         double beta, double t_begin, double t_end, double step,
                         double report_dt);

EmpiricalMeasure example1_measure(int n_samples);

struct SweepRow {
    BasisKind kind = BasisKind::maxent;
    int n_basis = 0;
    double err_mean = 0.0;
    double err_variance = 0.0;
};

// Errors at t = 10 as the basis grows, fixed sample set.
std::vector<SweepRow> convergence_rows(const ExperimentConfig& config);

struct SampleStudyRow {
    int n_samples = 0;
    double mean_err_mean = 0.0;
    double var_err_mean = 0.0;
    double mean_err_var = 0.0;
    double var_err_var = 0.0;
};

// Mean and spread of the t = 10 errors over repeated random sample draws.
std::vector<SampleStudyRow> sample_study_rows(const ExperimentConfig& config);

// Two-step study: least-squares recovery of the coefficient function from
// n_D' labeled nodes, then chaos propagation with the recovered coefficient.
struct Example2Run {
    std::vector<double> grid;        // evaluation grid (the sample coordinates)
    std::vector<double> coefficient; // true a on the grid
    NormalizedError fit_maxent;
    NormalizedError fit_apc;
    ScalarRun run_maxent;
    ScalarRun run_apc;
    ErrorSeries errors_maxent;
    ErrorSeries errors_apc;
    ReferenceSeries reference;
};

Example2Run example2_run(const ExperimentConfig& config, bool use_true_coefficient = false);

// Deterministic per-task seed derivation.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

// CSV emission. Headers:
//   moments: t,mean,variance[,mean_ref,variance_ref,err_mean,err_variance]
//   basis sweep: basis,n_B,err_mean,err_var
//   sample study: n_D,mean_err_mean,var_err_mean,mean_err_var,var_err_var
//   function error: delta,a_true,err_maxent,err_apc
void write_moments_csv(const std::filesystem::path& file, const MomentSeries& series,
                       const ReferenceSeries* reference = nullptr,
                       const ErrorSeries* errors = nullptr);
void write_basis_sweep_csv(const std::filesystem::path& file,
                           const std::vector<SweepRow>& rows);
void write_sample_study_csv(const std::filesystem::path& file,
                            const std::vector<SampleStudyRow>& rows);
void write_function_error_csv(const std::filesystem::path& file,
                              const std::vector<double>& grid,
                              const std::vector<double>& truth,
                              const NormalizedError& maxent_fit,
                              const NormalizedError& apc_fit);

// File-writing drivers behind the command line subcommands. Each returns the
// list of files written (CSVs plus meta.json).
std::vector<std::string> run_example1(const ExperimentConfig& config);
std::vector<std::string> run_example2(const ExperimentConfig& config);
std::vector<std::string> run_basis_sweep(const ExperimentConfig& config);
std::vector<std::string> run_sample_study(const ExperimentConfig& config);

} // namespace uq

#endif
