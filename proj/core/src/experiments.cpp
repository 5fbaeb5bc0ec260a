#include "uq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>

#include <json.hpp>

#include "uq/apc.hpp"
#include "uq/errors.hpp"
#include "uq/maxent.hpp"

namespace uq {

namespace {

using ordered_json = nlohmann::ordered_json;

// Fixed-format floating point output so reruns are byte-identical.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out)
        throw InvalidInputError("cannot write file: " + file.string());
    return out;
}

// Forwards evaluations while aggregating dual-solver effort.
class CountingBasis final : public Basis {
public:
    CountingBasis(const Basis& inner, SolverStatsSummary* stats)
        : inner_(inner), stats_(stats),
          maxent_(dynamic_cast<const MaxentBasis*>(&inner)) {}

    BasisKind kind() const override { return inner_.kind(); }
    Eigen::Index size() const override { return inner_.size(); }
    int dim() const override { return inner_.dim(); }
    Eigen::VectorXd eval(const Eigen::VectorXd& query) const override {
        if (maxent_ != nullptr && stats_ != nullptr) {
            const MaxentEvaluation ev = maxent_->evaluate(query);
            stats_->evaluations += 1;
            stats_->total_iterations += ev.iterations;
            stats_->max_iterations = std::max(stats_->max_iterations, ev.iterations);
            stats_->max_residual = std::max(stats_->max_residual, ev.residual_norm);
            return ev.psi;
        }
        return inner_.eval(query);
    }

private:
    const Basis& inner_;
    SolverStatsSummary* stats_;
    const MaxentBasis* maxent_;
};

double relative_error(double estimate, double reference) {
    if (reference == 0.0)
        return std::abs(estimate) <= 1e-14 ? 0.0
                                           : std::numeric_limits<double>::infinity();
    return std::abs(1.0 - estimate / reference);
}

std::vector<BasisKind> kinds_from(const std::string& basis) {
    if (basis == "maxent")
        return {BasisKind::maxent};
    if (basis == "apc")
        return {BasisKind::apc};
    if (basis == "both")
        return {BasisKind::maxent, BasisKind::apc};
    throw InvalidInputError("basis must be maxent, apc or both");
}

std::unique_ptr<Basis> make_example1_basis(BasisKind kind, int n_basis,
                                           const EmpiricalMeasure& measure, double beta) {
    if (kind == BasisKind::maxent)
        return std::make_unique<MaxentBasis>(NodeSet::uniform(-1.0, 1.0, n_basis), beta);
    return std::make_unique<ApcBasis>(ApcBasis::build(measure, n_basis - 1));
}

ordered_json to_json(const ExperimentConfig& c) {
    ordered_json j;
    j["experiment"] = c.experiment;
    j["basis"] = c.basis;
    j["n_basis"] = c.n_basis;
    j["n_samples"] = c.n_samples;
    j["n_labeled"] = c.n_labeled;
    j["beta"] = c.beta;
    j["t_begin"] = c.t_begin;
    j["t_end"] = c.t_end;
    j["step"] = c.step;
    j["report_dt"] = c.report_dt;
    j["seed"] = c.seed;
    j["repeats"] = c.repeats;
    j["n_mc"] = c.n_mc;
    j["basis_list"] = c.basis_list;
    j["sample_list"] = c.sample_list;
    j["out_dir"] = c.out_dir;
    return j;
}

ordered_json to_json(const SolverStatsSummary& s) {
    ordered_json j;
    j["evaluations"] = s.evaluations;
    j["total_iterations"] = s.total_iterations;
    j["max_iterations"] = s.max_iterations;
    j["max_residual"] = s.max_residual;
    return j;
}

ordered_json to_json(const GeneratorInfo& g) {
    ordered_json j;
    j["kind"] = g.kind;
    if (g.kind != "manual" && g.kind != "gaussian-random") {
        j["lo"] = g.lo;
        j["hi"] = g.hi;
    }
    if (g.kind == "gaussian-random") {
        j["mean"] = g.mean;
        j["stddev"] = g.stddev;
    }
    if (g.kind == "uniform-random" || g.kind == "gaussian-random")
        j["seed"] = g.seed;
    return j;
}

void write_meta(const std::filesystem::path& file, ordered_json meta) {
    auto out = open_out(file);
    out << meta.dump(2) << '\n';
}

// Moment estimate and t = 10 errors for one decay-study configuration,
// integrating only as far as needed.
std::pair<double, double> example1_error_at(BasisKind kind, int n_basis,
                                            const EmpiricalMeasure& measure, double beta,
                                            double t, double step) {
    const auto basis = make_example1_basis(kind, n_basis, measure, beta);
    const auto ode = LinearStochasticOde::scalar(example1_coefficient, 1.0, 0.0, t, step);
    const Surrogate s = build_surrogate(ode, *basis, measure);
    const Trajectory traj = integrate(s, 0.0, t, step);
    const MomentSeries series = moments(traj, s.stats, 1);
    const AnalyticMoments ref = analytic_moments_example1(t);
    const std::size_t last = series.times.size() - 1;
    return {relative_error(series.mean1(last), ref.mean),
            relative_error(series.variance1(last), ref.variance)};
}

} // namespace

void ExperimentConfig::validate() const {
    if (basis != "maxent" && basis != "apc" && basis != "both")
        throw InvalidInputError("basis must be maxent, apc or both");
    if (n_basis < 2)
        throw InvalidInputError("n_basis must be at least 2");
    if (n_samples < 1)
        throw InvalidInputError("n_samples must be positive");
    if (n_labeled < 2)
        throw InvalidInputError("n_labeled must be at least 2");
    if (!(beta >= 0.0))
        throw InvalidInputError("beta must be non-negative");
    if (!(t_end > t_begin))
        throw InvalidInputError("time span must have t_end > t_begin");
    if (!(step > 0.0))
        throw InvalidInputError("step must be positive");
    if (!(report_dt >= step))
        throw InvalidInputError("report_dt must be at least the step size");
    if (repeats < 1)
        throw InvalidInputError("repeats must be positive");
    if (n_mc < 1)
        throw InvalidInputError("n_mc must be positive");
    if (basis_list.empty() || sample_list.empty())
        throw InvalidInputError("sweep lists must be non-empty");
}

ExperimentConfig load_config(const std::filesystem::path& json_file) {
    std::ifstream in(json_file);
    if (!in)
        throw InvalidInputError("cannot open config file: " + json_file.string());
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidInputError("config parse error: " + std::string(e.what()));
    }
    ExperimentConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "experiment") c.experiment = value.get<std::string>();
            else if (key == "basis") c.basis = value.get<std::string>();
            else if (key == "n_basis") c.n_basis = value.get<int>();
            else if (key == "n_samples") c.n_samples = value.get<int>();
            else if (key == "n_labeled") c.n_labeled = value.get<int>();
            else if (key == "beta") c.beta = value.get<double>();
            else if (key == "t_begin") c.t_begin = value.get<double>();
            else if (key == "t_end") c.t_end = value.get<double>();
            else if (key == "step") c.step = value.get<double>();
            else if (key == "report_dt") c.report_dt = value.get<double>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "repeats") c.repeats = value.get<int>();
            else if (key == "n_mc") c.n_mc = value.get<int>();
            else if (key == "basis_list") c.basis_list = value.get<std::vector<int>>();
            else if (key == "sample_list") c.sample_list = value.get<std::vector<int>>();
            else if (key == "out_dir") c.out_dir = value.get<std::string>();
            else
                throw InvalidInputError("unknown config key: " + key);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError("config type error: " + std::string(e.what()));
    }
    return c;
}

double example2_coefficient(double d) {
    return d / std::sqrt(1.0 - d);
}

AnalyticMoments analytic_moments_example1(double t) {
    if (t == 0.0)
        return {1.0, 0.0};
    AnalyticMoments m;
    m.mean = -std::expm1(-t) / t;
    m.variance = -std::expm1(-2.0 * t) / (2.0 * t) - m.mean * m.mean;
    return m;
}

ReferenceSeries analytic_reference(const std::vector<double>& times) {
    ReferenceSeries ref;
    ref.times = times;
    ref.kind = "analytic";
    ref.mean.reserve(times.size());
    ref.variance.reserve(times.size());
    for (double t : times) {
        const AnalyticMoments m = analytic_moments_example1(t);
        ref.mean.push_back(m.mean);
        ref.variance.push_back(m.variance);
    }
    return ref;
}

ReferenceSeries monte_carlo_reference(const std::function<double(double)>& coefficient,
                                      int n_samples, const std::vector<double>& times,
                                      std::uint64_t seed, double lo, double hi) {
    if (!coefficient)
        throw InvalidInputError("Monte Carlo reference requires a coefficient function");
    if (n_samples < 1)
        throw InvalidInputError("Monte Carlo reference requires n_samples >= 1");
    if (!(lo < hi))
        throw InvalidInputError("Monte Carlo reference requires lo < hi");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> rates(static_cast<std::size_t>(n_samples));
    for (auto& r : rates) {
        r = coefficient(dist(rng));
        if (!std::isfinite(r))
            throw EvaluationError("coefficient not finite at a Monte Carlo draw", 0);
    }

    ReferenceSeries ref;
    ref.times = times;
    ref.kind = "monte-carlo";
    ref.degenerate = n_samples == 1;
    ref.mean.resize(times.size());
    ref.variance.resize(times.size());
    std::vector<double> values(rates.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        double acc = 0.0;
        for (std::size_t j = 0; j < rates.size(); ++j) {
            values[j] = std::exp(rates[j] * t);
            acc += values[j];
        }
        const double mean = acc / static_cast<double>(n_samples);
        double var = 0.0;
        if (n_samples > 1) {
            for (const double v : values)
                var += (v - mean) * (v - mean);
            var /= static_cast<double>(n_samples - 1);
        }
        if (!std::isfinite(mean) || !std::isfinite(var))
            throw EvaluationError("Monte Carlo reference overflowed at t = " +
                                      std::to_string(t),
                                  k);
        ref.mean[k] = mean;
        ref.variance[k] = var;
    }
    return ref;
}

ErrorSeries compute_errors(const MomentSeries& estimate, const ReferenceSeries& reference) {
    if (estimate.times.size() != reference.times.size())
        throw InvalidInputError("estimate and reference grids differ in length");
    ErrorSeries err;
    err.times = estimate.times;
    err.reference = reference.kind;
    err.err_mean.resize(err.times.size());
    err.err_variance.resize(err.times.size());
    for (std::size_t k = 0; k < err.times.size(); ++k) {
        if (std::abs(estimate.times[k] - reference.times[k]) > 1e-9)
            throw InvalidInputError("estimate and reference grids do not match");
        err.err_mean[k] = relative_error(estimate.mean1(k), reference.mean[k]);
        err.err_variance[k] = relative_error(estimate.variance1(k), reference.variance[k]);
    }
    return err;
}

ScalarRun run_scalar_chaos(const Basis& basis, const EmpiricalMeasure& measure,
                           const std::function<double(double)>& coefficient, double x0,
                           double t_begin, double t_end, double step, double report_dt) {
    if (!coefficient)
        throw InvalidInputError("scalar chaos run requires a coefficient function");
    if (!(report_dt >= step))
        throw InvalidInputError("report_dt must be at least the step size");

    ScalarRun run;
    CountingBasis counted(basis, &run.solver);
    const auto ode = LinearStochasticOde::scalar(coefficient, x0, t_begin, t_end, step);
    const Surrogate s = build_surrogate(ode, counted, measure);
    run.ridge_jitter = s.ridge_jitter;
    const Trajectory traj = integrate(s, t_begin, t_end, step);
    const MomentSeries full = moments(traj, s.stats, 1);

    const auto stride =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(report_dt / step)));
    MomentSeries& out = run.series;
    for (std::size_t k = 0; k < full.times.size(); ++k) {
        if (k % stride != 0 && k + 1 != full.times.size())
            continue;
        out.times.push_back(full.times[k]);
        out.covariances.push_back(full.covariances[k]);
    }
    out.means.resize(1, static_cast<Eigen::Index>(out.times.size()));
    std::size_t col = 0;
    for (std::size_t k = 0; k < full.times.size(); ++k) {
        if (k % stride != 0 && k + 1 != full.times.size())
            continue;
        out.means(0, static_cast<Eigen::Index>(col++)) = full.mean1(k);
    }
    return run;
}

EmpiricalMeasure example1_measure(int n_samples) {
    return EmpiricalMeasure::midpoint_grid(-1.0, 1.0, n_samples);
}

Example1Run example1_run(BasisKind kind, int n_basis, const EmpiricalMeasure& measure,
                         double beta, double t_begin, double t_end, double step,
                         double report_dt) {
    const auto basis = make_example1_basis(kind, n_basis, measure, beta);
    Example1Run out;
    out.run = run_scalar_chaos(*basis, measure, example1_coefficient, 1.0, t_begin, t_end,
                               step, report_dt);
    out.errors = compute_errors(out.run.series, analytic_reference(out.run.series.times));
    return out;
}

std::vector<SweepRow> convergence_rows(const ExperimentConfig& config) {
    config.validate();
    const EmpiricalMeasure measure = example1_measure(config.n_samples);
    constexpr double metric_time = 10.0;
    std::vector<SweepRow> rows;
    for (const BasisKind kind : kinds_from(config.basis)) {
        for (const int n_b : config.basis_list) {
            const auto [em, ev] = example1_error_at(kind, n_b, measure, config.beta,
                                                    metric_time, config.step);
            rows.push_back({kind, n_b, em, ev});
        }
    }
    return rows;
}

std::vector<SampleStudyRow> sample_study_rows(const ExperimentConfig& config) {
    config.validate();
    const BasisKind kind =
        config.basis == "apc" ? BasisKind::apc : BasisKind::maxent;
    constexpr double metric_time = 10.0;
    std::vector<SampleStudyRow> rows;
    for (const int n_d : config.sample_list) {
        std::vector<double> eps_mean, eps_var;
        eps_mean.reserve(config.repeats);
        eps_var.reserve(config.repeats);
        for (int r = 0; r < config.repeats; ++r) {
            const auto seed = mix_seed(config.seed, static_cast<std::uint64_t>(n_d),
                                       static_cast<std::uint64_t>(r));
            const auto measure = EmpiricalMeasure::uniform_random(-1.0, 1.0, n_d, seed);
            const auto [em, ev] = example1_error_at(kind, config.n_basis, measure,
                                                    config.beta, metric_time, config.step);
            eps_mean.push_back(em);
            eps_var.push_back(ev);
        }
        auto stats = [](const std::vector<double>& v) {
            double mean = 0.0;
            for (double x : v)
                mean += x;
            mean /= static_cast<double>(v.size());
            double var = 0.0;
            if (v.size() > 1) {
                for (double x : v)
                    var += (x - mean) * (x - mean);
                var /= static_cast<double>(v.size() - 1);
            }
            return std::pair<double, double>{mean, var};
        };
        const auto [m_mean, v_mean] = stats(eps_mean);
        const auto [m_var, v_var] = stats(eps_var);
        rows.push_back({n_d, m_mean, v_mean, m_var, v_var});
    }
    return rows;
}

Example2Run example2_run(const ExperimentConfig& config, bool use_true_coefficient) {
    config.validate();
    const EmpiricalMeasure measure =
        EmpiricalMeasure::interior_grid(0.0, 1.0, config.n_samples);
    const double lo = measure.samples().row(0).minCoeff();
    const double hi = measure.samples().row(0).maxCoeff();

    // Labeled nodes span the sample hull so every sample stays admissible.
    const NodeSet nodes = NodeSet::uniform(lo, hi, config.n_labeled);
    std::vector<double> node_coords(static_cast<std::size_t>(nodes.count()));
    std::vector<double> labels(node_coords.size());
    for (std::size_t i = 0; i < node_coords.size(); ++i) {
        node_coords[i] = nodes.nodes()(0, static_cast<Eigen::Index>(i));
        labels[i] = example2_coefficient(node_coords[i]);
    }
    const LabeledSet data = LabeledSet::from_scalar(node_coords, labels);

    const auto maxent = std::make_shared<MaxentBasis>(nodes, config.beta);
    const auto apc =
        std::make_shared<ApcBasis>(ApcBasis::build(measure, config.n_labeled - 1));

    const Approximant fit_me = fit_least_squares(maxent, data);
    const Approximant fit_pc = fit_least_squares(apc, data);

    const auto truth = [](const Eigen::VectorXd& d) { return example2_coefficient(d(0)); };

    Example2Run out;
    out.grid.resize(static_cast<std::size_t>(measure.count()));
    out.coefficient.resize(out.grid.size());
    for (std::size_t j = 0; j < out.grid.size(); ++j) {
        out.grid[j] = measure.samples()(0, static_cast<Eigen::Index>(j));
        out.coefficient[j] = example2_coefficient(out.grid[j]);
    }
    out.fit_maxent = normalized_error(fit_me, truth, measure);
    out.fit_apc = normalized_error(fit_pc, truth, measure);

    const std::function<double(double)> coeff_me =
        use_true_coefficient
            ? std::function<double(double)>(example2_coefficient)
            : [fit_me](double d) { return eval_approximant(fit_me, d); };
    const std::function<double(double)> coeff_pc =
        use_true_coefficient
            ? std::function<double(double)>(example2_coefficient)
            : [fit_pc](double d) { return eval_approximant(fit_pc, d); };

    out.run_maxent = run_scalar_chaos(*maxent, measure, coeff_me, 1.0, config.t_begin,
                                      config.t_end, config.step, config.report_dt);
    out.run_apc = run_scalar_chaos(*apc, measure, coeff_pc, 1.0, config.t_begin,
                                   config.t_end, config.step, config.report_dt);

    out.reference = monte_carlo_reference(example2_coefficient, config.n_mc,
                                          out.run_maxent.series.times,
                                          mix_seed(config.seed, 2, 0), lo, hi);
    out.errors_maxent = compute_errors(out.run_maxent.series, out.reference);
    out.errors_apc = compute_errors(out.run_apc.series, out.reference);
    return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (a + 1) +
                      0xbf58476d1ce4e5b9ull * (b + 1);
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

void write_moments_csv(const std::filesystem::path& file, const MomentSeries& series,
                       const ReferenceSeries* reference, const ErrorSeries* errors) {
    auto out = open_out(file);
    out << "t,mean,variance";
    if (reference != nullptr)
        out << ",mean_ref,variance_ref";
    if (errors != nullptr)
        out << ",err_mean,err_variance";
    out << '\n';
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        out << num(series.times[k]) << ',' << num(series.mean1(k)) << ','
            << num(series.variance1(k));
        if (reference != nullptr)
            out << ',' << num(reference->mean[k]) << ',' << num(reference->variance[k]);
        if (errors != nullptr)
            out << ',' << num(errors->err_mean[k]) << ',' << num(errors->err_variance[k]);
        out << '\n';
    }
}

void write_basis_sweep_csv(const std::filesystem::path& file,
                           const std::vector<SweepRow>& rows) {
    auto out = open_out(file);
    out << "basis,n_B,err_mean,err_var\n";
    for (const auto& r : rows)
        out << to_string(r.kind) << ',' << r.n_basis << ',' << num(r.err_mean) << ','
            << num(r.err_variance) << '\n';
}

void write_sample_study_csv(const std::filesystem::path& file,
                            const std::vector<SampleStudyRow>& rows) {
    auto out = open_out(file);
    out << "n_D,mean_err_mean,var_err_mean,mean_err_var,var_err_var\n";
    for (const auto& r : rows)
        out << r.n_samples << ',' << num(r.mean_err_mean) << ',' << num(r.var_err_mean)
            << ',' << num(r.mean_err_var) << ',' << num(r.var_err_var) << '\n';
}

void write_function_error_csv(const std::filesystem::path& file,
                              const std::vector<double>& grid,
                              const std::vector<double>& truth,
                              const NormalizedError& maxent_fit,
                              const NormalizedError& apc_fit) {
    if (grid.size() != truth.size() ||
        grid.size() != static_cast<std::size_t>(maxent_fit.errors.size()) ||
        grid.size() != static_cast<std::size_t>(apc_fit.errors.size()))
        throw InvalidInputError("function error columns differ in length");
    auto out = open_out(file);
    out << "delta,a_true,err_maxent,err_apc\n";
    for (std::size_t j = 0; j < grid.size(); ++j)
        out << num(grid[j]) << ',' << num(truth[j]) << ','
            << num(maxent_fit.errors(static_cast<Eigen::Index>(j))) << ','
            << num(apc_fit.errors(static_cast<Eigen::Index>(j))) << '\n';
}

std::vector<std::string> run_example1(const ExperimentConfig& config) {
    config.validate();
    std::filesystem::create_directories(config.out_dir);
    const EmpiricalMeasure measure = example1_measure(config.n_samples);

    std::vector<std::string> files;
    ordered_json meta;
    meta["experiment"] = "example1";
    meta["config"] = to_json(config);
    meta["measure_generator"] = to_json(*measure.generator());
    ordered_json solver = ordered_json::object();
    ordered_json jitter = ordered_json::object();

    for (const BasisKind kind : kinds_from(config.basis)) {
        const Example1Run run =
            example1_run(kind, config.n_basis, measure, config.beta, config.t_begin,
                         config.t_end, config.step, config.report_dt);
        const ReferenceSeries ref = analytic_reference(run.run.series.times);
        const auto file = std::filesystem::path(config.out_dir) /
                          ("example1_" + std::string(to_string(kind)) + "_moments.csv");
        write_moments_csv(file, run.run.series, &ref, &run.errors);
        files.push_back(file.string());
        solver[to_string(kind)] = to_json(run.run.solver);
        jitter[to_string(kind)] = run.run.ridge_jitter;
    }
    meta["solver"] = solver;
    meta["ridge_jitter"] = jitter;
    meta["files"] = files;
    const auto meta_file = std::filesystem::path(config.out_dir) / "meta.json";
    write_meta(meta_file, std::move(meta));
    files.push_back(meta_file.string());
    return files;
}

std::vector<std::string> run_example2(const ExperimentConfig& config) {
    config.validate();
    std::filesystem::create_directories(config.out_dir);
    const Example2Run run = example2_run(config);

    std::vector<std::string> files;
    ordered_json meta;
    meta["experiment"] = "example2";
    meta["config"] = to_json(config);
    ordered_json solver = ordered_json::object();
    solver["maxent"] = to_json(run.run_maxent.solver);
    solver["apc"] = to_json(run.run_apc.solver);
    ordered_json jitter = ordered_json::object();
    jitter["maxent"] = run.run_maxent.ridge_jitter;
    jitter["apc"] = run.run_apc.ridge_jitter;
    ordered_json results = ordered_json::object();
    results["fit_rms_maxent"] = run.fit_maxent.rms;
    results["fit_rms_apc"] = run.fit_apc.rms;
    results["fit_scale"] = run.fit_maxent.scale;
    ordered_json warnings = ordered_json::array();
    if (run.reference.degenerate)
        warnings.push_back("monte-carlo reference built from a single sample");

    const std::filesystem::path dir(config.out_dir);
    for (const BasisKind kind : kinds_from(config.basis)) {
        const bool is_me = kind == BasisKind::maxent;
        const auto file =
            dir / ("example2_" + std::string(to_string(kind)) + "_moments.csv");
        write_moments_csv(file, is_me ? run.run_maxent.series : run.run_apc.series,
                          &run.reference,
                          is_me ? &run.errors_maxent : &run.errors_apc);
        files.push_back(file.string());
    }
    const auto fn_file = dir / "example2_function_error.csv";
    write_function_error_csv(fn_file, run.grid, run.coefficient, run.fit_maxent,
                             run.fit_apc);
    files.push_back(fn_file.string());

    meta["solver"] = solver;
    meta["ridge_jitter"] = jitter;
    meta["results"] = results;
    meta["warnings"] = warnings;
    meta["files"] = files;
    const auto meta_file = dir / "meta.json";
    write_meta(meta_file, std::move(meta));
    files.push_back(meta_file.string());
    return files;
}

std::vector<std::string> run_basis_sweep(const ExperimentConfig& config) {
    config.validate();
    std::filesystem::create_directories(config.out_dir);
    const std::vector<SweepRow> rows = convergence_rows(config);
    const auto file = std::filesystem::path(config.out_dir) / "basis_sweep.csv";
    write_basis_sweep_csv(file, rows);

    ordered_json meta;
    meta["experiment"] = "sweep-basis";
    meta["config"] = to_json(config);
    meta["files"] = {file.string()};
    const auto meta_file = std::filesystem::path(config.out_dir) / "meta.json";
    write_meta(meta_file, std::move(meta));
    return {file.string(), meta_file.string()};
}

std::vector<std::string> run_sample_study(const ExperimentConfig& config) {
    config.validate();
    std::filesystem::create_directories(config.out_dir);
    const std::vector<SampleStudyRow> rows = sample_study_rows(config);
    const auto file = std::filesystem::path(config.out_dir) / "sample_study.csv";
    write_sample_study_csv(file, rows);

    ordered_json meta;
    meta["experiment"] = "sweep-samples";
    meta["config"] = to_json(config);
    meta["files"] = {file.string()};
    const auto meta_file = std::filesystem::path(config.out_dir) / "meta.json";
    write_meta(meta_file, std::move(meta));
    return {file.string(), meta_file.string()};
}

} // namespace uq
