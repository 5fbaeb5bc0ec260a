#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "uq/errors.hpp"
#include "uq/experiments.hpp"
#include "uq/maxent.hpp"

using namespace uq;

namespace {

std::string slurp(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("analytic decay moments match frozen closed-form values") {
    const AnalyticMoments at0 = analytic_moments_example1(0.0);
    CHECK(at0.mean == 1.0);
    CHECK(at0.variance == 0.0);

    const AnalyticMoments at1 = analytic_moments_example1(1.0);
    CHECK(at1.mean == doctest::Approx(0.63212055882855768).epsilon(1e-14));
    CHECK(at1.variance == doctest::Approx(0.032755957487965605).epsilon(1e-12));

    const AnalyticMoments at10 = analytic_moments_example1(10.0);
    CHECK(at10.mean == doctest::Approx(0.099995460007023752).epsilon(1e-14));
    CHECK(at10.variance == doctest::Approx(0.040000907874926032).epsilon(1e-12));
}

TEST_CASE("coefficient functions") {
    CHECK(example1_coefficient(0.5) == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(example1_coefficient(-1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(example2_coefficient(0.5) ==
          doctest::Approx(0.70710678118654752).epsilon(1e-14));
    CHECK(example2_coefficient(0.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("monte carlo reference is exact for a constant coefficient") {
    const std::vector<double> times{0.0, 0.5, 2.0};
    const ReferenceSeries ref =
        monte_carlo_reference([](double) { return -1.0; }, 200, times, 9, -1.0, 1.0);
    CHECK(ref.kind == "monte-carlo");
    for (std::size_t k = 0; k < times.size(); ++k) {
        CHECK(ref.mean[k] == doctest::Approx(std::exp(-times[k])).epsilon(1e-12));
        CHECK(std::abs(ref.variance[k]) <= 1e-12);
    }
}

TEST_CASE("monte carlo reference is seed-deterministic") {
    const std::vector<double> times{1.0};
    const auto a = monte_carlo_reference(example1_coefficient, 500, times, 3, -1.0, 1.0);
    const auto b = monte_carlo_reference(example1_coefficient, 500, times, 3, -1.0, 1.0);
    const auto c = monte_carlo_reference(example1_coefficient, 500, times, 4, -1.0, 1.0);
    CHECK(a.mean[0] == b.mean[0]);
    CHECK(a.mean[0] != c.mean[0]);
}

TEST_CASE("single-sample monte carlo is degenerate with zero variance") {
    const ReferenceSeries ref =
        monte_carlo_reference(example1_coefficient, 1, {0.5}, 11, -1.0, 1.0);
    CHECK(ref.degenerate);
    CHECK(ref.variance[0] == 0.0);
}

TEST_CASE("large monte carlo run stays within three standard errors") {
    const std::vector<double> times{1.0, 10.0};
    const ReferenceSeries ref =
        monte_carlo_reference(example1_coefficient, 50000, times, 4, -1.0, 1.0);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const AnalyticMoments exact = analytic_moments_example1(times[k]);
        const double se = std::sqrt(ref.variance[k] / 50000.0);
        CHECK(std::abs(ref.mean[k] - exact.mean) <= 3.0 * se);
    }
}

TEST_CASE("error conventions handle zero references") {
    MomentSeries est;
    est.times = {0.0, 1.0, 2.0};
    est.means.resize(1, 3);
    est.means << 0.0, 0.5, 2.0;
    est.covariances = {Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Zero(1, 1),
                       Eigen::MatrixXd::Zero(1, 1)};
    ReferenceSeries ref;
    ref.times = est.times;
    ref.mean = {0.0, 1.0, 0.0};
    ref.variance = {0.0, 0.0, 0.0};
    ref.kind = "analytic";

    const ErrorSeries err = compute_errors(est, ref);
    CHECK(err.err_mean[0] == 0.0);
    CHECK(err.err_mean[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::isinf(err.err_mean[2]));
    CHECK(err.err_variance[0] == 0.0);

    ReferenceSeries wrong = ref;
    wrong.times = {0.0, 1.0};
    wrong.mean = {0.0, 1.0};
    wrong.variance = {0.0, 0.0};
    CHECK_THROWS_AS(compute_errors(est, wrong), InvalidInputError);
}

TEST_CASE("seed mixing is deterministic and spread out") {
    CHECK(mix_seed(0, 1, 2) == mix_seed(0, 1, 2));
    CHECK(mix_seed(0, 1, 2) != mix_seed(0, 2, 1));
    CHECK(mix_seed(0, 1, 2) != mix_seed(1, 1, 2));
}

TEST_CASE("scalar chaos runs report on the requested grid") {
    const auto measure = example1_measure(100);
    CHECK(measure.generator()->kind == "midpoint-grid");
    const MaxentBasis basis(NodeSet::uniform(-1.0, 1.0, 4));
    const ScalarRun run = run_scalar_chaos(basis, measure, example1_coefficient, 1.0,
                                           0.0, 2.0, 0.01, 0.1);
    REQUIRE(run.series.times.size() == 21);
    CHECK(run.series.times[0] == 0.0);
    CHECK(run.series.times[20] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(run.series.times[7] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(run.solver.evaluations == 100);
    CHECK(run.solver.total_iterations > 0);
}

TEST_CASE("decay study errors start at zero and stay small") {
    const auto measure = example1_measure(500);
    const Example1Run run =
        example1_run(BasisKind::maxent, 8, measure, 0.0, 0.0, 12.0, 0.01, 0.1);
    CHECK(run.errors.err_mean[0] <= 1e-12);
    CHECK(run.errors.err_variance[0] == 0.0);
    CHECK(run.errors.err_mean[100] <= 1e-3);     // t = 10
    CHECK(run.errors.err_variance[100] <= 1e-2); // t = 10
    CHECK(run.errors.reference == "analytic");
}

TEST_CASE("basis sweep rows are ordered and improving early") {
    ExperimentConfig c;
    c.experiment = "sweep-basis";
    c.basis = "maxent";
    c.n_samples = 200;
    c.basis_list = {2, 3, 4};
    const auto rows = convergence_rows(c);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].n_basis == 2);
    CHECK(rows[2].n_basis == 4);
    CHECK(rows[1].err_mean < rows[0].err_mean);
    CHECK(rows[2].err_mean < rows[1].err_mean);
}

TEST_CASE("sample study rows are deterministic") {
    ExperimentConfig c;
    c.experiment = "sweep-samples";
    c.basis = "maxent";
    c.n_basis = 5;
    c.repeats = 5;
    c.sample_list = {20, 40};
    const auto a = sample_study_rows(c);
    const auto b = sample_study_rows(c);
    REQUIRE(a.size() == 2);
    CHECK(a[0].n_samples == 20);
    CHECK(a[0].mean_err_mean == b[0].mean_err_mean);
    CHECK(a[1].var_err_mean == b[1].var_err_mean);
    CHECK(a[0].mean_err_mean > 0.0);
}

TEST_CASE("two-step study produces consistent structures") {
    ExperimentConfig c;
    c.experiment = "example2";
    c.n_samples = 80;
    c.n_labeled = 6;
    c.n_mc = 2000;
    c.t_end = 3.0;
    c.seed = 1;
    const Example2Run run = example2_run(c);

    CHECK(run.grid.size() == 80);
    CHECK(run.coefficient.size() == 80);
    CHECK(run.fit_maxent.errors.size() == 80);
    CHECK(run.fit_apc.errors.size() == 80);
    CHECK(run.fit_maxent.rms > 0.0);
    CHECK(run.reference.kind == "monte-carlo");
    REQUIRE(run.errors_maxent.times.size() == 31);
    CHECK(run.errors_maxent.times == run.reference.times);
    CHECK(run.run_maxent.series.times == run.run_apc.series.times);
    for (double e : run.errors_maxent.err_mean)
        CHECK(std::isfinite(e));
}

TEST_CASE("config loading, overrides and validation") {
    const auto dir = fresh_dir("uq_cfg_test");
    const auto file = dir / "config.json";
    {
        std::ofstream out(file);
        out << R"({"basis":"maxent","n_basis":6,"t_end":5.0,"seed":12,"sample_list":[10,20]})";
    }
    const ExperimentConfig c = load_config(file);
    CHECK(c.basis == "maxent");
    CHECK(c.n_basis == 6);
    CHECK(c.t_end == 5.0);
    CHECK(c.seed == 12);
    REQUIRE(c.sample_list.size() == 2);
    CHECK(c.n_samples == 500); // untouched default

    {
        std::ofstream out(file);
        out << R"({"n_bases": 6})";
    }
    CHECK_THROWS_AS(load_config(file), InvalidInputError);
    {
        std::ofstream out(file);
        out << R"({"n_basis": "six"})";
    }
    CHECK_THROWS_AS(load_config(file), InvalidInputError);
    {
        std::ofstream out(file);
        out << "not json";
    }
    CHECK_THROWS_AS(load_config(file), InvalidInputError);
    CHECK_THROWS_AS(load_config(dir / "missing.json"), InvalidInputError);

    ExperimentConfig bad;
    bad.n_basis = 1;
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);
    bad = ExperimentConfig{};
    bad.basis = "legendre";
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);
    bad = ExperimentConfig{};
    bad.report_dt = 0.001;
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("study drivers write the documented files deterministically") {
    const auto dir = fresh_dir("uq_driver_test");
    ExperimentConfig c;
    c.experiment = "example1";
    c.basis = "maxent";
    c.n_basis = 4;
    c.n_samples = 60;
    c.t_end = 2.0;
    c.out_dir = (dir / "ex1").string();

    const auto files = run_example1(c);
    REQUIRE(files.size() == 2);
    CHECK(std::filesystem::path(files[0]).filename() == "example1_maxent_moments.csv");
    CHECK(std::filesystem::path(files[1]).filename() == "meta.json");

    const std::string csv1 = slurp(files[0]);
    const std::string meta1 = slurp(files[1]);
    CHECK(csv1.rfind("t,mean,variance,mean_ref,variance_ref,err_mean,err_variance\n",
                     0) == 0);
    CHECK(meta1.find("\"midpoint-grid\"") != std::string::npos);

    run_example1(c);
    CHECK(slurp(files[0]) == csv1);
    CHECK(slurp(files[1]) == meta1);

    ExperimentConfig sweep = c;
    sweep.experiment = "sweep-basis";
    sweep.basis_list = {2, 3};
    sweep.out_dir = (dir / "sweep").string();
    const auto sweep_files = run_basis_sweep(sweep);
    CHECK(slurp(sweep_files[0]).rfind("basis,n_B,err_mean,err_var\n", 0) == 0);

    ExperimentConfig samples = c;
    samples.experiment = "sweep-samples";
    samples.n_basis = 5;
    samples.repeats = 3;
    samples.sample_list = {15, 30};
    samples.out_dir = (dir / "samples").string();
    const auto sample_files = run_sample_study(samples);
    CHECK(slurp(sample_files[0])
              .rfind("n_D,mean_err_mean,var_err_mean,mean_err_var,var_err_var\n", 0) == 0);

    ExperimentConfig two = c;
    two.experiment = "example2";
    two.basis = "both";
    two.n_samples = 60;
    two.n_labeled = 5;
    two.n_mc = 500;
    two.t_end = 2.0;
    two.out_dir = (dir / "ex2").string();
    const auto two_files = run_example2(two);
    REQUIRE(two_files.size() == 4);
    CHECK(slurp(two_files[2]).rfind("delta,a_true,err_maxent,err_apc\n", 0) == 0);
    std::filesystem::remove_all(dir);
}
