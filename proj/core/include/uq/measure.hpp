#ifndef UQ_MEASURE_HPP
#define UQ_MEASURE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <Eigen/Core>

#include "uq/basis.hpp"

namespace uq {

// How a sample set was produced; recorded for reproducibility metadata.
struct GeneratorInfo {
    std::string kind;          // "manual", "uniform-grid", "interior-grid",
                               // "midpoint-grid", "uniform-random", "gaussian-random"
    double lo = 0.0, hi = 0.0; // range for grid/uniform generators
    double mean = 0.0, stddev = 0.0; // gaussian generator parameters
    std::uint64_t seed = 0;    // random generators only
};

// Finite sample set D standing in for the distribution of the random input.
// All expectations in the library are plain averages over these samples.
class EmpiricalMeasure {
public:
    explicit EmpiricalMeasure(Eigen::MatrixXd samples,
                              std::optional<GeneratorInfo> generator = std::nullopt);

    static EmpiricalMeasure from_coordinates(const std::vector<double>& coords);

    // Closed grid lo + (j-1)(hi-lo)/(n-1), j = 1..n (endpoints included).
    static EmpiricalMeasure uniform_grid(double lo, double hi, Eigen::Index n);
    // Strict-interior grid lo + j (hi-lo)/(n+1), j = 1..n.
    static EmpiricalMeasure interior_grid(double lo, double hi, Eigen::Index n);
    // Cell-midpoint grid lo + (j-1/2)(hi-lo)/n, j = 1..n.
    static EmpiricalMeasure midpoint_grid(double lo, double hi, Eigen::Index n);

    static EmpiricalMeasure uniform_random(double lo, double hi, Eigen::Index n,
                                           std::uint64_t seed);
    static EmpiricalMeasure gaussian_random(double mean, double stddev, Eigen::Index n,
                                            std::uint64_t seed);

    // Plain text, one sample per line.
    static EmpiricalMeasure load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;

    Eigen::Index count() const { return samples_.cols(); }
    int dim() const { return static_cast<int>(samples_.rows()); }
    const Eigen::MatrixXd& samples() const { return samples_; }
    Eigen::VectorXd sample(Eigen::Index j) const { return samples_.col(j); }
    const std::optional<GeneratorInfo>& generator() const { return generator_; }

    // Sample average of f over D. Throws EvaluationError on non-finite values.
    double expectation(const std::function<double(const Eigen::VectorXd&)>& f) const;
    // 1-d convenience.
    double expectation1(const std::function<double(double)>& f) const;

private:
    Eigen::MatrixXd samples_;
    std::optional<GeneratorInfo> generator_;
};

// First and second basis moments under the empirical measure:
//   gram = E[Psi Psi^T], mean = E[Psi],
//   weighted_gram = E[w(D) Psi Psi^T] when a weight function is supplied.
struct BasisStats {
    Eigen::MatrixXd gram;
    Eigen::VectorXd mean;
    std::optional<Eigen::MatrixXd> weighted_gram;
};

BasisStats basis_stats(const EmpiricalMeasure& measure, const Basis& basis,
                       const std::function<double(const Eigen::VectorXd&)>& weight = {});

} // namespace uq

#endif
