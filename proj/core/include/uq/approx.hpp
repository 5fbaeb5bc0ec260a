#ifndef UQ_APPROX_HPP
#define UQ_APPROX_HPP

#include <functional>
#include <memory>
#include <vector>
#include <Eigen/Core>

#include "uq/basis.hpp"
#include "uq/measure.hpp"

namespace uq {

// Scattered data (D'_j, a_j) for function recovery.
struct LabeledSet {
    Eigen::MatrixXd points; // d x m, column per point
    Eigen::VectorXd values; // m labels

    static LabeledSet from_scalar(const std::vector<double>& points,
                                  const std::vector<double>& values);
    static LabeledSet sampled(const Eigen::MatrixXd& points,
                              const std::function<double(const Eigen::VectorXd&)>& f);
    void validate() const;
};

// Basis expansion a_hat(q) = sum_i c_i psi_i(q) fitted to labeled data.
struct Approximant {
    std::shared_ptr<const Basis> basis;
    Eigen::VectorXd coeffs;
    double residual_norm = 0.0; // |design * c - values|_2 at the data
    bool rank_deficient = false;
};

// Least-squares fit via orthogonal (complete orthogonal decomposition)
// factorization; rank deficiency yields the least-norm solution and is flagged.
Approximant fit_least_squares(std::shared_ptr<const Basis> basis,
                              const LabeledSet& data);

double eval_approximant(const Approximant& fit, const Eigen::VectorXd& query);
double eval_approximant(const Approximant& fit, double query);

// Pointwise |a_hat - a| / max_grid |a| over an evaluation grid, plus its RMS.
struct NormalizedError {
    Eigen::VectorXd errors;
    double rms = 0.0;
    double scale = 0.0; // max_grid |a|
};

NormalizedError normalized_error(const Approximant& fit,
                                 const std::function<double(const Eigen::VectorXd&)>& truth,
                                 const EmpiricalMeasure& grid);

} // namespace uq

#endif
