#ifndef UQ_SURROGATE_HPP
#define UQ_SURROGATE_HPP

#include <functional>
#include <vector>
#include <Eigen/Core>

#include "uq/basis.hpp"
#include "uq/measure.hpp"

namespace uq {

// Linear ODE dx/dt = A(D) x with random parameter D and state dimension n.
struct LinearStochasticOde {
    int dimension = 1;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> system_map;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> initial_condition;
    bool constant_initial = false; // initial condition independent of D
    double t_begin = 0.0;
    double t_end = 1.0;
    double step = 0.01;

    // Scalar problem dx/dt = a(D) x, deterministic x(0).
    static LinearStochasticOde scalar(std::function<double(double)> coefficient,
                                      double x0, double t_begin, double t_end,
                                      double step = 0.01);

    void validate() const;
};

// Galerkin-projected chaos-coefficient system dx_c/dt = M x_c, where
// x_c stacks the columns of the n x n_B coefficient matrix X.
struct Surrogate {
    Eigen::MatrixXd system_matrix;
    BasisStats stats;
    BasisKind basis_kind = BasisKind::maxent;
    Eigen::VectorXd initial_coeffs;
    int state_dim = 1;
    Eigen::Index basis_count = 0;
    double ridge_jitter = 0.0; // nonzero if the Gram solve needed regularization
};

// Assembles M = (E[Psi Psi^T] (x) I_n)^{-1} E[(Psi Psi^T) (x) A(D)] from sample
// averages over the measure. The scalar case reduces to G^{-1} E[a(D) Psi Psi^T].
Surrogate build_surrogate(const LinearStochasticOde& ode, const Basis& basis,
                          const EmpiricalMeasure& measure);

// Chaos coefficients representing the initial condition. A deterministic x0
// with the maxent basis replicates x0 across all basis functions (partition of
// unity makes the represented initial moments exact); with the aPC basis it
// loads x0 on the constant polynomial. Otherwise a Galerkin projection solve.
Eigen::VectorXd initial_coefficients(
    const LinearStochasticOde& ode, const Basis& basis,
    const EmpiricalMeasure& measure, const BasisStats& stats);

struct Trajectory {
    std::vector<double> times;
    Eigen::MatrixXd states; // column k = x_c(times[k])
};

// Classical fixed-step fourth-order Runge-Kutta for dx_c/dt = M x_c. The final
// step is shortened if the step does not divide the span; output times are
// exact grid values. Throws IntegrationError when the state leaves the
// representable range.
Trajectory integrate(const Surrogate& surrogate, double t_begin, double t_end,
                     double step);

// Moment estimates recovered from chaos coefficients:
//   mean(t)       = X(t) E[Psi]
//   covariance(t) = X(t) (E[Psi Psi^T] - E[Psi] E[Psi]^T) X(t)^T
struct MomentSeries {
    std::vector<double> times;
    Eigen::MatrixXd means;                    // n x K
    std::vector<Eigen::MatrixXd> covariances; // K matrices, n x n

    double mean1(std::size_t k) const { return means(0, static_cast<Eigen::Index>(k)); }
    double variance1(std::size_t k) const { return covariances[k](0, 0); }
};

MomentSeries moments(const Trajectory& trajectory, const BasisStats& stats,
                     int state_dim);

// Residual orthogonality check E[e Psi^T] with e = X' Psi - A(D) X Psi,
// re-evaluated by direct sample average; returns vec(E[e Psi^T]).
Eigen::VectorXd galerkin_residual(const LinearStochasticOde& ode, const Basis& basis,
                                  const EmpiricalMeasure& measure,
                                  const Eigen::VectorXd& x_c,
                                  const Eigen::VectorXd& x_c_dot);

} // namespace uq

#endif
