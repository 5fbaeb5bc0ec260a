#include "uq/surrogate.hpp"

#include <cmath>
#include <limits>
#include <Eigen/Dense>

#include "uq/errors.hpp"

namespace uq {

namespace {

constexpr double kMaxCondition = 1.0 / (1e3 * std::numeric_limits<double>::epsilon());

struct GramFactor {
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
    double jitter = 0.0;
};

double condition_estimate(const Eigen::MatrixXd& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0))
        return std::numeric_limits<double>::infinity();
    return hi / lo;
}

// SPD factorization of the Gram matrix with a single ridge retry.
GramFactor factor_gram(const Eigen::MatrixXd& gram) {
    GramFactor f;
    const double cond = condition_estimate(gram);
    if (cond <= kMaxCondition) {
        f.ldlt.compute(gram);
        if (f.ldlt.info() == Eigen::Success)
            return f;
    }
    const Eigen::Index n = gram.rows();
    f.jitter = 1e-12 * gram.trace() / static_cast<double>(n);
    Eigen::MatrixXd bumped =
        gram + f.jitter * Eigen::MatrixXd::Identity(n, n);
    const double cond2 = condition_estimate(bumped);
    if (cond2 > kMaxCondition)
        throw ConditioningError("Gram matrix is numerically singular",
                                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram)
                                    .eigenvalues()
                                    .minCoeff());
    f.ldlt.compute(bumped);
    if (f.ldlt.info() != Eigen::Success)
        throw ConditioningError("Gram factorization failed", 0.0);
    return f;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace

LinearStochasticOde LinearStochasticOde::scalar(std::function<double(double)> coefficient,
                                                double x0, double t_begin, double t_end,
                                                double step) {
    if (!coefficient)
        throw InvalidInputError("scalar problem requires a coefficient function");
    LinearStochasticOde ode;
    ode.dimension = 1;
    ode.system_map = [c = std::move(coefficient)](const Eigen::VectorXd& d) {
        Eigen::MatrixXd a(1, 1);
        a(0, 0) = c(d(0));
        return a;
    };
    ode.initial_condition = [x0](const Eigen::VectorXd&) {
        Eigen::VectorXd v(1);
        v(0) = x0;
        return v;
    };
    ode.constant_initial = true;
    ode.t_begin = t_begin;
    ode.t_end = t_end;
    ode.step = step;
    ode.validate();
    return ode;
}

void LinearStochasticOde::validate() const {
    if (dimension < 1)
        throw InvalidInputError("state dimension must be positive");
    if (!system_map)
        throw InvalidInputError("system map is required");
    if (!initial_condition)
        throw InvalidInputError("initial condition is required");
    if (!(step > 0.0))
        throw InvalidInputError("step size must be positive");
    if (!(t_end > t_begin))
        throw InvalidInputError("time span must have t_end > t_begin");
}

Surrogate build_surrogate(const LinearStochasticOde& ode, const Basis& basis,
                          const EmpiricalMeasure& measure) {
    ode.validate();
    const int n = ode.dimension;
    const Eigen::Index n_b = basis.size();

    Surrogate s;
    s.basis_kind = basis.kind();
    s.state_dim = n;
    s.basis_count = n_b;

    if (n == 1) {
        auto weight = [&ode](const Eigen::VectorXd& d) {
            const Eigen::MatrixXd a = ode.system_map(d);
            if (a.rows() != 1 || a.cols() != 1)
                throw InvalidInputError("system map must return a 1x1 matrix");
            return a(0, 0);
        };
        s.stats = basis_stats(measure, basis, weight);
        GramFactor f = factor_gram(s.stats.gram);
        s.ridge_jitter = f.jitter;
        s.system_matrix = f.ldlt.solve(*s.stats.weighted_gram);
    } else {
        s.stats = basis_stats(measure, basis);
        Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n * n_b, n * n_b);
        for (Eigen::Index j = 0; j < measure.count(); ++j) {
            const Eigen::VectorXd psi = basis.eval(measure.sample(j));
            const Eigen::MatrixXd a = ode.system_map(measure.sample(j));
            if (a.rows() != n || a.cols() != n)
                throw InvalidInputError("system map dimension mismatch");
            if (!a.allFinite())
                throw EvaluationError("system map not finite at sample " +
                                          std::to_string(j),
                                      static_cast<std::size_t>(j));
            rhs += kron(psi * psi.transpose(), a);
        }
        rhs /= static_cast<double>(measure.count());
        GramFactor f = factor_gram(s.stats.gram);
        s.ridge_jitter = f.jitter;
        Eigen::MatrixXd gram_used = s.stats.gram;
        if (f.jitter > 0.0)
            gram_used += f.jitter * Eigen::MatrixXd::Identity(n_b, n_b);
        s.system_matrix =
            kron(gram_used, Eigen::MatrixXd::Identity(n, n)).ldlt().solve(rhs);
    }
    s.initial_coeffs = initial_coefficients(ode, basis, measure, s.stats);
    return s;
}

Eigen::VectorXd initial_coefficients(const LinearStochasticOde& ode, const Basis& basis,
                                     const EmpiricalMeasure& measure,
                                     const BasisStats& stats) {
    const int n = ode.dimension;
    const Eigen::Index n_b = basis.size();
    Eigen::VectorXd x_c = Eigen::VectorXd::Zero(n * n_b);

    if (ode.constant_initial) {
        const Eigen::VectorXd x0 = ode.initial_condition(measure.sample(0));
        if (x0.size() != n)
            throw InvalidInputError("initial condition dimension mismatch");
        if (basis.kind() == BasisKind::maxent) {
            // Partition of unity: replicating x0 reproduces it exactly.
            for (Eigen::Index i = 0; i < n_b; ++i)
                x_c.segment(i * n, n) = x0;
        } else {
            // The degree-0 polynomial is the constant 1.
            x_c.segment(0, n) = x0;
        }
        return x_c;
    }

    // Galerkin projection: gram * X0^T = E[Psi x0(D)^T], one solve per state row.
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n_b, n);
    for (Eigen::Index j = 0; j < measure.count(); ++j) {
        const Eigen::VectorXd psi = basis.eval(measure.sample(j));
        const Eigen::VectorXd x0 = ode.initial_condition(measure.sample(j));
        if (x0.size() != n)
            throw InvalidInputError("initial condition dimension mismatch");
        if (!x0.allFinite())
            throw EvaluationError("initial condition not finite at sample " +
                                      std::to_string(j),
                                  static_cast<std::size_t>(j));
        rhs += psi * x0.transpose();
    }
    rhs /= static_cast<double>(measure.count());
    GramFactor f = factor_gram(stats.gram);
    const Eigen::MatrixXd coeff = f.ldlt.solve(rhs); // n_b x n
    for (Eigen::Index i = 0; i < n_b; ++i)
        x_c.segment(i * n, n) = coeff.row(i).transpose();
    return x_c;
}

Trajectory integrate(const Surrogate& surrogate, double t_begin, double t_end,
                     double step) {
    if (!(step > 0.0))
        throw InvalidInputError("step size must be positive");
    if (!(t_end > t_begin))
        throw InvalidInputError("time span must have t_end > t_begin");
    const Eigen::MatrixXd& m = surrogate.system_matrix;
    if (m.rows() != m.cols() || m.rows() != surrogate.initial_coeffs.size())
        throw InvalidInputError("surrogate dimensions are inconsistent");

    const double span = t_end - t_begin;
    const double steps_exact = span / step;
    Eigen::Index n_full = static_cast<Eigen::Index>(std::floor(steps_exact + 1e-9));
    double tail = span - static_cast<double>(n_full) * step;
    if (tail <= 1e-12 * span)
        tail = 0.0;
    const Eigen::Index n_steps = n_full + (tail > 0.0 ? 1 : 0);

    Trajectory out;
    out.times.resize(static_cast<std::size_t>(n_steps) + 1);
    out.states.resize(m.rows(), n_steps + 1);

    Eigen::VectorXd x = surrogate.initial_coeffs;
    out.times[0] = t_begin;
    out.states.col(0) = x;
    Eigen::VectorXd k1, k2, k3, k4;
    for (Eigen::Index k = 0; k < n_steps; ++k) {
        const double h = (k < n_full) ? step : tail;
        k1 = m * x;
        k2 = m * (x + 0.5 * h * k1);
        k3 = m * (x + 0.5 * h * k2);
        k4 = m * (x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t =
            (k + 1 <= n_full) ? t_begin + static_cast<double>(k + 1) * step : t_end;
        if (!x.allFinite())
            throw IntegrationError("surrogate state blew up at t = " + std::to_string(t),
                                   t);
        out.times[static_cast<std::size_t>(k) + 1] = (k + 1 == n_steps) ? t_end : t;
        out.states.col(k + 1) = x;
    }
    out.times.back() = t_end;
    return out;
}

MomentSeries moments(const Trajectory& trajectory, const BasisStats& stats,
                     int state_dim) {
    const Eigen::Index n = state_dim;
    const Eigen::Index n_b = stats.mean.size();
    if (trajectory.states.rows() != n * n_b)
        throw InvalidInputError("trajectory does not match basis statistics");

    Eigen::MatrixXd centered = stats.gram - stats.mean * stats.mean.transpose();
    centered = 0.5 * (centered + centered.transpose().eval());

    MomentSeries out;
    out.times = trajectory.times;
    const Eigen::Index steps = trajectory.states.cols();
    out.means.resize(n, steps);
    out.covariances.resize(static_cast<std::size_t>(steps));
    for (Eigen::Index k = 0; k < steps; ++k) {
        const Eigen::Map<const Eigen::MatrixXd> x(trajectory.states.col(k).data(), n, n_b);
        out.means.col(k) = x * stats.mean;
        Eigen::MatrixXd cov = x * centered * x.transpose();
        out.covariances[static_cast<std::size_t>(k)] =
            0.5 * (cov + cov.transpose().eval());
    }
    return out;
}

Eigen::VectorXd galerkin_residual(const LinearStochasticOde& ode, const Basis& basis,
                                  const EmpiricalMeasure& measure,
                                  const Eigen::VectorXd& x_c,
                                  const Eigen::VectorXd& x_c_dot) {
    const int n = ode.dimension;
    const Eigen::Index n_b = basis.size();
    if (x_c.size() != n * n_b || x_c_dot.size() != n * n_b)
        throw InvalidInputError("coefficient vector size mismatch");
    const Eigen::Map<const Eigen::MatrixXd> x(x_c.data(), n, n_b);
    const Eigen::Map<const Eigen::MatrixXd> xdot(x_c_dot.data(), n, n_b);

    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n_b);
    for (Eigen::Index j = 0; j < measure.count(); ++j) {
        const Eigen::VectorXd psi = basis.eval(measure.sample(j));
        const Eigen::MatrixXd a = ode.system_map(measure.sample(j));
        const Eigen::VectorXd e = xdot * psi - a * (x * psi);
        acc += e * psi.transpose();
    }
    acc /= static_cast<double>(measure.count());
    return Eigen::Map<Eigen::VectorXd>(acc.data(), n * n_b);
}

} // namespace uq
