#include "uq/approx.hpp"

#include <cmath>
#include <Eigen/Dense>

#include "uq/errors.hpp"

namespace uq {

LabeledSet LabeledSet::from_scalar(const std::vector<double>& points,
                                   const std::vector<double>& values) {
    if (points.size() != values.size())
        throw InvalidInputError("labeled set needs one value per point");
    LabeledSet set;
    set.points.resize(1, static_cast<Eigen::Index>(points.size()));
    set.values.resize(static_cast<Eigen::Index>(values.size()));
    for (std::size_t j = 0; j < points.size(); ++j) {
        set.points(0, static_cast<Eigen::Index>(j)) = points[j];
        set.values(static_cast<Eigen::Index>(j)) = values[j];
    }
    set.validate();
    return set;
}

LabeledSet LabeledSet::sampled(const Eigen::MatrixXd& points,
                               const std::function<double(const Eigen::VectorXd&)>& f) {
    if (!f)
        throw InvalidInputError("labeled set requires a label function");
    LabeledSet set;
    set.points = points;
    set.values.resize(points.cols());
    for (Eigen::Index j = 0; j < points.cols(); ++j)
        set.values(j) = f(points.col(j));
    set.validate();
    return set;
}

void LabeledSet::validate() const {
    if (points.cols() < 1)
        throw InvalidInputError("labeled set needs at least one point");
    if (points.cols() != values.size())
        throw InvalidInputError("labeled set needs one value per point");
    if (!points.allFinite() || !values.allFinite())
        throw InvalidInputError("labeled set has non-finite entries");
}

Approximant fit_least_squares(std::shared_ptr<const Basis> basis,
                              const LabeledSet& data) {
    if (!basis)
        throw InvalidInputError("fit requires a basis");
    data.validate();
    if (data.points.rows() != basis->dim())
        throw InvalidInputError("data dimension does not match basis dimension");

    const Eigen::Index m = data.points.cols();
    const Eigen::Index n = basis->size();
    Eigen::MatrixXd design(m, n);
    for (Eigen::Index j = 0; j < m; ++j)
        design.row(j) = basis->eval(Eigen::VectorXd(data.points.col(j))).transpose();

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
    Approximant fit;
    fit.basis = std::move(basis);
    fit.coeffs = cod.solve(data.values);
    fit.residual_norm = (design * fit.coeffs - data.values).norm();
    fit.rank_deficient = cod.rank() < n;
    return fit;
}

double eval_approximant(const Approximant& fit, const Eigen::VectorXd& query) {
    if (!fit.basis)
        throw InvalidInputError("approximant has no basis");
    if (fit.coeffs.size() != fit.basis->size())
        throw InvalidInputError("approximant coefficient size mismatch");
    return fit.coeffs.dot(fit.basis->eval(query));
}

double eval_approximant(const Approximant& fit, double query) {
    Eigen::VectorXd q(1);
    q << query;
    return eval_approximant(fit, q);
}

NormalizedError normalized_error(const Approximant& fit,
                                 const std::function<double(const Eigen::VectorXd&)>& truth,
                                 const EmpiricalMeasure& grid) {
    if (!truth)
        throw InvalidInputError("normalized error requires a truth function");
    const Eigen::Index m = grid.count();
    Eigen::VectorXd reference(m);
    Eigen::VectorXd estimate(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        reference(j) = truth(grid.sample(j));
        estimate(j) = eval_approximant(fit, Eigen::VectorXd(grid.sample(j)));
        if (!std::isfinite(reference(j)))
            throw EvaluationError("truth not finite at grid point " + std::to_string(j),
                                  static_cast<std::size_t>(j));
    }
    NormalizedError out;
    out.scale = reference.cwiseAbs().maxCoeff();
    if (!(out.scale > 0.0))
        throw InvalidInputError("normalized error undefined: truth vanishes on the grid");
    out.errors = (estimate - reference).cwiseAbs() / out.scale;
    out.rms = std::sqrt(out.errors.squaredNorm() / static_cast<double>(m));
    return out;
}

} // namespace uq
