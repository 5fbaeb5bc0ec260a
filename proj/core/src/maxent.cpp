#include "uq/maxent.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>
#include <Eigen/Dense>

#include "uq/errors.hpp"

namespace uq {

namespace {

void require_query(const NodeSet& nodes, const Eigen::VectorXd& query) {
    if (query.size() != nodes.dim())
        throw InvalidInputError("query dimension does not match node dimension");
    if (!query.allFinite())
        throw InvalidInputError("query has non-finite coordinates");
}

// Normalized weights psi_i proportional to m_i exp(-lambda.(D_i - q)), computed
// with the largest exponent shifted out to avoid overflow.
Eigen::VectorXd normalized_weights(const Eigen::MatrixXd& shifted,
                                   const Eigen::VectorXd& prior,
                                   const Eigen::VectorXd& lambda) {
    Eigen::VectorXd exponent = -(shifted.transpose() * lambda);
    const double peak = exponent.maxCoeff();
    Eigen::VectorXd w = prior.array() * (exponent.array() - peak).exp();
    return w / w.sum();
}

Eigen::VectorXd indicator(Eigen::Index n, Eigen::Index k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(k) = 1.0;
    return e;
}

// Index of the node closest to the query if within snap distance.
Eigen::Index snapped_node(const NodeSet& nodes, const Eigen::VectorXd& query,
                          double snap) {
    Eigen::Index best = -1;
    double best_dist = snap;
    for (Eigen::Index i = 0; i < nodes.count(); ++i) {
        const double dist = (nodes.nodes().col(i) - query).norm();
        if (dist <= best_dist) {
            best = i;
            best_dist = dist;
        }
    }
    return best;
}

bool is_interval_endpoint(const NodeSet& nodes, Eigen::Index k) {
    const auto& row = nodes.nodes().row(0);
    double lo = row.minCoeff();
    double hi = row.maxCoeff();
    return nodes.nodes()(0, k) == lo || nodes.nodes()(0, k) == hi;
}

} // namespace

NodeSet::NodeSet(Eigen::MatrixXd nodes) : nodes_(std::move(nodes)) {
    if (nodes_.cols() < 2)
        throw InvalidInputError("node set needs at least two nodes");
    if (nodes_.rows() < 1)
        throw InvalidInputError("node set needs at least one coordinate per node");
    if (!nodes_.allFinite())
        throw InvalidInputError("node set has non-finite coordinates");
    diameter_ = 0.0;
    for (Eigen::Index i = 0; i < nodes_.cols(); ++i) {
        for (Eigen::Index j = i + 1; j < nodes_.cols(); ++j) {
            const double dist = (nodes_.col(i) - nodes_.col(j)).norm();
            if (dist == 0.0)
                throw InvalidInputError("node set has duplicate nodes");
            diameter_ = std::max(diameter_, dist);
        }
    }
}

NodeSet NodeSet::uniform(double lo, double hi, Eigen::Index n) {
    if (!(lo < hi))
        throw InvalidInputError("uniform node range requires lo < hi");
    if (n < 2)
        throw InvalidInputError("uniform node set needs at least two nodes");
    Eigen::MatrixXd m(1, n);
    m.row(0) = Eigen::RowVectorXd::LinSpaced(n, lo, hi);
    return NodeSet(std::move(m));
}

NodeSet NodeSet::from_coordinates(const std::vector<double>& coords) {
    Eigen::MatrixXd m(1, static_cast<Eigen::Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i)
        m(0, static_cast<Eigen::Index>(i)) = coords[i];
    return NodeSet(std::move(m));
}

NodeSet NodeSet::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw InvalidInputError("cannot open node file: " + file.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<double> coords;
        double v;
        while (ls >> v)
            coords.push_back(v);
        if (!coords.empty())
            rows.push_back(std::move(coords));
    }
    if (rows.empty())
        throw InvalidInputError("node file is empty: " + file.string());
    const std::size_t d = rows.front().size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].size() != d)
            throw InvalidInputError("inconsistent node dimension in " + file.string());
        for (std::size_t i = 0; i < d; ++i)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[j][i];
    }
    return NodeSet(std::move(m));
}

void NodeSet::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out)
        throw InvalidInputError("cannot write node file: " + file.string());
    out.precision(17);
    for (Eigen::Index j = 0; j < nodes_.cols(); ++j) {
        for (Eigen::Index i = 0; i < nodes_.rows(); ++i) {
            if (i) out << ' ';
            out << nodes_(i, j);
        }
        out << '\n';
    }
}

Eigen::VectorXd gaussian_prior(const NodeSet& nodes, const Eigen::VectorXd& query,
                               double beta) {
    require_query(nodes, query);
    if (!(beta >= 0.0))
        throw InvalidInputError("prior width beta must be non-negative");
    const Eigen::Index n = nodes.count();
    Eigen::VectorXd exponent(n);
    for (Eigen::Index i = 0; i < n; ++i)
        exponent(i) = -beta * (nodes.nodes().col(i) - query).squaredNorm();
    const double peak = exponent.maxCoeff();
    Eigen::VectorXd m = (exponent.array() - peak).exp();
    return m / m.sum();
}

LagrangeSolution solve_lagrange(const NodeSet& nodes, const Eigen::VectorXd& query,
                                const Eigen::VectorXd& prior,
                                const SolverOptions& options) {
    require_query(nodes, query);
    if (prior.size() != nodes.count())
        throw InvalidInputError("prior length does not match node count");
    if (!prior.allFinite() || prior.minCoeff() < 0.0)
        throw InvalidInputError("prior must be non-negative and finite");
    if (prior.sum() <= 0.0)
        throw InvalidInputError("prior must have positive mass");

    const int d = nodes.dim();
    const Eigen::MatrixXd shifted = nodes.nodes().colwise() - query;
    const double tol = options.tol_scale * (1.0 + nodes.hull_diameter());

    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd psi = normalized_weights(shifted, prior, lambda);
    Eigen::VectorXd residual = shifted * psi;
    double res_norm = residual.norm();

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        if (res_norm <= tol)
            return {lambda, iter, res_norm};

        // Hessian of the dual: weighted node covariance about the query.
        Eigen::MatrixXd hess = shifted * psi.asDiagonal() * shifted.transpose()
                               - residual * residual.transpose();
        Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
        Eigen::VectorXd delta;
        if (ldlt.info() == Eigen::Success && ldlt.isPositive())
            delta = ldlt.solve(residual);
        if (delta.size() == 0 || !delta.allFinite()) {
            const double ridge = 1e-14 * (1.0 + hess.trace());
            delta = (hess + ridge * Eigen::MatrixXd::Identity(d, d)).ldlt().solve(residual);
            if (!delta.allFinite())
                throw HullViolationError("dual Newton step is not finite; query outside hull "
                                         "or degenerate node set");
        }

        // Backtracking: halve the step until the residual norm decreases.
        double alpha = 1.0;
        bool accepted = false;
        for (int halvings = 0; halvings < 60; ++halvings) {
            Eigen::VectorXd candidate = lambda + alpha * delta;
            Eigen::VectorXd psi_c = normalized_weights(shifted, prior, candidate);
            Eigen::VectorXd res_c = shifted * psi_c;
            const double norm_c = res_c.norm();
            if (norm_c < res_norm) {
                lambda = std::move(candidate);
                psi = std::move(psi_c);
                residual = std::move(res_c);
                res_norm = norm_c;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted)
            throw HullViolationError("dual residual stagnated; query outside hull or on "
                                     "its boundary");
        if (lambda.norm() > options.lambda_cap)
            throw HullViolationError("dual multipliers diverged; query outside hull or on "
                                     "its boundary");
    }
    if (res_norm <= tol)
        return {lambda, options.max_iterations, res_norm};
    throw ConvergenceError("dual Newton iteration budget exhausted", res_norm);
}

MaxentEvaluation eval_basis(const NodeSet& nodes, const Eigen::VectorXd& query,
                            double beta, const SolverOptions& options) {
    require_query(nodes, query);
    const Eigen::Index n = nodes.count();
    const double snap = options.vertex_snap * nodes.hull_diameter();
    const Eigen::Index near = snapped_node(nodes, query, snap);

    if (nodes.dim() == 1) {
        const double lo = nodes.nodes().row(0).minCoeff();
        const double hi = nodes.nodes().row(0).maxCoeff();
        const double q = query(0);
        if (q < lo - snap || q > hi + snap)
            throw HullViolationError("query outside the node interval");
        if (near >= 0 && is_interval_endpoint(nodes, near)) {
            MaxentEvaluation ev{query, Eigen::VectorXd::Zero(1), indicator(n, near), 0, 0.0};
            return ev;
        }
        // Clamp snap-range queries onto the interval so the solve stays feasible.
        Eigen::VectorXd inside = query;
        inside(0) = std::min(std::max(q, lo), hi);
        auto m = gaussian_prior(nodes, inside, beta);
        auto sol = solve_lagrange(nodes, inside, m, options);
        const Eigen::MatrixXd shifted = nodes.nodes().colwise() - inside;
        Eigen::VectorXd psi = normalized_weights(shifted, m, sol.lambda);
        return {query, sol.lambda, std::move(psi), sol.iterations, sol.residual_norm};
    }

    auto m = gaussian_prior(nodes, query, beta);
    try {
        auto sol = solve_lagrange(nodes, query, m, options);
        const Eigen::MatrixXd shifted = nodes.nodes().colwise() - query;
        Eigen::VectorXd psi = normalized_weights(shifted, m, sol.lambda);
        // Linear precision forces psi(near) >= 1 - O(snap/diameter) when the
        // snapped node is a hull vertex, while an interior node keeps it well
        // below 1; snap the former to the exact indicator limit.
        if (near >= 0 && psi(near) > 1.0 - 1e-9) {
            MaxentEvaluation ev{query, sol.lambda, indicator(n, near),
                                sol.iterations, sol.residual_norm};
            return ev;
        }
        return {query, sol.lambda, std::move(psi), sol.iterations, sol.residual_norm};
    } catch (const HullViolationError&) {
        // A query sitting on a hull vertex makes the dual diverge; the basis
        // limit there is the indicator at that node.
        if (near >= 0) {
            MaxentEvaluation ev{query, Eigen::VectorXd::Zero(nodes.dim()),
                                indicator(n, near), 0, 0.0};
            return ev;
        }
        throw;
    }
}

double entropy(const Eigen::VectorXd& p) {
    if (p.size() == 0)
        throw InvalidInputError("entropy of an empty vector");
    if (!p.allFinite() || p.minCoeff() < 0.0)
        throw InvalidInputError("entropy requires non-negative finite entries");
    if (std::abs(p.sum() - 1.0) > 1e-9)
        throw InvalidInputError("entropy requires a normalized probability vector");
    double h = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (p(i) > 0.0)
            h -= p(i) * std::log(p(i));
    return h;
}

double relative_entropy(const Eigen::VectorXd& p, const Eigen::VectorXd& m) {
    if (p.size() != m.size())
        throw InvalidInputError("relative entropy requires equal-length vectors");
    if (!p.allFinite() || p.minCoeff() < 0.0)
        throw InvalidInputError("relative entropy requires non-negative finite p");
    if (std::abs(p.sum() - 1.0) > 1e-9)
        throw InvalidInputError("relative entropy requires normalized p");
    if (!m.allFinite() || m.minCoeff() <= 0.0)
        throw InvalidInputError("relative entropy requires strictly positive m");
    double h = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (p(i) > 0.0)
            h += p(i) * std::log(p(i) / m(i));
    return h;
}

bool in_hull(const NodeSet& nodes, const Eigen::VectorXd& query,
             const SolverOptions& options) {
    require_query(nodes, query);
    if (nodes.dim() == 1) {
        const double lo = nodes.nodes().row(0).minCoeff();
        const double hi = nodes.nodes().row(0).maxCoeff();
        return lo <= query(0) && query(0) <= hi;
    }
    try {
        (void)eval_basis(nodes, query, 0.0, options);
        return true;
    } catch (const HullViolationError&) {
        return false;
    }
}

MaxentBasis::MaxentBasis(NodeSet nodes, double beta, SolverOptions options)
    : nodes_(std::move(nodes)), beta_(beta), options_(options) {
    if (!(beta >= 0.0))
        throw InvalidInputError("prior width beta must be non-negative");
}

Eigen::VectorXd MaxentBasis::eval(const Eigen::VectorXd& query) const {
    return eval_basis(nodes_, query, beta_, options_).psi;
}

MaxentEvaluation MaxentBasis::evaluate(const Eigen::VectorXd& query) const {
    return eval_basis(nodes_, query, beta_, options_);
}

bool MaxentBasis::contains(const Eigen::VectorXd& query) const {
    return in_hull(nodes_, query, options_);
}

} // namespace uq
