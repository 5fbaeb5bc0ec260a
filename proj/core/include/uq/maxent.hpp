#ifndef UQ_MAXENT_HPP
#define UQ_MAXENT_HPP

#include <filesystem>
#include <Eigen/Core>

#include "uq/basis.hpp"

namespace uq {

// Scattered node set B = {D_1, ..., D_N} in R^d defining a maxent basis.
// Nodes are stored column-wise. Invariants enforced at construction:
// N >= 2, all coordinates finite, all nodes pairwise distinct.
class NodeSet {
public:
    explicit NodeSet(Eigen::MatrixXd nodes);

    // n uniformly spaced 1-d nodes on the closed interval [lo, hi].
    static NodeSet uniform(double lo, double hi, Eigen::Index n);
    // 1-d node set from a coordinate list.
    static NodeSet from_coordinates(const std::vector<double>& coords);

    // Plain text, one node per line, whitespace-separated coordinates.
    static NodeSet load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;

    int dim() const { return static_cast<int>(nodes_.rows()); }
    Eigen::Index count() const { return nodes_.cols(); }
    const Eigen::MatrixXd& nodes() const { return nodes_; }
    Eigen::VectorXd node(Eigen::Index i) const { return nodes_.col(i); }

    // Largest pairwise node distance; sets the scale of all tolerances.
    double hull_diameter() const { return diameter_; }

private:
    Eigen::MatrixXd nodes_;
    double diameter_;
};

// Smoothing prior on the nodes. beta = 0 gives the uniform prior 1/N;
// beta > 0 concentrates weight on nodes near the query.
struct Prior {
    double beta = 0.0;
};

// m_i(q) = exp(-beta |D_i - q|^2) / sum_j exp(-beta |D_j - q|^2)
Eigen::VectorXd gaussian_prior(const NodeSet& nodes, const Eigen::VectorXd& query,
                               double beta);

struct SolverOptions {
    double tol_scale = 1e-12;  // residual tolerance = tol_scale * (1 + hull diameter)
    int max_iterations = 100;
    double lambda_cap = 1e8;   // divergence sentinel on |lambda|
    double vertex_snap = 1e-12; // * hull diameter, node-coincidence snap distance
};

struct LagrangeSolution {
    Eigen::VectorXd lambda;
    int iterations = 0;
    double residual_norm = 0.0;
};

// Solves the dual first-order condition sum_i (D_i - q) m_i exp(-lambda.(D_i - q)) = 0
// by damped Newton iteration with an analytic Jacobian and backtracking line search.
// Throws HullViolationError on divergence and ConvergenceError on budget exhaustion.
LagrangeSolution solve_lagrange(const NodeSet& nodes, const Eigen::VectorXd& query,
                                const Eigen::VectorXd& prior,
                                const SolverOptions& options = {});

struct MaxentEvaluation {
    Eigen::VectorXd query;
    Eigen::VectorXd lambda;
    Eigen::VectorXd psi;
    int iterations = 0;
    double residual_norm = 0.0;
};

// Evaluates the maxent basis at a query inside the hull:
//   psi_i(q) = m_i exp(-lambda.(D_i - q)) / sum_j m_j exp(-lambda.(D_j - q))
// Partition of unity and linear precision hold by construction. Queries within
// vertex_snap * diameter of a hull vertex return the indicator at that node.
MaxentEvaluation eval_basis(const NodeSet& nodes, const Eigen::VectorXd& query,
                            double beta = 0.0, const SolverOptions& options = {});

// Shannon entropy -sum p_i log p_i with 0 log 0 = 0. Requires a probability vector.
double entropy(const Eigen::VectorXd& p);

// Relative entropy sum p_i log(p_i / m_i); m must be strictly positive.
double relative_entropy(const Eigen::VectorXd& p, const Eigen::VectorXd& m);

// Convex hull membership. Exact interval test in 1-d; in higher dimension the
// test is by dual solvability and is conservative on the hull boundary.
bool in_hull(const NodeSet& nodes, const Eigen::VectorXd& query,
             const SolverOptions& options = {});

// Reusable evaluator bundling a node set, a prior width and solver options.
class MaxentBasis : public Basis {
public:
    MaxentBasis(NodeSet nodes, double beta = 0.0, SolverOptions options = {});

    BasisKind kind() const override { return BasisKind::maxent; }
    Eigen::Index size() const override { return nodes_.count(); }
    int dim() const override { return nodes_.dim(); }
    Eigen::VectorXd eval(const Eigen::VectorXd& query) const override;
    using Basis::eval;

    MaxentEvaluation evaluate(const Eigen::VectorXd& query) const;
    bool contains(const Eigen::VectorXd& query) const;

    const NodeSet& nodes() const { return nodes_; }
    double beta() const { return beta_; }
    const SolverOptions& options() const { return options_; }

private:
    NodeSet nodes_;
    double beta_;
    SolverOptions options_;
};

} // namespace uq

#endif
