#ifndef UQ_APC_HPP
#define UQ_APC_HPP

#include <filesystem>
#include <string>
#include <Eigen/Core>

#include "uq/basis.hpp"
#include "uq/measure.hpp"

namespace uq {

// Raw sample moments E[D^k] for k = 0..k_max of a 1-d measure.
Eigen::VectorXd raw_moments(const EmpiricalMeasure& measure, int k_max);

// Polynomial basis orthonormalized with respect to an empirical measure
// (arbitrary polynomial chaos). Row k of coefficients() holds the monomial
// coefficients of the degree-k polynomial: phi_k(x) = sum_j C(k,j) x^j.
class ApcBasis : public Basis {
public:
    // Orthonormalizes monomials 1, x, ..., x^P against the sample measure by
    // modified Gram-Schmidt applied twice on standardized samples.
    static ApcBasis build(const EmpiricalMeasure& measure, int degree);

    BasisKind kind() const override { return BasisKind::apc; }
    Eigen::Index size() const override { return coeffs_.rows(); }
    int dim() const override { return 1; }
    Eigen::VectorXd eval(const Eigen::VectorXd& query) const override;
    using Basis::eval;

    int degree() const { return static_cast<int>(coeffs_.rows()) - 1; }
    const Eigen::MatrixXd& coefficients() const { return coeffs_; }
    // Fingerprint of the construction measure, for provenance checks.
    const std::string& measure_id() const { return measure_id_; }

    // CSV export, one row per polynomial: degree,c0,...,cP.
    void save_coefficients_csv(const std::filesystem::path& file) const;

    static constexpr int max_degree = 12;

private:
    ApcBasis(Eigen::MatrixXd coeffs, std::string measure_id);

    Eigen::MatrixXd coeffs_;
    std::string measure_id_;
};

} // namespace uq

#endif
