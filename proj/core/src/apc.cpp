#include "uq/apc.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <Eigen/Dense>

#include "uq/errors.hpp"

namespace uq {

namespace {

constexpr double kPivotFloor = 1e-10;

std::string fingerprint(const Eigen::MatrixXd& samples) {
    // FNV-1a over the raw sample bytes.
    std::uint64_t h = 1469598103934665603ull;
    const auto* bytes = reinterpret_cast<const unsigned char*>(samples.data());
    const std::size_t n = sizeof(double) * static_cast<std::size_t>(samples.size());
    for (std::size_t i = 0; i < n; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

// One modified Gram-Schmidt sweep over the sample columns of V, mirroring all
// column operations on the coefficient matrix C (polynomials in the
// standardized variable). Throws when a pivot collapses.
void mgs_sweep(Eigen::MatrixXd& V, Eigen::MatrixXd& C) {
    const Eigen::Index m = V.cols();
    for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const double r = V.col(j).dot(V.col(k));
            V.col(k) -= r * V.col(j);
            C.col(k) -= r * C.col(j);
        }
        const double pivot = V.col(k).norm();
        if (!(pivot > kPivotFloor))
            throw ConditioningError("orthonormalization pivot collapsed at degree " +
                                        std::to_string(k),
                                    pivot);
        V.col(k) /= pivot;
        C.col(k) /= pivot;
    }
}

} // namespace

Eigen::VectorXd raw_moments(const EmpiricalMeasure& measure, int k_max) {
    if (measure.dim() != 1)
        throw InvalidInputError("raw moments require a one-dimensional measure");
    if (k_max < 0)
        throw InvalidInputError("raw moments require k_max >= 0");
    Eigen::VectorXd mom = Eigen::VectorXd::Zero(k_max + 1);
    for (Eigen::Index j = 0; j < measure.count(); ++j) {
        const double x = measure.samples()(0, j);
        double p = 1.0;
        for (int k = 0; k <= k_max; ++k) {
            mom(k) += p;
            p *= x;
        }
    }
    mom /= static_cast<double>(measure.count());
    if (!mom.allFinite())
        throw EvaluationError("raw moments overflowed", 0);
    return mom;
}

ApcBasis::ApcBasis(Eigen::MatrixXd coeffs, std::string measure_id)
    : coeffs_(std::move(coeffs)), measure_id_(std::move(measure_id)) {}

ApcBasis ApcBasis::build(const EmpiricalMeasure& measure, int degree) {
    if (measure.dim() != 1)
        throw InvalidInputError("polynomial chaos basis requires a one-dimensional measure");
    if (degree < 0 || degree > max_degree)
        throw InvalidInputError("polynomial degree must lie in [0, " +
                                std::to_string(max_degree) + "]");
    const Eigen::Index n_d = measure.count();
    if (n_d <= degree)
        throw InvalidInputError("need more samples than the polynomial degree");

    const Eigen::VectorXd x = measure.samples().row(0).transpose();
    const double mean = x.mean();
    const double sd = std::sqrt((x.array() - mean).square().mean());
    if (!(sd > 0.0))
        throw ConditioningError("samples are all identical", 0.0);
    const Eigen::VectorXd z = (x.array() - mean) / sd;

    // Monomial sample matrix in the standardized variable, scaled so that
    // column inner products are sample averages.
    const Eigen::Index m = degree + 1;
    Eigen::MatrixXd V(n_d, m);
    V.col(0).setOnes();
    for (Eigen::Index k = 1; k < m; ++k)
        V.col(k) = V.col(k - 1).cwiseProduct(z);
    V /= std::sqrt(static_cast<double>(n_d));

    Eigen::MatrixXd C = Eigen::MatrixXd::Identity(m, m);
    mgs_sweep(V, C);
    mgs_sweep(V, C); // second sweep restores orthogonality lost to rounding

    // Map coefficients from the standardized variable back to the original:
    // z^i = ((x - mean)/sd)^i expanded binomially.
    Eigen::MatrixXd expand = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        double binom = 1.0;
        for (Eigen::Index j = 0; j <= i; ++j) {
            if (j > 0)
                binom = binom * static_cast<double>(i - j + 1) / static_cast<double>(j);
            expand(j, i) = binom * std::pow(-mean, static_cast<double>(i - j)) /
                           std::pow(sd, static_cast<double>(i));
        }
    }
    Eigen::MatrixXd coeffs = (expand * C).transpose();
    if (!coeffs.allFinite())
        throw ConditioningError("orthonormalization produced non-finite coefficients", 0.0);
    return ApcBasis(std::move(coeffs), fingerprint(measure.samples()));
}

Eigen::VectorXd ApcBasis::eval(const Eigen::VectorXd& query) const {
    if (query.size() != 1)
        throw InvalidInputError("polynomial basis expects a scalar query");
    if (!query.allFinite())
        throw InvalidInputError("query has non-finite coordinates");
    const double xq = query(0);
    const Eigen::Index m = coeffs_.rows();
    Eigen::VectorXd phi(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        double acc = 0.0; // Horner evaluation of row k
        for (Eigen::Index j = m - 1; j >= 0; --j)
            acc = acc * xq + coeffs_(k, j);
        phi(k) = acc;
    }
    return phi;
}

void ApcBasis::save_coefficients_csv(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out)
        throw InvalidInputError("cannot write coefficient file: " + file.string());
    const Eigen::Index m = coeffs_.rows();
    out << "degree";
    for (Eigen::Index j = 0; j < m; ++j)
        out << ",c" << j;
    out << '\n';
    out.precision(17);
    for (Eigen::Index k = 0; k < m; ++k) {
        out << k;
        for (Eigen::Index j = 0; j < m; ++j)
            out << ',' << coeffs_(k, j);
        out << '\n';
    }
}

} // namespace uq
