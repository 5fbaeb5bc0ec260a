#ifndef UQ_BASIS_HPP
#define UQ_BASIS_HPP

#include <Eigen/Core>

namespace uq {

enum class BasisKind { maxent, apc };

inline const char* to_string(BasisKind k) {
    return k == BasisKind::maxent ? "maxent" : "apc";
}

// Common evaluator interface shared by the maxent and aPC bases.
// eval returns the vector (psi_1(q), ..., psi_{n_B}(q)).
class Basis {
public:
    virtual ~Basis() = default;

    virtual BasisKind kind() const = 0;
    virtual Eigen::Index size() const = 0;
    virtual int dim() const = 0;
    virtual Eigen::VectorXd eval(const Eigen::VectorXd& query) const = 0;

    // One-dimensional convenience overload.
    Eigen::VectorXd eval(double query) const {
        Eigen::VectorXd q(1);
        q << query;
        return eval(q);
    }
};

} // namespace uq

#endif
