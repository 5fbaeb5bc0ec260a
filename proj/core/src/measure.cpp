#include "uq/measure.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>
#include <Eigen/Dense>

#include "uq/errors.hpp"

namespace uq {

EmpiricalMeasure::EmpiricalMeasure(Eigen::MatrixXd samples,
                                   std::optional<GeneratorInfo> generator)
    : samples_(std::move(samples)), generator_(std::move(generator)) {
    if (samples_.cols() < 1)
        throw InvalidInputError("empirical measure needs at least one sample");
    if (samples_.rows() < 1)
        throw InvalidInputError("empirical measure needs at least one coordinate");
    if (!samples_.allFinite())
        throw InvalidInputError("empirical measure has non-finite samples");
}

EmpiricalMeasure EmpiricalMeasure::from_coordinates(const std::vector<double>& coords) {
    Eigen::MatrixXd m(1, static_cast<Eigen::Index>(coords.size()));
    for (std::size_t j = 0; j < coords.size(); ++j)
        m(0, static_cast<Eigen::Index>(j)) = coords[j];
    GeneratorInfo info;
    info.kind = "manual";
    return EmpiricalMeasure(std::move(m), info);
}

EmpiricalMeasure EmpiricalMeasure::uniform_grid(double lo, double hi, Eigen::Index n) {
    if (!(lo < hi) || n < 2)
        throw InvalidInputError("uniform grid requires lo < hi and n >= 2");
    Eigen::MatrixXd m(1, n);
    m.row(0) = Eigen::RowVectorXd::LinSpaced(n, lo, hi);
    GeneratorInfo info;
    info.kind = "uniform-grid";
    info.lo = lo;
    info.hi = hi;
    return EmpiricalMeasure(std::move(m), info);
}

EmpiricalMeasure EmpiricalMeasure::interior_grid(double lo, double hi, Eigen::Index n) {
    if (!(lo < hi) || n < 1)
        throw InvalidInputError("interior grid requires lo < hi and n >= 1");
    Eigen::MatrixXd m(1, n);
    const double h = (hi - lo) / static_cast<double>(n + 1);
    for (Eigen::Index j = 0; j < n; ++j)
        m(0, j) = lo + static_cast<double>(j + 1) * h;
    GeneratorInfo info;
    info.kind = "interior-grid";
    info.lo = lo;
    info.hi = hi;
    return EmpiricalMeasure(std::move(m), info);
}

EmpiricalMeasure EmpiricalMeasure::midpoint_grid(double lo, double hi, Eigen::Index n) {
    if (!(lo < hi) || n < 1)
        throw InvalidInputError("midpoint grid requires lo < hi and n >= 1");
    Eigen::MatrixXd m(1, n);
    const double h = (hi - lo) / static_cast<double>(n);
    for (Eigen::Index j = 0; j < n; ++j)
        m(0, j) = lo + (static_cast<double>(j) + 0.5) * h;
    GeneratorInfo info;
    info.kind = "midpoint-grid";
    info.lo = lo;
    info.hi = hi;
    return EmpiricalMeasure(std::move(m), info);
}

EmpiricalMeasure EmpiricalMeasure::uniform_random(double lo, double hi, Eigen::Index n,
                                                  std::uint64_t seed) {
    if (!(lo < hi) || n < 1)
        throw InvalidInputError("uniform sampling requires lo < hi and n >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::MatrixXd m(1, n);
    for (Eigen::Index j = 0; j < n; ++j)
        m(0, j) = dist(rng);
    GeneratorInfo info;
    info.kind = "uniform-random";
    info.lo = lo;
    info.hi = hi;
    info.seed = seed;
    return EmpiricalMeasure(std::move(m), info);
}

EmpiricalMeasure EmpiricalMeasure::gaussian_random(double mean, double stddev,
                                                   Eigen::Index n, std::uint64_t seed) {
    if (!(stddev > 0.0) || n < 1)
        throw InvalidInputError("gaussian sampling requires stddev > 0 and n >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(mean, stddev);
    Eigen::MatrixXd m(1, n);
    for (Eigen::Index j = 0; j < n; ++j)
        m(0, j) = dist(rng);
    GeneratorInfo info;
    info.kind = "gaussian-random";
    info.mean = mean;
    info.stddev = stddev;
    info.seed = seed;
    return EmpiricalMeasure(std::move(m), info);
}

EmpiricalMeasure EmpiricalMeasure::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw InvalidInputError("cannot open sample file: " + file.string());
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
        throw InvalidInputError("sample file is empty: " + file.string());
    const std::size_t d = rows.front().size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].size() != d)
            throw InvalidInputError("inconsistent sample dimension in " + file.string());
        for (std::size_t i = 0; i < d; ++i)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[j][i];
    }
    GeneratorInfo info;
    info.kind = "manual";
    return EmpiricalMeasure(std::move(m), info);
}

void EmpiricalMeasure::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out)
        throw InvalidInputError("cannot write sample file: " + file.string());
    out.precision(17);
    for (Eigen::Index j = 0; j < samples_.cols(); ++j) {
        for (Eigen::Index i = 0; i < samples_.rows(); ++i) {
            if (i) out << ' ';
            out << samples_(i, j);
        }
        out << '\n';
    }
}

double EmpiricalMeasure::expectation(
    const std::function<double(const Eigen::VectorXd&)>& f) const {
    if (!f)
        throw InvalidInputError("expectation requires a function");
    double acc = 0.0;
    for (Eigen::Index j = 0; j < samples_.cols(); ++j) {
        const double v = f(samples_.col(j));
        if (!std::isfinite(v))
            throw EvaluationError("integrand not finite at sample " + std::to_string(j),
                                  static_cast<std::size_t>(j));
        acc += v;
    }
    return acc / static_cast<double>(samples_.cols());
}

double EmpiricalMeasure::expectation1(const std::function<double(double)>& f) const {
    if (dim() != 1)
        throw InvalidInputError("expectation1 requires a one-dimensional measure");
    return expectation([&f](const Eigen::VectorXd& x) { return f(x(0)); });
}

BasisStats basis_stats(const EmpiricalMeasure& measure, const Basis& basis,
                       const std::function<double(const Eigen::VectorXd&)>& weight) {
    if (measure.dim() != basis.dim())
        throw InvalidInputError("measure dimension does not match basis dimension");
    const Eigen::Index n = basis.size();
    const Eigen::Index n_d = measure.count();

    BasisStats stats;
    stats.gram = Eigen::MatrixXd::Zero(n, n);
    stats.mean = Eigen::VectorXd::Zero(n);
    if (weight)
        stats.weighted_gram = Eigen::MatrixXd::Zero(n, n);

    for (Eigen::Index j = 0; j < n_d; ++j) {
        Eigen::VectorXd psi;
        try {
            psi = basis.eval(measure.sample(j));
        } catch (const HullViolationError& e) {
            throw HullViolationError("sample " + std::to_string(j) +
                                     " violates the basis hull: " + e.what());
        }
        if (!psi.allFinite())
            throw EvaluationError("basis evaluation not finite at sample " +
                                      std::to_string(j),
                                  static_cast<std::size_t>(j));
        const Eigen::MatrixXd outer = psi * psi.transpose();
        stats.gram += outer;
        stats.mean += psi;
        if (weight) {
            const double w = weight(measure.sample(j));
            if (!std::isfinite(w))
                throw EvaluationError("weight not finite at sample " + std::to_string(j),
                                      static_cast<std::size_t>(j));
            *stats.weighted_gram += w * outer;
        }
    }
    const double inv = 1.0 / static_cast<double>(n_d);
    stats.gram *= inv;
    stats.mean *= inv;
    if (stats.weighted_gram)
        *stats.weighted_gram *= inv;
    return stats;
}

} // namespace uq
