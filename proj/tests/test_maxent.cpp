#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "uq/errors.hpp"
#include "uq/maxent.hpp"

using namespace uq;

namespace {
Eigen::VectorXd vec1(double x) {
    Eigen::VectorXd v(1);
    v << x;
    return v;
}
} // namespace

TEST_CASE("node set validation") {
    Eigen::MatrixXd one(1, 1);
    one << 0.5;
    CHECK_THROWS_AS(NodeSet{one}, InvalidInputError);

    Eigen::MatrixXd dup(1, 3);
    dup << 0.0, 1.0, 1.0;
    CHECK_THROWS_AS(NodeSet{dup}, InvalidInputError);

    Eigen::MatrixXd bad(1, 2);
    bad << 0.0, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(NodeSet{bad}, InvalidInputError);

    const NodeSet nodes = NodeSet::from_coordinates({-1.0, 0.0, 1.0});
    CHECK(nodes.count() == 3);
    CHECK(nodes.dim() == 1);
    CHECK(nodes.hull_diameter() == doctest::Approx(2.0).epsilon(1e-14));

    const NodeSet grid = NodeSet::uniform(0.0, 1.0, 5);
    CHECK(grid.node(0)(0) == doctest::Approx(0.0));
    CHECK(grid.node(4)(0) == doctest::Approx(1.0));
    CHECK(grid.node(2)(0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(NodeSet::uniform(1.0, 0.0, 5), InvalidInputError);
}

TEST_CASE("node set save and load round trip") {
    const NodeSet nodes = NodeSet::from_coordinates({-0.25, 1.0 / 3.0, 0.71});
    const auto file = std::filesystem::temp_directory_path() / "uq_nodes_rt.txt";
    nodes.save(file);
    const NodeSet back = NodeSet::load(file);
    REQUIRE(back.count() == nodes.count());
    CHECK((back.nodes() - nodes.nodes()).cwiseAbs().maxCoeff() == 0.0);
    std::filesystem::remove(file);
}

TEST_CASE("three-node weights at 0.5 match the closed form") {
    // For nodes {-1, 0, 1} and query 1/2 the stationarity condition reduces to
    // u^2 - u - 3 = 0 with weights proportional to (1/u, 1, u), u = (1+sqrt(13))/2.
    const NodeSet nodes = NodeSet::from_coordinates({-1.0, 0.0, 1.0});
    const MaxentEvaluation ev = eval_basis(nodes, vec1(0.5));
    CHECK(ev.psi(0) == doctest::Approx(0.11620406037800089).epsilon(1e-9));
    CHECK(ev.psi(1) == doctest::Approx(0.26759187924399822).epsilon(1e-9));
    CHECK(ev.psi(2) == doctest::Approx(0.61620406037800089).epsilon(1e-9));
    CHECK(ev.lambda(0) == doctest::Approx(-0.83411519435240115).epsilon(1e-9));
    CHECK(ev.residual_norm <= 1e-11);
}

TEST_CASE("centered query gives uniform weights") {
    const NodeSet nodes = NodeSet::from_coordinates({-1.0, 0.0, 1.0});
    const Eigen::VectorXd psi = eval_basis(nodes, vec1(0.0)).psi;
    for (int i = 0; i < 3; ++i)
        CHECK(psi(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("gaussian prior values and normalization") {
    const NodeSet nodes = NodeSet::from_coordinates({0.0, 1.0});
    const Eigen::VectorXd m = gaussian_prior(nodes, vec1(0.0), 1.0);
    CHECK(m(0) == doctest::Approx(0.73105857863000488).epsilon(1e-12));
    CHECK(m(1) == doctest::Approx(0.26894142136999512).epsilon(1e-12));
    CHECK(m.sum() == doctest::Approx(1.0).epsilon(1e-14));

    const Eigen::VectorXd flat = gaussian_prior(nodes, vec1(0.3), 0.0);
    CHECK(flat(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(gaussian_prior(nodes, vec1(0.0), -1.0), InvalidInputError);
}

TEST_CASE("entropy and relative entropy") {
    Eigen::VectorXd p(2);
    p << 0.375, 0.625;
    CHECK(entropy(p) == doctest::Approx(0.66156323815798206).epsilon(1e-12));

    Eigen::VectorXd ind(3);
    ind << 0.0, 1.0, 0.0;
    CHECK(entropy(ind) == doctest::Approx(0.0).epsilon(1e-15));

    Eigen::VectorXd u(4);
    u.setConstant(0.25);
    CHECK(entropy(u) == doctest::Approx(std::log(4.0)).epsilon(1e-12));

    Eigen::VectorXd q(2), m(2);
    q << 0.5, 0.5;
    m << 0.25, 0.75;
    CHECK(relative_entropy(q, m) == doctest::Approx(0.14384103622589046).epsilon(1e-12));
    CHECK(relative_entropy(q, q) == doctest::Approx(0.0).epsilon(1e-15));

    Eigen::VectorXd notp(2);
    notp << 0.4, 0.7;
    CHECK_THROWS_AS(entropy(notp), InvalidInputError);
    Eigen::VectorXd zm(2);
    zm << 1.0, 0.0;
    CHECK_THROWS_AS(relative_entropy(q, zm), InvalidInputError);
}

TEST_CASE("vertex queries return indicators") {
    const NodeSet nodes = NodeSet::from_coordinates({-1.0, -0.2, 0.4, 1.0});
    const Eigen::VectorXd at_lo = eval_basis(nodes, vec1(-1.0)).psi;
    CHECK(at_lo(0) == 1.0);
    CHECK(at_lo.tail(3).cwiseAbs().maxCoeff() == 0.0);

    // Within the snap distance of a vertex.
    const Eigen::VectorXd near_hi = eval_basis(nodes, vec1(1.0 - 1e-14)).psi;
    CHECK(near_hi(3) == 1.0);
}

TEST_CASE("queries outside the interval are rejected") {
    const NodeSet nodes = NodeSet::from_coordinates({-1.0, 0.0, 1.0});
    CHECK_THROWS_AS(eval_basis(nodes, vec1(1.5)), HullViolationError);
    CHECK_THROWS_AS(eval_basis(nodes, vec1(-1.0 - 1e-6)), HullViolationError);
    CHECK_THROWS_AS(eval_basis(nodes, vec1(std::nan(""))), InvalidInputError);
    CHECK_THROWS_AS(eval_basis(nodes, Eigen::VectorXd::Zero(2)), InvalidInputError);

    CHECK(in_hull(nodes, vec1(0.999)));
    CHECK(in_hull(nodes, vec1(1.0)));
    CHECK(!in_hull(nodes, vec1(1.001)));
}

TEST_CASE("partition of unity and linear precision on random 1-d instances") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> pos(-4.0, 4.0);
    std::uniform_int_distribution<int> count(2, 9);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = count(rng);
        std::vector<double> coords;
        while (static_cast<int>(coords.size()) < n) {
            const double c = pos(rng);
            bool ok = true;
            for (double other : coords)
                if (std::abs(other - c) < 1e-4)
                    ok = false;
            if (ok)
                coords.push_back(c);
        }
        const NodeSet nodes = NodeSet::from_coordinates(coords);
        const double lo = *std::min_element(coords.begin(), coords.end());
        const double hi = *std::max_element(coords.begin(), coords.end());
        std::uniform_real_distribution<double> inside(lo, hi);
        const double q = inside(rng);
        const Eigen::VectorXd psi = eval_basis(nodes, vec1(q)).psi;
        CHECK(psi.minCoeff() >= 0.0);
        CHECK(std::abs(psi.sum() - 1.0) <= 1e-10);
        const double recon = (nodes.nodes().row(0) * psi).value();
        CHECK(std::abs(recon - q) <= 1e-8 * nodes.hull_diameter());
    }
}

TEST_CASE("positive beta keeps partition of unity and linear precision") {
    const NodeSet nodes = NodeSet::from_coordinates({-1.0, -0.4, 0.1, 0.8, 1.0});
    for (const double beta : {0.5, 2.0, 10.0}) {
        for (const double q : {-0.77, -0.2, 0.33, 0.95}) {
            const Eigen::VectorXd psi = eval_basis(nodes, vec1(q), beta).psi;
            CHECK(std::abs(psi.sum() - 1.0) <= 1e-10);
            const double recon = (nodes.nodes().row(0) * psi).value();
            CHECK(std::abs(recon - q) <= 1e-8 * nodes.hull_diameter());
        }
    }
}

TEST_CASE("larger beta localizes weight near the query's node") {
    const NodeSet nodes = NodeSet::from_coordinates({-1.0, 0.0, 1.0});
    const double w0 = eval_basis(nodes, vec1(0.05), 0.0).psi(1);
    const double w5 = eval_basis(nodes, vec1(0.05), 5.0).psi(1);
    CHECK(w5 > w0);
}

TEST_CASE("dual solutions match the dense-search entropy oracle") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        Eigen::Vector3d d;
        d(0) = -1.0 + 0.4 * unit(rng);
        d(1) = -0.25 + 0.5 * unit(rng);
        d(2) = 0.6 + 0.4 * unit(rng);
        const double q = d(0) + (d(2) - d(0)) * (0.1 + 0.8 * unit(rng));
        const Eigen::Vector3d m = Eigen::Vector3d::Constant(1.0 / 3.0);
        const NodeSet nodes = NodeSet::from_coordinates({d(0), d(1), d(2)});
        const Eigen::VectorXd psi = eval_basis(nodes, vec1(q)).psi;
        const Eigen::Vector3d ref = oracles::entropy_weights(d, q, m);
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(psi(i) - ref(i)) <= 1e-3);
    }
}

TEST_CASE("triangle evaluations reduce to barycentric coordinates") {
    // With three nodes in the plane the constraints pin the weights uniquely.
    Eigen::MatrixXd tri(2, 3);
    tri << 0.0, 1.0, 0.0,
           0.0, 0.0, 1.0;
    const NodeSet nodes{tri};

    Eigen::VectorXd centroid(2);
    centroid << 1.0 / 3.0, 1.0 / 3.0;
    const Eigen::VectorXd at_c = eval_basis(nodes, centroid).psi;
    for (int i = 0; i < 3; ++i)
        CHECK(at_c(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

    Eigen::VectorXd inner(2);
    inner << 0.2, 0.5;
    const Eigen::VectorXd psi = eval_basis(nodes, inner).psi;
    CHECK(psi(1) == doctest::Approx(0.2).epsilon(1e-8));
    CHECK(psi(2) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(psi.sum() == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::VectorXd vertex(2);
    vertex << 1.0, 0.0;
    const Eigen::VectorXd at_v = eval_basis(nodes, vertex).psi;
    CHECK(at_v(1) == 1.0);

    Eigen::VectorXd outside(2);
    outside << 0.8, 0.8;
    CHECK_THROWS_AS(eval_basis(nodes, outside), HullViolationError);
    CHECK(in_hull(nodes, inner));
    CHECK(!in_hull(nodes, outside));
}

TEST_CASE("solver reports iteration and residual metadata") {
    const NodeSet nodes = NodeSet::from_coordinates({-1.0, 0.0, 1.0});
    const LagrangeSolution sol =
        solve_lagrange(nodes, vec1(0.5), Eigen::VectorXd::Constant(3, 1.0 / 3.0));
    CHECK(sol.iterations > 0);
    CHECK(sol.iterations <= 100);
    CHECK(sol.residual_norm <= 1e-12 * (1.0 + nodes.hull_diameter()));
}

TEST_CASE("maxent basis object forwards evaluation") {
    MaxentBasis basis(NodeSet::from_coordinates({-1.0, 0.0, 1.0}));
    CHECK(basis.kind() == BasisKind::maxent);
    CHECK(basis.size() == 3);
    CHECK(basis.dim() == 1);
    CHECK(basis.beta() == 0.0);
    const Eigen::VectorXd psi = basis.eval(0.5);
    CHECK(psi(2) == doctest::Approx(0.61620406037800089).epsilon(1e-9));
    CHECK(basis.contains(vec1(0.25)));
    CHECK(!basis.contains(vec1(2.0)));
    const MaxentEvaluation ev = basis.evaluate(vec1(0.5));
    CHECK(ev.iterations > 0);
}
