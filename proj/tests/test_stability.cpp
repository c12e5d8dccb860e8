#include "wcc/physics.hpp"
#include "wcc/scheme1d.hpp"
#include "wcc/stability.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numbers>

using namespace wcc;
using Catch::Approx;

namespace {

/// Matrices of the unlimited half-step, read off by feeding unit DOF vectors to the solver.
template <int P>
auto probe_half_step(double nu) -> coefficient_pair
{
    int const q = P + 1;
    coefficient_pair r{stability_matrix::Zero(q, q), stability_matrix::Zero(q, q)};
    axis const X{0.0, 1.0, 8};
    scheme_config cfg;
    cfg.order = q;
    cfg.weighted = false;
    for (int k = 0; k <= P; ++k) {
        solution_1d<1, P> u(X, parity::original);
        u(4)[0][k] = 1.0;
        solution_1d<1, P> v;
        workspace_1d<1, P> ws;
        advance_half_step_1d<linear_advection_1d, P>(u, v, linear_advection_1d{1.0}, cfg, nu * X.spacing(), ws);
        for (int j = 0; j <= P; ++j) {
            r.m1(j, k) = v(4)[0][j]; // destination right of the source
            r.m2(j, k) = v(3)[0][j]; // destination left of the source
        }
    }
    return r;
}

} // namespace

TEST_CASE("coefficient matrices", "[stability]")
{
    auto const m = coefficient_matrices(2, 0, 0.4);
    CHECK(m.m1(0, 0) == Approx(0.9));
    CHECK(m.m1(0, 1) == Approx(0.045));
    CHECK(m.m1(1, 0) == -1.0);
    CHECK(m.m1(1, 1) == Approx(0.4));

    auto const z = coefficient_matrices(2, 0, 0.0);
    stability_matrix sum = z.m1 + z.m2;
    CHECK(sum(0, 0) == 1.0);
    CHECK(sum(0, 1) == 0.0);
    CHECK(sum(1, 0) == 0.0);
    CHECK(sum(1, 1) == 0.0);

    for (int cand : {1, 2}) {
        auto const c = coefficient_matrices(3, cand, 0.3);
        CHECK(c.m1.row(2).isZero(0.0));
        CHECK(c.m2.row(2).isZero(0.0));
    }
    for (int q : {2, 3, 4})
        for (int cand : {0, 1, 2}) {
            auto const c = coefficient_matrices(q, cand, 0.2);
            CHECK(c.m1.rows() == q);
            CHECK(c.m2.cols() == q);
        }

    CHECK_THROWS_AS(coefficient_matrices(5, 0, 0.1), config_error);
    CHECK_THROWS_AS(coefficient_matrices(3, 3, 0.1), config_error);
}

TEST_CASE("plane candidates follow from the full update", "[stability]")
{
    // the plane slope is twice the gap between the new average and the left/right vertex value
    double const nu = 0.35;
    auto const full = coefficient_matrices(2, 0, nu);
    auto const left = coefficient_matrices(2, 1, nu);
    auto const right = coefficient_matrices(2, 2, nu);
    // vertex value: the source centre value carried downstream, [1, -nu] applied to that source
    CHECK(left.m1(1, 0) == Approx(2 * (full.m1(0, 0) - 1.0)));
    CHECK(left.m1(1, 1) == Approx(2 * (full.m1(0, 1) + nu)));
    CHECK(left.m2(1, 0) == Approx(2 * full.m2(0, 0)));
    CHECK(left.m2(1, 1) == Approx(2 * full.m2(0, 1)));
    CHECK(right.m2(1, 0) == Approx(2 * (1.0 - full.m2(0, 0))));
    CHECK(right.m2(1, 1) == Approx(2 * (-nu - full.m2(0, 1))));
    CHECK(right.m1(1, 0) == Approx(-2 * full.m1(0, 0)));
    CHECK(right.m1(1, 1) == Approx(-2 * full.m1(0, 1)));
}

TEST_CASE("coefficient matrices match the implemented half-step", "[stability]")
{
    for (double nu : {0.0, 0.17, 0.3, 0.45}) {
        auto const a2 = probe_half_step<1>(nu);
        auto const b2 = coefficient_matrices(2, 0, nu);
        CHECK((a2.m1 - b2.m1).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((a2.m2 - b2.m2).cwiseAbs().maxCoeff() < 1e-14);
        auto const a3 = probe_half_step<2>(nu);
        auto const b3 = coefficient_matrices(3, 0, nu);
        CHECK((a3.m1 - b3.m1).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((a3.m2 - b3.m2).cwiseAbs().maxCoeff() < 1e-14);
        auto const a4 = probe_half_step<3>(nu);
        auto const b4 = coefficient_matrices(4, 0, nu);
        CHECK((a4.m1 - b4.m1).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((a4.m2 - b4.m2).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("amplification spectrum", "[stability]")
{
    auto const th = theta_grid();
    REQUIRE(th.size() == 1024);
    CHECK(th.back() == Approx(2 * std::numbers::pi));
    CHECK(th.front() > 0.0);

    auto const r0 = amplification_spectrum(coefficient_matrices(2, 0, 0.0), th);
    CHECK(*std::max_element(r0.begin(), r0.end()) == Approx(1.0).margin(1e-12));
    CHECK(max_amplification(2, 0, 0.5, th) <= 1.0 + 1e-12);
    CHECK(max_amplification(3, 0, 0.40, th) > 1.0);

    for (int q : {2, 3, 4})
        for (int cand : {0, 1, 2})
            CHECK(max_amplification(q, cand, 0.0, th) <= 1.0 + 1e-12);

    // closed-form 2x2 path against the general solver
    Eigen::MatrixXcd g = amplification_matrix(coefficient_matrices(2, 1, 0.3), 1.1);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(g, false);
    CHECK(spectral_radius(g) == Approx(es.eigenvalues().cwiseAbs().maxCoeff()).epsilon(1e-13));

    CHECK_THROWS_AS(amplification_spectrum(coefficient_matrices(2, 0, 0.1), {0.0}), config_error);
}

TEST_CASE("spectrum is symmetric under theta -> 2 pi - theta", "[stability]")
{
    for (int q : {2, 3, 4})
        for (double nu : {0.1, 0.33, 0.6}) {
            auto const m = coefficient_matrices(q, 0, nu);
            for (double t : {0.3, 1.0, 2.2, 3.0}) {
                double const a = spectral_radius(amplification_matrix(m, t));
                double const b = spectral_radius(amplification_matrix(m, 2 * std::numbers::pi - t));
                CHECK(a == Approx(b).epsilon(1e-12));
            }
        }
}

TEST_CASE("maximal stable Courant numbers", "[stability]")
{
    CHECK(max_stable_nu(2, 0) == Approx(0.5).margin(0.005));
    CHECK(max_stable_nu(3, 0) == Approx(0.384).margin(0.005));
    for (int q : {2, 3, 4})
        for (int cand : {1, 2})
            CHECK(max_stable_nu(q, cand) == Approx(0.5).margin(0.005));
    // fourth order, full polynomial: the strict 1e-10 slack gives 0.2888
    CHECK(max_stable_nu(4, 0, 1e-5) == Approx(0.2888).margin(2e-4));

    double const coarse = max_stable_nu(3, 0, 1e-2);
    double const fine = max_stable_nu(3, 0, 1e-5);
    CHECK(fine >= coarse);
    CHECK(fine - coarse <= 1e-2);

    CHECK_THROWS_AS(max_stable_nu(3, 0, 0.0), config_error);
    CHECK_THROWS_AS(max_stable_nu(3, 0, 1e-3, 0.2), numeric_error);
}
