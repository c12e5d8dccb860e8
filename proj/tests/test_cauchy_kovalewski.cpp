#include "oracles.hpp"

#include "wcc/cauchy_kovalewski.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace wcc;
using Catch::Approx;

namespace {

auto binom(int n, int k) -> double { return oracle::fact(n) / (oracle::fact(k) * oracle::fact(n - k)); }

template <int P>
void check_linear_1d(std::mt19937_64& rng)
{
    using st = jet_layout<2, P>;
    std::uniform_real_distribution<double> d(-1.0, 1.0), nu(0.05, 0.5);
    for (int trial = 0; trial < 100; ++trial) {
        linear_advection_1d phys{d(rng) * 2.0};
        scaled_ratios r{nu(rng), 0.0};
        spatial_jets_1d<1, P> s{oracle::random_jet<1, P>(rng)};
        auto const out = cauchy_kovalewski_1d(s, phys, r);
        for (int i = 0; i < st::size; ++i) {
            auto const [k, b] = st::indices[i];
            double const expect = std::pow(-phys.speed * r.nu_x, b) * s[0][k + b];
            REQUIRE(std::abs(out.u[0][i] - expect) <= 1e-13 * std::max(1.0, std::abs(expect)));
            REQUIRE(out.f[0][i] == Approx(phys.speed * out.u[0][i]).margin(1e-15));
        }
    }
}

template <int P>
void check_linear_2d(std::mt19937_64& rng)
{
    using st = jet_layout<3, P>;
    std::uniform_real_distribution<double> d(-1.0, 1.0), nu(0.05, 0.5);
    for (int trial = 0; trial < 100; ++trial) {
        linear_advection_2d phys{d(rng), d(rng)};
        scaled_ratios r{nu(rng), nu(rng)};
        spatial_jets_2d<1, P> s{oracle::random_jet<2, P>(rng)};
        auto const out = cauchy_kovalewski_2d(s, phys, r);
        for (int i = 0; i < st::size; ++i) {
            auto const [k, l, b] = st::indices[i];
            double expect = 0.0;
            for (int sx = 0; sx <= b; ++sx) {
                int const ty = b - sx;
                expect += binom(b, sx) * std::pow(-phys.speed_x * r.nu_x, sx) * std::pow(-phys.speed_y * r.nu_y, ty) *
                          s[0].at({k + sx, l + ty});
            }
            REQUIRE(std::abs(out.u[0][i] - expect) <= 1e-13 * std::max(1.0, std::abs(expect)));
        }
    }
}

} // namespace

TEST_CASE("cauchy_kovalewski_1d keeps constant states steady", "[ck]")
{
    euler_1d phys;
    spatial_jets_1d<3, 3> s{jet<1, 3>(1.0), jet<1, 3>(0.3), jet<1, 3>(2.5)};
    auto const out = cauchy_kovalewski_1d(s, phys, {0.3, 0.0});
    for (int c = 0; c < 3; ++c)
        for (int i = 1; i < jet<2, 3>::size; ++i)
            REQUIRE(out.u[c][i] == 0.0);
}

TEST_CASE("cauchy_kovalewski_1d linear advection closed form", "[ck][property]")
{
    std::mt19937_64 rng(3);
    check_linear_1d<1>(rng);
    check_linear_1d<2>(rng);
    check_linear_1d<3>(rng);
}

TEST_CASE("cauchy_kovalewski_1d Burgers first order", "[ck]")
{
    burgers_1d phys;
    jet<1, 1> u(1.0);
    u[1] = 1.0;
    auto const out = cauchy_kovalewski_1d<burgers_1d, 1>({u}, phys, {0.4, 0.0});
    REQUIRE(out.u[0].at({0, 1}) == Approx(-0.4));
}

TEST_CASE("cauchy_kovalewski_1d Burgers second order against chain rule", "[ck]")
{
    // u_t = -u u_x, u_tt = -(u_t u_x + u u_xt) with u_xt = -(u_x^2 + u u_xx)
    burgers_1d phys;
    double const u0 = 0.7, ux = -0.3, uxx = 0.2, nu = 0.35;
    jet<1, 2> u(u0);
    u[1] = ux;
    u[2] = uxx;
    auto const out = cauchy_kovalewski_1d<burgers_1d, 2>({u}, phys, {nu, 0.0});
    double const ut = -u0 * ux;
    double const uxt = -(ux * ux + u0 * uxx);
    double const utt = -(ut * ux + u0 * uxt);
    REQUIRE(out.u[0].at({0, 1}) == Approx(nu * ut).epsilon(1e-14));
    REQUIRE(out.u[0].at({1, 1}) == Approx(nu * uxt).epsilon(1e-14));
    REQUIRE(out.u[0].at({0, 2}) == Approx(nu * nu * utt).epsilon(1e-14));
}

TEST_CASE("cauchy_kovalewski_2d linear advection", "[ck]")
{
    linear_advection_2d phys{1.0, 1.0};
    jet<2, 1> u(0.0);
    u[1] = 1.0;
    u[2] = 1.0;
    auto const out = cauchy_kovalewski_2d<linear_advection_2d, 1>({u}, phys, {0.25, 0.25});
    REQUIRE(out.u[0].at({0, 0, 1}) == Approx(-0.5));
}

TEST_CASE("cauchy_kovalewski_2d linear advection closed form", "[ck][property]")
{
    std::mt19937_64 rng(5);
    check_linear_2d<1>(rng);
    check_linear_2d<2>(rng);
    check_linear_2d<3>(rng);
}

TEST_CASE("cauchy_kovalewski_2d keeps constant Euler states steady", "[ck]")
{
    euler_2d phys;
    spatial_jets_2d<4, 3> s{jet<2, 3>(1.0), jet<2, 3>(0.5), jet<2, 3>(-0.2), jet<2, 3>(3.0)};
    auto const out = cauchy_kovalewski_2d(s, phys, {0.2, 0.3});
    for (int c = 0; c < 4; ++c)
        for (int i = 1; i < jet<3, 3>::size; ++i)
            REQUIRE(out.u[c][i] == 0.0);
}

TEST_CASE("Euler CK first level matches the quasi-linear form", "[ck][property]")
{
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> d(-0.5, 0.5);
    double const gamma = 1.4;

    for (int trial = 0; trial < 200; ++trial) {
        auto const U = oracle::random_euler_1d(rng, gamma);
        spatial_jets_1d<3, 2> s;
        state<3> Ux{};
        for (int c = 0; c < 3; ++c) {
            s[c] = jet<1, 2>(U[c]);
            s[c][1] = Ux[c] = d(rng) * U[c];
            s[c][2] = d(rng);
        }
        double const nu = 0.3;
        auto const out = cauchy_kovalewski_1d(s, euler_1d{{gamma}}, {nu, 0.0});
        auto const A = oracle::euler_jacobian_1d(U, gamma);
        auto const AUx = mul(A, Ux);
        for (int c = 0; c < 3; ++c)
            REQUIRE(std::abs(out.u[c].at({0, 1}) + nu * AUx[c]) <= 1e-12 * std::max(1.0, std::abs(nu * AUx[c])));
    }

    for (int trial = 0; trial < 200; ++trial) {
        auto const U = oracle::random_euler_2d(rng, gamma);
        spatial_jets_2d<4, 2> s;
        state<4> Ux{}, Uy{};
        for (int c = 0; c < 4; ++c) {
            s[c] = jet<2, 2>(U[c]);
            s[c][1] = Ux[c] = d(rng) * U[c];
            s[c][2] = Uy[c] = d(rng) * U[c];
        }
        double const nx = 0.2, ny = 0.35;
        auto const out = cauchy_kovalewski_2d(s, euler_2d{{gamma}}, {nx, ny});
        auto const [A, B] = oracle::euler_jacobians_2d(U, gamma);
        auto const a = mul(A, Ux);
        auto const b = mul(B, Uy);
        for (int c = 0; c < 4; ++c) {
            double const expect = -nx * a[c] - ny * b[c];
            REQUIRE(std::abs(out.u[c].at({0, 0, 1}) - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST_CASE("cauchy_kovalewski propagates inadmissible states", "[ck]")
{
    spatial_jets_1d<3, 2> s{jet<1, 2>(-1.0), jet<1, 2>(0.0), jet<1, 2>(1.0)};
    REQUIRE_THROWS_AS(cauchy_kovalewski_1d(s, euler_1d{}, {0.2, 0.0}), physics_error);
}
