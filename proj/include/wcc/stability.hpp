#pragma once

// Von Neumann analysis of the three linear candidate solutions of the 1D scheme for
// u_t + a u_x = 0. One half-step maps q_i, q_{i+1} to q_{i+1/2} through two Q x Q
// matrices; the amplification matrix is G = M1 e^{-i theta/2} + M2 e^{i theta/2}.

#include "wcc/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace wcc {

using stability_matrix = Eigen::MatrixXd;

struct coefficient_pair
{
    stability_matrix m1; ///< acts on the left source cell
    stability_matrix m2; ///< acts on the right source cell
};

namespace detail {

inline void check_stability_case(int order, int candidate)
{
    if (order < 2 || order > 4)
        throw config_error("stability order must be 2, 3 or 4 (got " + std::to_string(order) + ")");
    if (candidate < 0 || candidate > 2)
        throw config_error("candidate index must be 0, 1 or 2 (got " + std::to_string(candidate) + ")");
}

} // namespace detail

/// Coefficient matrices of candidate `candidate` (0: full polynomial, 1/2: left/right plane)
/// at order Q and Courant number nu.
inline auto coefficient_matrices(int order, int candidate, double nu) -> coefficient_pair
{
    detail::check_stability_case(order, candidate);
    double const v = nu, v2 = nu * nu, v3 = v2 * nu, v4 = v3 * nu;
    int const q = order;
    stability_matrix a = stability_matrix::Zero(q, q), b = stability_matrix::Zero(q, q);

    if (q == 2) {
        a.row(0) << 0.5 + v, 0.125 - v2 / 2;
        b.row(0) << 0.5 - v, -0.125 + v2 / 2;
        switch (candidate) {
        case 0:
            a.row(1) << -1.0, v;
            b.row(1) << 1.0, -v;
            break;
        case 1:
            a.row(1) << -1.0 + 2 * v, 0.25 + 2 * v - v2;
            b.row(1) << 1.0 - 2 * v, -0.25 + v2;
            break;
        default:
            a.row(1) << -1.0 - 2 * v, v2 - 0.25;
            b.row(1) << 1.0 + 2 * v, 0.25 - 2 * v - v2;
        }
        return {a, b};
    }

    if (q == 3) {
        if (candidate == 0) {
            a << 0.5 + v, 1.0 / 6 - v2 / 2, 1.0 / 48 - v / 24 + v3 / 6,
                -1.0, v, -v2 / 2,
                0.0, -1.0, v;
            b << 0.5 - v, -1.0 / 6 + v2 / 2, 1.0 / 48 + v / 24 - v3 / 6,
                1.0, -v, v2 / 2,
                0.0, 1.0, -v;
            return {a, b};
        }
        a.row(0) << 0.5 + v, 0.125 - v2 / 2, 1.0 / 48 + v3 / 6;
        b.row(0) << 0.5 - v, -0.125 + v2 / 2, 1.0 / 48 - v3 / 6;
        if (candidate == 1) {
            a.row(1) << -1.0 + 2 * v, 0.25 + 2 * v - v2, 1.0 / 24 - v2 + v3 / 3;
            b.row(1) << 1.0 - 2 * v, -0.25 + v2, 1.0 / 24 - v3 / 3;
        } else {
            a.row(1) << -1.0 - 2 * v, -0.25 + v2, -1.0 / 24 - v3 / 3;
            b.row(1) << 1.0 + 2 * v, 0.25 - 2 * v - v2, -1.0 / 24 + v2 + v3 / 3;
        }
        return {a, b};
    }

    if (candidate == 0) {
        a << 0.5 + v, 1.0 / 6 - v2 / 2, 1.0 / 48 - v / 24 + v3 / 6, 1.0 / 384 + v2 / 48 - v4 / 24,
            -1.0, v, -v2 / 2 + 1.0 / 24, -v / 24 + v3 / 6,
            0.0, -1.0, v, -v2 / 2,
            0.0, 0.0, -1.0, v;
        b << 0.5 - v, -1.0 / 6 + v2 / 2, 1.0 / 48 + v / 24 - v3 / 6, -1.0 / 384 - v2 / 48 + v4 / 24,
            1.0, -v, v2 / 2 - 1.0 / 24, v / 24 - v3 / 6,
            0.0, 1.0, -v, v2 / 2,
            0.0, 0.0, 1.0, -v;
        return {a, b};
    }
    a.row(0) << 0.5 + v, 0.125 - v2 / 2, 1.0 / 48 + v3 / 6, 1.0 / 384 - v4 / 24;
    b.row(0) << 0.5 - v, -0.125 + v2 / 2, 1.0 / 48 - v3 / 6, -1.0 / 384 + v4 / 24;
    if (candidate == 1) {
        // entry (1,0) taken as -1 + 2 nu
        a.row(1) << -1.0 + 2 * v, 0.25 + 2 * v - v2, 1.0 / 24 - v2 + v3 / 3, 1.0 / 192 + v3 / 3 - v4 / 12;
        b.row(1) << 1.0 - 2 * v, -0.25 + v2, 1.0 / 24 - v3 / 3, -1.0 / 192 + v4 / 12;
    } else {
        a.row(1) << -1.0 - 2 * v, -0.25 + v2, -1.0 / 24 - v3 / 3, -1.0 / 192 + v4 / 12;
        b.row(1) << 1.0 + 2 * v, 0.25 - 2 * v - v2, -1.0 / 24 + v2 + v3 / 3, 1.0 / 192 - v3 / 3 - v4 / 12;
    }
    return {a, b};
}

/// Spectral radius of a complex square matrix.
inline auto spectral_radius(Eigen::MatrixXcd const& g) -> double
{
    if (g.rows() == 1)
        return std::abs(g(0, 0));
    if (g.rows() == 2) {
        // roots of l^2 - tr l + det
        std::complex<double> const tr = g(0, 0) + g(1, 1);
        std::complex<double> const det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
        std::complex<double> const disc = std::sqrt(tr * tr - 4.0 * det);
        return std::max(std::abs(0.5 * (tr + disc)), std::abs(0.5 * (tr - disc)));
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(g, false);
    if (es.info() != Eigen::Success)
        throw numeric_error("eigenvalue solver did not converge");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline auto amplification_matrix(coefficient_pair const& m, double theta) -> Eigen::MatrixXcd
{
    std::complex<double> const e(std::cos(theta / 2), std::sin(theta / 2));
    return m.m1.cast<std::complex<double>>() * std::conj(e) + m.m2.cast<std::complex<double>>() * e;
}

/// theta_k = 2 pi k / n for k = 1..n, so the grid ends at 2 pi.
inline auto theta_grid(int n = 1024) -> std::vector<double>
{
    if (n < 1)
        throw config_error("theta grid needs at least one point");
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k)
        t[static_cast<std::size_t>(k - 1)] = 2.0 * std::numbers::pi * k / n;
    return t;
}

inline auto amplification_spectrum(coefficient_pair const& m, std::vector<double> const& thetas) -> std::vector<double>
{
    if (m.m1.rows() != m.m1.cols() || m.m1.rows() != m.m2.rows() || m.m1.cols() != m.m2.cols())
        throw config_error("coefficient matrices must be square and of equal size");
    std::vector<double> rho;
    rho.reserve(thetas.size());
    for (double t : thetas) {
        if (!(t > 0.0) || t > 2.0 * std::numbers::pi + 1e-12)
            throw config_error("wavenumbers must lie in (0, 2 pi]");
        rho.push_back(spectral_radius(amplification_matrix(m, t)));
    }
    return rho;
}

inline constexpr double stability_slack = 1e-10;

/// Linear Courant limit of the full-polynomial candidate, used for CFL warnings.
inline auto linear_cfl_bound(int order) -> double
{
    detail::check_stability_case(order, 0);
    return order == 2 ? 0.5 : order == 3 ? 0.384 : 0.304;
}

inline auto max_amplification(int order, int candidate, double nu, std::vector<double> const& thetas) -> double
{
    auto const rho = amplification_spectrum(coefficient_matrices(order, candidate, nu), thetas);
    return *std::max_element(rho.begin(), rho.end());
}

inline auto is_stable(int order, int candidate, double nu, std::vector<double> const& thetas) -> bool
{
    return max_amplification(order, candidate, nu, thetas) <= 1.0 + stability_slack;
}

/// Largest stable Courant number in [0, nu_max], located by bisection to `tolerance`.
inline auto max_stable_nu(int order, int candidate, double tolerance = 1e-4, double nu_max = 1.0, int grid = 1024)
    -> double
{
    detail::check_stability_case(order, candidate);
    if (!(tolerance > 0.0))
        throw config_error("bisection tolerance must be positive");
    auto const thetas = theta_grid(grid);
    if (!is_stable(order, candidate, 0.0, thetas))
        throw numeric_error("scheme is unstable at zero Courant number");
    if (is_stable(order, candidate, nu_max, thetas))
        throw numeric_error("stability bracket does not close: stable at nu = " + std::to_string(nu_max));
    double lo = 0.0, hi = nu_max;
    while (hi - lo > tolerance) {
        double const mid = 0.5 * (lo + hi);
        (is_stable(order, candidate, mid, thetas) ? lo : hi) = mid;
    }
    return lo;
}

} // namespace wcc
