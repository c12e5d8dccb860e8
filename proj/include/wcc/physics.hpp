#pragma once

// Conservation-law physics used by the schemes: scalar advection/Burgers and the
// perfect-gas Euler equations in one and two dimensions.
//
// Every physics type exposes flux formulas templated on the scalar type so the same
// expression is evaluated on plain numbers and on Taylor jets.

#include "wcc/errors.hpp"
#include "wcc/jet.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>

namespace wcc {

template <int N>
using state = std::array<double, N>;

template <int N>
using matrix = std::array<std::array<double, N>, N>;

template <std::size_t N>
constexpr auto mul(std::array<std::array<double, N>, N> const& m, std::array<double, N> const& v) noexcept
    -> std::array<double, N>
{
    std::array<double, N> r{};
    for (std::size_t i = 0; i < N; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < N; ++j)
            s += m[i][j] * v[j];
        r[i] = s;
    }
    return r;
}

template <std::size_t N>
constexpr auto mul(std::array<std::array<double, N>, N> const& a, std::array<std::array<double, N>, N> const& b) noexcept
    -> std::array<std::array<double, N>, N>
{
    std::array<std::array<double, N>, N> r{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k)
            for (std::size_t j = 0; j < N; ++j)
                r[i][j] += a[i][k] * b[k][j];
    return r;
}

template <int N>
struct eigensystem
{
    matrix<N> left{};  ///< rows are left eigenvectors
    matrix<N> right{}; ///< columns are right eigenvectors
    state<N> eigenvalues{};
    double theta = 0.0;
};

/// Perfect gas equation of state.
struct gas_model
{
    double gamma = 1.4;
};

namespace detail {

inline auto format_state(std::string_view what, double rho, double p) -> std::string
{
    std::ostringstream os;
    os.precision(17);
    os << what << " (rho=" << rho << ", p=" << p << ")";
    return os.str();
}

} // namespace detail

// ---------------------------------------------------------------------------------------
// Scalar laws
// ---------------------------------------------------------------------------------------

/// u_t + a u_x = 0
struct linear_advection_1d
{
    static constexpr int dims = 1;
    static constexpr int components = 1;
    static constexpr bool has_characteristics = false;
    static constexpr std::array<int, 2> momentum{-1, -1};
    static constexpr std::array<std::string_view, 1> primitive_names{"u"};

    double speed = 1.0;

    template <class T>
    auto flux(std::array<T, 1> const& u) const -> std::array<T, 1>
    {
        return {speed * u[0]};
    }

    void check_admissible(state<1> const& u) const
    {
        if (!std::isfinite(u[0]))
            throw physics_error("non-finite scalar state");
    }

    auto max_speed(state<1> const&) const noexcept -> double { return std::abs(speed); }
    auto to_primitive(state<1> const& u) const noexcept -> state<1> { return u; }
    auto to_conservative(state<1> const& w) const noexcept -> state<1> { return w; }
    auto density(state<1> const& u) const noexcept -> double { return u[0]; }
};

/// u_t + (u^2/2)_x = 0
struct burgers_1d
{
    static constexpr int dims = 1;
    static constexpr int components = 1;
    static constexpr bool has_characteristics = false;
    static constexpr std::array<int, 2> momentum{-1, -1};
    static constexpr std::array<std::string_view, 1> primitive_names{"u"};

    template <class T>
    auto flux(std::array<T, 1> const& u) const -> std::array<T, 1>
    {
        return {0.5 * (u[0] * u[0])};
    }

    void check_admissible(state<1> const& u) const
    {
        if (!std::isfinite(u[0]))
            throw physics_error("non-finite scalar state");
    }

    auto max_speed(state<1> const& u) const noexcept -> double { return std::abs(u[0]); }
    auto to_primitive(state<1> const& u) const noexcept -> state<1> { return u; }
    auto to_conservative(state<1> const& w) const noexcept -> state<1> { return w; }
    auto density(state<1> const& u) const noexcept -> double { return u[0]; }
};

/// u_t + a u_x + b u_y = 0
struct linear_advection_2d
{
    static constexpr int dims = 2;
    static constexpr int components = 1;
    static constexpr bool has_characteristics = false;
    static constexpr std::array<int, 2> momentum{-1, -1};
    static constexpr std::array<std::string_view, 1> primitive_names{"u"};

    double speed_x = 1.0;
    double speed_y = 1.0;

    template <class T>
    auto fluxes(std::array<T, 1> const& u) const -> std::array<std::array<T, 1>, 2>
    {
        return {{{speed_x * u[0]}, {speed_y * u[0]}}};
    }

    void check_admissible(state<1> const& u) const
    {
        if (!std::isfinite(u[0]))
            throw physics_error("non-finite scalar state");
    }

    auto max_speeds(state<1> const&) const noexcept -> std::array<double, 2>
    {
        return {std::abs(speed_x), std::abs(speed_y)};
    }
    auto to_primitive(state<1> const& u) const noexcept -> state<1> { return u; }
    auto to_conservative(state<1> const& w) const noexcept -> state<1> { return w; }
    auto density(state<1> const& u) const noexcept -> double { return u[0]; }
};

// ---------------------------------------------------------------------------------------
// Euler equations
// ---------------------------------------------------------------------------------------

/// 1D Euler, conserved (rho, rho u, rho e).
struct euler_1d
{
    static constexpr int dims = 1;
    static constexpr int components = 3;
    static constexpr bool has_characteristics = true;
    static constexpr std::array<int, 2> momentum{1, -1}; ///< normal-momentum slot per axis
    static constexpr std::array<std::string_view, 3> primitive_names{"rho", "u", "p"};

    gas_model gas{};

    auto pressure(state<3> const& U) const noexcept -> double
    {
        return (gas.gamma - 1.0) * (U[2] - 0.5 * U[1] * U[1] / U[0]);
    }

    void check_admissible(state<3> const& U) const
    {
        double const rho = U[0];
        double const p = rho > 0.0 ? pressure(U) : 0.0;
        if (!(rho > 0.0) || !(p > 0.0) || !std::isfinite(U[1]) || !std::isfinite(U[2]))
            throw physics_error(detail::format_state("inadmissible Euler state", rho, p));
    }

    template <class T>
    auto flux(std::array<T, 3> const& U) const -> std::array<T, 3>
    {
        check_admissible({value_of(U[0]), value_of(U[1]), value_of(U[2])});
        T const inv_rho = recip(U[0]);
        T const u = U[1] * inv_rho;
        T const p = (gas.gamma - 1.0) * (U[2] - 0.5 * (U[1] * u));
        return {U[1], U[1] * u + p, (U[2] + p) * u};
    }

    auto sound_speed(state<3> const& U) const -> double
    {
        check_admissible(U);
        return std::sqrt(gas.gamma * pressure(U) / U[0]);
    }

    auto max_speed(state<3> const& U) const -> double { return std::abs(U[1] / U[0]) + sound_speed(U); }

    auto to_primitive(state<3> const& U) const noexcept -> state<3> { return {U[0], U[1] / U[0], pressure(U)}; }

    auto to_conservative(state<3> const& W) const noexcept -> state<3>
    {
        return {W[0], W[0] * W[1], W[2] / (gas.gamma - 1.0) + 0.5 * W[0] * W[1] * W[1]};
    }

    auto density(state<3> const& U) const noexcept -> double { return U[0]; }

    /// Conservative-variable eigenvectors of dF/dU with eigenvalues (u-c, u, u+c).
    auto characteristics(state<3> const& U) const -> eigensystem<3>
    {
        double const c = sound_speed(U);
        double const rho = U[0];
        double const u = U[1] / rho;
        double const H = (U[2] + pressure(U)) / rho;
        double const b1 = (gas.gamma - 1.0) / (c * c);
        double const b2 = 0.5 * b1 * u * u;

        eigensystem<3> es;
        es.eigenvalues = {u - c, u, u + c};
        es.right = {{{1.0, 1.0, 1.0}, {u - c, u, u + c}, {H - u * c, 0.5 * u * u, H + u * c}}};
        es.left = {{{0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), 0.5 * b1},
                    {1.0 - b2, b1 * u, -b1},
                    {0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), 0.5 * b1}}};
        return es;
    }
};

/// 2D Euler, conserved (rho, rho u, rho v, rho e).
struct euler_2d
{
    static constexpr int dims = 2;
    static constexpr int components = 4;
    static constexpr bool has_characteristics = true;
    static constexpr std::array<int, 2> momentum{1, 2};
    static constexpr std::array<std::string_view, 4> primitive_names{"rho", "u", "v", "p"};

    gas_model gas{};

    auto pressure(state<4> const& U) const noexcept -> double
    {
        return (gas.gamma - 1.0) * (U[3] - 0.5 * (U[1] * U[1] + U[2] * U[2]) / U[0]);
    }

    void check_admissible(state<4> const& U) const
    {
        double const rho = U[0];
        double const p = rho > 0.0 ? pressure(U) : 0.0;
        if (!(rho > 0.0) || !(p > 0.0) || !std::isfinite(U[1]) || !std::isfinite(U[2]) || !std::isfinite(U[3]))
            throw physics_error(detail::format_state("inadmissible Euler state", rho, p));
    }

    /// Both directional fluxes (F, G), sharing the primitive-variable jets.
    template <class T>
    auto fluxes(std::array<T, 4> const& U) const -> std::array<std::array<T, 4>, 2>
    {
        check_admissible({value_of(U[0]), value_of(U[1]), value_of(U[2]), value_of(U[3])});
        T const inv_rho = recip(U[0]);
        T const u = U[1] * inv_rho;
        T const v = U[2] * inv_rho;
        T const p = (gas.gamma - 1.0) * (U[3] - 0.5 * (U[1] * u + U[2] * v));
        T const Ep = U[3] + p;
        T const muv = U[1] * v;
        return {{{U[1], U[1] * u + p, muv, Ep * u}, {U[2], muv, U[2] * v + p, Ep * v}}};
    }

    template <class T>
    auto flux_x(std::array<T, 4> const& U) const -> std::array<T, 4>
    {
        return fluxes(U)[0];
    }

    template <class T>
    auto flux_y(std::array<T, 4> const& U) const -> std::array<T, 4>
    {
        return fluxes(U)[1];
    }

    auto sound_speed(state<4> const& U) const -> double
    {
        check_admissible(U);
        return std::sqrt(gas.gamma * pressure(U) / U[0]);
    }

    auto max_speeds(state<4> const& U) const -> std::array<double, 2>
    {
        double const c = sound_speed(U);
        return {std::abs(U[1] / U[0]) + c, std::abs(U[2] / U[0]) + c};
    }

    auto to_primitive(state<4> const& U) const noexcept -> state<4>
    {
        return {U[0], U[1] / U[0], U[2] / U[0], pressure(U)};
    }

    auto to_conservative(state<4> const& W) const noexcept -> state<4>
    {
        return {W[0], W[0] * W[1], W[0] * W[2],
                W[3] / (gas.gamma - 1.0) + 0.5 * W[0] * (W[1] * W[1] + W[2] * W[2])};
    }

    auto density(state<4> const& U) const noexcept -> double { return U[0]; }

    /// Eigenvectors of dF/dU cos(theta) + dG/dU sin(theta); eigenvalues
    /// (un-c, un, un, un+c) with un the velocity along (cos(theta), sin(theta)).
    auto characteristics(state<4> const& U, double theta) const -> eigensystem<4>
    {
        double const c = sound_speed(U);
        double const rho = U[0];
        double const u = U[1] / rho;
        double const v = U[2] / rho;
        double const nx = std::cos(theta);
        double const ny = std::sin(theta);
        double const un = u * nx + v * ny;
        double const ut = -u * ny + v * nx;
        double const q2 = u * u + v * v;
        double const H = (U[3] + pressure(U)) / rho;
        double const b1 = (gas.gamma - 1.0) / (c * c);
        double const b2 = 0.5 * b1 * q2;

        eigensystem<4> es;
        es.theta = theta;
        es.eigenvalues = {un - c, un, un, un + c};
        // columns: acoustic(-), entropy, shear, acoustic(+)
        es.right = {{{1.0, 1.0, 0.0, 1.0},
                     {u - c * nx, u, -ny, u + c * nx},
                     {v - c * ny, v, nx, v + c * ny},
                     {H - c * un, 0.5 * q2, ut, H + c * un}}};
        es.left = {{{0.5 * (b2 + un / c), -0.5 * (b1 * u + nx / c), -0.5 * (b1 * v + ny / c), 0.5 * b1},
                    {1.0 - b2, b1 * u, b1 * v, -b1},
                    {-ut, -ny, nx, 0.0},
                    {0.5 * (b2 - un / c), -0.5 * (b1 * u - nx / c), -0.5 * (b1 * v - ny / c), 0.5 * b1}}};
        return es;
    }
};

/// Primitive state (rho, u, v, p) behind a normal shock of Mach number `mach` moving in +y
/// into gas with primitive state `pre` (at rest along the shock normal). The tangential
/// velocity is carried through unchanged.
inline auto normal_shock_state(double mach, state<4> const& pre, gas_model const& gas) -> state<4>
{
    if (!(mach > 1.0))
        throw domain_error("normal shock requires Mach number > 1");
    double const g = gas.gamma;
    double const m2 = mach * mach;
    double const a2 = std::sqrt(g * pre[3] / pre[0]);
    double const rho = pre[0] * 0.5 * (g + 1.0) * m2 / (1.0 + 0.5 * (g - 1.0) * m2);
    double const v = pre[2] + a2 * 2.0 * (m2 - 1.0) / ((g + 1.0) * mach);
    double const p = pre[3] * (2.0 * g * m2 - g + 1.0) / (g + 1.0);
    return {rho, pre[1], v, p};
}

} // namespace wcc
