#pragma once

// Test-case catalogue: geometry, boundary conditions, initial data and exact solutions.
//
// Initial DOFs are the point value and scaled derivatives of the initial field at each cell
// centre. Smooth pieces are differentiated exactly by evaluating the field on jets; the
// piece is chosen by the centre, so a cell crossing a discontinuity gets the side value with
// zero derivatives. Every case starts on the staggered parity, whose cells tile the domain,
// so the discontinuities of sod, titarev-toro, the composite wave and the RMI shock sit on
// faces at the default resolutions.

#include "wcc/errors.hpp"
#include "wcc/jet.hpp"
#include "wcc/mesh.hpp"
#include "wcc/physics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace wcc {

enum class physics_kind
{
    advection_1d,
    euler_1d,
    euler_2d
};

struct problem
{
    std::string id;
    std::string description;
    physics_kind physics = physics_kind::euler_1d;
    int dims = 1;
    double x_lo = 0.0, x_hi = 1.0;
    double y_lo = 0.0, y_hi = 1.0;
    int nx = 100, ny = 1;
    double t_end = 1.0;
    boundary_set bcs;
    bool has_exact = false;
    double speed = 1.0; ///< advection speed
    double gamma = 1.4;

    auto components() const noexcept -> int
    {
        return physics == physics_kind::advection_1d ? 1 : physics == physics_kind::euler_1d ? 3 : 4;
    }
};

namespace detail {

/// f(a) from the derivatives f^(n)(a0), n = 0..Degree, at a0 = value(a).
template <int Vars, int Degree>
auto compose(jet<Vars, Degree> const& a, std::array<double, Degree + 1> const& derivs) -> jet<Vars, Degree>
{
    jet<Vars, Degree> delta = a;
    delta[0] = 0.0;
    jet<Vars, Degree> out(derivs[0]);
    jet<Vars, Degree> power(1.0);
    for (int n = 1; n <= Degree; ++n) {
        power = power * delta;
        out += power * (derivs[n] / factorial(n));
    }
    return out;
}

inline auto fexp(double x) -> double { return std::exp(x); }
inline auto fsin(double x) -> double { return std::sin(x); }
inline auto fsqrt(double x) -> double { return std::sqrt(x); }
inline auto fpow(double x, double r) -> double { return std::pow(x, r); }

template <int V, int D>
auto fexp(jet<V, D> const& a) -> jet<V, D>
{
    std::array<double, D + 1> d{};
    d.fill(std::exp(a.value()));
    return compose(a, d);
}

template <int V, int D>
auto fsin(jet<V, D> const& a) -> jet<V, D>
{
    std::array<double, D + 1> d{};
    double const s = std::sin(a.value()), c = std::cos(a.value());
    for (int n = 0; n <= D; ++n)
        d[n] = (n % 4 == 0) ? s : (n % 4 == 1) ? c : (n % 4 == 2) ? -s : -c;
    return compose(a, d);
}

template <int V, int D>
auto fpow(jet<V, D> const& a, double r) -> jet<V, D>
{
    std::array<double, D + 1> d{};
    double coef = 1.0;
    for (int n = 0; n <= D; ++n) {
        d[n] = coef * std::pow(a.value(), r - n);
        coef *= r - n;
    }
    return compose(a, d);
}

template <int V, int D>
auto fsqrt(jet<V, D> const& a) -> jet<V, D>
{
    return fpow(a, 0.5);
}

inline auto wrap(double x, double lo, double hi) -> double
{
    double const L = hi - lo;
    double r = std::fmod(x - lo, L);
    if (r < 0.0)
        r += L;
    return lo + r;
}

template <class T>
auto sine_wave(T const& x) -> T
{
    return fsin(std::numbers::pi * x);
}

template <class T>
auto composite_wave(T const& x) -> T
{
    constexpr double a = 0.5, z = -0.7, delta = 0.005, alpha = 10.0;
    double const beta = std::log(2.0) / (36.0 * delta * delta);
    double const x0 = value_of(x);
    auto G = [&](double zz) { return fexp(-beta * ((x - zz) * (x - zz))); };
    auto F = [&](double aa) -> T {
        T const arg = 1.0 - alpha * alpha * ((x - aa) * (x - aa));
        if (!(value_of(arg) > 0.0))
            return T(0.0);
        return fsqrt(arg);
    };
    if (x0 >= -0.8 && x0 <= -0.6)
        return (G(z - delta) + 4.0 * G(z) + G(z + delta)) * (1.0 / 6.0);
    if (x0 >= -0.4 && x0 <= -0.2)
        return T(1.0);
    if (x0 >= 0.0 && x0 <= 0.2)
        return x0 <= 0.1 ? 1.0 - 10.0 * (0.1 - x) : 1.0 - 10.0 * (x - 0.1);
    if (x0 >= 0.4 && x0 <= 0.6)
        return (F(a - delta) + 4.0 * F(a) + F(a + delta)) * (1.0 / 6.0);
    return T(0.0);
}

/// Primitive (rho, u, v, p) of the isentropic vortex centred at the origin.
template <class T>
auto vortex_primitive(T const& x, T const& y, double gamma) -> std::array<T, 4>
{
    constexpr double psi = 5.0;
    constexpr double pi = std::numbers::pi;
    T const r2 = x * x + y * y;
    T const e = fexp(0.5 * (1.0 - r2));
    T const amp = (psi / (2.0 * pi)) * e;
    T const temp = 1.0 - ((gamma - 1.0) * psi * psi / (8.0 * gamma * pi * pi)) * (e * e);
    T const rho = fpow(temp, 1.0 / (gamma - 1.0));
    return {rho, 1.0 - amp * y, 1.0 + amp * x, rho * temp};
}

template <class T, std::size_t N>
auto primitive_to_conservative(std::array<T, N> const& w, double gamma) -> std::array<T, N>
{
    std::array<T, N> u{};
    u[0] = w[0];
    T kinetic(0.0);
    for (std::size_t d = 1; d + 1 < N; ++d) {
        u[d] = w[0] * w[d];
        kinetic += w[d] * w[d];
    }
    u[N - 1] = w[N - 1] * (1.0 / (gamma - 1.0)) + 0.5 * (w[0] * kinetic);
    return u;
}

inline auto primitive_to_vector(state<4> const& w, double gamma) -> std::vector<double>
{
    auto const u = primitive_to_conservative(w, gamma);
    return {u.begin(), u.end()};
}

/// Primitive 1D Euler data of the shock-tube cases.
template <class T>
auto euler_1d_primitive(std::string_view id, T const& x) -> std::array<T, 3>
{
    double const x0 = value_of(x);
    if (id == "sod")
        return x0 < 1.0 ? std::array<T, 3>{T(1.0), T(0.0), T(1.0)} : std::array<T, 3>{T(0.125), T(0.0), T(0.1)};
    if (x0 < -4.5)
        return {T(1.515695), T(0.523346), T(1.805)};
    return {1.0 + 0.1 * fsin((20.0 * std::numbers::pi) * x), T(0.0), T(1.0)};
}

inline constexpr state<4> dmr_pre{1.4, 0.0, 0.0, 1.0};

inline auto dmr_post() -> state<4>
{
    double const deg60 = std::numbers::pi / 3.0;
    return {8.0, 8.25 * std::sin(deg60), -8.25 * std::cos(deg60), 116.5};
}

inline auto rmi_post(double gamma) -> state<4>
{
    return normal_shock_state(2.0, {1.0, 0.0, 0.0, 1.0 / gamma}, gas_model{gamma});
}

/// Primitive 2D Euler data of the piecewise-constant cases, chosen by the point (x, y).
inline auto euler_2d_piecewise(std::string_view id, double x, double y, double gamma) -> state<4>
{
    if (id == "rp1") {
        if (x < 0.0)
            return y < 0.0 ? state<4>{0.138, 1.206, 1.206, 0.029} : state<4>{0.5323, 1.206, 0.0, 0.3};
        return y < 0.0 ? state<4>{0.5323, 0.0, 1.206, 0.3} : state<4>{1.5, 0.0, 0.0, 1.5};
    }
    if (id == "rp2") {
        if (x < 0.0)
            return y < 0.0 ? state<4>{1.0, -0.75, 0.5, 1.0} : state<4>{2.0, 0.75, 0.5, 1.0};
        return y < 0.0 ? state<4>{3.0, -0.75, -0.5, 1.0} : state<4>{1.0, 0.75, -0.5, 1.0};
    }
    if (id == "dmr")
        return x > 1.0 / 6.0 + y / std::sqrt(3.0) ? dmr_pre : dmr_post();
    if (id == "rmi") {
        if (y >= 1.0 - 0.3 * std::cos(2.0 * std::numbers::pi * x))
            return {0.1, 0.0, 0.0, 1.0 / gamma};
        if (y >= 0.6)
            return {1.0, 0.0, 0.0, 1.0 / gamma};
        return rmi_post(gamma);
    }
    throw config_error("case '" + std::string(id) + "' has no piecewise-constant 2D data");
}

} // namespace detail

// ---------------------------------------------------------------------------------------
// Catalogue
// ---------------------------------------------------------------------------------------

inline auto case_ids() -> std::vector<std::string>
{
    return {"advect-sine", "advect-composite", "sod", "titarev-toro", "vortex", "rp1", "rp2", "dmr", "rmi"};
}

inline auto find_problem(std::string_view id) -> problem
{
    auto const periodic = boundary_condition::periodic();
    auto const open = boundary_condition::open();
    problem p;
    p.id = std::string(id);
    if (id == "advect-sine" || id == "advect-composite") {
        bool const sine = id == "advect-sine";
        p.description = sine ? "linear advection of sin(pi x) on [-1,1], periodic"
                             : "linear advection of Gaussian/square/triangle/ellipse waves on [-1,1], periodic";
        p.physics = physics_kind::advection_1d;
        p.x_lo = -1.0;
        p.x_hi = 1.0;
        p.nx = sine ? 100 : 400;
        p.t_end = sine ? 2.0 : 12.0;
        p.bcs = {periodic, periodic, {}, {}};
        p.has_exact = true;
    } else if (id == "sod") {
        p.description = "Sod shock tube on [0,2], diaphragm at x=1";
        p.x_lo = 0.0;
        p.x_hi = 2.0;
        p.nx = 200;
        p.t_end = 0.4;
        p.bcs = {open, open, {}, {}};
    } else if (id == "titarev-toro") {
        p.description = "Mach 1.1 shock hitting a high-frequency entropy wave on [-5,5]";
        p.x_lo = -5.0;
        p.x_hi = 5.0;
        p.nx = 2000;
        p.t_end = 5.0;
        p.bcs = {open, open, {}, {}};
    } else if (id == "vortex") {
        p.description = "isentropic vortex in a (1,1) mean flow on [-5,5]^2, periodic";
        p.physics = physics_kind::euler_2d;
        p.dims = 2;
        p.x_lo = p.y_lo = -5.0;
        p.x_hi = p.y_hi = 5.0;
        p.nx = p.ny = 100;
        p.t_end = 2.0;
        p.bcs = {periodic, periodic, periodic, periodic};
        p.has_exact = true;
    } else if (id == "rp1" || id == "rp2") {
        p.description = id == "rp1" ? "2D Riemann problem with four interacting shocks on [-1,1]^2"
                                    : "2D Riemann problem with four contact discontinuities on [-1,1]^2";
        p.physics = physics_kind::euler_2d;
        p.dims = 2;
        p.x_lo = p.y_lo = -1.0;
        p.x_hi = p.y_hi = 1.0;
        p.nx = p.ny = 300;
        p.t_end = id == "rp1" ? 1.1 : 1.0;
        p.bcs = {open, open, open, open};
    } else if (id == "dmr") {
        p.description = "double Mach reflection of a Mach 10 shock on [0,4]x[0,1]";
        p.physics = physics_kind::euler_2d;
        p.dims = 2;
        p.x_lo = 0.0;
        p.x_hi = 4.0;
        p.y_lo = 0.0;
        p.y_hi = 1.0;
        p.nx = 480;
        p.ny = 120;
        p.t_end = 0.28;
        auto const post = detail::primitive_to_vector(detail::dmr_post(), p.gamma);
        auto const pre = detail::primitive_to_vector(detail::dmr_pre, p.gamma);
        p.bcs = {boundary_condition::inflow(post), open, boundary_condition::wall(1.0 / 6.0),
                 boundary_condition{bc_kind::dmr_top, post, pre, -INFINITY}};
    } else if (id == "rmi") {
        p.description = "single-mode Richtmyer-Meshkov instability, Mach 2 shock, on [-0.5,0.5]x[0,5]";
        p.physics = physics_kind::euler_2d;
        p.dims = 2;
        p.x_lo = -0.5;
        p.x_hi = 0.5;
        p.y_lo = 0.0;
        p.y_hi = 5.0;
        p.nx = 100;
        p.ny = 500;
        p.t_end = 1.8;
        p.bcs = {periodic, periodic, open, open};
    } else {
        std::string known;
        for (auto const& k : case_ids())
            known += (known.empty() ? "" : ", ") + k;
        throw config_error("unknown case '" + std::string(id) + "' (known: " + known + ")");
    }
    return p;
}

// ---------------------------------------------------------------------------------------
// Initial data
// ---------------------------------------------------------------------------------------

/// Conservative jets of a 1D case at centre xc on spacing dx (first components() entries used).
template <int P>
auto initial_jets_1d(problem const& p, double xc, double dx) -> std::array<jet<1, P>, 3>
{
    if (p.dims != 1)
        throw config_error("case '" + p.id + "' is not one-dimensional");
    jet<1, P> const x = jet<1, P>::variable(0, 0.0) * dx + xc;
    std::array<jet<1, P>, 3> out{};
    if (p.physics == physics_kind::advection_1d) {
        out[0] = p.id == "advect-sine" ? detail::sine_wave(x) : detail::composite_wave(x);
        return out;
    }
    return detail::primitive_to_conservative(detail::euler_1d_primitive(p.id, x), p.gamma);
}

/// Conservative jets of a 2D case at (xc, yc).
template <int P>
auto initial_jets_2d(problem const& p, double xc, double yc, double dx, double dy) -> std::array<jet<2, P>, 4>
{
    if (p.dims != 2)
        throw config_error("case '" + p.id + "' is not two-dimensional");
    if (p.id == "vortex") {
        jet<2, P> const x = jet<2, P>::variable(0, 0.0) * dx + xc;
        jet<2, P> const y = jet<2, P>::variable(1, 0.0) * dy + yc;
        return detail::primitive_to_conservative(detail::vortex_primitive(x, y, p.gamma), p.gamma);
    }
    auto const u = detail::primitive_to_conservative(detail::euler_2d_piecewise(p.id, xc, yc, p.gamma), p.gamma);
    std::array<jet<2, P>, 4> out{};
    for (int c = 0; c < 4; ++c)
        out[c] = jet<2, P>(u[c]);
    return out;
}

template <int NC, int P>
auto initialize_1d(problem const& p, int nx, parity start = parity::staggered) -> solution_1d<NC, P>
{
    if (NC != p.components())
        throw config_error("case '" + p.id + "' has " + std::to_string(p.components()) + " components");
    solution_1d<NC, P> u(axis{p.x_lo, p.x_hi, nx}, start, 0.0);
    double const dx = u.x.spacing();
    for (int s = 1; s <= u.count(); ++s) {
        auto const j = initial_jets_1d<P>(p, u.center(s), dx);
        for (int c = 0; c < NC; ++c)
            u(s)[c] = j[c];
    }
    return u;
}

template <int P>
auto initialize_2d(problem const& p, int nx, int ny, parity start = parity::staggered) -> solution_2d<4, P>
{
    solution_2d<4, P> u(axis{p.x_lo, p.x_hi, nx}, axis{p.y_lo, p.y_hi, ny}, start, 0.0);
    double const dx = u.x.spacing(), dy = u.y.spacing();
    for (int r = 1; r <= u.count_y(); ++r)
        for (int s = 1; s <= u.count_x(); ++s)
            u(s, r) = initial_jets_2d<P>(p, u.x.center(start, s), u.y.center(start, r), dx, dy);
    return u;
}

// ---------------------------------------------------------------------------------------
// Exact solutions
// ---------------------------------------------------------------------------------------

/// Exact scalar solution of the advection cases.
inline auto exact_1d(problem const& p, double x, double t) -> double
{
    if (!p.has_exact || p.dims != 1)
        throw unsupported_error("case '" + p.id + "' has no exact solution");
    double const xi = detail::wrap(x - p.speed * t, p.x_lo, p.x_hi);
    return p.id == "advect-sine" ? detail::sine_wave(xi) : detail::composite_wave(xi);
}

/// Exact primitive (rho, u, v, p) of the vortex: the initial field carried by the mean flow.
inline auto exact_2d(problem const& p, double x, double y, double t) -> state<4>
{
    if (!p.has_exact || p.dims != 2)
        throw unsupported_error("case '" + p.id + "' has no exact solution");
    double const xs = detail::wrap(x - t, p.x_lo, p.x_hi);
    double const ys = detail::wrap(y - t, p.y_lo, p.y_hi);
    return detail::vortex_primitive(xs, ys, p.gamma);
}

} // namespace wcc
