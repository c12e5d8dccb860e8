#pragma once

// WENO-type limiter on a freshly updated cell.
//
// The full-degree polynomial u0 (point value plus scaled derivatives) competes with
// first-order planes that share its cell average and take their slopes from the vertex
// values produced by the time expansion. In 1D there are two such candidates, in 2D four.
//
// Weights:
//   P = 1   w_m ~ (1 / (beta_m + eps))^alpha
//   P >= 2  w_0 ~ 1 + (sigma tau / (beta_0^2 + eps))^alpha,  w_m ~ (sigma tau / (beta_m^2 + eps))^alpha
// with sigma the squared vertex residuals of u0 and tau the squared top-degree coefficients.

#include "wcc/errors.hpp"
#include "wcc/jet.hpp"
#include "wcc/physics.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace wcc {

enum class limiter_mode
{
    second_order,
    high_order
};

constexpr auto limiter_mode_for(int P) noexcept -> limiter_mode
{
    return P == 1 ? limiter_mode::second_order : limiter_mode::high_order;
}

struct limiter_params
{
    double alpha = 2.0;
    double epsilon = 1e-40;
};

namespace detail {

/// Integral of xi^n over [-1/2, 1/2].
constexpr auto centered_moment(int n) noexcept -> double
{
    if (n % 2 != 0)
        return 0.0;
    double h = 1.0;
    for (int i = 0; i <= n; ++i)
        h *= 0.5;
    return 2.0 * h / (n + 1);
}

/// Quadratic form of the smoothness indicator over the jet coefficients: beta = u^T B u.
template <int Vars, int P>
struct smoothness_form
{
    using layout = jet_layout<Vars, P>;
    static constexpr int n = layout::size;

    static constexpr auto make() -> std::array<std::array<double, n>, n>
    {
        std::array<std::array<double, n>, n> B{};
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                auto const& ia = layout::indices[a];
                auto const& ib = layout::indices[b];
                double sum = 0.0;
                // derivative orders d with 0 < |d|, d <= ia, d <= ib
                for (int d = 1; d < n; ++d) {
                    auto const& id = layout::indices[d];
                    bool ok = true;
                    double term = 1.0;
                    for (int v = 0; v < Vars; ++v) {
                        int const ra = ia[v] - id[v];
                        int const rb = ib[v] - id[v];
                        if (ra < 0 || rb < 0) {
                            ok = false;
                            break;
                        }
                        term *= centered_moment(ra + rb) / (factorial(ra) * factorial(rb));
                    }
                    if (ok)
                        sum += term;
                }
                B[a][b] = sum;
            }
        return B;
    }

    static constexpr auto matrix = make();
};

} // namespace detail

/// Smoothness indicator of a polynomial given by its jet coefficients (the constant slot
/// does not contribute).
template <int Vars, int P>
constexpr auto smoothness_indicator(std::array<double, jet_layout<Vars, P>::size> const& c) noexcept -> double
{
    auto const& B = detail::smoothness_form<Vars, P>::matrix;
    constexpr int n = jet_layout<Vars, P>::size;
    double beta = 0.0;
    for (int a = 1; a < n; ++a) {
        double row = 0.0;
        for (int b = 1; b < n; ++b)
            row += B[a][b] * c[b];
        beta += c[a] * row;
    }
    return beta;
}

template <int P>
constexpr auto smoothness_indicator_1d(std::array<double, P + 1> const& c) noexcept -> double
{
    return smoothness_indicator<1, P>(c);
}

template <int P>
constexpr auto smoothness_indicator_2d(std::array<double, jet_layout<2, P>::size> const& c) noexcept -> double
{
    return smoothness_indicator<2, P>(c);
}

// ---------------------------------------------------------------------------------------
// Candidates
// ---------------------------------------------------------------------------------------

/// First-order plane with constant `average` and scaled slopes.
template <int Vars>
struct plane
{
    double average = 0.0;
    std::array<double, Vars> slope{};
};

template <int P>
struct candidate_set_1d
{
    std::array<double, P + 1> u0{}; ///< full-degree polynomial
    double average = 0.0;
    std::array<plane<1>, 2> planes{};
    std::array<double, 2> vertex{}; ///< time-extrapolated values at xi = -1/2, +1/2
};

template <int P>
struct candidate_set_2d
{
    using layout = jet_layout<2, P>;
    std::array<double, layout::size> u0{};
    double average = 0.0;
    std::array<plane<2>, 4> planes{};
    std::array<double, 4> vertex{}; ///< LL, LR, UR, UL
};

template <int P>
constexpr auto build_candidates_1d(std::array<double, P + 1> const& u0, double average, double left,
                                   double right) noexcept -> candidate_set_1d<P>
{
    candidate_set_1d<P> c;
    c.u0 = u0;
    c.average = average;
    c.vertex = {left, right};
    c.planes[0] = {average, {2.0 * (average - left)}};
    c.planes[1] = {average, {2.0 * (right - average)}};
    return c;
}

/// Vertices ordered lower-left, lower-right, upper-right, upper-left.
template <int P>
constexpr auto build_candidates_2d(std::array<double, jet_layout<2, P>::size> const& u0, double average,
                                   std::array<double, 4> const& v) noexcept -> candidate_set_2d<P>
{
    double const LL = v[0], LR = v[1], UR = v[2], UL = v[3];
    candidate_set_2d<P> c;
    c.u0 = u0;
    c.average = average;
    c.vertex = v;
    c.planes[0] = {average, {2.0 * average - (LL + UL), UL - LL}};
    c.planes[1] = {average, {LR - LL, 2.0 * average - (LL + LR)}};
    c.planes[2] = {average, {(LR + UR) - 2.0 * average, UR - LR}};
    c.planes[3] = {average, {UR - UL, (UL + UR) - 2.0 * average}};
    return c;
}

// ---------------------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------------------

template <std::size_t M>
auto normalize(std::array<double, M> w) -> std::array<double, M>
{
    double s = 0.0;
    for (double v : w)
        s += v;
    if (!(s > 0.0) || !std::isfinite(s))
        throw numeric_error("limiter weights are not normalisable");
    for (double& v : w)
        v /= s;
    return w;
}

/// Normalised weights from the smoothness indicators of u0 (betas[0]) and the planes.
template <std::size_t M>
auto compute_weights(std::array<double, M> const& betas, limiter_mode mode, limiter_params const& prm,
                     double sigma = 0.0, double tau = 0.0) -> std::array<double, M>
{
    std::array<double, M> w{};
    if (mode == limiter_mode::second_order) {
        // (1/(beta_m+eps))^alpha rescaled by the smallest denominator; same normalised weights
        double lo = betas[0] + prm.epsilon;
        for (std::size_t m = 1; m < M; ++m)
            lo = std::min(lo, betas[m] + prm.epsilon);
        for (std::size_t m = 0; m < M; ++m)
            w[m] = std::pow(lo / (betas[m] + prm.epsilon), prm.alpha);
    } else {
        double const st = sigma * tau;
        for (std::size_t m = 0; m < M; ++m)
            w[m] = std::pow(st / (betas[m] * betas[m] + prm.epsilon), prm.alpha);
        w[0] += 1.0;
    }
    return normalize(w);
}

template <int P>
auto weights_1d(candidate_set_1d<P> const& c, limiter_params const& prm) -> std::array<double, 3>
{
    std::array<double, 3> betas{smoothness_indicator_1d<P>(c.u0), 0.0, 0.0};
    for (int m = 0; m < 2; ++m)
        betas[m + 1] = c.planes[m].slope[0] * c.planes[m].slope[0];
    if constexpr (P == 1) {
        return compute_weights(betas, limiter_mode::second_order, prm);
    } else {
        double sigma = 0.0;
        for (int side = 0; side < 2; ++side) {
            double const xi = side == 0 ? -0.5 : 0.5;
            double val = 0.0, term = 1.0;
            for (int k = 0; k <= P; ++k) {
                val += c.u0[k] * term;
                term *= xi / (k + 1);
            }
            double const d = val - c.vertex[side];
            sigma += d * d;
        }
        double const tau = c.u0[P] * c.u0[P];
        return compute_weights(betas, limiter_mode::high_order, prm, sigma, tau);
    }
}

template <int P>
auto weights_2d(candidate_set_2d<P> const& c, limiter_params const& prm) -> std::array<double, 5>
{
    using layout = jet_layout<2, P>;
    std::array<double, 5> betas{smoothness_indicator_2d<P>(c.u0), 0.0, 0.0, 0.0, 0.0};
    for (int m = 0; m < 4; ++m)
        betas[m + 1] = c.planes[m].slope[0] * c.planes[m].slope[0] + c.planes[m].slope[1] * c.planes[m].slope[1];
    if constexpr (P == 1) {
        return compute_weights(betas, limiter_mode::second_order, prm);
    } else {
        constexpr std::array<std::array<double, 2>, 4> corners{{{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}};
        double sigma = 0.0;
        for (int v = 0; v < 4; ++v) {
            double val = 0.0;
            for (int i = 0; i < layout::size; ++i) {
                auto const& a = layout::indices[i];
                double term = c.u0[i];
                for (int p = 0; p < a[0]; ++p)
                    term *= corners[v][0] / (p + 1);
                for (int p = 0; p < a[1]; ++p)
                    term *= corners[v][1] / (p + 1);
                val += term;
            }
            double const d = val - c.vertex[v];
            sigma += d * d;
        }
        double tau = 0.0;
        for (int k = 0; k <= P; ++k) {
            double const t = c.u0[layout::index_of({k, P - k})];
            tau += t * t;
        }
        return compute_weights(betas, limiter_mode::high_order, prm, sigma, tau);
    }
}

// ---------------------------------------------------------------------------------------
// Limited polynomial
// ---------------------------------------------------------------------------------------

/// u* = sum_m w_m u_m, coefficient-wise; the planes only touch the constant and slope slots.
template <int P>
auto limit_cell_1d(candidate_set_1d<P> const& c, std::array<double, 3> const& w) -> std::array<double, P + 1>
{
    std::array<double, P + 1> out{};
    for (int k = 0; k <= P; ++k)
        out[k] = w[0] * c.u0[k];
    for (int m = 0; m < 2; ++m) {
        out[0] += w[m + 1] * c.planes[m].average;
        if constexpr (P >= 1)
            out[1] += w[m + 1] * c.planes[m].slope[0];
    }
    return out;
}

template <int P>
auto limit_cell_2d(candidate_set_2d<P> const& c, std::array<double, 5> const& w)
    -> std::array<double, jet_layout<2, P>::size>
{
    std::array<double, jet_layout<2, P>::size> out{};
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = w[0] * c.u0[i];
    for (int m = 0; m < 4; ++m) {
        out[0] += w[m + 1] * c.planes[m].average;
        out[1] += w[m + 1] * c.planes[m].slope[0];
        out[2] += w[m + 1] * c.planes[m].slope[1];
    }
    return out;
}

/// Full scalar limiting of one 1D cell.
template <int P>
auto limit_scalar_1d(std::array<double, P + 1> const& u0, double average, double left, double right,
                     limiter_params const& prm) -> std::array<double, P + 1>
{
    auto const c = build_candidates_1d<P>(u0, average, left, right);
    return limit_cell_1d<P>(c, weights_1d<P>(c, prm));
}

template <int P>
auto limit_scalar_2d(std::array<double, jet_layout<2, P>::size> const& u0, double average,
                     std::array<double, 4> const& vertex, limiter_params const& prm)
    -> std::array<double, jet_layout<2, P>::size>
{
    auto const c = build_candidates_2d<P>(u0, average, vertex);
    return limit_cell_2d<P>(c, weights_2d<P>(c, prm));
}

// ---------------------------------------------------------------------------------------
// Systems
// ---------------------------------------------------------------------------------------

/// Limits every component of a cell independently (conservative-variable limiting).
template <int Vars, int P, std::size_t NC, class Limit>
void limit_components(std::array<jet<Vars, P>, NC>& dofs, std::array<double, NC> const& average,
                      std::array<std::array<double, NC>, (Vars == 1 ? 2 : 4)> const& vertex, Limit&& limit)
{
    constexpr int n = jet_layout<Vars, P>::size;
    constexpr int nv = Vars == 1 ? 2 : 4;
    for (std::size_t c = 0; c < NC; ++c) {
        std::array<double, n> u0{};
        for (int i = 0; i < n; ++i)
            u0[i] = dofs[c][i];
        std::array<double, nv> v{};
        for (int k = 0; k < nv; ++k)
            v[k] = vertex[k][c];
        auto const out = limit(u0, average[c], v);
        for (int i = 0; i < n; ++i)
            dofs[c][i] = out[i];
    }
}

/// Projects DOFs, average and vertex values through L, limits each characteristic field,
/// and maps the result back through R.
template <int Vars, int P, std::size_t NC, class Limit>
void limit_characteristic(std::array<jet<Vars, P>, NC>& dofs, std::array<double, NC> const& average,
                          std::array<std::array<double, NC>, (Vars == 1 ? 2 : 4)> const& vertex,
                          std::array<std::array<double, NC>, NC> const& L,
                          std::array<std::array<double, NC>, NC> const& R, Limit&& limit)
{
    constexpr int n = jet_layout<Vars, P>::size;
    constexpr int nv = Vars == 1 ? 2 : 4;
    std::array<jet<Vars, P>, NC> w{};
    std::array<double, NC> wa = mul(L, average);
    std::array<std::array<double, NC>, nv> wv{};
    for (int k = 0; k < nv; ++k)
        wv[k] = mul(L, vertex[k]);
    for (std::size_t f = 0; f < NC; ++f)
        for (std::size_t c = 0; c < NC; ++c)
            for (int i = 0; i < n; ++i)
                w[f][i] += L[f][c] * dofs[c][i];

    limit_components<Vars, P, NC>(w, wa, wv, limit);

    for (std::size_t c = 0; c < NC; ++c) {
        dofs[c] = {};
        for (std::size_t f = 0; f < NC; ++f)
            for (int i = 0; i < n; ++i)
                dofs[c][i] += R[c][f] * w[f][i];
    }
}

/// Rotation angle of the gradient direction (gx, gy); falls back to 0 when the gradient is
/// negligible relative to `scale`.
inline auto rotation_angle(double gx, double gy, double scale) noexcept -> double
{
    double const mag = std::hypot(gx, gy);
    if (!(mag >= 1e-12 * std::abs(scale)) || mag == 0.0)
        return 0.0;
    return std::atan2(gy, gx);
}

} // namespace wcc
