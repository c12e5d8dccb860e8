#pragma once

// Truncated multivariate Taylor jets in scaled-derivative form.
//
// A jet<Vars, Degree> stores, for every multi-index a with |a| <= Degree, the scaled
// derivative psi_a = d^|a| psi / dx^a * h^a (h the mesh/time spacing per variable).
// In this convention the polynomial the jet represents is
//
//     psi(xi) = sum_a psi_a * xi^a / a!
//
// with xi the spacing-normalised offset from the anchor, so products follow the
// generalised Leibniz rule with binomial weights and no spacing factors appear.

#include "wcc/errors.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

namespace wcc {

namespace detail {

constexpr auto factorial(int n) noexcept -> double
{
    double r = 1.0;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

constexpr auto binomial(int n, int k) noexcept -> int
{
    if (k < 0 || k > n)
        return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

constexpr auto ipow(int base, int e) noexcept -> int
{
    int r = 1;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

} // namespace detail

/// Compile-time description of the coefficient table of a jet: graded multi-index
/// ordering, dense lookup, and the Leibniz product stencil.
template <int Vars, int Degree>
struct jet_layout
{
    static_assert(Vars >= 1 && Vars <= 3, "jets support 1 to 3 variables");
    static_assert(Degree >= 0 && Degree <= 4, "jets support total degree 0 to 4");

    using multi_index = std::array<int, Vars>;

    static constexpr int size = detail::binomial(Vars + Degree, Vars);

    static constexpr auto total(multi_index const& a) noexcept -> int
    {
        int s = 0;
        for (int v : a)
            s += v;
        return s;
    }

  private:
    // Graded ordering; inside one degree the first variable runs fastest downward,
    // e.g. for (x, t): (0,0) (1,0) (0,1) (2,0) (1,1) (0,2) ...
    static constexpr auto make_indices() -> std::array<multi_index, size>
    {
        std::array<multi_index, size> out{};
        int n = 0;
        constexpr int box = detail::ipow(Degree + 1, Vars);
        for (int d = 0; d <= Degree; ++d) {
            // Walk the (Degree+1)^Vars box in an order that puts larger leading exponents first.
            for (int flat = box - 1; flat >= 0; --flat) {
                multi_index a{};
                int rem = flat;
                for (int v = Vars - 1; v >= 0; --v) {
                    a[v] = rem % (Degree + 1);
                    rem /= (Degree + 1);
                }
                if (total(a) == d)
                    out[n++] = a;
            }
        }
        return out;
    }

    static constexpr auto box_index(multi_index const& a) noexcept -> int
    {
        int flat = 0;
        for (int v = 0; v < Vars; ++v)
            flat = flat * (Degree + 1) + a[v];
        return flat;
    }

    static constexpr auto make_lookup() -> std::array<int, detail::ipow(Degree + 1, Vars)>
    {
        std::array<int, detail::ipow(Degree + 1, Vars)> lut{};
        for (auto& v : lut)
            v = -1;
        auto const idx = make_indices();
        for (int i = 0; i < size; ++i)
            lut[box_index(idx[i])] = i;
        return lut;
    }

  public:
    static constexpr std::array<multi_index, size> indices = make_indices();

  private:
    static constexpr auto lookup = make_lookup();

  public:
    /// Flat position of a multi-index, or -1 when its total order exceeds Degree
    /// (or any component is negative).
    static constexpr auto index_of(multi_index const& a) noexcept -> int
    {
        for (int v : a)
            if (v < 0 || v > Degree)
                return -1;
        if (total(a) > Degree)
            return -1;
        return lookup[box_index(a)];
    }

    static constexpr auto multinomial_factorial(multi_index const& a) noexcept -> double
    {
        double r = 1.0;
        for (int v : a)
            r *= detail::factorial(v);
        return r;
    }

    struct product_term
    {
        int out;
        int lhs;
        int rhs;
        double weight;
    };

  private:
    static constexpr auto count_products() -> int
    {
        int n = 0;
        for (auto const& g : make_indices()) {
            int c = 1;
            for (int v : g)
                c *= (v + 1);
            n += c;
        }
        return n;
    }

  public:
    static constexpr int product_count = count_products();

  private:
    static constexpr auto make_products() -> std::array<product_term, product_count>
    {
        std::array<product_term, product_count> out{};
        auto const idx = make_indices();
        int n = 0;
        for (int g = 0; g < size; ++g) {
            for (int a = 0; a < size; ++a) {
                multi_index rest{};
                bool ok = true;
                double w = 1.0;
                for (int v = 0; v < Vars; ++v) {
                    rest[v] = idx[g][v] - idx[a][v];
                    if (rest[v] < 0) {
                        ok = false;
                        break;
                    }
                    w *= detail::binomial(idx[g][v], idx[a][v]);
                }
                if (!ok)
                    continue;
                int b = 0;
                for (int j = 0; j < size; ++j)
                    if (idx[j] == rest)
                        b = j;
                out[n++] = product_term{g, a, b, w};
            }
        }
        return out;
    }

  public:
    /// Leibniz stencil grouped by output coefficient in graded order.
    static constexpr std::array<product_term, product_count> products = make_products();
};

/// Truncated Taylor jet with Vars independent variables and total degree Degree.
template <int Vars, int Degree>
class jet
{
  public:
    using layout = jet_layout<Vars, Degree>;
    using multi_index = typename layout::multi_index;
    static constexpr int variables = Vars;
    static constexpr int degree = Degree;
    static constexpr int size = layout::size;

    constexpr jet() noexcept = default;

    /// Constant jet.
    explicit constexpr jet(double value) noexcept { c_[0] = value; }

    /// Jet of the independent variable `var` anchored at `value` (unit scaled slope).
    static constexpr auto variable(int var, double value) noexcept -> jet
    {
        jet r(value);
        if constexpr (Degree >= 1)
            r.c_[1 + var] = 1.0;
        return r;
    }

    constexpr auto operator[](int flat) noexcept -> double& { return c_[static_cast<std::size_t>(flat)]; }
    constexpr auto operator[](int flat) const noexcept -> double { return c_[static_cast<std::size_t>(flat)]; }

    /// Coefficient by multi-index; indices of total order > Degree read as zero.
    constexpr auto at(multi_index const& a) const noexcept -> double
    {
        int const i = layout::index_of(a);
        return i < 0 ? 0.0 : c_[static_cast<std::size_t>(i)];
    }

    constexpr auto at(multi_index const& a) -> double&
    {
        int const i = layout::index_of(a);
        if (i < 0)
            throw index_error("jet multi-index outside the truncation degree");
        return c_[static_cast<std::size_t>(i)];
    }

    constexpr auto value() const noexcept -> double { return c_[0]; }

    constexpr auto coefficients() noexcept -> std::span<double, size> { return c_; }
    constexpr auto coefficients() const noexcept -> std::span<double const, size> { return c_; }

    constexpr auto operator+=(jet const& o) noexcept -> jet&
    {
        for (int i = 0; i < size; ++i)
            c_[i] += o.c_[i];
        return *this;
    }

    constexpr auto operator-=(jet const& o) noexcept -> jet&
    {
        for (int i = 0; i < size; ++i)
            c_[i] -= o.c_[i];
        return *this;
    }

    constexpr auto operator*=(double s) noexcept -> jet&
    {
        for (auto& v : c_)
            v *= s;
        return *this;
    }

    constexpr auto operator+=(double s) noexcept -> jet&
    {
        c_[0] += s;
        return *this;
    }

    constexpr auto operator-=(double s) noexcept -> jet&
    {
        c_[0] -= s;
        return *this;
    }

    friend constexpr auto operator+(jet a, jet const& b) noexcept -> jet { return a += b; }
    friend constexpr auto operator-(jet a, jet const& b) noexcept -> jet { return a -= b; }
    friend constexpr auto operator-(jet a) noexcept -> jet { return a *= -1.0; }
    friend constexpr auto operator*(jet a, double s) noexcept -> jet { return a *= s; }
    friend constexpr auto operator*(double s, jet a) noexcept -> jet { return a *= s; }
    friend constexpr auto operator+(jet a, double s) noexcept -> jet { return a += s; }
    friend constexpr auto operator+(double s, jet a) noexcept -> jet { return a += s; }
    friend constexpr auto operator-(jet a, double s) noexcept -> jet { return a -= s; }
    friend constexpr auto operator-(double s, jet const& a) noexcept -> jet { return jet(s) - a; }

    /// Truncated Leibniz product.
    friend constexpr auto operator*(jet const& a, jet const& b) noexcept -> jet
    {
        jet r;
        for (auto const& t : layout::products)
            r.c_[t.out] += t.weight * a.c_[t.lhs] * b.c_[t.rhs];
        return r;
    }

    constexpr auto operator*=(jet const& o) noexcept -> jet& { return *this = *this * o; }

    friend constexpr auto operator==(jet const&, jet const&) noexcept -> bool = default;

  private:
    std::array<double, size> c_{};
};

/// Multiplicative inverse by order-by-order recursion of a * r = 1.
template <int Vars, int Degree>
constexpr auto recip(jet<Vars, Degree> const& a) -> jet<Vars, Degree>
{
    double const a0 = a.value();
    if (!(std::abs(a0) >= 1e-300))
        throw division_by_zero("jet reciprocal of a vanishing constant term");
    double const inv = 1.0 / a0;
    jet<Vars, Degree> r;
    r[0] = inv;
    // Terms are grouped by output index in graded order, so every r[rhs] with lhs != 0
    // has lower degree than the output and is already final.
    double acc = 0.0;
    int current = 0;
    for (auto const& t : jet<Vars, Degree>::layout::products) {
        if (t.out == 0)
            continue;
        if (t.out != current) {
            if (current != 0)
                r[current] = -inv * acc;
            current = t.out;
            acc = 0.0;
        }
        if (t.lhs != 0)
            acc += t.weight * a[t.lhs] * r[t.rhs];
    }
    if (current != 0)
        r[current] = -inv * acc;
    return r;
}

inline auto recip(double a) -> double
{
    if (!(std::abs(a) >= 1e-300))
        throw division_by_zero("reciprocal of a vanishing value");
    return 1.0 / a;
}

/// Non-negative integer power by repeated squaring.
template <int Vars, int Degree>
constexpr auto pow(jet<Vars, Degree> base, int exponent) -> jet<Vars, Degree>
{
    if (exponent < 0)
        return pow(recip(base), -exponent);
    jet<Vars, Degree> r(1.0);
    while (exponent > 0) {
        if (exponent & 1)
            r = r * base;
        base = base * base;
        exponent >>= 1;
    }
    return r;
}

/// Value of the represented polynomial at normalised offset xi.
template <int Vars, int Degree>
constexpr auto evaluate(jet<Vars, Degree> const& j, std::array<double, Vars> const& xi) noexcept -> double
{
    using layout = jet_layout<Vars, Degree>;
    double s = 0.0;
    for (int i = 0; i < layout::size; ++i) {
        auto const& a = layout::indices[i];
        double term = j[i];
        for (int v = 0; v < Vars; ++v)
            for (int p = 0; p < a[v]; ++p)
                term *= xi[v] / (p + 1);
        s += term;
    }
    return s;
}

inline constexpr auto value_of(double x) noexcept -> double { return x; }

template <int Vars, int Degree>
constexpr auto value_of(jet<Vars, Degree> const& j) noexcept -> double
{
    return j.value();
}

} // namespace wcc
