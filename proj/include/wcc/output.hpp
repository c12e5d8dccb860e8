#pragma once

// Cell-centre point values in a container detached from the solver templates, plus CSV and
// legacy-VTK writers.

#include "wcc/errors.hpp"
#include "wcc/mesh.hpp"
#include "wcc/solver.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace wcc {

/// Point values on a uniform grid of distinct cells, row-major with x fastest.
struct field_data
{
    int dims = 1;
    int nx = 0, ny = 1;
    double x0 = 0.0, y0 = 0.0; ///< centre of the first cell
    double dx = 1.0, dy = 1.0;
    double time = 0.0;
    std::vector<std::string> names;
    std::vector<std::vector<double>> values; ///< values[var][r * nx + s]

    auto x(int s) const -> double { return x0 + s * dx; }
    auto y(int r) const -> double { return y0 + r * dy; }
    auto at(std::size_t var, int s, int r = 0) const -> double
    {
        return values[var][static_cast<std::size_t>(r) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(s)];
    }
    auto variable(std::string const& name) const -> std::vector<double> const&
    {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name)
                return values[i];
        throw config_error("no output variable '" + name + "'");
    }
};

template <class Physics>
auto variable_names() -> std::vector<std::string>
{
    if constexpr (Physics::components == 1)
        return {"u"};
    else if constexpr (Physics::components == 3)
        return {"rho", "u", "p"};
    else
        return {"rho", "u", "v", "p"};
}

/// Primitive point values of the distinct cells of a 1D state.
template <class Physics, int P>
auto extract_field(solution_1d<Physics::components, P> const& u, Physics const& phys, bool periodic) -> field_data
{
    constexpr int NC = Physics::components;
    field_data f;
    f.dims = 1;
    f.nx = distinct_cells(u.x, u.active, periodic);
    f.x0 = u.center(1);
    f.dx = u.x.spacing();
    f.time = u.time;
    f.names = variable_names<Physics>();
    f.values.assign(static_cast<std::size_t>(NC), std::vector<double>(static_cast<std::size_t>(f.nx)));
    for (int s = 1; s <= f.nx; ++s) {
        state<NC> U{};
        for (int c = 0; c < NC; ++c)
            U[c] = u(s)[c][0];
        auto const w = phys.to_primitive(U);
        for (int c = 0; c < NC; ++c)
            f.values[static_cast<std::size_t>(c)][static_cast<std::size_t>(s - 1)] = w[c];
    }
    return f;
}

template <class Physics, int P>
auto extract_field(solution_2d<Physics::components, P> const& u, Physics const& phys, std::array<bool, 2> periodic)
    -> field_data
{
    constexpr int NC = Physics::components;
    field_data f;
    f.dims = 2;
    f.nx = distinct_cells(u.x, u.active, periodic[0]);
    f.ny = distinct_cells(u.y, u.active, periodic[1]);
    f.x0 = u.x.center(u.active, 1);
    f.y0 = u.y.center(u.active, 1);
    f.dx = u.x.spacing();
    f.dy = u.y.spacing();
    f.time = u.time;
    f.names = variable_names<Physics>();
    std::size_t const n = static_cast<std::size_t>(f.nx) * static_cast<std::size_t>(f.ny);
    f.values.assign(static_cast<std::size_t>(NC), std::vector<double>(n));
    for (int r = 1; r <= f.ny; ++r)
        for (int s = 1; s <= f.nx; ++s) {
            state<NC> U{};
            for (int c = 0; c < NC; ++c)
                U[c] = u(s, r)[c][0];
            auto const w = phys.to_primitive(U);
            std::size_t const k = static_cast<std::size_t>(r - 1) * static_cast<std::size_t>(f.nx) + static_cast<std::size_t>(s - 1);
            for (int c = 0; c < NC; ++c)
                f.values[static_cast<std::size_t>(c)][k] = w[c];
        }
    return f;
}

namespace detail {

inline auto fmt16(double v) -> std::string
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16g", v);
    return buf;
}

inline auto open_for_write(std::string const& path) -> std::ofstream
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("cannot open '" + path + "' for writing");
    return out;
}

inline void finish(std::ofstream& out, std::string const& path)
{
    out.flush();
    if (!out)
        throw io_error("write to '" + path + "' failed");
}

} // namespace detail

/// CSV with header x[,y],<vars>; 16 significant digits.
inline void write_csv(field_data const& f, std::string const& path)
{
    auto out = detail::open_for_write(path);
    out << 'x';
    if (f.dims == 2)
        out << ",y";
    for (auto const& n : f.names)
        out << ',' << n;
    out << '\n';
    for (int r = 0; r < f.ny; ++r)
        for (int s = 0; s < f.nx; ++s) {
            out << detail::fmt16(f.x(s));
            if (f.dims == 2)
                out << ',' << detail::fmt16(f.y(r));
            for (std::size_t v = 0; v < f.names.size(); ++v)
                out << ',' << detail::fmt16(f.at(v, s, r));
            out << '\n';
        }
    detail::finish(out, path);
}

/// Legacy VTK ASCII structured points; one scalar array per variable.
inline void write_vtk(field_data const& f, std::string const& path)
{
    auto out = detail::open_for_write(path);
    out << "# vtk DataFile Version 3.0\n";
    out << "wcc t=" << detail::fmt16(f.time) << '\n';
    out << "ASCII\nDATASET STRUCTURED_POINTS\n";
    out << "DIMENSIONS " << f.nx << ' ' << f.ny << " 1\n";
    out << "ORIGIN " << detail::fmt16(f.x0) << ' ' << detail::fmt16(f.dims == 2 ? f.y0 : 0.0) << " 0\n";
    out << "SPACING " << detail::fmt16(f.dx) << ' ' << detail::fmt16(f.dims == 2 ? f.dy : 1.0) << " 1\n";
    out << "POINT_DATA " << static_cast<long long>(f.nx) * f.ny << '\n';
    for (std::size_t v = 0; v < f.names.size(); ++v) {
        out << "SCALARS " << f.names[v] << " double 1\nLOOKUP_TABLE default\n";
        for (double x : f.values[v])
            out << detail::fmt16(x) << '\n';
    }
    detail::finish(out, path);
}

struct csv_table
{
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline auto read_csv(std::string const& path) -> csv_table
{
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open '" + path + "' for reading");
    csv_table t;
    std::string line;
    if (!std::getline(in, line))
        throw io_error("'" + path + "' is empty");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            t.header.push_back(cell);
    }
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (std::exception const&) {
                throw io_error("'" + path + "': cannot parse '" + cell + "'");
            }
        }
        if (row.size() != t.header.size())
            throw io_error("'" + path + "': ragged row");
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace wcc
