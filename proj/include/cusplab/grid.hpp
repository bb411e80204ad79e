#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cusplab/common.hpp"

namespace cusplab {

enum class GridKind { line, radial, reduced_radial };

// Angular sector of a 3D field restricted to a single harmonic.
enum class Channel { none, s_wave, cos_theta };

struct Grid1D {
    GridKind kind = GridKind::line;
    double start = 0.0;
    double step = 0.0;
    std::size_t n = 0;

    double point(std::size_t j) const { return start + step * static_cast<double>(j); }
    double extent() const { return step * static_cast<double>(n ? n - 1 : 0); }
    bool same_as(const Grid1D& o) const {
        return kind == o.kind && n == o.n && std::abs(start - o.start) < 1e-12 &&
               std::abs(step - o.step) < 1e-12;
    }
    void validate() const {
        require(step > 0.0, "Grid1D: step must be positive");
        require(n >= 2, "Grid1D: need at least two points");
    }
};

inline Grid1D make_grid(GridKind kind, double start, double stop, double step) {
    Grid1D g;
    g.kind = kind;
    g.start = start;
    g.step = step;
    g.n = static_cast<std::size_t>(std::llround((stop - start) / step)) + 1;
    g.validate();
    return g;
}

// Complex-valued function sampled on a uniform grid.
struct ComplexField {
    Grid1D grid;
    Channel channel = Channel::none;
    std::vector<Complex> values;

    std::size_t size() const { return values.size(); }
    void validate() const {
        grid.validate();
        require(values.size() == grid.n, "ComplexField: size mismatch with grid");
    }
};

inline ComplexField sample_field(const Grid1D& g, Channel ch,
                                 const std::function<Complex(double)>& f) {
    ComplexField out;
    out.grid = g;
    out.channel = ch;
    out.values.resize(g.n);
    for (std::size_t j = 0; j < g.n; ++j) out.values[j] = f(g.point(j));
    return out;
}

// ---------------------------------------------------------------------------
// Finite differences, 4th order: central in the interior, one-sided closures
// at the ends. 6th-order variants are used where repeated operator powers
// would otherwise lose accuracy.
// ---------------------------------------------------------------------------

namespace fd {

// first derivative, 4th order
inline std::vector<Complex> deriv1_o4(const std::vector<Complex>& f, double h) {
    const std::size_t n = f.size();
    require(n >= 6, "deriv1_o4: grid too short for the stencil");
    std::vector<Complex> d(n);
    for (std::size_t j = 2; j + 2 < n; ++j)
        d[j] = (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) / (12.0 * h);
    // one-sided 4th-order 5-point closures
    static const double c0[5] = {-25, 48, -36, 16, -3};
    static const double c1[5] = {-3, -10, 18, -6, 1};
    Complex a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    for (int k = 0; k < 5; ++k) {
        a0 += c0[k] * f[k];
        a1 += c1[k] * f[k];
        b0 += c0[k] * f[n - 1 - k];
        b1 += c1[k] * f[n - 1 - k];
    }
    d[0] = a0 / (12.0 * h);
    d[1] = a1 / (12.0 * h);
    d[n - 1] = -b0 / (12.0 * h);
    d[n - 2] = -b1 / (12.0 * h);
    return d;
}

// second derivative, 4th order
inline std::vector<Complex> deriv2_o4(const std::vector<Complex>& f, double h) {
    const std::size_t n = f.size();
    require(n >= 7, "deriv2_o4: grid too short for the stencil");
    std::vector<Complex> d(n);
    const double h2 = h * h;
    for (std::size_t j = 2; j + 2 < n; ++j)
        d[j] = (-f[j - 2] + 16.0 * f[j - 1] - 30.0 * f[j] + 16.0 * f[j + 1] - f[j + 2]) /
               (12.0 * h2);
    static const double c0[6] = {45, -154, 214, -156, 61, -10};
    static const double c1[6] = {10, -15, -4, 14, -6, 1};
    Complex a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    for (int k = 0; k < 6; ++k) {
        a0 += c0[k] * f[k];
        a1 += c1[k] * f[k];
        b0 += c0[k] * f[n - 1 - k];
        b1 += c1[k] * f[n - 1 - k];
    }
    d[0] = a0 / (12.0 * h2);
    d[1] = a1 / (12.0 * h2);
    d[n - 1] = b0 / (12.0 * h2);
    d[n - 2] = b1 / (12.0 * h2);
    return d;
}

// second derivative, 6th order; used by the Taylor-coefficient builder where
// truncation error compounds over repeated applications.
inline std::vector<Complex> deriv2_o6(const std::vector<Complex>& f, double h) {
    const std::size_t n = f.size();
    require(n >= 9, "deriv2_o6: grid too short for the stencil");
    std::vector<Complex> d(n);
    const double h2 = 180.0 * h * h;
    for (std::size_t j = 3; j + 3 < n; ++j)
        d[j] = (2.0 * f[j - 3] - 27.0 * f[j - 2] + 270.0 * f[j - 1] - 490.0 * f[j] +
                270.0 * f[j + 1] - 27.0 * f[j + 2] + 2.0 * f[j + 3]) /
               h2;
    // one-sided 6th-order closures (8-point)
    static const double cs[3][8] = {
        {938, -4014, 7911, -9490, 7380, -3618, 1019, -126},
        {126, -70, -486, 855, -670, 324, -90, 11},
        {-11, 214, -378, 130, 85, -54, 16, -2},
    };
    for (int i = 0; i < 3; ++i) {
        Complex a = 0, b = 0;
        for (int k = 0; k < 8; ++k) {
            a += cs[i][k] * f[k];
            b += cs[i][k] * f[n - 1 - k];
        }
        d[i] = a / h2;
        d[n - 1 - i] = b / h2;
    }
    return d;
}

}  // namespace fd

// Composite Simpson on uniformly sampled values (n odd preferred; a trailing
// trapezoid panel handles even n).
inline double simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    require(n >= 3, "simpson: need at least 3 samples");
    std::size_t m = (n % 2 == 1) ? n : n - 1;
    KahanSum<double> s;
    s.add(f[0]);
    for (std::size_t j = 1; j + 1 < m; j += 2) s.add(4.0 * f[j]);
    for (std::size_t j = 2; j + 1 < m; j += 2) s.add(2.0 * f[j]);
    s.add(f[m - 1]);
    double out = s.value() * h / 3.0;
    if (m != n) out += 0.5 * h * (f[n - 2] + f[n - 1]);
    return out;
}

}  // namespace cusplab
