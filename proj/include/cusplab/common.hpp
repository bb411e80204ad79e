#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cusplab {

using Complex = std::complex<double>;
using ComplexL = std::complex<long double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrtPi = 1.772453850905516027298167483341145183;
inline constexpr double kDefaultLightSpeed = 137.035999;

// ---------------------------------------------------------------------------
// Error taxonomy. CLI exit codes: config 2, numeric range 3.
// ---------------------------------------------------------------------------

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct range_error : std::range_error {
    using std::range_error::range_error;
};
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct resolution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Borel-plane rational approximant has a pole too close to the Laplace ray.
struct ray_obstruction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Asymptotic series has no usable smallest term at the requested point.
struct optimal_truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw domain_error(msg);
}

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline Complex checked(Complex z, const char* what) {
    if (!is_finite(z)) throw range_error(std::string(what) + ": non-finite result");
    return z;
}

// ---------------------------------------------------------------------------
// Small exact rational, used for fractional time exponents (9/2, 11/2, ...).
// ---------------------------------------------------------------------------

struct Rational {
    int num = 0;
    int den = 1;

    constexpr double value() const { return static_cast<double>(num) / den; }
    constexpr bool is_integer() const { return num % den == 0; }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// ---------------------------------------------------------------------------
// Physical parameters of a scenario, Hartree atomic units throughout.
// ---------------------------------------------------------------------------

struct ModelParams {
    double Z = 1.0;           // nuclear charge
    double field = 0.0;       // static electric field amplitude
    int dim = 3;              // spatial dimension, 1 or 3
    double light_speed = kDefaultLightSpeed;

    void validate() const {
        require(Z > 0.0, "ModelParams: Z must be positive");
        require(dim == 1 || dim == 3, "ModelParams: dim must be 1 or 3");
        require(light_speed > 0.0, "ModelParams: light_speed must be positive");
        require(std::isfinite(field), "ModelParams: field must be finite");
    }
};

// Kahan-compensated accumulator; keeps long oscillatory sums honest.
template <typename T>
struct KahanSum {
    T sum{};
    T comp{};
    void add(T v) {
        T y = v - comp;
        T t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    T value() const { return sum; }
};

}  // namespace cusplab
