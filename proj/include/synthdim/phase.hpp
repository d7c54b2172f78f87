// phase.hpp — Complex phases with exact values on quarter-turn angles

#pragma once

#include <cmath>
#include <complex>

namespace synthdim {

inline constexpr double kHalfPi = 1.5707963267948966;  // pi/2 to double precision

// e^{i q pi/2}. When q is exactly an integer the result is drawn from
// {1, i, -1, -i} with no rounding, so interference factors that should
// cancel do cancel to exactly zero. Non-integer q falls back to polar form.
inline std::complex<double> unit_phase_quarter(double q) {
    const double r = std::nearbyint(q);
    if (r == q && std::abs(r) < 1e15) {
        switch (static_cast<long long>(r) & 3LL) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return std::polar(1.0, q * kHalfPi);
}

// cos(q pi/2) with the same exactness guarantee.
inline double cos_quarter(double q) { return unit_phase_quarter(q).real(); }

}  // namespace synthdim
