#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lipint/errors.hpp"

namespace lipint {

/// A named study target: the function, its domain box, and its best Lipschitz
/// constant (2-norm, alpha = 1), precomputed by dense maximisation of |f'|.
struct StudyTarget {
    std::string_view name;
    int dim;
    std::array<double, 2> box;   // per-axis bounds; all axes share the box
    double (*f)(std::span<const double>);
    double best_lipschitz;
};

namespace targets {

// sqrt(x) sin(2 x^2) + 0.5 x on [0, 2]; max |f'| = 10.0554135... at x = 1.79403.
inline double ripple(std::span<const double> x) {
    return std::sqrt(x[0]) * std::sin(2.0 * x[0] * x[0]) + 0.5 * x[0];
}

inline double sine(std::span<const double> x) { return std::sin(x[0]); }

// sin(3 x1) cos(2 x2) on [0, 2]^2; gradient 2-norm peaks at 3.
inline double wave2d(std::span<const double> x) {
    return std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]);
}

} // namespace targets

inline constexpr std::array<StudyTarget, 3> kTargets{{
    {"ripple", 1, {0.0, 2.0}, targets::ripple, 10.0554135459188},
    {"sine", 1, {0.0, 3.141592653589793}, targets::sine, 1.0},
    {"wave2d", 2, {0.0, 2.0}, targets::wave2d, 3.0},
}};

inline const StudyTarget& find_target(std::string_view name) {
    for (const auto& t : kTargets)
        if (t.name == name) return t;
    std::string msg = "unknown target '" + std::string(name) + "'; available:";
    for (const auto& t : kTargets) msg += std::string(" ") + std::string(t.name);
    throw input_error(msg);
}

} // namespace lipint
