#pragma once

#include <cmath>
#include <string>

#include "lipint/errors.hpp"

namespace lipint {

/// Problem parameters entering the sup-norm convergence-rate bound
/// a_n = (log(n)/n)^(alpha/(d + eta*alpha)).
struct RateSpec {
    int d = 1;           // input dimension
    double alpha = 1.0;  // Holder exponent in (0, 1]
    double eta = 1.0;    // noise boundary exponent > 0

    void validate() const {
        if (d < 1) throw input_error("RateSpec: d must be >= 1");
        if (!(alpha > 0.0) || alpha > 1.0) throw input_error("RateSpec: alpha must lie in (0, 1]");
        if (!(eta > 0.0)) throw input_error("RateSpec: eta must be > 0");
    }
};

inline double rate_exponent(const RateSpec& spec) {
    spec.validate();
    return spec.alpha / (spec.d + spec.eta * spec.alpha);
}

/// a_n = (log(n)/n)^exponent; defined for n >= 2 (log 1 = 0).
struct TheoreticalRate {
    double exponent;
    double operator()(double n) const {
        if (!(n >= 2.0)) throw input_error("TheoreticalRate: defined for n >= 2");
        return std::pow(std::log(n) / n, exponent);
    }
};

inline TheoreticalRate theoretical_rate(const RateSpec& spec) {
    return {rate_exponent(spec)};
}

/// Comparison of the Lipschitz-interpolation exponent alpha/(d + eta*alpha)
/// with the kernel-method exponent alpha/(d + 2*alpha); reduces to the sign
/// of eta - 2.
enum class EtaComparison { li_faster, comparable, li_slower };

inline const char* to_string(EtaComparison c) {
    switch (c) {
        case EtaComparison::li_faster: return "li_faster";
        case EtaComparison::comparable: return "comparable";
        case EtaComparison::li_slower: return "li_slower";
    }
    return "?";
}

inline EtaComparison eta_condition(const RateSpec& spec) {
    const double li = rate_exponent(spec);
    const double kernel = spec.alpha / (spec.d + 2.0 * spec.alpha);
    if (li > kernel) return EtaComparison::li_faster;
    if (li < kernel) return EtaComparison::li_slower;
    return EtaComparison::comparable;
}

} // namespace lipint
