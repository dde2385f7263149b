#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mvdp {

/// Thrown when a numerical routine cannot produce a result
/// (step-size underflow, missing section crossing, bad bracket, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters (d, e, theta) of the oscillator
///
///   x'' + (x^2 - theta) x' + x(x+d)(x+e)/(de) = 0
///
/// with alpha fixed at 1. Valid iff d*e != 0, |d| <= |e| and d != e,
/// which guarantees three distinct equilibria.
struct SystemParams {
    double d;
    double e;
    double theta;
    double alpha = 1.0;

    static SystemParams make(double d, double e, double theta, double alpha = 1.0);

    SystemParams with_theta(double new_theta) const {
        return make(d, e, new_theta, alpha);
    }
};

struct State {
    double x = 0.0;
    double y = 0.0;
};

inline SystemParams SystemParams::make(double d, double e, double theta, double alpha) {
    if (d == 0.0 || e == 0.0)
        throw std::invalid_argument("invalid params: d and e must be nonzero");
    if (!(std::abs(d) <= std::abs(e)))
        throw std::invalid_argument("invalid params: require |d| <= |e|");
    if (d == e)
        throw std::invalid_argument("invalid params: d = e collapses two equilibria");
    if (alpha != 1.0)
        throw std::invalid_argument("unsupported: alpha is fixed at 1");
    return SystemParams{d, e, theta, alpha};
}

} // namespace mvdp
