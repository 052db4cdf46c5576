#pragma once
// Core of the real quadratic family x -> t - x^2 restricted to its invariant
// interval: the validated parameter type, orbit iteration, fixed points, and
// the affine conjugacy onto the logistic family z -> 4*mu*z*(1 - z).

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qel {

// Parameter of the map q_t(x) = t - x^2. Only t in [0, 2] gives a map that
// sends its invariant interval into itself, so the range is enforced here
// and every downstream routine can take it for granted.
class QuadParam {
public:
    explicit QuadParam(double t) : t_(t) {
        if (!(t >= 0.0 && t <= 2.0))
            throw std::out_of_range("QuadParam: t must lie in [0, 2]");
    }
    double value() const noexcept { return t_; }

private:
    double t_;
};

inline double eval_map(QuadParam t, double x) noexcept { return t.value() - x * x; }

// Orbit segment x0, q(x0), ..., q^n(x0); n + 1 values.
inline std::vector<double> iterate(QuadParam t, double x0, int n) {
    if (n < 0) throw std::invalid_argument("iterate: n must be >= 0");
    std::vector<double> orbit(static_cast<std::size_t>(n) + 1);
    orbit[0] = x0;
    const double tv = t.value();
    for (int k = 0; k < n; ++k) orbit[static_cast<std::size_t>(k) + 1] =
        tv - orbit[static_cast<std::size_t>(k)] * orbit[static_cast<std::size_t>(k)];
    return orbit;
}

// [lo, hi] with hi = -lo = (1 + sqrt(1 + 4t)) / 2; q_t maps both endpoints
// to lo, and the interval into itself.
struct InvariantInterval {
    double lo;
    double hi;
};

inline InvariantInterval invariant_interval(QuadParam t) {
    double lo = -(1.0 + std::sqrt(1.0 + 4.0 * t.value())) / 2.0;
    return {lo, -lo};
}

// The two solutions of q_t(x) = x, ascending: the left one is the lower
// endpoint of the invariant interval, the right one lies inside it.
inline std::pair<double, double> fixed_points(QuadParam t) {
    double r = std::sqrt(1.0 + 4.0 * t.value());
    return {-(1.0 + r) / 2.0, (-1.0 + r) / 2.0};
}

// Change of variables x = 4*mu*z - 2*mu carrying q_t on [-2mu, 2mu] to the
// logistic map z -> 4*mu*z*(1 - z) on [0, 1], where mu = (1 + sqrt(1+4t))/4.
// t in [0, 2] corresponds to mu in [1/2, 1].
struct LogisticConjugacy {
    double mu;
    double from_logistic(double z) const noexcept { return 4.0 * mu * z - 2.0 * mu; }
    double to_logistic(double x) const noexcept { return x / (4.0 * mu) + 0.5; }
};

inline LogisticConjugacy logistic_conjugacy(QuadParam t) {
    return {(1.0 + std::sqrt(1.0 + 4.0 * t.value())) / 4.0};
}

}  // namespace qel
