#pragma once
// Critical-orbit polynomials: P_0 = 0 and P_{n+1}(t) = t - P_n(t)^2, so
// P_n(t) = q_t^n(0) as a polynomial in t of degree 2^(n-1).
//
// Coefficients are exact arbitrary-precision integers (they overflow int64
// already at n = 8 and reach ~1e90 by n = 10). Evaluating the coefficient
// form in doubles is catastrophically ill-conditioned, so eval() runs exact
// rational Horner and rounds once at the end; the value recursion in doubles
// (critical_poly_eval) is the fast, well-conditioned path for everyday use.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "qel/quad.hpp"

namespace qel {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline constexpr int kMaxCoeffOrder = 16;

class CriticalPolynomial {
public:
    CriticalPolynomial(int n, std::vector<BigInt> coeffs)
        : n_(n), coeffs_(std::move(coeffs)) {}

    int order() const noexcept { return n_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

    // Exact Horner over rationals (a double is a dyadic rational, so the
    // only rounding is the final conversion back to double).
    double eval(double t) const {
        BigRat acc = 0;
        BigRat tq(t);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * tq + BigRat(coeffs_[i]);
        return acc.convert_to<double>();
    }

    // Coefficient of t^k as a decimal string, for serialization.
    std::string coeff_string(int k) const { return coeffs_.at(static_cast<std::size_t>(k)).str(); }

private:
    int n_;
    std::vector<BigInt> coeffs_;  // ascending powers; size 2^(n-1) + 1 for n >= 1
};

// Exact coefficients of P_n. The degree doubles per order, so the default
// cap keeps the largest polynomial at 32769 coefficients.
inline CriticalPolynomial critical_poly(int n, int max_order = kMaxCoeffOrder) {
    if (n < 0) throw std::invalid_argument("critical_poly: n must be >= 0");
    if (n > max_order)
        throw std::length_error("critical_poly: order exceeds the configured maximum");
    std::vector<BigInt> p{BigInt(0)};  // P_0 = 0
    for (int k = 1; k <= n; ++k) {
        // square p, then negate and add t
        std::vector<BigInt> sq(2 * p.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] == 0) continue;
            for (std::size_t j = 0; j < p.size(); ++j) sq[i + j] += p[i] * p[j];
        }
        if (sq.size() < 2) sq.resize(2, BigInt(0));
        for (auto& c : sq) c = -c;
        sq[1] += 1;
        p = std::move(sq);
    }
    return {n, std::move(p)};
}

// P_n(t) by the value recursion in doubles; bit-identical to iterate(t,0,n).back().
inline double critical_poly_eval(int n, QuadParam t) {
    if (n < 0) throw std::invalid_argument("critical_poly_eval: n must be >= 0");
    double v = 0.0;
    const double tv = t.value();
    for (int k = 0; k < n; ++k) v = tv - v * v;
    return v;
}

}  // namespace qel
