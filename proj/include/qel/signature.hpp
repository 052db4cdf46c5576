#pragma once
// Sign sequences addressing the branches of iterated square-root preimages
// of the critical point, plus their pointwise order. A signature of rank n
// names one solution of q_t^n(x) = 0 through the nested radical
//   phi_sigma(t) = s1 * sqrt(t + phi_{s2..sn}(t)),   phi_{sn}(t) = sn * sqrt(t).

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qel {

class Signature {
public:
    explicit Signature(std::string_view text) {
        if (text.empty()) throw std::invalid_argument("Signature: empty sign sequence");
        s_.reserve(text.size());
        for (char c : text) {
            if (c == '+') s_.push_back(+1);
            else if (c == '-') s_.push_back(-1);
            else throw std::invalid_argument("Signature: characters must be '+' or '-'");
        }
    }

    explicit Signature(std::vector<int> signs) {
        if (signs.empty()) throw std::invalid_argument("Signature: empty sign sequence");
        s_.reserve(signs.size());
        for (int v : signs) {
            if (v != 1 && v != -1) throw std::invalid_argument("Signature: signs must be +1 or -1");
            s_.push_back(static_cast<signed char>(v));
        }
    }

    int rank() const noexcept { return static_cast<int>(s_.size()); }

    // 0-based; returns +1 or -1.
    int sign(int i) const { return s_.at(static_cast<std::size_t>(i)); }

    // Drop the first k signs (0 <= k < rank).
    Signature suffix(int k) const {
        if (k < 0 || k >= rank()) throw std::out_of_range("Signature::suffix: bad offset");
        return Signature(std::vector<signed char>(s_.begin() + k, s_.end()));
    }

    std::string str() const {
        std::string out;
        out.reserve(s_.size());
        for (signed char v : s_) out.push_back(v > 0 ? '+' : '-');
        return out;
    }

    bool operator==(const Signature& o) const noexcept { return s_ == o.s_; }
    bool operator!=(const Signature& o) const noexcept { return s_ != o.s_; }

private:
    explicit Signature(std::vector<signed char> raw) : s_(std::move(raw)) {}
    std::vector<signed char> s_;
};

enum class Ordering { below, above };

// Pointwise order of two branches on the overlap of their regular sets:
// the order never changes there, so it is decided combinatorially.
//  - different leading signs: the '+' branch is above;
//  - equal prefix, first difference at position k (0-based): the product of
//    the first k+1 signs of either argument applied to its own entry decides,
//    i.e. sigma is above iff sigma's first k+1 signs multiply to +1;
//  - one is a proper prefix of the other: the longer one's sign product over
//    the first (short rank + 1) entries says whether the longer is above.
// Identical signatures are rejected.
inline Ordering compare_signatures(const Signature& sigma, const Signature& rho) {
    if (sigma.sign(0) != rho.sign(0))
        return sigma.sign(0) > 0 ? Ordering::above : Ordering::below;
    const int m = sigma.rank() < rho.rank() ? sigma.rank() : rho.rank();
    int k = -1;
    for (int i = 1; i < m; ++i) {
        if (sigma.sign(i) != rho.sign(i)) { k = i; break; }
    }
    if (k < 0) {
        if (sigma.rank() == rho.rank())
            throw std::invalid_argument("compare_signatures: identical signatures");
        const bool sigma_longer = sigma.rank() > rho.rank();
        const Signature& longer = sigma_longer ? sigma : rho;
        int prod = 1;
        for (int i = 0; i <= m; ++i) prod *= longer.sign(i);
        const bool longer_above = prod > 0;
        return (longer_above == sigma_longer) ? Ordering::above : Ordering::below;
    }
    int prod = 1;
    for (int i = 0; i <= k; ++i) prod *= sigma.sign(i);
    return prod > 0 ? Ordering::above : Ordering::below;
}

}  // namespace qel
