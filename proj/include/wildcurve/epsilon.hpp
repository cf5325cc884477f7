#pragma once

#include <stdexcept>
#include <string>

namespace wildcurve {

// A value times eps^k, where eps is a formal invertible unit that is never expanded.
template <class T>
struct EpsilonTracked {
    T value;
    int eps = 0;

    friend EpsilonTracked operator*(const EpsilonTracked& a, const EpsilonTracked& b) {
        return {a.value * b.value, a.eps + b.eps};
    }
    friend EpsilonTracked operator+(const EpsilonTracked& a, const EpsilonTracked& b) {
        if (is_zero(a.value)) return b;
        if (is_zero(b.value)) return a;
        if (a.eps != b.eps)
            throw std::logic_error("eps bookkeeping: adding eps^" + std::to_string(a.eps) + " to eps^" +
                                   std::to_string(b.eps));
        return {a.value + b.value, a.eps};
    }
    friend EpsilonTracked operator-(const EpsilonTracked& a, const EpsilonTracked& b) {
        return a + EpsilonTracked{-b.value, b.eps};
    }
    friend bool operator==(const EpsilonTracked& a, const EpsilonTracked& b) {
        if (is_zero(a.value) && is_zero(b.value)) return true;
        return a.eps == b.eps && a.value == b.value;
    }
};

}  // namespace wildcurve
