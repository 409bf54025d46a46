#pragma once

#include <cstdint>
#include <ostream>

#include "errors.hpp"

namespace extremal {

// A length that is either a finite non-negative integer or infinity.
// Girths and BFS distances use this instead of a sentinel like -1 or INT_MAX,
// so "no cycle" / "unreachable" can't be confused with a huge finite value.
class IntOrInf {
  public:
    IntOrInf() : finite_(false), v_(0) {}
    IntOrInf(std::int64_t v) : finite_(true), v_(v) {} // NOLINT: implicit on purpose

    static IntOrInf infinity() { return IntOrInf(); }

    bool is_finite() const { return finite_; }
    bool is_infinite() const { return !finite_; }

    std::int64_t value() const {
        require(finite_, "IntOrInf: value() on infinity");
        return v_;
    }

    // infinity compares greater than every finite value
    friend bool operator==(const IntOrInf& a, const IntOrInf& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.v_ == b.v_;
    }
    friend bool operator!=(const IntOrInf& a, const IntOrInf& b) { return !(a == b); }
    friend bool operator<(const IntOrInf& a, const IntOrInf& b) {
        if (!a.finite_) return false;
        if (!b.finite_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(const IntOrInf& a, const IntOrInf& b) { return b < a; }
    friend bool operator<=(const IntOrInf& a, const IntOrInf& b) { return !(b < a); }
    friend bool operator>=(const IntOrInf& a, const IntOrInf& b) { return !(a < b); }

    friend IntOrInf min(const IntOrInf& a, const IntOrInf& b) { return a < b ? a : b; }

    friend std::ostream& operator<<(std::ostream& os, const IntOrInf& x) {
        if (x.finite_) return os << x.v_;
        return os << "inf";
    }

  private:
    bool finite_;
    std::int64_t v_;
};

} // namespace extremal
