#pragma once

#include <cstddef>

namespace zetawalk {

// Kahan compensated accumulator.  Error stays O(eps) independent of the number
// of addends, which several contracts here need at the 1e-12 level over ~1e5
// terms (naive summation would already exceed that).
class kahan_sum {
public:
    void add(double x) noexcept {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const noexcept { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

} // namespace zetawalk
