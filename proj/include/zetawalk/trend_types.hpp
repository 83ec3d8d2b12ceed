#pragma once

#include <limits>

namespace zetawalk {

enum class TrendMethod { series, quadrature, closed_form_s1 };

// C_{p;s} together with the factorization pieces that produced it.  a_s and
// b_ps are meaningful on the series route (p < 1/2); the quadrature route
// leaves them NaN.  k_fit is NaN until a fluctuation-bound fit is attached.
struct TrendConstants {
    double a_s = std::numeric_limits<double>::quiet_NaN();
    double b_ps = std::numeric_limits<double>::quiet_NaN();
    double c_ps = std::numeric_limits<double>::quiet_NaN();
    TrendMethod method = TrendMethod::series;
    double k_fit = std::numeric_limits<double>::quiet_NaN();
};

inline const char* trend_method_name(TrendMethod m) {
    switch (m) {
        case TrendMethod::series: return "series";
        case TrendMethod::quadrature: return "quadrature";
        case TrendMethod::closed_form_s1: return "closed_form_s1";
    }
    return "unknown";
}

} // namespace zetawalk
