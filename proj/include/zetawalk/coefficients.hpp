#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace zetawalk {

enum class CoeffOrigin { sampled, mobius, liouville, all_ones };

inline const char* coeff_origin_name(CoeffOrigin o) {
    switch (o) {
        case CoeffOrigin::sampled: return "sampled";
        case CoeffOrigin::mobius: return "mobius";
        case CoeffOrigin::liouville: return "liouville";
        case CoeffOrigin::all_ones: return "all_ones";
    }
    return "unknown";
}

// Sequence of step signs r(1), r(2), ... taking values in {-1, 0, +1}.
// values[k] is r(k+1).  p and seed describe the sampling law and are
// meaningful only when origin == sampled.
struct CoefficientSequence {
    std::vector<std::int8_t> values;
    CoeffOrigin origin = CoeffOrigin::all_ones;
    double p = 0.0;
    std::uint64_t seed = 0;

    std::size_t length() const { return values.size(); }
};

inline CoefficientSequence all_ones_sequence(std::size_t n) {
    CoefficientSequence out;
    out.values.assign(n, 1);
    out.origin = CoeffOrigin::all_ones;
    return out;
}

} // namespace zetawalk
