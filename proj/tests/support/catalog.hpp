#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tame/function_model.hpp"

namespace tame::testing {

/// Function specs shared by the unit and acceptance suites.
inline const std::array<const char*, 10> kCatalog = {
    "poly:[1,0,0] on (0,1)",
    "poly:[1,0,0,0,0] on (0,1)",
    "poly:[1,-1.5,0.5,0] on (0,1)",
    "affine:2,-1 on (0,1)",
    "sin on (0.1,3)",
    "exp on (0,1)",
    "abs-shift:0.5 on (0,1)",
    "cantor on (0,1)",
    "sawtooth:0.25 on (0,1)",
    "weier:12 on (0,1)",
};

inline std::vector<FunctionModel> catalog_models() {
    std::vector<FunctionModel> out;
    for (const char* spec : kCatalog) out.push_back(parse_function_spec(spec));
    return out;
}

/// Signed 2^k-term expansion of the generalized difference, by subset enumeration.
template <class F>
double expansion_oracle(F&& f, double x, const std::vector<double>& h) {
    const std::size_t k = h.size();
    double total = 0.0;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        double shift = 0.0;
        int picked = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask & (1u << i)) {
                shift += h[i];
                ++picked;
            }
        }
        const double sign = ((static_cast<int>(k) - picked) % 2 == 0) ? 1.0 : -1.0;
        total += sign * f(x + shift);
    }
    return total;
}

/// Endpoints of the 2^depth intervals left after depth middle-third removals.
inline std::vector<double> cantor_endpoints(int depth) {
    std::vector<double> lo = {0.0};
    double width = 1.0;
    for (int d = 0; d < depth; ++d) {
        width /= 3.0;
        std::vector<double> next;
        next.reserve(lo.size() * 2);
        for (double a : lo) {
            next.push_back(a);
            next.push_back(a + 2.0 * width);
        }
        lo = std::move(next);
    }
    std::vector<double> out;
    for (double a : lo) {
        out.push_back(a);
        out.push_back(a + width);
    }
    return out;
}

}  // namespace tame::testing
