#ifndef POLYIMAGE_OPTIMIZE_HPP
#define POLYIMAGE_OPTIMIZE_HPP

#include "polyimage/chain.hpp"

#include <cstdint>

namespace polyimage {

// Multistart pattern search of objective(chain(x)) over the chain's input
// space. The only floating-point consumer in the artifact; the reported best
// point is re-checked exactly for target membership before returning.
struct OptimizeResult {
    double best_value = 0;
    std::vector<double> best_input;
    std::vector<double> best_image;
    bool exact_member = false;   // exact re-check of the rounded best input
    double baseline_value = 0;   // rejection-sampling baseline on the target
    std::size_t baseline_samples = 0;
};

OptimizeResult optimize(const MapChain& chain, const MPoly& objective,
                        std::size_t starts, std::size_t iters, std::uint64_t seed = 1);

}  // namespace polyimage

#endif
