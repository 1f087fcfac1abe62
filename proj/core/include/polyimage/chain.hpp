#ifndef POLYIMAGE_CHAIN_HPP
#define POLYIMAGE_CHAIN_HPP

#include "polyimage/stage.hpp"
#include "polyimage/target.hpp"

#include <variant>

namespace polyimage {

// Composable sequence of stages with a target-set contract. Stages apply in
// order: eval(x) = stages.back()(... stages.front()(x) ...). Stages are never
// pre-composed; the composite exists only through chain_expand.
struct MapChain {
    std::vector<Stage> stages;
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    TargetSet target;

    bool is_polynomial() const;
    void push(Stage s);          // checks dimension compatibility
    void conjugate_push(const AffineMap& T, Stage s);  // pushes T^{-1} o s o T

    RatVec eval(const RatVec& x) const;
    std::vector<double> eval_double(const std::vector<double>& x) const;

    // degree estimate used by the expansion guard
    long composed_degree_estimate() const;
};

struct ExpandRefusal {
    long estimated_degree;
};

using ExpandResult = std::variant<std::vector<RatFn>, ExpandRefusal>;

// symbolic composite of the whole chain, refused above the degree guard
ExpandResult chain_expand(const MapChain& c, long max_degree = 512);

}  // namespace polyimage

#endif
