#include "polyimage/chain.hpp"

#include <cassert>
#include <stdexcept>

namespace polyimage {

bool MapChain::is_polynomial() const {
    for (const auto& s : stages)
        if (!s.is_polynomial()) return false;
    return true;
}

void MapChain::push(Stage s) {
    if (stages.empty()) {
        in_dim = s.in_dim;
    } else if (out_dim != s.in_dim) {
        throw std::invalid_argument("MapChain::push: stage dimensions do not compose");
    }
    out_dim = s.out_dim;
    stages.push_back(std::move(s));
}

void MapChain::conjugate_push(const AffineMap& T, Stage s) {
    push(make_affine_stage(T));
    push(std::move(s));
    push(make_affine_stage(T.inverse()));
}

RatVec MapChain::eval(const RatVec& x) const {
    if (x.size() != in_dim)
        throw std::invalid_argument("MapChain::eval: dimension mismatch");
    RatVec y = x;
    for (const auto& s : stages) y = s.eval(y);
    return y;
}

std::vector<double> MapChain::eval_double(const std::vector<double>& x) const {
    std::vector<double> y = x;
    for (const auto& s : stages) y = s.eval_double(y);
    return y;
}

long MapChain::composed_degree_estimate() const {
    long est = 1;
    for (const auto& s : stages) {
        long d = std::max<long>(1, s.max_component_degree());
        if (est > (1L << 40) / std::max<long>(1, d)) return 1L << 40;  // saturate
        est *= d;
    }
    return est;
}

ExpandResult chain_expand(const MapChain& c, long max_degree) {
    long est = c.composed_degree_estimate();
    if (est > max_degree) return ExpandRefusal{est};

    std::vector<RatFn> current;
    current.reserve(c.in_dim);
    for (std::size_t i = 0; i < c.in_dim; ++i)
        current.push_back(RatFn::from_poly(MPoly::variable(c.in_dim, i)));
    for (const auto& s : c.stages) {
        std::vector<RatFn> next;
        next.reserve(s.out_dim);
        for (const auto& comp : s.components) next.push_back(compose(comp, current));
        current = std::move(next);
    }
    return current;
}

}  // namespace polyimage
