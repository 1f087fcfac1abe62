#include "polyimage/affine.hpp"

#include <cassert>
#include <stdexcept>

namespace polyimage {

AffineMap::AffineMap(RatMat linear, RatVec translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
    assert(linear_.rows == translation_.size());
    if (linear_.rows == linear_.cols) inv_linear_ = polyimage::inverse(linear_);
}

AffineMap AffineMap::identity(std::size_t n) {
    return AffineMap(RatMat::identity(n), RatVec(n, Rat(0)));
}

AffineMap AffineMap::swap_coords(std::size_t n, std::size_t i, std::size_t j) {
    RatMat m = RatMat::identity(n);
    m.at(i, i) = 0;
    m.at(j, j) = 0;
    m.at(i, j) = 1;
    m.at(j, i) = 1;
    return AffineMap(m, RatVec(n, Rat(0)));
}

AffineMap AffineMap::translation_map(const RatVec& t) {
    return AffineMap(RatMat::identity(t.size()), t);
}

RatVec AffineMap::apply(const RatVec& x) const {
    return vec_add(linear_.apply(x), translation_);
}

AffineMap AffineMap::inverse() const {
    if (!inv_linear_) throw std::logic_error("AffineMap::inverse: not invertible");
    // y = Lx + t  =>  x = L^{-1} y - L^{-1} t
    RatVec t = inv_linear_->apply(translation_);
    for (Rat& v : t) v = -v;
    return AffineMap(*inv_linear_, t);
}

AffineMap AffineMap::after(const AffineMap& inner) const {
    assert(dim_in() == inner.dim_out());
    RatMat l = linear_.mul(inner.linear_);
    RatVec t = vec_add(linear_.apply(inner.translation_), translation_);
    return AffineMap(std::move(l), std::move(t));
}

RatVec AffineMap::push_functional(const RatVec& functional) const {
    if (!inv_linear_)
        throw std::logic_error("push_functional: map not invertible");
    std::size_t n = dim_in();
    assert(functional.size() == n + 1);
    RatVec c(functional.begin() + 1, functional.end());
    RatVec new_lin = inv_linear_->transposed().apply(c);
    Rat c0 = functional[0] - vec_dot(c, inv_linear_->apply(translation_));
    RatVec out(n + 1);
    out[0] = c0;
    for (std::size_t i = 0; i < n; ++i) out[i + 1] = new_lin[i];
    return out;
}

}  // namespace polyimage
