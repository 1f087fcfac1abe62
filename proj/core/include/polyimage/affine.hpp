#ifndef POLYIMAGE_AFFINE_HPP
#define POLYIMAGE_AFFINE_HPP

#include "polyimage/linalg.hpp"
#include "polyimage/rat.hpp"

#include <optional>

namespace polyimage {

// x |-> linear * x + translation
class AffineMap {
public:
    AffineMap() = default;
    AffineMap(RatMat linear, RatVec translation);
    static AffineMap identity(std::size_t n);
    // maps coordinates i <-> j, fixing the rest
    static AffineMap swap_coords(std::size_t n, std::size_t i, std::size_t j);
    static AffineMap translation_map(const RatVec& t);

    std::size_t dim_in() const { return linear_.cols; }
    std::size_t dim_out() const { return linear_.rows; }
    const RatMat& linear() const { return linear_; }
    const RatVec& translation() const { return translation_; }

    RatVec apply(const RatVec& x) const;
    bool invertible() const { return inv_linear_.has_value(); }
    AffineMap inverse() const;  // throws when not invertible

    // this after inner: x |-> this(inner(x))
    AffineMap after(const AffineMap& inner) const;

    // pushforward of the affine functional c0 + <c, x> >= 0 under this map:
    // returns the functional d with d(y) = c(this^{-1}(y))
    RatVec push_functional(const RatVec& functional) const;

private:
    RatMat linear_;
    RatVec translation_;
    std::optional<RatMat> inv_linear_;
};

}  // namespace polyimage

#endif
