#ifndef POLYIMAGE_TARGET_HPP
#define POLYIMAGE_TARGET_HPP

#include "polyimage/affine.hpp"
#include "polyimage/mpoly.hpp"
#include "polyimage/polyhedron.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyimage {

// Membership-testable description of the intended image set. Membership is
// decided exactly at rational points.
struct TargetSet {
    enum class Kind {
        Complement,          // R^n \ K
        InteriorComplement,  // R^n \ Int(K)
        LowerDimComplement,  // R^m \ T^{-1}(S' x {0}), S' basic in R^{m-1}
        OpenBallComplement,  // { ||y|| >= 1 }
        ClosedBallComplement // { ||y|| > 1 }
    };
    Kind kind = Kind::Complement;
    std::size_t dim = 0;

    Polyhedron K;  // Complement / InteriorComplement

    // LowerDimComplement: the removed set is {y : placement(y) in S' x {0}}
    // where S' = {g_i >= 0 or > 0} in the first dim-1 placed coordinates.
    std::optional<AffineMap> placement;
    std::vector<std::pair<MPoly, bool>> slice_ineqs;  // (g_i, strict)

    static TargetSet complement(const Polyhedron& K);
    static TargetSet interior_complement(const Polyhedron& K);
    static TargetSet lower_dim_complement(std::size_t dim, AffineMap placement,
                                          std::vector<std::pair<MPoly, bool>> ineqs);
    static TargetSet open_ball_complement(std::size_t n);
    static TargetSet closed_ball_complement(std::size_t n);

    bool member(const RatVec& y) const;
    std::string describe() const;
};

}  // namespace polyimage

#endif
