#include "polyimage/target.hpp"

#include <cassert>
#include <sstream>

namespace polyimage {

TargetSet TargetSet::complement(const Polyhedron& K) {
    TargetSet t;
    t.kind = Kind::Complement;
    t.dim = K.ambient_dim();
    t.K = K;
    return t;
}

TargetSet TargetSet::interior_complement(const Polyhedron& K) {
    TargetSet t;
    t.kind = Kind::InteriorComplement;
    t.dim = K.ambient_dim();
    t.K = K;
    return t;
}

TargetSet TargetSet::lower_dim_complement(std::size_t dim, AffineMap placement,
                                          std::vector<std::pair<MPoly, bool>> ineqs) {
    TargetSet t;
    t.kind = Kind::LowerDimComplement;
    t.dim = dim;
    t.placement = std::move(placement);
    t.slice_ineqs = std::move(ineqs);
    return t;
}

TargetSet TargetSet::open_ball_complement(std::size_t n) {
    TargetSet t;
    t.kind = Kind::OpenBallComplement;
    t.dim = n;
    return t;
}

TargetSet TargetSet::closed_ball_complement(std::size_t n) {
    TargetSet t;
    t.kind = Kind::ClosedBallComplement;
    t.dim = n;
    return t;
}

bool TargetSet::member(const RatVec& y) const {
    assert(y.size() == dim);
    switch (kind) {
        case Kind::Complement:
            return !K.contains(y, false);
        case Kind::InteriorComplement:
            return !K.contains(y, true);
        case Kind::LowerDimComplement: {
            RatVec z = placement->apply(y);
            if (z[dim - 1] != 0) return true;
            RatVec a(z.begin(), z.end() - 1);
            for (const auto& [g, strict] : slice_ineqs) {
                Rat v = g.eval(a);
                if (strict ? v <= 0 : v < 0) return true;  // outside S'
            }
            return false;  // on the removed slice
        }
        case Kind::OpenBallComplement:
            return vec_norm2(y) >= 1;
        case Kind::ClosedBallComplement:
            return vec_norm2(y) > 1;
    }
    return false;
}

std::string TargetSet::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Complement: os << "complement(K)"; break;
        case Kind::InteriorComplement: os << "interior-complement(K)"; break;
        case Kind::LowerDimComplement: os << "lower-dim-complement"; break;
        case Kind::OpenBallComplement: os << "open-ball-complement"; break;
        case Kind::ClosedBallComplement: os << "closed-ball-complement"; break;
    }
    os << " in R^" << dim;
    return os.str();
}

}  // namespace polyimage
