#ifndef POLYIMAGE_CONSTRUCTIONS_HPP
#define POLYIMAGE_CONSTRUCTIONS_HPP

#include "polyimage/basemaps.hpp"
#include "polyimage/chain.hpp"
#include "polyimage/trimming.hpp"

namespace polyimage {

// layers, hyperplanes, R^n, empty input: no map exists / out of scope
struct UnsupportedCase : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ComplementMode { Set, Interior };

// one slice-removal stage of the lower-dimensional construction:
// keeps {g >= 0} (nonstrict) or {g > 0} (strict) out of the zero slice
Stage presemial_stage(const MPoly& g, bool strict, std::size_t n);

// chain R^n -> R^n whose image is R^n minus (S' x {0}) pulled back through
// `placement`; S' = {g_i >= / > 0} described over the first n-1 coordinates.
MapChain lower_dim_complement(std::size_t n, const AffineMap& placement,
                              const std::vector<std::pair<MPoly, bool>>& slice_ineqs);

MapChain orthant_complement(std::size_t n, ComplementMode mode, const Registry& bases);

MapChain bounded_complement(const Polyhedron& K, ComplementMode mode,
                            const Registry& bases);

MapChain unbounded_complement(const Polyhedron& K, ComplementMode mode,
                              const Registry& bases);

struct RadialCoeffs {
    Rat a, b, c;
};
// exact coefficients of the radial interpolation g(t) = a t^4 + b t^2 + c
RadialCoeffs radial_poly(std::size_t n);

MapChain ball_complement(std::size_t n, bool closed, const Registry& bases);

// main dispatcher
MapChain complement(const Polyhedron& K, ComplementMode mode, const Registry& bases);

// predicted stage count for the bounded construction (used by tests and docs)
std::size_t bounded_stage_count(const Polyhedron& K, ComplementMode mode);

}  // namespace polyimage

#endif
