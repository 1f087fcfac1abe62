#ifndef POLYIMAGE_POSITIONING_HPP
#define POLYIMAGE_POSITIONING_HPP

#include "polyimage/polyhedron.hpp"

#include <optional>

namespace polyimage {

enum class PositionKind { First, Second };

// Weak: every fiber along e_n is bounded (first) / upperly bounded (second).
// Strong: additionally the exceptional base region (A_K resp. B_K) is
// bounded; Optimal: that region is empty. For unbounded K the boundedness of
// the region has no implemented decision procedure, so unless the region is
// provably empty the report stays at UnknownTreatAsWeak.
struct PositionReport {
    PositionKind kind = PositionKind::First;
    enum class Strength { NotInPosition, Weak, UnknownTreatAsWeak, Strong, Optimal };
    Strength strength = Strength::NotInPosition;
    std::optional<std::size_t> extreme_facet;  // position in minimal presentation
    std::optional<std::vector<std::pair<Rat, Rat>>> region_box;
    std::optional<Rat> N;

    bool at_least_weak() const { return strength != Strength::NotInPosition; }
    bool strong_or_better() const {
        return strength == Strength::Strong || strength == Strength::Optimal;
    }
};

std::string strength_name(PositionReport::Strength s);

// Fourier-Motzkin elimination of the last coordinate: exact projection
Polyhedron project_out_last(const Polyhedron& K);

// {a in R^{n-1} : (a, 0) in K}
Polyhedron zero_slice(const Polyhedron& K);

// P subseteq Q, both possibly unbounded
bool polyhedron_subset(const Polyhedron& P, const Polyhedron& Q);

PositionReport check_first_position(const Polyhedron& K);
PositionReport check_second_position(const Polyhedron& K);

struct PlacementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Change of coordinates realizing the extreme weak first trimming position
// with respect to the given facet (position in the minimal presentation):
// T(K) in {x_{n-1} <= 0}, T(facet) in {x_{n-1} = 0}, all vertical fibers of
// T(K) bounded. Throws PlacementError when no admissible direction exists
// (possible for n = 2; the callers then try the remaining facets).
AffineMap place_extreme_first(const Polyhedron& K, std::size_t facet_pos);

// T(K) in {x_n <= 0}, T(facet) in {x_n = 0}
AffineMap place_extreme_second(const Polyhedron& K, std::size_t facet_pos);

// change of coordinates sending {h >= 0} onto {x_{target_coord+1} <= 0} with
// the boundary hyperplane onto {x_{target_coord+1} = 0}
AffineMap halfspace_to_coordinate(const HalfSpace& h, std::size_t n,
                                  std::size_t target_coord);

struct RegionBounds {
    bool region_empty = false;
    std::vector<std::pair<Rat, Rat>> box;  // over R^{n-1}; empty if region_empty
    Rat N{0};
};

// Box enclosing A_K (kind = First) or B_K (kind = Second) plus the fiber
// endpoint bound N. Requires a bounded K; the unbounded pipeline routes
// through the weak/regular path instead.
RegionBounds region_bounds(const Polyhedron& K, PositionKind kind);

}  // namespace polyimage

#endif
