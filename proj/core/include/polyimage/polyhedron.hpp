#ifndef POLYIMAGE_POLYHEDRON_HPP
#define POLYIMAGE_POLYHEDRON_HPP

#include "polyimage/affine.hpp"
#include "polyimage/mpoly.hpp"
#include "polyimage/rat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyimage {

// Degree-one functional c0 + c1 x1 + ... + cn xn; the half-space is {h >= 0}.
struct HalfSpace {
    RatVec coeffs;  // length n + 1

    std::size_t dim() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    Rat eval(const RatVec& x) const;
    RatVec normal() const;  // linear part
    bool linear_part_zero() const;
    MPoly to_poly() const;
    // divide by the positive content so proportional copies compare equal
    HalfSpace normalized() const;
    bool operator==(const HalfSpace& o) const { return coeffs == o.coeffs; }
};

struct FiberInterval {
    enum class Status { Empty, Point, Segment, LowerRay, UpperRay, FullLine };
    Status status = Status::Empty;
    std::optional<Rat> lower, upper;  // Segment: both; LowerRay: upper only;
                                      // UpperRay: lower only; Point: both equal
};

enum class PolyClass {
    Layer,
    Hyperplane,
    Halfspace,
    DegenerateProduct,
    Nondegenerate,
    LowerDimensional,
    FullSpace,
    Empty,
};

std::string poly_class_name(PolyClass c);

// H-representation convex polyhedron. The empty half-space list denotes R^n.
// Structural caches (minimal presentation, dimension, ...) populate lazily;
// populate them from a single thread before sharing a value.
class Polyhedron {
public:
    Polyhedron() = default;
    Polyhedron(std::size_t n, std::vector<HalfSpace> halfspaces, std::string name = "");

    std::size_t ambient_dim() const { return n_; }
    const std::vector<HalfSpace>& halfspaces() const { return hs_; }
    const std::string& name() const { return name_; }

    bool is_empty() const;
    bool is_full_space() const;

    // indices into halfspaces() of the irredundant members; requires nonempty
    const std::vector<std::size_t>& minimal_indices() const;
    Polyhedron minimal_presentation() const;

    // indices (subset of minimal) whose members hold with equality on all of K
    const std::vector<std::size_t>& equality_indices() const;
    // minimal members that are genuine facet inequalities (not equalities)
    std::vector<std::size_t> facet_indices() const;

    long dim() const;  // -1 for empty
    const std::vector<RatVec>& lineality_basis() const;
    bool is_bounded() const;
    PolyClass classify() const;

    // vertex with n active, linearly independent minimal constraints
    std::pair<RatVec, std::vector<std::size_t>> find_vertex() const;

    // intersection with the vertical line over a (along the last coordinate)
    FiberInterval fiber_interval(const RatVec& a) const;

    bool contains(const RatVec& x, bool interior) const;

    std::vector<std::pair<Rat, Rat>> bounding_box() const;  // requires bounded

    // max / min of c0 + <c, x> over K
    struct Extremum {
        enum class Kind { Value, Unbounded, Infeasible } kind;
        Rat value;
        RatVec point;
    };
    Extremum maximize(const RatVec& functional) const;
    Extremum minimize(const RatVec& functional) const;

    bool recession_contains(const RatVec& v) const;

    Polyhedron with_halfspace(const HalfSpace& h) const;
    Polyhedron drop_minimal_member(std::size_t minimal_pos) const;  // K_{i,x}
    Polyhedron transformed(const AffineMap& T) const;

    // K x R^{extra} with this polyhedron's coordinates moved to start at
    // `shift` inside a larger space
    Polyhedron embedded(std::size_t new_n, std::size_t shift) const;

    // axis-aligned box polyhedron and a few stock shapes
    static Polyhedron box(const std::vector<std::pair<Rat, Rat>>& bounds);
    static Polyhedron orthant(std::size_t n);  // {x_i >= 0}

private:
    std::size_t n_ = 0;
    std::vector<HalfSpace> hs_;
    std::string name_;

    struct Caches {
        std::optional<bool> empty;
        std::optional<std::vector<std::size_t>> minimal;
        std::optional<std::vector<std::size_t>> equalities;
        std::optional<long> dim;
        std::optional<std::vector<RatVec>> lineality;
        std::optional<bool> bounded;
    };
    mutable Caches cache_;

    void require_nonempty(const char* op) const;
};

}  // namespace polyimage

#endif
