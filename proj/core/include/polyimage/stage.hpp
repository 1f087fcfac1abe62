#ifndef POLYIMAGE_STAGE_HPP
#define POLYIMAGE_STAGE_HPP

#include "polyimage/affine.hpp"
#include "polyimage/polyhedron.hpp"
#include "polyimage/ratfn.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyimage {

enum class StageKind {
    Affine,
    Trim1,
    Trim2Poly,
    Trim2Reg,
    PresemialF1,
    PresemialF2,
    F0Lift,
    Radial,
    HalfplaneG2,
    ScaleCollapse,
    Square1,
    Base2D,
};

std::string stage_kind_name(StageKind k);
std::optional<StageKind> stage_kind_from_name(const std::string& s);

// One elementary map of a chain. Components are stored explicitly for every
// kind; trim stages keep their exact parameters (P and Q or M) so each stage
// can be re-verified against its lemma after construction.
struct Stage {
    StageKind kind = StageKind::Affine;
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    std::vector<RatFn> components;

    std::optional<AffineMap> affine;
    std::optional<MPoly> P;
    std::optional<MPoly> Q;   // Trim1 only
    std::optional<Rat> M;     // Trim2 only
    std::optional<MPoly> presemial_g;
    std::string base_key;     // Base2D provenance

    // trim / presemial stages: the moving coordinate ("x_n" of the lemma) and,
    // for trim1, the cut coordinate ("x_{n-1}"); both shift under lifting
    std::optional<std::size_t> axis;
    std::optional<std::size_t> cut_axis;

    // the polyhedron being trimmed, in this stage's coordinates; carried so
    // the per-stage fiber contract can be re-verified after construction
    std::optional<Polyhedron> trim_source;

    bool is_polynomial() const;
    RatVec eval(const RatVec& x) const;
    std::vector<double> eval_double(const std::vector<double>& x) const;
    long max_component_degree() const;
};

Stage make_affine_stage(const AffineMap& T);
Stage make_f0_lift_stage(std::size_t n);       // R^{n+1} -> R^{n+1}
Stage make_radial_stage(std::size_t n, const Rat& a, const Rat& b, const Rat& c);
Stage make_halfplane_g2_stage(std::size_t n);  // acts on the first two coordinates
Stage make_scale_collapse_stage(std::size_t n);  // R^{n+1} -> R^n, (x1,y) -> (1+x1) y
Stage make_square1_stage(std::size_t n, int sign);  // x1 -> sign * x1^2
Stage make_base2d_stage(std::vector<RatFn> components, std::string key);

// embeds the stage into a larger space: coordinates [shift, shift+in_dim)
// pass through the stage, all others are fixed
Stage lifted_stage(const Stage& s, std::size_t new_in, std::size_t shift);

}  // namespace polyimage

#endif
