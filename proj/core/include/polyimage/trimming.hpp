#ifndef POLYIMAGE_TRIMMING_HPP
#define POLYIMAGE_TRIMMING_HPP

#include "polyimage/polyhedron.hpp"
#include "polyimage/positioning.hpp"
#include "polyimage/stage.hpp"

namespace polyimage {

struct NoTrimNeeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Product of the facet equations of K nonparallel to e_n, each normalized to
// x_n-coefficient 1. Throws NoTrimNeeded when every facet is parallel to e_n
// (the trim maps need deg P >= 1).
MPoly build_P(const Polyhedron& K);

enum class TrimMode { Strong, Weak };

struct ChosenQ {
    MPoly Q;
    DenCert cert;
    Rat M;  // the constant of the recipe
};

// Strong mode takes the region box and fiber bound N and produces a constant
// Q = M; weak mode produces Q = M (1+x_{n-1}^2)(1+||x||^2)^d. With an empty
// strong region any positive constant works and Q = 1 is chosen.
ChosenQ choose_Q(const MPoly& P, TrimMode mode, const RegionBounds& rb = {});

// beta_{P,Q}(x) = x_n (1 - x_{n-1} P^2 / Q)
Stage make_trim1(const MPoly& P, const ChosenQ& q);

Rat choose_M2(const MPoly& P, TrimMode mode, const RegionBounds& rb = {});

enum class Trim2Variant { Poly, Reg };

// gamma^p = x_n (1 - x_n P^2 / M)^2
// gamma^r = x_n (1-x_n P^2)^2 D / ((1-x_n P^2)^2 D + x_n^2 P^2),
//           D = (M (1+||x||^2))^{2d+2}
Stage make_trim2(const MPoly& P, const Rat& M, Trim2Variant variant);

}  // namespace polyimage

#endif
