#ifndef POLYIMAGE_UROOTS_HPP
#define POLYIMAGE_UROOTS_HPP

#include "polyimage/mpoly.hpp"

#include <vector>

namespace polyimage {

// Interval certified to contain exactly one real root of the isolated
// polynomial's square-free part; lo == hi marks an exact rational root.
struct RootInterval {
    Rat lo, hi;
    bool exact() const { return lo == hi; }
    Rat mid() const { return (lo + hi) / 2; }
    Rat width() const { return hi - lo; }
};

struct RootIsolation {
    std::vector<RootInterval> intervals;  // pairwise disjoint, increasing
};

void updivmod(const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem);
UPoly upgcd(const UPoly& a, const UPoly& b);
UPoly square_free_part(const UPoly& f);

int sign_at(const UPoly& f, const Rat& t);
int sign_at_plus_inf(const UPoly& f);
int sign_at_minus_inf(const UPoly& f);

// Cauchy bound: all real roots lie in (-B, B)
Rat root_bound(const UPoly& f);

std::vector<UPoly> sturm_chain(const UPoly& f);
// number of distinct real roots in the half-open interval (a, b]
int sturm_count(const std::vector<UPoly>& chain, const Rat& a, const Rat& b);
int count_distinct_real_roots(const UPoly& f);
int count_distinct_roots_in(const UPoly& f, const Rat& a, const Rat& b);  // (a, b]

RootIsolation isolate_real_roots(const UPoly& f);  // throws on the zero polynomial
// roots of the square-free part inside [lo, hi]
std::vector<RootInterval> isolate_roots_in(const UPoly& f, const Rat& lo, const Rat& hi);

// shrink the interval below the requested width by bisection
void refine_root(const UPoly& f, RootInterval& iv, const Rat& width);

}  // namespace polyimage

#endif
