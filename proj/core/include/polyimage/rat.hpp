#ifndef POLYIMAGE_RAT_HPP
#define POLYIMAGE_RAT_HPP

#include <gmpxx.h>
#include <string>
#include <vector>
#include <cstdint>

namespace polyimage {

// All stored geometry and algebra is exact. Rat is an arbitrary-precision
// rational kept canonical (reduced, positive denominator) by GMP.
using Rat = mpq_class;
using Int = mpz_class;

using RatVec = std::vector<Rat>;

Rat rat(long num, long den = 1);
Rat rat_parse(const std::string& text);  // "p/q" or "p"
std::string rat_str(const Rat& q);
std::string vec_str(const RatVec& v);

Rat rat_abs(const Rat& q);
int rat_sign(const Rat& q);
double rat_double(const Rat& q);

// Closest rational with denominator 2^bits, used when coverage walks need to
// round an isolated root before re-walking.
Rat rat_round(const Rat& q, unsigned bits);

RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_scale(const Rat& c, const RatVec& a);
Rat vec_dot(const RatVec& a, const RatVec& b);
Rat vec_norm2(const RatVec& a);  // sum of squares
Rat vec_inf_norm(const RatVec& a);
bool vec_is_zero(const RatVec& a);

struct RatMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rat> data;  // row-major

    RatMat() = default;
    RatMat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Rat(0)) {}

    Rat& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static RatMat identity(std::size_t n);
    RatVec row(std::size_t i) const;
    RatVec apply(const RatVec& x) const;  // matrix * vector
    RatMat mul(const RatMat& other) const;
    RatMat transposed() const;
};

}  // namespace polyimage

#endif
