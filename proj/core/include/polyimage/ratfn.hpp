#ifndef POLYIMAGE_RATFN_HPP
#define POLYIMAGE_RATFN_HPP

#include "polyimage/mpoly.hpp"

#include <vector>

namespace polyimage {

// Positivity certificate for a denominator. The structural form of each kind
// implies strict positivity on R^n and is checkable symbolically:
//   Constant          den == c with c > 0
//   CoeffPositive     every coefficient >= 0 and the constant term > 0
//   SosIncompatible   den == f^2 * G + g^2 with G coeff-positive and
//                     u*f + v*g == 1 (so {f=0, g=0} is empty)
//   Product           den == product of certified factors
//   Composed          den == cleared-denominator form of outer(args) where
//                     outer is certified positive and each argument
//                     denominator is certified positive
struct DenCert {
    enum class Kind { Constant, CoeffPositive, SosIncompatible, Product, Composed };
    Kind kind = Kind::Constant;

    Rat constant{1};
    MPoly f, g, G, u, v;
    std::vector<std::pair<MPoly, DenCert>> factors;

    // Composed
    MPoly outer;
    std::vector<DenCert> outer_cert;  // size 1; vector breaks the recursion
    std::vector<std::pair<MPoly, MPoly>> args;  // (num, den) per argument
    std::vector<DenCert> arg_certs;

    static DenCert make_constant(const Rat& c);
    static DenCert make_coeff_positive();
    static DenCert make_sos_incompatible(MPoly f, MPoly g, MPoly G, MPoly u, MPoly v);
    static DenCert make_product(std::vector<std::pair<MPoly, DenCert>> factors);
};

bool cert_check(const MPoly& den, const DenCert& cert);

class RatFn {
public:
    RatFn() = default;
    RatFn(MPoly num, MPoly den, DenCert cert);
    static RatFn from_poly(const MPoly& p);

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    const DenCert& cert() const { return cert_; }
    std::size_t nvars() const { return num_.nvars(); }
    bool is_polynomial() const { return den_.is_constant(); }

    Rat eval(const RatVec& x) const;  // throws if den evaluates to zero
    double eval_double(const std::vector<double>& x) const;

    RatFn operator+(const RatFn& o) const;
    RatFn operator-(const RatFn& o) const;
    RatFn operator*(const RatFn& o) const;
    RatFn scaled(const Rat& c) const;
    RatFn pow(unsigned k) const;

    // numerator of d/dx_i (num/den); the sign of the derivative equals the
    // sign of this polynomial wherever den > 0 holds, since den^2 > 0
    MPoly derivative_numerator(std::size_t i) const;

private:
    MPoly num_, den_;
    DenCert cert_;
};

// f composed with rational-function arguments; the result's denominator
// certificate is the product of the argument certificates.
RatFn compose(const MPoly& f, const std::vector<RatFn>& args);
RatFn compose(const RatFn& f, const std::vector<RatFn>& args);

}  // namespace polyimage

#endif
