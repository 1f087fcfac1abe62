#ifndef POLYIMAGE_MPOLY_HPP
#define POLYIMAGE_MPOLY_HPP

#include "polyimage/rat.hpp"

#include <map>
#include <utility>
#include <vector>

namespace polyimage {

using Exponents = std::vector<unsigned>;

// graded lexicographic: lower total degree first, then lex
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse multivariate polynomial over Rat. No zero coefficients are stored;
// term order is graded-lex so serialization is canonical.
class MPoly {
public:
    MPoly() = default;
    explicit MPoly(std::size_t nvars) : nvars_(nvars) {}

    static MPoly constant(std::size_t nvars, const Rat& c);
    static MPoly variable(std::size_t nvars, std::size_t i, unsigned power = 1);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;  // 0 for the zero polynomial
    std::size_t term_count() const { return terms_.size(); }

    const std::map<Exponents, Rat, GradedLexLess>& terms() const { return terms_; }

    void add_term(const Exponents& e, const Rat& c);
    Rat coeff(const Exponents& e) const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly scaled(const Rat& c) const;
    MPoly pow(unsigned k) const;
    bool operator==(const MPoly& o) const;

    Rat eval(const RatVec& x) const;
    double eval_double(const std::vector<double>& x) const;

    MPoly partial(std::size_t i) const;

    long degree_in(std::size_t i) const;  // -1 for the zero polynomial
    long total_degree() const;            // -1 for the zero polynomial

    // Sum of the absolute values of the nonzero coefficients: the M with
    // |f(x)| <= M (1+||x||^2)^m whenever deg f <= 2m.
    Rat coeff_abs_sum() const;

    // B >= sup_box |f| via per-monomial bounding on a bounded box.
    Rat bound_on_box(const std::vector<std::pair<Rat, Rat>>& box) const;

    // substitute variable i := value, result in the same variable count
    MPoly substitute(std::size_t i, const Rat& value) const;

    // full polynomial substitution: x_i := args[i]; args share a variable count
    MPoly compose(const std::vector<MPoly>& args) const;

    // reinterpret in a larger variable space, variable i -> i + shift
    MPoly embedded(std::size_t new_nvars, std::size_t shift) const;

    // drop unused trailing variables down to new_nvars (asserts none used above)
    MPoly truncated(std::size_t new_nvars) const;

    std::string str() const;  // human-readable, canonical order

private:
    std::size_t nvars_ = 0;
    std::map<Exponents, Rat, GradedLexLess> terms_;
};

// 1 + x_1^2 + ... + x_n^2
MPoly one_plus_norm2(std::size_t nvars);

// dense univariate view
using UPoly = std::vector<Rat>;  // coefficients, index = degree

UPoly to_univariate(const MPoly& f);  // requires nvars <= 1
MPoly from_univariate(const UPoly& u);
long updeg(const UPoly& u);
Rat upeval(const UPoly& u, const Rat& t);
UPoly upderiv(const UPoly& u);
UPoly upadd(const UPoly& a, const UPoly& b);
UPoly upsub(const UPoly& a, const UPoly& b);
UPoly upmul(const UPoly& a, const UPoly& b);
UPoly upscale(const Rat& c, const UPoly& a);

}  // namespace polyimage

#endif
