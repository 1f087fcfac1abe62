#ifndef POLYIMAGE_INTERVAL_HPP
#define POLYIMAGE_INTERVAL_HPP

#include "polyimage/mpoly.hpp"
#include "polyimage/ratfn.hpp"

#include <mpfr.h>
#include <optional>
#include <vector>

namespace polyimage {

// Outward-rounded MPFR interval. Every operation encloses the exact result,
// so a sign read off an interval is a certificate.
class Ival {
public:
    explicit Ival(mpfr_prec_t prec = 64);
    Ival(const Ival& o);
    Ival(Ival&& o) noexcept;
    Ival& operator=(const Ival& o);
    Ival& operator=(Ival&& o) noexcept;
    ~Ival();

    static Ival from_rat(const Rat& q, mpfr_prec_t prec);
    static Ival from_long(long v, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return prec_; }

    Ival operator+(const Ival& o) const;
    Ival operator-(const Ival& o) const;
    Ival operator*(const Ival& o) const;
    // nullopt when the divisor interval contains zero
    std::optional<Ival> divided_by(const Ival& o) const;
    Ival negated() const;

    // +1 / -1 when certified, 0 when the interval straddles or touches zero
    int sign() const;
    bool contains_zero() const;
    double mid() const;
    double lo() const;
    double hi() const;

private:
    mpfr_t lo_, hi_;
    mpfr_prec_t prec_;
};

Ival ival_eval(const MPoly& f, const std::vector<Ival>& x, mpfr_prec_t prec);
// nullopt when the denominator interval contains zero (precision too low)
std::optional<Ival> ival_eval(const RatFn& f, const std::vector<Ival>& x,
                              mpfr_prec_t prec);

}  // namespace polyimage

#endif
