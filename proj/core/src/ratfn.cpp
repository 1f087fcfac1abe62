#include "polyimage/ratfn.hpp"

#include <cassert>
#include <stdexcept>

namespace polyimage {

DenCert DenCert::make_constant(const Rat& c) {
    DenCert d;
    d.kind = Kind::Constant;
    d.constant = c;
    return d;
}

DenCert DenCert::make_coeff_positive() {
    DenCert d;
    d.kind = Kind::CoeffPositive;
    return d;
}

DenCert DenCert::make_sos_incompatible(MPoly f, MPoly g, MPoly G, MPoly u, MPoly v) {
    DenCert d;
    d.kind = Kind::SosIncompatible;
    d.f = std::move(f);
    d.g = std::move(g);
    d.G = std::move(G);
    d.u = std::move(u);
    d.v = std::move(v);
    return d;
}

DenCert DenCert::make_product(std::vector<std::pair<MPoly, DenCert>> factors) {
    DenCert d;
    d.kind = Kind::Product;
    d.factors = std::move(factors);
    return d;
}

namespace {

// nonnegative coefficients alone do not force positivity on R^n; with all
// exponents even every monomial is nonnegative and the constant term wins
bool coeff_positive(const MPoly& p) {
    if (p.is_zero()) return false;
    Rat c0 = p.coeff(Exponents(p.nvars(), 0));
    if (c0 <= 0) return false;
    for (const auto& [e, c] : p.terms()) {
        if (c < 0) return false;
        for (unsigned k : e)
            if (k % 2 != 0) return false;
    }
    return true;
}

// canonical cleared-denominator composition: returns (num, den) with
// outer(args) == num/den and den == product of argument denominator powers
std::pair<MPoly, MPoly> compose_cleared(const MPoly& outer,
                                        const std::vector<std::pair<MPoly, MPoly>>& args) {
    std::size_t out_vars = args.empty() ? 0 : args[0].first.nvars();
    // common denominator: product of arg dens raised to outer's degree in
    // that variable
    MPoly common = MPoly::constant(out_vars, Rat(1));
    std::vector<long> degs(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
        degs[i] = std::max<long>(0, outer.degree_in(i));
        common = common * args[i].second.pow(static_cast<unsigned>(degs[i]));
    }
    MPoly num(out_vars);
    for (const auto& [e, c] : outer.terms()) {
        MPoly t = MPoly::constant(out_vars, c);
        for (std::size_t i = 0; i < args.size(); ++i) {
            t = t * args[i].first.pow(e[i]);
            t = t * args[i].second.pow(static_cast<unsigned>(degs[i]) - e[i]);
        }
        num = num + t;
    }
    return {num, common};
}

}  // namespace

bool cert_check(const MPoly& den, const DenCert& cert) {
    switch (cert.kind) {
        case DenCert::Kind::Constant:
            return den.is_constant() && den.constant_value() == cert.constant &&
                   cert.constant > 0;
        case DenCert::Kind::CoeffPositive:
            return coeff_positive(den);
        case DenCert::Kind::SosIncompatible: {
            if (!coeff_positive(cert.G)) return false;
            MPoly expect = cert.f * cert.f * cert.G + cert.g * cert.g;
            if (!(expect == den)) return false;
            MPoly bezout = cert.u * cert.f + cert.v * cert.g;
            return bezout == MPoly::constant(den.nvars(), Rat(1));
        }
        case DenCert::Kind::Product: {
            if (cert.factors.empty()) return false;
            MPoly prod = MPoly::constant(den.nvars(), Rat(1));
            for (const auto& [p, c] : cert.factors) {
                if (!cert_check(p, c)) return false;
                prod = prod * p;
            }
            return prod == den;
        }
        case DenCert::Kind::Composed: {
            if (cert.outer_cert.size() != 1) return false;
            if (cert.args.size() != cert.outer.nvars()) return false;
            if (cert.arg_certs.size() != cert.args.size()) return false;
            if (!cert_check(cert.outer, cert.outer_cert[0])) return false;
            for (std::size_t i = 0; i < cert.args.size(); ++i)
                if (!cert_check(cert.args[i].second, cert.arg_certs[i])) return false;
            auto [num, common] = compose_cleared(cert.outer, cert.args);
            return num == den;
        }
    }
    return false;
}

RatFn::RatFn(MPoly num, MPoly den, DenCert cert)
    : num_(std::move(num)), den_(std::move(den)), cert_(std::move(cert)) {
    assert(num_.nvars() == den_.nvars());
    if (!cert_check(den_, cert_))
        throw std::invalid_argument("RatFn: denominator certificate does not check");
}

RatFn RatFn::from_poly(const MPoly& p) {
    return RatFn(p, MPoly::constant(p.nvars(), Rat(1)), DenCert::make_constant(Rat(1)));
}

Rat RatFn::eval(const RatVec& x) const {
    Rat d = den_.eval(x);
    if (d == 0)
        throw std::logic_error("RatFn::eval: denominator vanished (certificate bug)");
    return num_.eval(x) / d;
}

double RatFn::eval_double(const std::vector<double>& x) const {
    return num_.eval_double(x) / den_.eval_double(x);
}

RatFn RatFn::operator+(const RatFn& o) const {
    if (is_polynomial() && o.is_polynomial()) {
        Rat c = den_.constant_value() * o.den_.constant_value();
        MPoly n = num_.scaled(o.den_.constant_value()) + o.num_.scaled(den_.constant_value());
        return RatFn(n, MPoly::constant(num_.nvars(), c), DenCert::make_constant(c));
    }
    MPoly n = num_ * o.den_ + o.num_ * den_;
    MPoly d = den_ * o.den_;
    return RatFn(n, d, DenCert::make_product({{den_, cert_}, {o.den_, o.cert_}}));
}

RatFn RatFn::operator-(const RatFn& o) const {
    return *this + o.scaled(Rat(-1));
}

RatFn RatFn::operator*(const RatFn& o) const {
    if (is_polynomial() && o.is_polynomial()) {
        Rat c = den_.constant_value() * o.den_.constant_value();
        return RatFn(num_ * o.num_, MPoly::constant(num_.nvars(), c),
                     DenCert::make_constant(c));
    }
    return RatFn(num_ * o.num_, den_ * o.den_,
                 DenCert::make_product({{den_, cert_}, {o.den_, o.cert_}}));
}

RatFn RatFn::scaled(const Rat& c) const { return RatFn(num_.scaled(c), den_, cert_); }

RatFn RatFn::pow(unsigned k) const {
    RatFn r = RatFn::from_poly(MPoly::constant(num_.nvars(), Rat(1)));
    for (unsigned i = 0; i < k; ++i) r = r * (*this);
    return r;
}

MPoly RatFn::derivative_numerator(std::size_t i) const {
    return num_.partial(i) * den_ - num_ * den_.partial(i);
}

RatFn compose(const MPoly& f, const std::vector<RatFn>& args) {
    if (args.size() != f.nvars())
        throw std::invalid_argument("compose: arity mismatch");
    std::size_t out_vars = args.empty() ? 0 : args[0].nvars();

    std::vector<std::pair<MPoly, MPoly>> arg_polys;
    std::vector<DenCert> arg_certs;
    bool all_poly = true;
    for (const auto& a : args) {
        arg_polys.emplace_back(a.num(), a.den());
        arg_certs.push_back(a.cert());
        all_poly = all_poly && a.is_polynomial();
    }
    auto [num, den] = compose_cleared(f, arg_polys);
    if (den.is_constant())
        return RatFn(num, den, DenCert::make_constant(den.constant_value()));
    std::vector<std::pair<MPoly, DenCert>> factors;
    for (std::size_t i = 0; i < args.size(); ++i) {
        long d = std::max<long>(0, f.degree_in(i));
        for (long k = 0; k < d; ++k)
            if (!args[i].is_polynomial())
                factors.emplace_back(args[i].den(), args[i].cert());
            else
                factors.emplace_back(args[i].den(),
                                     DenCert::make_constant(args[i].den().constant_value()));
    }
    return RatFn(num, den, DenCert::make_product(std::move(factors)));
}

RatFn compose(const RatFn& f, const std::vector<RatFn>& args) {
    if (f.is_polynomial()) {
        RatFn r = compose(f.num(), args);
        return r.scaled(Rat(1) / f.den().constant_value());
    }
    std::vector<std::pair<MPoly, MPoly>> arg_polys;
    std::vector<DenCert> arg_certs;
    for (const auto& a : args) {
        arg_polys.emplace_back(a.num(), a.den());
        arg_certs.push_back(a.cert());
    }
    RatFn num = compose(f.num(), args);
    auto [dnum, dden] = compose_cleared(f.den(), arg_polys);

    // composed value = (num.num/num.den) / (dnum/dden)
    //               = num.num * dden / (num.den * dnum)
    DenCert dnum_cert;
    dnum_cert.kind = DenCert::Kind::Composed;
    dnum_cert.outer = f.den();
    dnum_cert.outer_cert.push_back(f.cert());
    dnum_cert.args = arg_polys;
    dnum_cert.arg_certs = arg_certs;

    MPoly out_num = num.num() * dden;
    MPoly out_den = num.den() * dnum;
    DenCert out_cert =
        DenCert::make_product({{num.den(), num.cert()}, {dnum, dnum_cert}});
    return RatFn(out_num, out_den, out_cert);
}

}  // namespace polyimage
