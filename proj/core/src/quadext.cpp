#include "afl3/quadext.hpp"

namespace afl3 {

QuadExtScalar QuadExtScalar::operator*(const QuadExtScalar& o) const {
    require_compatible(o);
    PadicScalar cross = (im_ * o.im_).times_integer(static_cast<long long>(eps_));
    return {re_ * o.re_ + cross, re_ * o.im_ + im_ * o.re_, eps_};
}

PadicScalar QuadExtScalar::norm() const {
    if (is_null()) throw bad_parameter("norm of a default-constructed scalar");
    return re_ * re_ - (im_ * im_).times_integer(static_cast<long long>(eps_));
}

QuadExtScalar QuadExtScalar::inverse() const {
    PadicScalar n = norm();
    if (n.is_exact_zero()) throw invert_zero("division by exact zero");
    PadicScalar ninv = n.inverse();
    QuadExtScalar c = conj();
    return {c.re() * ninv, c.im() * ninv, eps_};
}

bool QuadExtScalar::decide_nonzero() const {
    if (known_nonzero()) return true;
    if (is_exact_zero()) return false;
    throw precision_exhausted("zero test undetermined at working precision");
}

bool QuadExtScalar::is_integral() const {
    bool undetermined = false;
    for (const PadicScalar* c : {&re_, &im_}) {
        try {
            if (!c->is_integral()) return false;
        } catch (const precision_exhausted&) {
            undetermined = true;
        }
    }
    if (undetermined)
        throw precision_exhausted("integrality undetermined at working precision");
    return true;
}

bool QuadExtScalar::in_base_field() const {
    if (is_null()) throw bad_parameter("query on a default-constructed scalar");
    return im_.eq_zero();
}

bool QuadExtScalar::in_tau_line() const {
    if (is_null()) throw bad_parameter("query on a default-constructed scalar");
    return re_.eq_zero();
}

bool QuadExtScalar::eq(const QuadExtScalar& o) const {
    require_compatible(o);
    bool undetermined = false;
    try {
        if (!re_.eq(o.re_)) return false;
    } catch (const precision_exhausted&) {
        undetermined = true;
    }
    try {
        if (!im_.eq(o.im_)) return false;
    } catch (const precision_exhausted&) {
        undetermined = true;
    }
    if (undetermined)
        throw precision_exhausted("equality comparison undetermined at working precision");
    return true;
}

int eta_ext(const QuadExtScalar& x) {
    Valuation v = x.valuation();
    if (v.is_infinite()) throw eta_of_zero("eta is undefined at 0");
    return (v.exact_or_throw() % 2 == 0) ? +1 : -1;
}

} // namespace afl3
