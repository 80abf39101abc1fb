#include "afl3/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace afl3 {

mpz_class PadicScalar::pow_p(uint64_t p, long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    return r;
}

PadicScalar PadicScalar::make_regular(uint64_t p, long val, long rel, mpz_class unit) {
    PadicScalar x;
    x.p_ = p;
    x.st_ = St::regular;
    x.val_ = val;
    x.rel_ = rel;
    x.unit_ = std::move(unit);
    return x;
}

PadicScalar PadicScalar::make_indet(uint64_t p, long bound) {
    PadicScalar x;
    x.p_ = p;
    x.st_ = St::indet;
    x.val_ = bound;
    return x;
}

PadicScalar PadicScalar::make_exact_zero(uint64_t p) {
    PadicScalar x;
    x.p_ = p;
    x.st_ = St::exact_zero;
    return x;
}

PadicScalar PadicScalar::zero(const PrecisionContext& ctx) {
    return make_exact_zero(ctx.p());
}

PadicScalar PadicScalar::from_mpz(const PrecisionContext& ctx, const mpz_class& n) {
    if (n == 0) return make_exact_zero(ctx.p());
    mpz_class u;
    mpz_class pz(static_cast<unsigned long>(ctx.p()));
    long val = static_cast<long>(mpz_remove(u.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
    long rel = ctx.precision();
    mpz_class mod = pow_p(ctx.p(), rel);
    mpz_class unit = ((u % mod) + mod) % mod;
    return make_regular(ctx.p(), val, rel, unit);
}

PadicScalar PadicScalar::from_integer(const PrecisionContext& ctx, long long n) {
    return from_mpz(ctx, mpz_class(static_cast<long>(n)));
}

PadicScalar PadicScalar::from_unit_valuation(const PrecisionContext& ctx, const mpz_class& unit,
                                             long val) {
    mpz_class mod = pow_p(ctx.p(), ctx.precision());
    mpz_class u = ((unit % mod) + mod) % mod;
    if (u % ctx.p() == 0)
        throw bad_parameter("unit part is divisible by p");
    return make_regular(ctx.p(), val, ctx.precision(), u);
}

PadicScalar PadicScalar::uniformizer_pow(const PrecisionContext& ctx, long k) {
    return make_regular(ctx.p(), k, ctx.precision(), mpz_class(1));
}

void PadicScalar::require_compatible(const PadicScalar& o) const {
    if (p_ == 0 || o.p_ == 0)
        throw bad_parameter("arithmetic on a default-constructed scalar");
    if (p_ != o.p_)
        throw bad_parameter("mixing scalars over different primes");
}

long PadicScalar::abs_precision() const {
    switch (st_) {
        case St::exact_zero: return LONG_MAX;
        case St::regular: return val_ + rel_;
        case St::indet: return val_;
    }
    return 0;
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    require_compatible(o);
    if (st_ == St::exact_zero) return o;
    if (o.st_ == St::exact_zero) return *this;
    if (st_ == St::indet && o.st_ == St::indet)
        return make_indet(p_, std::min(val_, o.val_));
    if (st_ == St::indet || o.st_ == St::indet) {
        const PadicScalar& ind = (st_ == St::indet) ? *this : o;
        const PadicScalar& reg = (st_ == St::indet) ? o : *this;
        if (reg.val_ >= ind.val_) return make_indet(p_, ind.val_);
        long abs = std::min(ind.val_, reg.val_ + reg.rel_);
        long rel = abs - reg.val_; // ≥ 1 since reg.val_ < ind.val_
        return make_regular(p_, reg.val_, rel, reg.unit_ % pow_p(p_, rel));
    }
    long abs = std::min(val_ + rel_, o.val_ + o.rel_);
    long base = std::min(val_, o.val_);
    long window = abs - base; // ≥ 1
    mpz_class mod = pow_p(p_, window);
    mpz_class s = unit_ * pow_p(p_, val_ - base) + o.unit_ * pow_p(p_, o.val_ - base);
    s %= mod;
    if (s == 0) return make_indet(p_, abs);
    mpz_class u;
    mpz_class pz(static_cast<unsigned long>(p_));
    long shift = static_cast<long>(mpz_remove(u.get_mpz_t(), s.get_mpz_t(), pz.get_mpz_t()));
    return make_regular(p_, base + shift, window - shift, u % pow_p(p_, window - shift));
}

PadicScalar PadicScalar::operator-() const {
    if (st_ != St::regular) return *this;
    mpz_class mod = pow_p(p_, rel_);
    return make_regular(p_, val_, rel_, mod - unit_);
}

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    require_compatible(o);
    if (st_ == St::exact_zero || o.st_ == St::exact_zero) return make_exact_zero(p_);
    if (st_ == St::indet || o.st_ == St::indet)
        return make_indet(p_, val_ + o.val_); // valuation lower bounds add

    long rel = std::min(rel_, o.rel_);
    mpz_class mod = pow_p(p_, rel);
    mpz_class u = (unit_ * o.unit_) % mod;
    return make_regular(p_, val_ + o.val_, rel, u);
}

PadicScalar PadicScalar::inverse() const {
    if (p_ == 0) throw bad_parameter("inverse of a default-constructed scalar");
    if (st_ == St::exact_zero) throw invert_zero("division by exact zero");
    if (st_ == St::indet)
        throw precision_exhausted("inverting a value indistinguishable from zero");
    mpz_class mod = pow_p(p_, rel_);
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw error("internal: unit part not invertible");
    return make_regular(p_, -val_, rel_, inv);
}

PadicScalar PadicScalar::shifted(long k) const {
    if (p_ == 0) throw bad_parameter("shift of a default-constructed scalar");
    if (st_ == St::exact_zero) return *this;
    PadicScalar x = *this;
    x.val_ += k;
    return x;
}

PadicScalar PadicScalar::times_integer(long long n) const {
    if (p_ == 0) throw bad_parameter("arithmetic on a default-constructed scalar");
    if (n == 0 || st_ == St::exact_zero) return make_exact_zero(p_);
    mpz_class m(static_cast<long>(n));
    mpz_class u;
    mpz_class pz(static_cast<unsigned long>(p_));
    long shift = static_cast<long>(mpz_remove(u.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t()));
    if (st_ == St::indet) return make_indet(p_, val_ + shift);
    mpz_class mod = pow_p(p_, rel_);
    mpz_class unit = ((unit_ * u) % mod + mod) % mod;
    return make_regular(p_, val_ + shift, rel_, unit);
}

Valuation PadicScalar::valuation() const {
    switch (st_) {
        case St::exact_zero: return Valuation::infinite();
        case St::regular: return Valuation::exactly(val_);
        case St::indet: return Valuation::at_least(val_);
    }
    return Valuation::infinite();
}

bool PadicScalar::is_integral() const {
    switch (st_) {
        case St::exact_zero: return true;
        case St::regular: return val_ >= 0;
        case St::indet:
            if (val_ >= 0) return true;
            throw precision_exhausted("integrality undetermined at working precision");
    }
    return false;
}

bool PadicScalar::is_unit() const {
    switch (st_) {
        case St::exact_zero: return false;
        case St::regular: return val_ == 0;
        case St::indet:
            if (val_ >= 1) return false;
            throw precision_exhausted("unit test undetermined at working precision");
    }
    return false;
}

int PadicScalar::eta() const {
    if (st_ == St::exact_zero) throw eta_of_zero("eta is undefined at 0");
    if (st_ == St::indet)
        throw precision_exhausted("eta undetermined: valuation not known exactly");
    return (val_ % 2 == 0) ? +1 : -1;
}

bool PadicScalar::eq(const PadicScalar& o) const { return (*this - o).eq_zero(); }

bool PadicScalar::eq_zero() const {
    if (p_ == 0) throw bad_parameter("query on a default-constructed scalar");
    if (st_ == St::exact_zero) return true;
    if (st_ == St::regular) return false;
    if (val_ >= 1) return true;
    throw precision_exhausted("equality comparison undetermined at working precision");
}

mpz_class PadicScalar::residue(long k) const {
    if (k < 0) throw bad_parameter("residue modulus must be nonnegative");
    if (k == 0) return mpz_class(0);
    switch (st_) {
        case St::exact_zero: return mpz_class(0);
        case St::indet:
            if (val_ >= k) return mpz_class(0);
            throw precision_exhausted("residue undetermined at working precision");
        case St::regular:
            if (val_ >= k) return mpz_class(0);
            if (val_ < 0) throw error("residue of a non-integral value");
            if (val_ + rel_ < k)
                throw precision_exhausted("residue undetermined at working precision");
            return (unit_ * pow_p(p_, val_)) % pow_p(p_, k);
    }
    return mpz_class(0);
}

uint64_t PadicScalar::residue_u64(long k) const {
    mpz_class r = residue(k);
    if (!r.fits_ulong_p()) throw error("residue does not fit in 64 bits");
    return static_cast<uint64_t>(r.get_ui());
}

std::string PadicScalar::str() const {
    std::ostringstream os;
    switch (st_) {
        case St::exact_zero: os << "0"; break;
        case St::indet: os << "O(pi^" << val_ << ")"; break;
        case St::regular:
            os << unit_.get_str() << "*pi^" << val_ << " + O(pi^" << (val_ + rel_) << ")";
            break;
    }
    return os.str();
}

int eta(const PadicScalar& x) { return x.eta(); }

} // namespace afl3
