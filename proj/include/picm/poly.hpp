#ifndef PICM_POLY_HPP
#define PICM_POLY_HPP

#include <vector>

#include <gmpxx.h>

#include "picm/util.hpp"

namespace picm {

// Dense univariate polynomial over a runtime field object F (FpField,
// FqField, ...). Coefficients are stored low-to-high with no trailing
// zeros; the zero polynomial has an empty coefficient vector.
template <class F>
class Poly {
public:
    using Elem = typename F::Elem;

    Poly() : fld_(nullptr) {}
    explicit Poly(const F* fld) : fld_(fld) {}
    Poly(const F* fld, std::vector<Elem> coeffs) : fld_(fld), c_(std::move(coeffs)) { normalize(); }

    static Poly zero(const F& fld) { return Poly(&fld); }
    static Poly constant(const F& fld, Elem a) {
        Poly r(&fld);
        if (!fld.is_zero(a)) r.c_.push_back(a);
        return r;
    }
    static Poly one(const F& fld) { return constant(fld, fld.one()); }
    // x - a
    static Poly linear_root(const F& fld, Elem a) {
        Poly r(&fld);
        r.c_ = {fld.neg(a), fld.one()};
        return r;
    }
    static Poly x_power(const F& fld, std::size_t k) {
        Poly r(&fld);
        r.c_.assign(k + 1, fld.zero());
        r.c_[k] = fld.one();
        return r;
    }

    const F& field() const { return *fld_; }
    const F* field_ptr() const { return fld_; }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && fld_->eq(c_[0], fld_->one()); }
    // degree of the zero polynomial is -1 by convention
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Elem>& coeffs() const { return c_; }

    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : fld_->zero(); }
    Elem leading() const {
        if (c_.empty()) throw invalid_input("Poly::leading of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && fld_->eq(c_.back(), fld_->one()); }

    void set_coeff(std::size_t i, Elem a) {
        if (i >= c_.size()) c_.resize(i + 1, fld_->zero());
        c_[i] = a;
        normalize();
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const {
        Poly r(fld_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), fld_->zero());
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = fld_->add(coeff(i), o.coeff(i));
        r.normalize();
        return r;
    }
    Poly operator-(const Poly& o) const {
        Poly r(fld_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), fld_->zero());
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = fld_->sub(coeff(i), o.coeff(i));
        r.normalize();
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& a : r.c_) a = fld_->neg(a);
        return r;
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly(fld_);
        Poly r(fld_);
        r.c_.assign(c_.size() + o.c_.size() - 1, fld_->zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (fld_->is_zero(c_[i])) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] = fld_->add(r.c_[i + j], fld_->mul(c_[i], o.c_[j]));
        }
        r.normalize();
        return r;
    }
    Poly scaled(Elem s) const {
        Poly r = *this;
        for (auto& a : r.c_) a = fld_->mul(a, s);
        r.normalize();
        return r;
    }
    Poly shifted(std::size_t k) const {  // multiply by x^k
        if (is_zero()) return *this;
        Poly r(fld_);
        r.c_.assign(c_.size() + k, fld_->zero());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(fld_->inv(c_.back()));
    }

    Elem eval(Elem x) const {
        Elem r = fld_->zero();
        for (std::size_t i = c_.size(); i-- > 0;) r = fld_->add(fld_->mul(r, x), c_[i]);
        return r;
    }

    // Horner evaluation where the coefficients live in a subfield of the
    // argument's field; `lift` maps coefficients into that field.
    template <class G, class Lift>
    typename G::Elem eval_in(const G& ext, Lift lift, typename G::Elem x) const {
        typename G::Elem r = ext.zero();
        for (std::size_t i = c_.size(); i-- > 0;) r = ext.add(ext.mul(r, x), lift(c_[i]));
        return r;
    }

    Poly derivative() const {
        Poly r(fld_);
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1);
        auto ch = fld_->char_p();
        for (std::size_t i = 1; i < c_.size(); ++i) {
            Elem k = fld_->from_int(static_cast<long long>(ch ? i % ch : i));
            r.c_[i - 1] = fld_->mul(c_[i], k);
        }
        r.normalize();
        return r;
    }

    void normalize() {
        while (!c_.empty() && fld_->is_zero(c_.back())) c_.pop_back();
    }

private:
    const F* fld_;
    std::vector<Elem> c_;
};

template <class F>
std::pair<Poly<F>, Poly<F>> poly_divrem(const Poly<F>& a, const Poly<F>& b) {
    if (b.is_zero()) throw invalid_input("poly_divrem: division by zero polynomial");
    const F& K = a.field();
    Poly<F> q(&K), r = a;
    long db = b.degree();
    auto lb_inv = K.inv(b.leading());
    while (!r.is_zero() && r.degree() >= db) {
        long k = r.degree() - db;
        auto s = K.mul(r.leading(), lb_inv);
        q.set_coeff(static_cast<std::size_t>(k), s);
        r = r - b.scaled(s).shifted(static_cast<std::size_t>(k));
    }
    return {q, r};
}

template <class F>
Poly<F> poly_mod(const Poly<F>& a, const Poly<F>& b) {
    return poly_divrem(a, b).second;
}

template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        Poly<F> r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

// extended gcd: returns (g, u, v) with u*a + v*b = g, g monic (or zero)
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> poly_xgcd(const Poly<F>& a, const Poly<F>& b) {
    const F& K = a.field();
    Poly<F> r0 = a, r1 = b;
    Poly<F> s0 = Poly<F>::one(K), s1 = Poly<F>::zero(K);
    Poly<F> t0 = Poly<F>::zero(K), t1 = Poly<F>::one(K);
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        Poly<F> s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    auto li = K.inv(r0.leading());
    return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

template <class F>
Poly<F> poly_powmod(const Poly<F>& base, const mpz_class& e, const Poly<F>& m) {
    const F& K = base.field();
    Poly<F> r = Poly<F>::one(K), b = poly_mod(base, m);
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = poly_mod(r * b, m);
        b = poly_mod(b * b, m);
        k >>= 1;
    }
    return r;
}

// true iff gcd(f, f') is constant; a vanishing derivative (p-th power)
// counts as not squarefree
template <class F>
bool poly_squarefree(const Poly<F>& f) {
    if (f.is_zero()) throw invalid_input("poly_squarefree: zero polynomial");
    if (f.degree() == 0) return true;
    Poly<F> d = f.derivative();
    if (d.is_zero()) return false;
    return poly_gcd(f, d).degree() == 0;
}

// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
template <class F>
Poly<F> poly_interpolate(const F& K, const std::vector<typename F::Elem>& xs,
                         const std::vector<typename F::Elem>& ys) {
    if (xs.size() != ys.size()) throw invalid_input("poly_interpolate: size mismatch");
    Poly<F> acc(&K);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Poly<F> num = Poly<F>::one(K);
        typename F::Elem den = K.one();
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            num = num * Poly<F>::linear_root(K, xs[j]);
            den = K.mul(den, K.sub(xs[i], xs[j]));
        }
        acc = acc + num.scaled(K.mul(ys[i], K.inv(den)));
    }
    return acc;
}

}  // namespace picm

#endif
