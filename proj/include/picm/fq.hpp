#ifndef PICM_FQ_HPP
#define PICM_FQ_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "picm/fp.hpp"
#include "picm/poly.hpp"
#include "picm/util.hpp"

namespace picm {

// Extension field F_{p^k} = F_p[t]/(m(t)) with m monic irreducible of
// degree k. Elements are coefficient vectors of fixed length k (trailing
// zeros kept) so raw vector equality is element equality. Fields are
// immutable after construction and safe to share across threads.
//
// The prime field lives on the heap so the modulus polynomial's field
// pointer stays valid when an FqField value is moved or copied.
class FqField {
public:
    using Elem = std::vector<std::uint64_t>;

    FqField(const FpField& base, const Poly<FpField>& modulus)
        : base_(std::make_shared<FpField>(base)),
          mod_(base_.get(), modulus.coeffs()),
          k_(static_cast<unsigned>(mod_.degree())) {
        if (k_ < 1) throw invalid_input("FqField: modulus must be non-constant");
        if (!mod_.is_monic()) throw invalid_input("FqField: modulus must be monic");
        size_ = 1;
        for (unsigned i = 0; i < k_; ++i) size_ *= static_cast<unsigned long>(base_->p());
        // rows of x^(k+i) mod m for i in [0, k): used to fold products
        red_.assign(k_, std::vector<std::uint64_t>(k_, 0));
        Poly<FpField> xk = poly_mod(Poly<FpField>::x_power(*base_, k_), mod_);
        Poly<FpField> cur = xk;
        for (unsigned i = 0; i < k_; ++i) {
            for (unsigned j = 0; j < k_; ++j) red_[i][j] = cur.coeff(j);
            cur = poly_mod(cur.shifted(1), mod_);
        }
        build_frob();
    }
    FqField(const FqField& o)
        : base_(o.base_), mod_(base_.get(), o.mod_.coeffs()), k_(o.k_), size_(o.size_), red_(o.red_), frob_(o.frob_) {}
    FqField& operator=(const FqField& o) {
        if (this != &o) *this = FqField(o);
        return *this;
    }
    FqField(FqField&&) = default;
    FqField& operator=(FqField&&) = default;

    const FpField& base() const { return *base_; }
    const Poly<FpField>& modulus() const { return mod_; }
    unsigned degree() const { return k_; }
    std::uint64_t char_p() const { return base_->p(); }
    const mpz_class& size() const { return size_; }

    Elem zero() const { return Elem(k_, 0); }
    Elem one() const {
        Elem e(k_, 0);
        e[0] = 1;
        return e;
    }
    Elem gen() const {  // residue class of t
        Elem e(k_, 0);
        if (k_ == 1) {
            // degree-1 modulus t - a: the generator equals the constant a
            e[0] = base_->neg(mod_.coeff(0));
        } else {
            e[1] = 1;
        }
        return e;
    }
    Elem from_base(FpField::Elem a) const {
        Elem e(k_, 0);
        e[0] = a;
        return e;
    }
    Elem from_int(long long v) const { return from_base(base_->from_int(v)); }
    Elem from_mpz(const mpz_class& v) const { return from_base(base_->from_mpz(v)); }

    bool is_zero(const Elem& a) const {
        for (auto c : a)
            if (c) return false;
        return true;
    }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    // true iff the element lies in the prime field (constant coefficient only)
    bool in_base(const Elem& a) const {
        for (unsigned i = 1; i < k_; ++i)
            if (a[i]) return false;
        return true;
    }
    FpField::Elem to_base(const Elem& a) const {
        if (!in_base(a)) throw invalid_input("FqField::to_base: element not in prime field");
        return a[0];
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r(k_);
        for (unsigned i = 0; i < k_; ++i) r[i] = base_->add(a[i], b[i]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(k_);
        for (unsigned i = 0; i < k_; ++i) r[i] = base_->sub(a[i], b[i]);
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r(k_);
        for (unsigned i = 0; i < k_; ++i) r[i] = base_->neg(a[i]);
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        const std::uint64_t p = base_->p();
        if (k_ == 1) return Elem{mulmod_u64(a[0], b[0], p)};
        // schoolbook product with 128-bit accumulation, then fold the high
        // part through the precomputed reduction rows
        std::vector<unsigned __int128> acc(2 * k_ - 1, 0);
        for (unsigned i = 0; i < k_; ++i) {
            if (!a[i]) continue;
            for (unsigned j = 0; j < k_; ++j) acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
        }
        Elem r(k_);
        for (unsigned i = 0; i < k_; ++i) r[i] = static_cast<std::uint64_t>(acc[i] % p);
        for (unsigned i = 0; i < k_ - 1; ++i) {
            std::uint64_t hi = static_cast<std::uint64_t>(acc[k_ + i] % p);
            if (!hi) continue;
            const auto& row = red_[i];
            for (unsigned j = 0; j < k_; ++j)
                if (row[j]) r[j] = base_->add(r[j], mulmod_u64(hi, row[j], p));
        }
        return r;
    }
    Elem sqr(const Elem& a) const { return mul(a, a); }

    Elem inv(const Elem& a) const {
        if (is_zero(a)) throw invalid_input("FqField: inverse of zero");
        Poly<FpField> ap(base_.get(), std::vector<std::uint64_t>(a.begin(), a.end()));
        auto [g, u, v] = poly_xgcd(ap, mod_);
        (void)v;
        if (g.degree() != 0) throw invalid_input("FqField: modulus not irreducible (gcd found)");
        Elem r(k_, 0);
        Poly<FpField> ui = poly_mod(u, mod_);
        for (unsigned i = 0; i < k_; ++i) r[i] = ui.coeff(i);
        return r;
    }

    Elem pow(const Elem& a, const mpz_class& e) const {
        if (e < 0) return pow(inv(a), -e);
        Elem r = one(), b = a;
        mpz_class m = e;
        while (m > 0) {
            if (mpz_odd_p(m.get_mpz_t())) r = mul(r, b);
            b = sqr(b);
            m >>= 1;
        }
        return r;
    }
    Elem pow_u(const Elem& a, std::uint64_t e) const { return pow(a, mpz_class(static_cast<unsigned long>(e))); }

    // x -> x^p (the arithmetic Frobenius of the prime field); linear over
    // F_p, applied via the precomputed k x k matrix
    Elem frobenius_p(const Elem& a) const {
        Elem r(k_, 0);
        for (unsigned j = 0; j < k_; ++j) {
            if (!a[j]) continue;
            const auto& col = frob_[j];
            for (unsigned i = 0; i < k_; ++i)
                if (col[i]) r[i] = base_->add(r[i], mulmod_u64(a[j], col[i], base_->p()));
        }
        return r;
    }

    Elem rand_elem(Rng& rng) const {
        Elem r(k_);
        for (unsigned i = 0; i < k_; ++i) r[i] = rng.below(base_->p());
        return r;
    }
    Elem rand_nonzero(Rng& rng) const {
        Elem r;
        do {
            r = rand_elem(rng);
        } while (is_zero(r));
        return r;
    }

    // pack an element as sum c_i p^i; only sensible for small fields
    std::uint64_t to_index(const Elem& a) const {
        std::uint64_t idx = 0;
        for (unsigned i = k_; i-- > 0;) idx = idx * base_->p() + a[i];
        return idx;
    }
    Elem from_index(std::uint64_t idx) const {
        Elem a(k_);
        for (unsigned i = 0; i < k_; ++i) {
            a[i] = idx % base_->p();
            idx /= base_->p();
        }
        return a;
    }

private:
    void build_frob() {
        frob_.reserve(k_);
        Poly<FpField> tp = poly_powmod(Poly<FpField>::x_power(*base_, 1),
                                       mpz_class(static_cast<unsigned long>(base_->p())), mod_);
        Poly<FpField> cur = Poly<FpField>::one(*base_);
        for (unsigned j = 0; j < k_; ++j) {
            Elem col(k_, 0);
            for (unsigned i = 0; i < k_; ++i) col[i] = cur.coeff(i);
            frob_.push_back(std::move(col));
            cur = poly_mod(cur * tp, mod_);
        }
    }

    std::shared_ptr<const FpField> base_;
    Poly<FpField> mod_;
    unsigned k_;
    mpz_class size_;
    std::vector<std::vector<std::uint64_t>> red_;
    std::vector<Elem> frob_;  // matrix of x -> x^p, column per basis power
};

// Rabin irreducibility test for a monic polynomial over F_p.
inline bool is_irreducible_fp(const Poly<FpField>& f) {
    const FpField& K = f.field();
    long n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    mpz_class p(static_cast<unsigned long>(K.p()));
    Poly<FpField> x = Poly<FpField>::x_power(K, 1);
    // x^(p^n) == x mod f
    Poly<FpField> xp = x;
    for (long i = 0; i < n; ++i) xp = poly_powmod(xp, p, f);
    if (xp != poly_mod(x, f)) return false;
    // gcd(x^(p^(n/l)) - x, f) == 1 for every prime l | n
    for (long l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool lp = true;
        for (long d = 2; d * d <= l; ++d)
            if (l % d == 0) lp = false;
        if (!lp) continue;
        Poly<FpField> xe = x;
        for (long i = 0; i < n / l; ++i) xe = poly_powmod(xe, p, f);
        if (poly_gcd(xe - x, f).degree() != 0) return false;
    }
    return true;
}

// Deterministic search for a monic irreducible modulus of degree k over
// F_p. The candidate stream is a fixed pseudorandom sequence keyed by
// (p, k, seed), so repeated runs agree.
inline Poly<FpField> find_irreducible_modulus(const FpField& K, unsigned k, std::uint64_t seed = 0) {
    if (k == 0) throw invalid_input("find_irreducible_modulus: k must be >= 1");
    Rng rng(derive_seed(seed, "irrmod:" + std::to_string(K.p()) + ":" + std::to_string(k)));
    if (k == 1) return Poly<FpField>::linear_root(K, rng.below(K.p()));
    for (int tries = 0; tries < 1 << 20; ++tries) {
        std::vector<std::uint64_t> c(k + 1, 0);
        c[k] = 1;
        for (unsigned i = 0; i < k; ++i) c[i] = rng.below(K.p());
        Poly<FpField> f(&K, std::move(c));
        if (f.degree() == static_cast<long>(k) && is_irreducible_fp(f)) return f;
    }
    throw budget_exceeded("find_irreducible_modulus: exhausted candidate budget");
}

// F_{p^k} with a deterministic modulus; cap guards against torsion-field
// degree blowups and is a recoverable condition for callers.
inline FqField build_extension(std::uint64_t p, unsigned k, std::uint64_t seed = 0, unsigned cap = 30) {
    if (k > cap)
        throw budget_exceeded("build_extension: degree " + std::to_string(k) + " exceeds cap " +
                              std::to_string(cap));
    FpField base(p);
    return FqField(base, find_irreducible_modulus(base, k, seed));
}

}  // namespace picm

#endif
