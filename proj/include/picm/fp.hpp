#ifndef PICM_FP_HPP
#define PICM_FP_HPP

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "picm/util.hpp"

namespace picm {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x <= 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

// Prime field F_p, p an odd prime > 3. Elements are raw uint64_t residues;
// all operations go through the field object.
class FpField {
public:
    using Elem = std::uint64_t;

    explicit FpField(std::uint64_t p) : p_(p) {
        if (p < 5 || !is_prime_u64(p)) throw invalid_input("FpField: modulus must be a prime > 3");
    }

    std::uint64_t p() const { return p_; }
    std::uint64_t char_p() const { return p_; }
    unsigned degree() const { return 1; }
    mpz_class size() const { return mpz_class(static_cast<unsigned long>(p_)); }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<Elem>(r);
    }
    Elem from_mpz(const mpz_class& v) const {
        mpz_class r = v % static_cast<long>(p_);
        if (r < 0) r += static_cast<long>(p_);
        return r.get_ui();
    }

    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    Elem add(Elem a, Elem b) const { return addmod_u64(a, b, p_); }
    Elem sub(Elem a, Elem b) const { return submod_u64(a, b, p_); }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return mulmod_u64(a, b, p_); }
    Elem sqr(Elem a) const { return mulmod_u64(a, a, p_); }

    Elem inv(Elem a) const {
        if (a == 0) throw invalid_input("FpField: inverse of zero");
        return powmod_u64(a, p_ - 2, p_);
    }

    Elem pow(Elem a, const mpz_class& e) const {
        if (e < 0) return pow(inv(a), -e);
        mpz_class m = e;
        Elem r = 1, b = a;
        while (m > 0) {
            if (mpz_odd_p(m.get_mpz_t())) r = mul(r, b);
            b = sqr(b);
            m >>= 1;
        }
        return r;
    }
    Elem pow_u(Elem a, std::uint64_t e) const { return powmod_u64(a, e, p_); }

    // x -> x^p, identity here; part of the shared field interface.
    Elem frobenius_p(Elem a) const { return a; }

    Elem rand_elem(Rng& rng) const { return rng.below(p_); }
    Elem rand_nonzero(Rng& rng) const { return 1 + rng.below(p_ - 1); }

    std::uint64_t to_index(Elem a) const { return a; }
    Elem from_index(std::uint64_t i) const { return i; }

    long long lift_centered(Elem a) const {
        return a > p_ / 2 ? static_cast<long long>(a) - static_cast<long long>(p_) : static_cast<long long>(a);
    }

private:
    std::uint64_t p_;
};

// count[v] = number of solutions of y^3 = v in F_p, as a flat table.
inline std::vector<std::uint8_t> cube_count_table(const FpField& F) {
    std::vector<std::uint8_t> t(F.p(), 0);
    for (std::uint64_t y = 0; y < F.p(); ++y) t[F.mul(F.sqr(y), y)]++;
    return t;
}

}  // namespace picm

#endif
