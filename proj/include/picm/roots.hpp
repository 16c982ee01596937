#ifndef PICM_ROOTS_HPP
#define PICM_ROOTS_HPP

#include <algorithm>
#include <vector>

#include "picm/fq.hpp"
#include "picm/poly.hpp"

namespace picm {

namespace detail {

// Split a monic product of distinct linear factors by random gcds.
template <class F>
void split_linear(const Poly<F>& f, Rng& rng, std::vector<typename F::Elem>& out) {
    const F& K = f.field();
    if (f.degree() == 0) return;
    if (f.degree() == 1) {
        out.push_back(K.neg(f.coeff(0)));
        return;
    }
    mpz_class half = (K.size() - 1) / 2;
    for (;;) {
        Poly<F> a(&K, {K.rand_elem(rng), K.one()});
        Poly<F> t = poly_powmod(a, half, f) - Poly<F>::one(K);
        Poly<F> g = poly_gcd(t, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            split_linear(g, rng, out);
            split_linear(poly_divrem(f, g).first, rng, out);
            return;
        }
    }
}

}  // namespace detail

// All roots of f in the field, with multiplicity. Exhaustive scan for
// small fields, otherwise gcd with x^q - x followed by random splitting.
template <class F>
std::vector<typename F::Elem> poly_roots(const Poly<F>& f, std::uint64_t seed = 0) {
    const F& K = f.field();
    if (f.is_zero()) throw invalid_input("poly_roots: zero polynomial");
    std::vector<typename F::Elem> distinct;
    if (K.size() <= 65536) {
        std::uint64_t q = K.size().get_ui();
        for (std::uint64_t i = 0; i < q; ++i) {
            auto x = K.from_index(i);
            if (K.is_zero(f.eval(x))) distinct.push_back(x);
        }
    } else {
        Poly<F> x = Poly<F>::x_power(K, 1);
        Poly<F> xq = poly_powmod(x, K.size(), f);
        Poly<F> lin = poly_gcd(xq - x, f);
        Rng rng(derive_seed(seed, "roots"));
        detail::split_linear(lin, rng, distinct);
    }
    std::vector<typename F::Elem> out;
    for (const auto& r : distinct) {
        Poly<F> g = f;
        Poly<F> lr = Poly<F>::linear_root(K, r);
        for (;;) {
            auto [q2, rem] = poly_divrem(g, lr);
            if (!rem.is_zero()) break;
            out.push_back(r);
            g = q2;
            if (g.is_zero()) break;
        }
    }
    std::sort(out.begin(), out.end(), [&K](const auto& a, const auto& b) { return K.to_index(a) < K.to_index(b); });
    return out;
}

// Solutions y of y^3 = a. For q = 2 mod 3 cubing is a bijection; for
// q = 1 mod 3 there are 0 or 3 solutions when a != 0.
template <class F>
std::vector<typename F::Elem> cube_values(const F& K, const typename F::Elem& a) {
    if (K.is_zero(a)) return {K.zero()};
    mpz_class q = K.size();
    if (q % 3 == 2) {
        // inverse of 3 mod q-1 exists
        mpz_class e;
        mpz_class three = 3, qm1 = q - 1;
        mpz_invert(e.get_mpz_t(), three.get_mpz_t(), qm1.get_mpz_t());
        return {K.pow(a, e)};
    }
    if (!K.eq(K.pow(a, (q - 1) / 3), K.one())) return {};
    Poly<F> cubic(&K, {K.neg(a), K.zero(), K.zero(), K.one()});
    auto roots = poly_roots(cubic);
    if (roots.size() != 3) throw std::logic_error("cube_values: expected 3 roots of a cubic residue");
    return roots;
}

// Primitive cube root of unity in F_q, q = 1 mod 3. Deterministic: scans a
// fixed element sequence.
template <class F>
typename F::Elem primitive_cube_root(const F& K) {
    mpz_class q = K.size();
    if (q % 3 != 1) throw invalid_input("primitive_cube_root: field size not 1 mod 3");
    Rng rng(derive_seed(0, "omega"));
    for (int t = 0; t < 4096; ++t) {
        auto r = K.rand_nonzero(rng);
        auto w = K.pow(r, (q - 1) / 3);
        if (!K.eq(w, K.one())) return w;
    }
    throw std::logic_error("primitive_cube_root: search failed");
}

// Full factorization of a nonzero polynomial over F_p into monic
// irreducibles with multiplicity (distinct-degree then equal-degree
// splitting). Returned sorted for determinism.
inline std::vector<std::pair<Poly<FpField>, unsigned>> factor_fp(const Poly<FpField>& f0, std::uint64_t seed = 0) {
    const FpField& K = f0.field();
    if (f0.is_zero()) throw invalid_input("factor_fp: zero polynomial");
    std::vector<std::pair<Poly<FpField>, unsigned>> out;
    Poly<FpField> f = f0.monic();
    Rng rng(derive_seed(seed, "factor_fp"));
    mpz_class p(static_cast<unsigned long>(K.p()));

    std::vector<Poly<FpField>> irred;
    // collect irreducible factors of the squarefree part, recursing through
    // gcd(f, f') to peel multiplicities afterwards
    std::vector<Poly<FpField>> stack{f};
    while (!stack.empty()) {
        Poly<FpField> g = stack.back();
        stack.pop_back();
        if (g.degree() <= 0) continue;
        Poly<FpField> d = g.derivative();
        if (d.is_zero()) {
            // g = h(x^p); over F_p this equals (h(x))^p
            std::vector<std::uint64_t> hc(static_cast<std::size_t>(g.degree() / K.p()) + 1, 0);
            for (std::size_t i = 0; i < hc.size(); ++i) hc[i] = g.coeff(i * K.p());
            Poly<FpField> h(&K, std::move(hc));
            for (std::uint64_t i = 0; i < K.p(); ++i) stack.push_back(h);
            continue;
        }
        Poly<FpField> sq = poly_gcd(g, d);
        if (sq.degree() > 0) {
            stack.push_back(sq);
            stack.push_back(poly_divrem(g, sq).first);
            continue;
        }
        // g squarefree: distinct-degree split
        Poly<FpField> x = Poly<FpField>::x_power(K, 1);
        Poly<FpField> xe = poly_mod(x, g);
        Poly<FpField> rest = g;
        for (long d2 = 1; rest.degree() > 0 && d2 <= rest.degree(); ++d2) {
            xe = poly_powmod(xe, p, rest);
            Poly<FpField> gd = poly_gcd(xe - x, rest);
            if (gd.degree() > 0) {
                // equal-degree split of gd into irreducibles of degree d2
                std::vector<Poly<FpField>> eq{gd};
                while (!eq.empty()) {
                    Poly<FpField> h = eq.back();
                    eq.pop_back();
                    if (h.degree() == d2) {
                        irred.push_back(h.monic());
                        continue;
                    }
                    mpz_class half = (mpz_class(0) + 1);
                    mpz_pow_ui(half.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d2));
                    half = (half - 1) / 2;
                    for (;;) {
                        std::vector<std::uint64_t> rc(static_cast<std::size_t>(h.degree()), 0);
                        for (auto& c : rc) c = rng.below(K.p());
                        Poly<FpField> r(&K, std::move(rc));
                        if (r.is_zero()) continue;
                        Poly<FpField> t = poly_powmod(r, half, h) - Poly<FpField>::one(K);
                        Poly<FpField> g2 = poly_gcd(t, h);
                        if (g2.degree() > 0 && g2.degree() < h.degree()) {
                            eq.push_back(g2);
                            eq.push_back(poly_divrem(h, g2).first);
                            break;
                        }
                    }
                }
                rest = poly_divrem(rest, gd).first;
                xe = poly_mod(xe, rest.degree() > 0 ? rest : g);
            }
        }
        if (rest.degree() > 0) irred.push_back(rest.monic());
    }

    std::sort(irred.begin(), irred.end(), [](const Poly<FpField>& a, const Poly<FpField>& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (long i = a.degree(); i >= 0; --i) {
            auto ca = a.coeff(static_cast<std::size_t>(i)), cb = b.coeff(static_cast<std::size_t>(i));
            if (ca != cb) return ca < cb;
        }
        return false;
    });
    irred.erase(std::unique(irred.begin(), irred.end()), irred.end());
    for (const auto& g : irred) {
        unsigned e = 0;
        Poly<FpField> cur = f;
        for (;;) {
            auto [q2, r2] = poly_divrem(cur, g);
            if (!r2.is_zero()) break;
            ++e;
            cur = q2;
        }
        out.emplace_back(g, e);
    }
    return out;
}

}  // namespace picm

#endif
