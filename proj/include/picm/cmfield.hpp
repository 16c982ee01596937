#ifndef PICM_CMFIELD_HPP
#define PICM_CMFIELD_HPP

#include <array>
#include <optional>
#include <set>

#include "picm/numfield.hpp"
#include "picm/roots.hpp"

namespace picm {

// Embedding labels: idx = 2*i + eps where i indexes the real roots of the
// cubic in ascending order and eps = 0 picks omega = exp(2 pi i/3)
// (positive imaginary part), eps = 1 its conjugate. Labels (2i, 2i+1) are
// complex-conjugate pairs.
using Perm = std::array<std::size_t, 6>;
using TypeMask = unsigned;  // bit l set iff embedding label l belongs to the type

inline TypeMask type_from_eps(unsigned e0, unsigned e1, unsigned e2) {
    return (1u << (0 + e0)) | (1u << (2 + e1)) | (1u << (4 + e2));
}
inline bool mask_is_type(TypeMask t) {
    for (int i = 0; i < 3; ++i) {
        unsigned pair = (t >> (2 * i)) & 3u;
        if (pair != 1 && pair != 2) return false;
    }
    return (t >> 6) == 0;
}
inline TypeMask conj_type(TypeMask t) {
    TypeMask r = 0;
    for (int l = 0; l < 6; ++l)
        if (t & (1u << l)) r |= 1u << (l ^ 1);
    return r;
}
inline TypeMask apply_perm(const Perm& s, TypeMask t) {
    TypeMask r = 0;
    for (std::size_t l = 0; l < 6; ++l)
        if (t & (1u << l)) r |= 1u << s[l];
    return r;
}

// A sextic CM field K = K+(zeta_3) built from a totally real cubic,
// together with the embedding bookkeeping the CM machinery needs.
struct CMField {
    NfCtxPtr K;
    ZPoly cubic;
    long shift = 1;  // theta = alpha + shift * omega
    unsigned prec = 0;
    bool cubic_is_galois = false;
    std::vector<QQ> cubic_aut;               // cyclic case: A with A(root) = root' exactly
    std::array<std::size_t, 3> aut_root_perm{};  // cyclic case: A(r_i) = r_{perm[i]} numerically
    std::vector<Perm> gperms;                // Galois closure acting on the 6 labels
    NfElem zeta3;
    std::vector<BF> cubic_roots;             // ascending
};

namespace detail {

inline bool cubic_has_rational_root(const ZPoly& c) {
    // monic integer cubic: rational roots are integers dividing c[0]
    if (c[0] == 0) return true;
    ZZ a0 = abs(c[0]);
    for (ZZ d = 1; d * d <= a0; ++d) {
        if (a0 % d != 0) continue;
        for (const ZZ& cand : {d, a0 / d})
            for (int s : {1, -1})
                if (zpoly_eval(c, s * cand) == 0) return true;
    }
    return false;
}

// exact check that A defines an automorphism of Q[x]/(c): c(A(x)) = 0 mod c
inline bool verify_cubic_aut(const QField& Q, const ZPoly& c, const std::vector<QQ>& A) {
    QPoly cq = qpoly_from_z(Q, c);
    QPoly a(&Q, std::vector<QQ>(A.begin(), A.end()));
    QPoly acc = QPoly::zero(Q);
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = poly_mod(acc * a, cq);
        acc = acc + QPoly::constant(Q, QQ(c[i]));
    }
    return acc.is_zero();
}

}  // namespace detail

// Construct K = K+(zeta_3) from a monic, irreducible, totally real cubic.
inline CMField make_cm_field(const ZPoly& cubic_in, unsigned prec = 512) {
    ZPoly cubic = cubic_in;
    zpoly_trim(cubic);
    if (zpoly_deg(cubic) != 3 || cubic.back() != 1)
        throw invalid_input("make_cm_field: need a monic integer cubic");
    if (detail::cubic_has_rational_root(cubic)) throw invalid_input("make_cm_field: cubic is reducible");
    if (zpoly_disc(cubic) <= 0) throw invalid_input("make_cm_field: cubic is not totally real");

    CMField out;
    out.cubic = cubic;
    out.prec = prec;
    out.cubic_roots = real_roots_totally_real(cubic, prec);
    CF om = omega_cf(prec);

    // choose theta = alpha + t*omega with six distinct conjugates
    ZPoly m;
    std::vector<CF> roots6(6, CF(BF(0, prec)));
    long tshift = 0;
    for (long t = 1; t <= 16 && m.empty(); ++t) {
        for (std::size_t i = 0; i < 3; ++i)
            for (unsigned eps = 0; eps < 2; ++eps) {
                CF w = eps ? om.conj() : om;
                roots6[2 * i + eps] = CF(out.cubic_roots[i]) + CF(BF(t, prec)) * w;
            }
        bool distinct = true;
        BF sep = bf_pow2(-static_cast<long>(prec) / 4, prec);
        for (int a = 0; a < 6 && distinct; ++a)
            for (int b = a + 1; b < 6; ++b)
                if ((roots6[a] - roots6[b]).norm2() < sep * sep) distinct = false;
        if (!distinct) continue;
        std::vector<CF> poly{CF(BF(1, prec))};
        for (const auto& r : roots6) {
            std::vector<CF> next(poly.size() + 1, CF(BF(0, prec)));
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] = next[i + 1] + poly[i];
                next[i] = next[i] - poly[i] * r;
            }
            poly = next;
        }
        ZPoly cand;
        if (!round_to_zpoly(poly, cand, -static_cast<double>(prec) / 3)) continue;
        if (zpoly_deg(cand) != 6) continue;
        m = cand;
        tshift = t;
    }
    if (m.empty()) throw invalid_input("make_cm_field: could not build a sextic generator");
    out.shift = tshift;
    out.K = std::make_shared<NumberFieldCtx>(m, roots6);

    // locate zeta_3 exactly: embedding values are omega resp. conj(omega)
    {
        std::vector<CF> targets(6, CF(BF(0, prec)));
        for (std::size_t i = 0; i < 3; ++i) {
            targets[2 * i] = om;
            targets[2 * i + 1] = om.conj();
        }
        auto z = out.K->root_with_embedding_values(ZPoly{1, 1, 1}, targets);
        if (!z) throw std::logic_error("make_cm_field: failed to locate zeta_3");
        out.zeta3 = *z;
    }

    // Galois structure of the cubic: look for an exact automorphism A
    {
        QField Q;
        out.cubic_is_galois = false;
        for (int which = 0; which < 2 && !out.cubic_is_galois; ++which) {
            std::array<std::size_t, 3> sigma = which == 0 ? std::array<std::size_t, 3>{1, 2, 0}
                                                          : std::array<std::size_t, 3>{2, 0, 1};
            // solve the 3x3 real Vandermonde for A with A(r_i) = r_{sigma(i)}
            std::vector<std::vector<BF>> v(3, std::vector<BF>(4, BF(0, prec)));
            for (std::size_t i = 0; i < 3; ++i) {
                BF pw(1, prec);
                for (std::size_t j = 0; j < 3; ++j) {
                    v[i][j] = pw;
                    pw *= out.cubic_roots[i];
                }
                v[i][3] = out.cubic_roots[sigma[i]];
            }
            for (std::size_t col = 0; col < 3; ++col) {
                std::size_t piv = col;
                for (std::size_t i = col + 1; i < 3; ++i)
                    if (abs(v[i][col]) > abs(v[piv][col])) piv = i;
                std::swap(v[piv], v[col]);
                for (std::size_t i = 0; i < 3; ++i) {
                    if (i == col) continue;
                    BF f = v[i][col] / v[col][col];
                    for (std::size_t j = col; j < 4; ++j) v[i][j] -= f * v[col][j];
                }
            }
            for (long db : {24, 48, 96}) {
                ZZ den_bound = 1;
                mpz_mul_2exp(den_bound.get_mpz_t(), den_bound.get_mpz_t(), static_cast<unsigned long>(db));
                std::vector<QQ> A(3);
                for (std::size_t i = 0; i < 3; ++i) A[i] = rationalize(bf_to_q(v[i][3] / v[i][i]), den_bound);
                if (detail::verify_cubic_aut(Q, cubic, A)) {
                    out.cubic_is_galois = true;
                    out.cubic_aut = A;
                    out.aut_root_perm = sigma;
                    break;
                }
            }
        }
    }

    // Galois closure action on the 6 labels: (h, c) . (i, eps) = (h(i), eps xor c)
    {
        std::vector<std::array<std::size_t, 3>> hs;
        if (out.cubic_is_galois) {
            auto s = out.aut_root_perm;
            std::array<std::size_t, 3> id{0, 1, 2};
            std::array<std::size_t, 3> s2{s[s[0]], s[s[1]], s[s[2]]};
            hs = {id, s, s2};
        } else {
            std::array<std::size_t, 3> base{0, 1, 2};
            std::sort(base.begin(), base.end());
            do {
                hs.push_back(base);
            } while (std::next_permutation(base.begin(), base.end()));
        }
        for (const auto& h : hs)
            for (unsigned c = 0; c < 2; ++c) {
                Perm p{};
                for (std::size_t i = 0; i < 3; ++i)
                    for (unsigned eps = 0; eps < 2; ++eps) p[2 * i + eps] = 2 * h[i] + (eps ^ c);
                out.gperms.push_back(p);
            }
    }
    return out;
}

struct CMTypeInfo {
    TypeMask mask;
    bool primitive;
};

// All 8 CM types on K, deterministic order; a type is imprimitive exactly
// when its three embeddings agree on zeta_3 (induced from Q(zeta_3)).
inline std::vector<CMTypeInfo> cm_types(const CMField&) {
    std::vector<CMTypeInfo> out;
    for (unsigned e = 0; e < 8; ++e) {
        unsigned e0 = e & 1, e1 = (e >> 1) & 1, e2 = (e >> 2) & 1;
        TypeMask t = type_from_eps(e0, e1, e2);
        bool imprim = (e0 == e1 && e1 == e2);
        out.push_back({t, !imprim});
    }
    return out;
}

inline std::vector<TypeMask> primitive_types(const CMField& F) {
    std::vector<TypeMask> r;
    for (const auto& t : cm_types(F))
        if (t.primitive) r.push_back(t.mask);
    return r;
}

// left orbit { sigma Phi } under the Galois closure action
inline std::set<TypeMask> type_orbit(const CMField& F, TypeMask phi) {
    std::set<TypeMask> orb;
    for (const auto& s : F.gperms) orb.insert(apply_perm(s, phi));
    return orb;
}

// ---------------------------------------------------------------------------
// reflex field
// ---------------------------------------------------------------------------

// K* = Q(eta) for eta a type trace; constructed from the orbit values of
// eta = sum over Phi of q(theta) after checking they are pairwise distinct
// (q is perturbed deterministically until the trace is primitive). The
// minimal polynomial is the exact product over distinct orbit values.
struct ReflexResult {
    NfCtxPtr Kstar;
    std::vector<TypeMask> orbit;  // sorted
    ZPoly poly;
    int pert = 0;  // which trace generator q was used (0: theta, j: theta^2+(j-1)theta)
};

// Generic core: labels 0..n-1, closure action given as permutations of the
// labels, type given as a label mask. `roots_at` must return the embedding
// values per label at the requested precision.
template <class RootsAt>
ReflexResult reflex_from_action(const std::vector<std::vector<std::size_t>>& perms, unsigned mask,
                                std::size_t nlabels, unsigned base_prec, RootsAt roots_at) {
    std::set<unsigned> orbset;
    for (const auto& s : perms) {
        unsigned im = 0;
        for (std::size_t l = 0; l < nlabels; ++l)
            if (mask & (1u << l)) im |= 1u << s[l];
        orbset.insert(im);
    }
    std::vector<unsigned> orbit(orbset.begin(), orbset.end());

    for (unsigned prec = base_prec; prec <= 8 * base_prec; prec *= 2) {
        std::vector<CF> roots = roots_at(prec);
        for (int pert = 0; pert < 12; ++pert) {
            auto qval = [&](const CF& x) {
                if (pert == 0) return x;
                return x * x + CF(BF(pert - 1, prec)) * x;
            };
            std::vector<CF> etas;
            etas.reserve(orbit.size());
            for (unsigned t : orbit) {
                CF s(BF(0, prec));
                for (std::size_t l = 0; l < nlabels; ++l)
                    if (t & (1u << l)) s = s + qval(roots[l]);
                etas.push_back(s);
            }
            bool distinct = true;
            BF sep = bf_pow2(-static_cast<long>(prec) / 4, prec);
            for (std::size_t a = 0; a < etas.size() && distinct; ++a)
                for (std::size_t b = a + 1; b < etas.size(); ++b)
                    if ((etas[a] - etas[b]).norm2() < sep * sep) distinct = false;
            if (!distinct) continue;
            std::vector<CF> poly{CF(BF(1, prec))};
            for (const auto& r : etas) {
                std::vector<CF> next(poly.size() + 1, CF(BF(0, prec)));
                for (std::size_t i = 0; i < poly.size(); ++i) {
                    next[i + 1] = next[i + 1] + poly[i];
                    next[i] = next[i] - poly[i] * r;
                }
                poly = next;
            }
            ZPoly mstar;
            if (!round_to_zpoly(poly, mstar, -static_cast<double>(prec) / 3)) continue;
            if (zpoly_deg(mstar) != static_cast<long>(orbit.size())) continue;
            ReflexResult rr;
            rr.poly = mstar;
            rr.orbit.assign(orbit.begin(), orbit.end());
            rr.pert = pert;
            rr.Kstar = std::make_shared<NumberFieldCtx>(mstar, etas);
            return rr;
        }
    }
    throw budget_exceeded("reflex_from_action: failed to recognize the reflex field at any precision");
}

inline ReflexResult reflex_field(const CMField& F, TypeMask phi) {
    if (!mask_is_type(phi)) throw invalid_input("reflex_field: not a CM type mask");
    std::vector<std::vector<std::size_t>> perms;
    for (const auto& p : F.gperms) perms.emplace_back(p.begin(), p.end());
    auto roots_at = [&](unsigned prec) {
        auto rroots = real_roots_totally_real(F.cubic, prec);
        CF om = omega_cf(prec);
        std::vector<CF> roots6(6, CF(BF(0, prec)));
        for (std::size_t i = 0; i < 3; ++i)
            for (unsigned eps = 0; eps < 2; ++eps) {
                CF w = eps ? om.conj() : om;
                roots6[2 * i + eps] = CF(rroots[i]) + CF(BF(F.shift, prec)) * w;
            }
        return roots6;
    };
    return reflex_from_action(perms, phi, 6, F.prec, roots_at);
}

// ---------------------------------------------------------------------------
// mod-p pinning of embeddings to primes above p
// ---------------------------------------------------------------------------

// A Galois-consistent bijection between the embedding labels and the roots
// of the defining polynomial mod p (equivalently the primes above a split
// p). Any two legitimate pinnings differ by an element of the closure
// group, which the type-matching orbit absorbs.
struct PrimePinning {
    std::uint64_t p = 0;
    std::array<std::uint64_t, 6> label_root{};  // label -> root of m mod p
};

inline std::optional<PrimePinning> pin_prime(const CMField& F, std::uint64_t p) {
    if (p < 5 || p % 3 != 1) return std::nullopt;
    FpField Fp(p);
    if (mpz_divisible_ui_p(F.K->index().get_mpz_t(), p)) return std::nullopt;
    // roots of the cubic mod p (need 3 distinct) and of x^2+x+1 (2 roots)
    std::vector<std::uint64_t> s;
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t v = 0;
        for (std::size_t i = F.cubic.size(); i-- > 0;) {
            v = Fp.mul(v, x);
            v = Fp.add(v, Fp.from_mpz(F.cubic[i]));
        }
        if (v == 0) s.push_back(x);
    }
    if (s.size() != 3) return std::nullopt;
    std::vector<std::uint64_t> w;
    for (std::uint64_t x = 0; x < p; ++x)
        if (Fp.add(Fp.add(Fp.sqr(x), x), 1) == 0) w.push_back(x);
    if (w.size() != 2) return std::nullopt;

    // assign mod-p roots t[i] to the real roots r_i
    std::array<std::uint64_t, 3> t{};
    if (F.cubic_is_galois) {
        // follow the exact automorphism A on both sides
        // A mod p; fail if p divides a denominator
        std::array<std::uint64_t, 3> ac{};
        for (int i = 0; i < 3; ++i) {
            const QQ& c = F.cubic_aut[static_cast<std::size_t>(i)];
            if (mpz_divisible_ui_p(c.get_den().get_mpz_t(), p)) return std::nullopt;
            std::uint64_t num = Fp.from_mpz(c.get_num());
            std::uint64_t den = Fp.from_mpz(c.get_den());
            ac[static_cast<std::size_t>(i)] = Fp.mul(num, Fp.inv(den));
        }
        auto amodp = [&](std::uint64_t x) {
            return Fp.add(ac[0], Fp.mul(x, Fp.add(ac[1], Fp.mul(x, ac[2]))));
        };
        const auto& sig = F.aut_root_perm;
        t[0] = s[0];
        t[sig[0]] = amodp(t[0]);
        t[sig[sig[0]]] = amodp(t[sig[0]]);
        if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) return std::nullopt;
    } else {
        t = {s[0], s[1], s[2]};
    }

    PrimePinning pin;
    pin.p = p;
    std::set<std::uint64_t> seen;
    for (std::size_t i = 0; i < 3; ++i)
        for (unsigned eps = 0; eps < 2; ++eps) {
            std::uint64_t wv = eps ? w[1] : w[0];
            std::uint64_t val = Fp.add(t[i], Fp.mul(Fp.from_int(F.shift), wv));
            pin.label_root[2 * i + eps] = val;
            seen.insert(val);
        }
    if (seen.size() != 6) return std::nullopt;
    // every pinned value must be a root of the sextic mod p
    for (auto val : pin.label_root) {
        std::uint64_t v = 0;
        for (std::size_t i = F.K->defining_poly().size(); i-- > 0;) {
            v = Fp.mul(v, val);
            v = Fp.add(v, Fp.from_mpz(F.K->defining_poly()[i]));
        }
        if (v != 0) return std::nullopt;
    }
    return pin;
}

}  // namespace picm

#endif
