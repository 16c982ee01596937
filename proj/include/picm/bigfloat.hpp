#ifndef PICM_BIGFLOAT_HPP
#define PICM_BIGFLOAT_HPP

#include <complex>
#include <vector>

#include <gmpxx.h>

#include "picm/zmath.hpp"

namespace picm {

using BF = mpf_class;

// Complex numbers over GMP floats. Precision is carried by the operands;
// constructors take an explicit bit precision.
struct CF {
    BF re, im;

    CF() : re(0), im(0) {}
    CF(const BF& r, const BF& i) : re(r), im(i) {}
    explicit CF(const BF& r) : re(r), im(0, r.get_prec()) {}
    CF(double r, double i, unsigned prec) : re(r, prec), im(i, prec) {}

    unsigned prec() const { return static_cast<unsigned>(re.get_prec()); }

    CF operator+(const CF& o) const { return {re + o.re, im + o.im}; }
    CF operator-(const CF& o) const { return {re - o.re, im - o.im}; }
    CF operator-() const { return {-re, -im}; }
    CF operator*(const CF& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    CF operator/(const CF& o) const {
        BF d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    CF conj() const { return {re, -im}; }
    BF norm2() const { return re * re + im * im; }
    BF abs() const {
        BF r(0, re.get_prec());
        BF n = norm2();
        mpf_sqrt(r.get_mpf_t(), n.get_mpf_t());
        return r;
    }
};

inline BF bf_sqrt(const BF& x) {
    BF r(0, x.get_prec());
    mpf_sqrt(r.get_mpf_t(), x.get_mpf_t());
    return r;
}

inline BF bf_pow2(long e, unsigned prec) {
    BF r(1, prec);
    if (e >= 0)
        mpf_mul_2exp(r.get_mpf_t(), r.get_mpf_t(), static_cast<unsigned long>(e));
    else
        mpf_div_2exp(r.get_mpf_t(), r.get_mpf_t(), static_cast<unsigned long>(-e));
    return r;
}

// exact conversion of a dyadic mpf to mpq
inline QQ bf_to_q(const BF& x) {
    QQ q;
    mpq_set_f(q.get_mpq_t(), x.get_mpf_t());
    return q;
}

inline CF cf_from_q(const QQ& q, unsigned prec) {
    BF r(0, prec);
    mpf_set_q(r.get_mpf_t(), q.get_mpq_t());
    return CF(r);
}

// primitive cube root of unity exp(2 pi i / 3) = (-1 + sqrt(-3)) / 2
inline CF omega_cf(unsigned prec) {
    BF three(3, prec);
    BF s = bf_sqrt(three);
    return {BF(-0.5, prec), s / 2};
}

inline CF cf_poly_eval(const std::vector<CF>& coeffs, const CF& x) {
    CF r(BF(0, x.prec()));
    for (std::size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
    return r;
}

inline std::vector<CF> zpoly_to_cf(const ZPoly& f, unsigned prec) {
    std::vector<CF> c;
    c.reserve(f.size());
    for (const auto& a : f) {
        BF r(0, prec);
        mpf_set_z(r.get_mpf_t(), a.get_mpz_t());
        c.push_back(CF(r));
    }
    return c;
}

// All real roots of a monic integer polynomial that is known to have only
// real simple roots (totally real). Bisection on sign changes of the exact
// integer evaluation at dyadic points, then Newton at full precision.
inline std::vector<BF> real_roots_totally_real(const ZPoly& f, unsigned prec) {
    long d = zpoly_deg(f);
    if (d < 1) throw invalid_input("real_roots_totally_real: degree < 1");
    // Cauchy bound on |root|
    ZZ bound = 2;
    for (const auto& c : f) {
        ZZ a = abs(c) + 1;
        if (a > bound) bound = a;
    }
    // sign of f at a rational point
    auto sign_at = [&](const QQ& x) {
        QQ acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + QQ(f[i]);
        return sgn(acc);
    };
    // recursively isolate roots in [lo, hi] by bisection on a fine grid
    std::vector<std::pair<QQ, QQ>> intervals;
    std::function<void(QQ, QQ, int)> isolate = [&](QQ lo, QQ hi, int depth) {
        if (static_cast<long>(intervals.size()) == d) return;
        int slo = sign_at(lo), shi = sign_at(hi);
        if (slo == 0) {
            intervals.emplace_back(lo, lo);
            slo = sign_at(lo - QQ(1, 1000000));
        }
        if (shi == 0) {
            intervals.emplace_back(hi, hi);
            return;
        }
        if (slo != shi && depth > 24) {
            intervals.emplace_back(lo, hi);
            return;
        }
        if (depth > 80) return;
        QQ mid = (lo + hi) / 2;
        // split whenever a sign change is possible; with simple real roots a
        // uniform refinement separates them
        isolate(lo, mid, depth + 1);
        isolate(mid, hi, depth + 1);
    };
    // refine by grids until all d roots are isolated
    std::vector<BF> roots;
    for (int grid = 4 * static_cast<int>(d); grid < 100000; grid *= 2) {
        intervals.clear();
        QQ lo = QQ(-bound), step = QQ(2 * bound, grid);
        QQ prev = lo;
        int sprev = sign_at(prev);
        for (int i = 1; i <= grid; ++i) {
            QQ cur = lo + step * i;
            int scur = sign_at(cur);
            if (sprev == 0) intervals.emplace_back(prev, prev);
            if (sprev != 0 && scur != 0 && sprev != scur) intervals.emplace_back(prev, cur);
            prev = cur;
            sprev = scur;
        }
        if (sprev == 0) intervals.emplace_back(prev, prev);
        if (static_cast<long>(intervals.size()) == d) break;
    }
    if (static_cast<long>(intervals.size()) != d)
        throw invalid_input("real_roots_totally_real: failed to isolate all real roots (input not totally real?)");
    // bisect each interval, then Newton-polish at target precision
    ZPoly df = zpoly_derivative(f);
    for (auto& [lo, hi] : intervals) {
        int slo = sign_at(lo);
        for (int it = 0; it < 64 && lo != hi; ++it) {
            QQ mid = (lo + hi) / 2;
            int sm = sign_at(mid);
            if (sm == 0) {
                lo = hi = mid;
                break;
            }
            if (sm == slo)
                lo = mid;
            else
                hi = mid;
        }
        BF x(0, prec + 64);
        {
            QQ mid = (lo + hi) / 2;
            mpf_set_q(x.get_mpf_t(), mid.get_mpq_t());
        }
        for (int it = 0; it < 200; ++it) {
            // Newton step with exact-coefficient evaluation in BF
            BF fv(0, prec + 64), dv(0, prec + 64), t(0, prec + 64);
            for (std::size_t i = f.size(); i-- > 0;) {
                mpf_set_z(t.get_mpf_t(), f[i].get_mpz_t());
                fv = fv * x + t;
            }
            for (std::size_t i = df.size(); i-- > 0;) {
                mpf_set_z(t.get_mpf_t(), df[i].get_mpz_t());
                dv = dv * x + t;
            }
            if (dv == 0) break;
            BF step = fv / dv;
            x -= step;
            BF tol = bf_pow2(-static_cast<long>(prec) - 8, prec + 64);
            if (step < 0) step = -step;
            if (step < tol) break;
        }
        roots.push_back(BF(x, prec));
    }
    std::sort(roots.begin(), roots.end(), [](const BF& a, const BF& b) { return a < b; });
    return roots;
}

// Round each coefficient of a complex polynomial to integers; fails if any
// imaginary part or rounding residual exceeds the given tolerance relative
// to the coefficient scale.
inline bool round_to_zpoly(const std::vector<CF>& coeffs, ZPoly& out, double log2_tol) {
    out.clear();
    BF scale(1, coeffs.empty() ? 64 : coeffs[0].prec());
    for (const auto& c : coeffs) {
        BF a = c.re < 0 ? BF(-c.re) : c.re;
        if (a > scale) scale = a;
    }
    BF tol = scale * bf_pow2(static_cast<long>(log2_tol), scale.get_prec());
    for (const auto& c : coeffs) {
        BF im = c.im < 0 ? BF(-c.im) : c.im;
        if (im > tol) return false;
        // nearest integer
        BF half(0.5, c.prec());
        BF shifted = c.re >= 0 ? BF(c.re + half) : BF(c.re - half);
        ZZ z;
        mpz_set_f(z.get_mpz_t(), shifted.get_mpf_t());
        BF resid(0, c.prec());
        mpf_set_z(resid.get_mpf_t(), z.get_mpz_t());
        resid = c.re - resid;
        if (resid < 0) resid = -resid;
        if (resid > tol) return false;
        out.push_back(z);
    }
    zpoly_trim(out);
    return true;
}

}  // namespace picm

#endif
