#ifndef PICM_ZMATH_HPP
#define PICM_ZMATH_HPP

#include <algorithm>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "picm/util.hpp"

namespace picm {

using ZZ = mpz_class;
using QQ = mpq_class;

// ---------------------------------------------------------------------------
// integer primes and factoring
// ---------------------------------------------------------------------------

inline bool is_probable_prime(const ZZ& n) { return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0; }

inline ZZ pollard_rho(const ZZ& n, std::uint64_t seed) {
    Rng rng(derive_seed(seed, "rho"));
    for (;;) {
        ZZ c(static_cast<unsigned long>(1 + rng.below(1000000)));
        ZZ x(static_cast<unsigned long>(2 + rng.below(1000000)));
        ZZ y = x, d = 1;
        // Brent-style cycle with batched gcds
        ZZ q = 1;
        int iter = 0;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            ZZ diff = x - y;
            if (diff == 0) break;
            q = (q * abs(diff)) % n;
            if (++iter % 64 == 0) {
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                if (d == n) break;
            }
            if (iter > 1 << 22) throw budget_exceeded("pollard_rho: no factor found for " + n.get_str());
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        if (d > 1 && d < n) return d;
    }
}

// n = product of l^e, ascending l. Throws budget_exceeded if a composite
// cofactor resists factoring (reported with the blocking composite).
inline std::vector<std::pair<ZZ, unsigned>> factor_integer(ZZ n) {
    if (n < 0) n = -n;
    if (n <= 1) return {};
    std::map<ZZ, unsigned> acc;
    std::vector<ZZ> work{n};
    while (!work.empty()) {
        ZZ m = work.back();
        work.pop_back();
        if (m == 1) continue;
        for (unsigned long d = 2; d < 100000 && ZZ(d) * d <= m; d = (d == 2 ? 3 : d + 2)) {
            while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
                acc[ZZ(d)]++;
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
            }
        }
        if (m == 1) continue;
        if (is_probable_prime(m)) {
            acc[m]++;
            continue;
        }
        ZZ d = pollard_rho(m, static_cast<std::uint64_t>(mpz_get_ui(m.get_mpz_t())));
        work.push_back(d);
        work.push_back(m / d);
    }
    return {acc.begin(), acc.end()};
}

// ---------------------------------------------------------------------------
// residues
// ---------------------------------------------------------------------------

// lift r mod m to the centered interval (-m/2, m/2]
inline ZZ centered_lift(const ZZ& r, const ZZ& m) {
    ZZ v = r % m;
    if (v < 0) v += m;
    if (2 * v > m) v -= m;
    return v;
}

// x = r1 mod m1, x = r2 mod m2 for coprime moduli; result in [0, m1 m2)
inline ZZ crt_pair(const ZZ& r1, const ZZ& m1, const ZZ& r2, const ZZ& m2) {
    ZZ g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    if (g != 1) throw invalid_input("crt_pair: moduli not coprime");
    ZZ m = m1 * m2;
    ZZ x = (r1 * v % m) * m2 + (r2 * u % m) * m1;
    x %= m;
    if (x < 0) x += m;
    return x;
}

// ---------------------------------------------------------------------------
// rational matrices
// ---------------------------------------------------------------------------

template <class T>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using QMat = Mat<QQ>;
using ZMat = Mat<ZZ>;

inline QMat qmat_mul(const QMat& x, const QMat& y) {
    if (x.cols != y.rows) throw invalid_input("qmat_mul: shape mismatch");
    QMat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
        }
    return r;
}

inline ZMat zmat_mul(const ZMat& x, const ZMat& y) {
    if (x.cols != y.rows) throw invalid_input("zmat_mul: shape mismatch");
    ZMat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
        }
    return r;
}

// Gauss-Jordan inverse; throws if singular.
inline QMat qmat_inverse(QMat m) {
    if (m.rows != m.cols) throw invalid_input("qmat_inverse: not square");
    std::size_t n = m.rows;
    QMat inv = QMat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col) == 0) ++piv;
        if (piv == n) throw invalid_input("qmat_inverse: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        QQ d = m(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m(i, col) == 0) continue;
            QQ f = m(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

inline QQ qmat_det(QMat m) {
    if (m.rows != m.cols) throw invalid_input("qmat_det: not square");
    std::size_t n = m.rows;
    QQ det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        QQ d = m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            QQ f = m(i, col) / d;
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

// Solve M x = b; throws if singular.
inline std::vector<QQ> qmat_solve(QMat m, std::vector<QQ> b) {
    if (m.rows != m.cols || m.rows != b.size()) throw invalid_input("qmat_solve: shape mismatch");
    std::size_t n = m.rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col) == 0) ++piv;
        if (piv == n) throw invalid_input("qmat_solve: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            std::swap(b[piv], b[col]);
        }
        QQ d = m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            QQ f = m(i, col) / d;
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
            b[i] -= f * b[col];
        }
    }
    std::vector<QQ> x(n);
    for (std::size_t i = n; i-- > 0;) {
        QQ s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= m(i, j) * x[j];
        x[i] = s / m(i, i);
    }
    return x;
}

inline std::size_t qmat_rank(QMat m) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
        std::size_t piv = r;
        while (piv < m.rows && m(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
        QQ d = m(r, col);
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            if (m(i, col) == 0) continue;
            QQ f = m(i, col) / d;
            for (std::size_t j = col; j < m.cols; ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

// characteristic polynomial of a rational matrix by Faddeev-LeVerrier;
// coefficients low-to-high, monic of degree n
inline std::vector<QQ> qmat_charpoly(const QMat& m) {
    if (m.rows != m.cols) throw invalid_input("qmat_charpoly: not square");
    std::size_t n = m.rows;
    std::vector<QQ> c(n + 1);
    c[n] = 1;
    QMat mk = QMat::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = qmat_mul(m, mk);
        QQ tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += mk(i, i);
        QQ ck = -tr / static_cast<long>(k);
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) mk(i, i) += ck;
    }
    return c;
}

// ---------------------------------------------------------------------------
// integer HNF (row-style): output upper triangular, positive pivots,
// entries above a pivot reduced into [0, pivot)
// ---------------------------------------------------------------------------

inline ZMat hnf_rows(ZMat m) {
    std::size_t rows = m.rows, cols = m.cols;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        // eliminate below the working row with a euclidean pass
        for (;;) {
            std::size_t piv = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (m(i, col) == 0) continue;
                if (piv == rows || abs(m(i, col)) < abs(m(piv, col))) piv = i;
            }
            if (piv == rows) break;  // column is zero from r down
            if (piv != r)
                for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
            if (m(r, col) < 0)
                for (std::size_t j = 0; j < cols; ++j) m(r, j) = -m(r, j);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (m(i, col) == 0) continue;
                ZZ q;
                mpz_fdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), m(r, col).get_mpz_t());
                if (q != 0)
                    for (std::size_t j = 0; j < cols; ++j) m(i, j) -= q * m(r, j);
                if (m(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m(r, col) == 0) continue;
        // reduce entries above the pivot
        for (std::size_t i = 0; i < r; ++i) {
            ZZ q;
            mpz_fdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), m(r, col).get_mpz_t());
            if (q != 0)
                for (std::size_t j = 0; j < cols; ++j) m(i, j) -= q * m(r, j);
        }
        ++r;
    }
    m.rows = r;
    m.a.resize(r * cols);
    return m;
}

// ---------------------------------------------------------------------------
// integer polynomials (dense, low-to-high)
// ---------------------------------------------------------------------------

using ZPoly = std::vector<ZZ>;

inline void zpoly_trim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline long zpoly_deg(const ZPoly& f) { return static_cast<long>(f.size()) - 1; }

inline ZPoly zpoly_mul(const ZPoly& f, const ZPoly& g) {
    if (f.empty() || g.empty()) return {};
    ZPoly r(f.size() + g.size() - 1, ZZ(0));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    return r;
}

inline ZPoly zpoly_derivative(const ZPoly& f) {
    if (f.size() <= 1) return {};
    ZPoly r(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * static_cast<long>(i);
    return r;
}

inline ZZ zpoly_eval(const ZPoly& f, const ZZ& x) {
    ZZ r = 0;
    for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
    return r;
}

// resultant of two integer polynomials via the Sylvester matrix and
// fraction-free (Bareiss) elimination
inline ZZ zpoly_resultant(const ZPoly& f0, const ZPoly& g0) {
    ZPoly f = f0, g = g0;
    zpoly_trim(f);
    zpoly_trim(g);
    long df = zpoly_deg(f), dg = zpoly_deg(g);
    if (df < 0 || dg < 0) return 0;
    if (df == 0) {
        ZZ r;
        mpz_pow_ui(r.get_mpz_t(), f[0].get_mpz_t(), static_cast<unsigned long>(dg));
        return r;
    }
    if (dg == 0) {
        ZZ r;
        mpz_pow_ui(r.get_mpz_t(), g[0].get_mpz_t(), static_cast<unsigned long>(df));
        return r;
    }
    std::size_t n = static_cast<std::size_t>(df + dg);
    ZMat s(n, n);
    for (long i = 0; i < dg; ++i)
        for (long j = 0; j <= df; ++j) s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) = f[static_cast<std::size_t>(df - j)];
    for (long i = 0; i < df; ++i)
        for (long j = 0; j <= dg; ++j)
            s(static_cast<std::size_t>(dg + i), static_cast<std::size_t>(i + j)) = g[static_cast<std::size_t>(dg - j)];
    // Bareiss
    ZZ prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (s(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && s(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(s(k, j), s(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                ZZ num = s(i, j) * s(k, k) - s(i, k) * s(k, j);
                mpz_divexact(s(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            s(i, k) = 0;
        }
        prev = s(k, k);
    }
    return sign > 0 ? s(n - 1, n - 1) : ZZ(-s(n - 1, n - 1));
}

// disc(f) = (-1)^(d(d-1)/2) res(f, f') / lc(f)
inline ZZ zpoly_disc(const ZPoly& f) {
    ZPoly g = f;
    zpoly_trim(g);
    long d = zpoly_deg(g);
    if (d < 1) throw invalid_input("zpoly_disc: degree < 1");
    ZZ res = zpoly_resultant(g, zpoly_derivative(g));
    ZZ out;
    mpz_divexact(out.get_mpz_t(), res.get_mpz_t(), g.back().get_mpz_t());
    if ((d * (d - 1) / 2) % 2 == 1) out = -out;
    return out;
}

// ---------------------------------------------------------------------------
// rational reconstruction from real approximations
// ---------------------------------------------------------------------------

// best rational approximation with denominator <= dmax, by continued
// fractions on an exact dyadic input
inline QQ rationalize(const QQ& x, const ZZ& dmax) {
    ZZ p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    QQ rem = x;
    for (int it = 0; it < 30000; ++it) {
        ZZ a;
        mpz_fdiv_q(a.get_mpz_t(), rem.get_num().get_mpz_t(), rem.get_den().get_mpz_t());
        ZZ p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > dmax) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        QQ frac = rem - QQ(a);
        if (frac == 0) break;
        rem = 1 / frac;
    }
    if (q1 == 0) return QQ(p0, q0 == 0 ? ZZ(1) : q0);
    QQ r(p1, q1);
    r.canonicalize();
    return r;
}

}  // namespace picm

#endif
