#include <gtest/gtest.h>

#include "picm/bigfloat.hpp"
#include "picm/zmath.hpp"

using namespace picm;

TEST(FactorInteger, SmallAndMedium) {
    auto f = factor_integer(ZZ(2 * 2 * 3 * 7 * 7 * 13));
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[0], (std::pair<ZZ, unsigned>(ZZ(2), 2)));
    EXPECT_EQ(f[1], (std::pair<ZZ, unsigned>(ZZ(3), 1)));
    EXPECT_EQ(f[2], (std::pair<ZZ, unsigned>(ZZ(7), 2)));
    EXPECT_EQ(f[3], (std::pair<ZZ, unsigned>(ZZ(13), 1)));

    // two 12-digit primes
    ZZ a("100000000003"), b("100000000019");
    auto g = factor_integer(a * b);
    ASSERT_EQ(g.size(), 2u);
    EXPECT_EQ(g[0].first, a);
    EXPECT_EQ(g[1].first, b);
}

TEST(Crt, PairsAndLift) {
    EXPECT_EQ(crt_pair(ZZ(3), ZZ(5), ZZ(4), ZZ(7)), ZZ(18));
    EXPECT_EQ(centered_lift(ZZ(30), ZZ(35)), ZZ(-5));
    EXPECT_EQ(centered_lift(ZZ(17), ZZ(35)), ZZ(17));
    EXPECT_EQ(centered_lift(ZZ(18), ZZ(35)), ZZ(-17));
}

TEST(QMatrix, InverseSolveDetCharpoly) {
    QMat m(3, 3);
    long vals[9] = {2, 1, 0, 1, 3, 1, 0, 1, 2};
    for (int i = 0; i < 9; ++i) m.a[i] = vals[i];
    QMat mi = qmat_inverse(m);
    EXPECT_EQ(qmat_mul(m, mi), QMat::identity(3));
    EXPECT_EQ(qmat_det(m), QQ(8));
    auto x = qmat_solve(m, {QQ(1), QQ(0), QQ(0)});
    // residual check
    EXPECT_EQ(m(0, 0) * x[0] + m(0, 1) * x[1] + m(0, 2) * x[2], QQ(1));
    auto cp = qmat_charpoly(m);
    // det(xI - M) = x^3 - 7x^2 + 14x - 8
    ASSERT_EQ(cp.size(), 4u);
    EXPECT_EQ(cp[0], QQ(-8));
    EXPECT_EQ(cp[1], QQ(14));
    EXPECT_EQ(cp[2], QQ(-7));
    EXPECT_EQ(cp[3], QQ(1));
}

TEST(Hnf, CanonicalAndRowSpacePreserving) {
    ZMat m(3, 3);
    long vals[9] = {4, 2, 0, 2, 8, 2, 0, 2, 12};
    for (int i = 0; i < 9; ++i) m.a[i] = vals[i];
    ZMat h = hnf_rows(m);
    ASSERT_EQ(h.rows, 3u);
    // upper triangular with positive diagonal, reduced above
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_GT(h(i, i), 0);
        for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(h(i, j), 0);
        for (std::size_t ii = 0; ii < i; ++ii) {
            EXPECT_GE(h(ii, i), 0);
            EXPECT_LT(h(ii, i), h(i, i));
        }
    }
    // determinant preserved up to sign for full-rank square input
    QMat q(3, 3), hq(3, 3);
    for (int i = 0; i < 9; ++i) {
        q.a[i] = QQ(vals[i]);
        hq.a[i] = QQ(h.a[i]);
    }
    EXPECT_EQ(abs(qmat_det(q)), abs(qmat_det(hq)));

    // duplicating rows must not change the HNF
    ZMat m2(6, 3);
    for (int i = 0; i < 9; ++i) {
        m2.a[i] = vals[i];
        m2.a[9 + i] = vals[i];
    }
    ZMat h2 = hnf_rows(m2);
    EXPECT_EQ(h, h2);
}

TEST(ZPoly, ResultantAndDisc) {
    // res(x^2 - 1, x - 2) = value of x^2 - 1 at 2 = 3
    ZPoly f{-1, 0, 1}, g{-2, 1};
    EXPECT_EQ(zpoly_resultant(f, g), ZZ(3));
    // disc(x^2 + bx + c) = b^2 - 4c
    ZPoly q{7, 3, 1};
    EXPECT_EQ(zpoly_disc(q), ZZ(9 - 28));
    // disc(x^3 + px + q) = -4p^3 - 27q^2
    ZPoly c{-1, -2, 0, 1};
    EXPECT_EQ(zpoly_disc(c), ZZ(-4 * (-8) - 27));
    // disc of x^3 - x^2 - 2x + 1 (conductor-7 cubic) is 49
    ZPoly c2{1, -2, -1, 1};
    EXPECT_EQ(zpoly_disc(c2), ZZ(49));
    // disc of x^3 + x^2 - 3x - 1 is 148
    ZPoly c3{-1, -3, 1, 1};
    EXPECT_EQ(zpoly_disc(c3), ZZ(148));
}

TEST(Rationalize, RecoverExactFractions) {
    QQ x(22, 7);
    EXPECT_EQ(rationalize(x, ZZ(100)), QQ(22, 7));
    // from a truncated decimal of 1/7
    QQ approx(142857143, 1000000000);
    EXPECT_EQ(rationalize(approx, ZZ(1000)), QQ(1, 7));
    QQ neg(-355, 113);
    EXPECT_EQ(rationalize(neg, ZZ(500)), QQ(-355, 113));
}

TEST(RealRoots, TotallyRealCubics) {
    for (ZPoly f : {ZPoly{1, -2, -1, 1}, ZPoly{-1, -3, 1, 1}, ZPoly{1, -3, 0, 1}}) {
        auto roots = real_roots_totally_real(f, 256);
        ASSERT_EQ(roots.size(), 3u);
        for (const auto& r : roots) {
            BF v(0, 320);
            BF t(0, 320);
            for (std::size_t i = f.size(); i-- > 0;) {
                mpf_set_z(t.get_mpf_t(), f[i].get_mpz_t());
                v = v * r + t;
            }
            if (v < 0) v = -v;
            EXPECT_LT(v, bf_pow2(-200, 320));
        }
        EXPECT_LT(roots[0], roots[1]);
        EXPECT_LT(roots[1], roots[2]);
    }
}

TEST(RoundToZPoly, ExpandFromRootsAndRecover) {
    unsigned prec = 256;
    // expand (x - r0)(x - r1)(x - r2) for the roots of x^3 - 3x + 1
    auto roots = real_roots_totally_real(ZPoly{1, -3, 0, 1}, prec);
    std::vector<CF> poly{CF(BF(1, prec))};
    for (const auto& r : roots) {
        std::vector<CF> next(poly.size() + 1, CF(BF(0, prec)));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = next[i + 1] + poly[i];
            next[i] = next[i] - poly[i] * CF(r);
        }
        poly = next;
    }
    ZPoly out;
    ASSERT_TRUE(round_to_zpoly(poly, out, -80));
    EXPECT_EQ(out, (ZPoly{1, -3, 0, 1}));
}
