#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "picm/fp.hpp"
#include "picm/fq.hpp"
#include "picm/poly.hpp"
#include "picm/roots.hpp"

using namespace picm;

namespace {

template <class F>
void check_field_axioms(const F& K, int iters) {
    Rng rng(derive_seed(0, "axioms"));
    for (int i = 0; i < iters; ++i) {
        auto a = K.rand_elem(rng), b = K.rand_elem(rng), c = K.rand_elem(rng);
        EXPECT_TRUE(K.eq(K.mul(K.mul(a, b), c), K.mul(a, K.mul(b, c))));
        EXPECT_TRUE(K.eq(K.add(K.add(a, b), c), K.add(a, K.add(b, c))));
        EXPECT_TRUE(K.eq(K.mul(a, K.add(b, c)), K.add(K.mul(a, b), K.mul(a, c))));
        EXPECT_TRUE(K.eq(K.add(a, K.neg(a)), K.zero()));
        if (!K.is_zero(a)) EXPECT_TRUE(K.eq(K.mul(a, K.inv(a)), K.one()));
    }
}

}  // namespace

TEST(Fp, Axioms) {
    FpField F13(13);
    check_field_axioms(F13, 1000);
    FpField F127(127);
    check_field_axioms(F127, 1000);
}

TEST(Fp, RejectsBadModulus) {
    EXPECT_THROW(FpField(2), invalid_input);
    EXPECT_THROW(FpField(3), invalid_input);
    EXPECT_THROW(FpField(15), invalid_input);
}

TEST(Fq, AxiomsAndFrobenius) {
    for (auto [p, k] : {std::pair<std::uint64_t, unsigned>{13, 2}, {13, 3}, {127, 3}, {7, 4}}) {
        FqField K = build_extension(p, k);
        check_field_axioms(K, 1000);
        Rng rng(derive_seed(1, "frob"));
        int fixed_seen = 0;
        for (int i = 0; i < 200; ++i) {
            auto a = K.rand_elem(rng), b = K.rand_elem(rng);
            // Frobenius is a ring homomorphism
            EXPECT_TRUE(K.eq(K.frobenius_p(K.mul(a, b)), K.mul(K.frobenius_p(a), K.frobenius_p(b))));
            EXPECT_TRUE(K.eq(K.frobenius_p(K.add(a, b)), K.add(K.frobenius_p(a), K.frobenius_p(b))));
            // x^p = x exactly on the prime field
            bool fixed = K.eq(K.frobenius_p(a), a);
            EXPECT_EQ(fixed, K.in_base(a));
            if (fixed) ++fixed_seen;
            // p-th power agrees with the matrix route
            EXPECT_TRUE(K.eq(K.frobenius_p(a), K.pow_u(a, p)));
        }
        // full Frobenius orbit closes after k steps
        auto a = K.rand_elem(rng);
        auto b = a;
        for (unsigned i = 0; i < k; ++i) b = K.frobenius_p(b);
        EXPECT_TRUE(K.eq(a, b));
        (void)fixed_seen;
    }
}

TEST(BuildExtension, Degree1IsPrimeField) {
    FqField K = build_extension(13, 1);
    EXPECT_EQ(K.modulus().degree(), 1);
    EXPECT_EQ(K.size(), 13);
    EXPECT_TRUE(K.eq(K.mul(K.from_int(5), K.from_int(8)), K.from_int(40)));
}

TEST(BuildExtension, Degree2NoRootInschaftF13) {
    FqField K = build_extension(13, 2);
    const Poly<FpField>& m = K.modulus();
    EXPECT_EQ(m.degree(), 2);
    EXPECT_TRUE(m.is_monic());
    FpField F13(13);
    for (std::uint64_t x = 0; x < 13; ++x) EXPECT_FALSE(F13.is_zero(m.eval(x)));
}

TEST(BuildExtension, Degree3Irreducible127) {
    FqField K = build_extension(127, 3);
    const Poly<FpField>& m = K.modulus();
    EXPECT_EQ(m.degree(), 3);
    // x^127 - x has all of F_127 as roots; an irreducible cubic shares none
    FpField F(127);
    Poly<FpField> x = Poly<FpField>::x_power(F, 1);
    Poly<FpField> xp = poly_powmod(x, mpz_class(127), m);
    EXPECT_EQ(poly_gcd(xp - x, m).degree(), 0);
}

TEST(BuildExtension, DeterministicForFixedInputs) {
    EXPECT_EQ(build_extension(127, 3).modulus().coeffs(), build_extension(127, 3).modulus().coeffs());
    EXPECT_EQ(build_extension(13, 5, 7).modulus().coeffs(), build_extension(13, 5, 7).modulus().coeffs());
}

TEST(BuildExtension, CapIsRecoverable) {
    EXPECT_THROW(build_extension(13, 31), budget_exceeded);
    EXPECT_NO_THROW(build_extension(13, 31, 0, 40));
}

TEST(CubeValues, SpecExamples) {
    FpField F13(13);
    EXPECT_EQ(cube_values(F13, F13.zero()), (std::vector<std::uint64_t>{0}));
    EXPECT_EQ(cube_values(F13, F13.from_int(1)), (std::vector<std::uint64_t>{1, 3, 9}));
    // exhaustive: a non-cube has no preimage
    std::set<std::uint64_t> cubes;
    for (std::uint64_t y = 0; y < 13; ++y) cubes.insert(F13.mul(F13.sqr(y), y));
    for (std::uint64_t a = 0; a < 13; ++a) {
        auto got = cube_values(F13, a);
        if (cubes.count(a)) {
            EXPECT_EQ(got.size(), a == 0 ? 1u : 3u);
            for (auto y : got) EXPECT_EQ(F13.mul(F13.sqr(y), y), a);
        } else {
            EXPECT_TRUE(got.empty());
        }
    }
}

TEST(CubeValues, CardinalityProperty) {
    for (std::uint64_t p : {7, 13, 127, 11}) {  // 11 = 2 mod 3: cubing bijective
        FpField F(p);
        Rng rng(derive_seed(2, "cube"));
        for (int i = 0; i < 100; ++i) {
            auto a = F.rand_elem(rng);
            auto ys = cube_values(F, a);
            EXPECT_TRUE(ys.size() == 0 || ys.size() == 1 || ys.size() == 3);
            if (p % 3 == 2 && !F.is_zero(a)) EXPECT_EQ(ys.size(), 1u);
            for (auto y : ys) EXPECT_EQ(F.mul(F.sqr(y), y), a);
        }
    }
    FqField K = build_extension(13, 2);
    Rng rng(derive_seed(3, "cube2"));
    for (int i = 0; i < 50; ++i) {
        auto a = K.rand_elem(rng);
        auto ys = cube_values(K, a);
        EXPECT_TRUE(ys.size() == 0 || ys.size() == 1 || ys.size() == 3);
        for (const auto& y : ys) EXPECT_TRUE(K.eq(K.mul(K.sqr(y), y), a));
    }
}

TEST(PolyRoots, SpecExamples) {
    FpField F13(13);
    Poly<FpField> f(&F13, {F13.from_int(-1), 0, 1});  // x^2 - 1
    EXPECT_EQ(poly_roots(f), (std::vector<std::uint64_t>{1, 12}));

    FpField F7(7);
    Poly<FpField> g(&F7, {F7.from_int(-2), 0, 0, 1});  // x^3 - 2, 2 a non-cube mod 7
    EXPECT_TRUE(poly_roots(g).empty());

    EXPECT_THROW(poly_roots(Poly<FpField>(&F13)), invalid_input);
}

TEST(PolyRoots, PlantedRootsRoundtrip) {
    FpField F(127);
    Rng rng(derive_seed(4, "planted"));
    for (int it = 0; it < 40; ++it) {
        std::vector<std::uint64_t> planted;
        Poly<FpField> f = Poly<FpField>::one(F);
        int n = 1 + static_cast<int>(rng.below(5));
        for (int i = 0; i < n; ++i) {
            auto r = F.rand_elem(rng);
            planted.push_back(r);
            f = f * Poly<FpField>::linear_root(F, r);
        }
        std::sort(planted.begin(), planted.end());
        EXPECT_EQ(poly_roots(f), planted);
    }
}

TEST(PolyRoots, MultisetPartitionProperty) {
    FqField K = build_extension(13, 2);
    Rng rng(derive_seed(5, "part"));
    for (int it = 0; it < 25; ++it) {
        auto rand_poly = [&](int deg) {
            std::vector<FqField::Elem> c;
            for (int i = 0; i < deg; ++i) c.push_back(K.rand_elem(rng));
            c.push_back(K.one());
            return Poly<FqField>(&K, std::move(c));
        };
        Poly<FqField> f = rand_poly(1 + static_cast<int>(rng.below(3)));
        Poly<FqField> g = rand_poly(1 + static_cast<int>(rng.below(3)));
        auto rf = poly_roots(f), rg = poly_roots(g), rfg = poly_roots(f * g);
        std::vector<FqField::Elem> uni = rf;
        uni.insert(uni.end(), rg.begin(), rg.end());
        std::sort(uni.begin(), uni.end(), [&](const auto& a, const auto& b) { return K.to_index(a) < K.to_index(b); });
        EXPECT_EQ(rfg, uni);
    }
}

TEST(Squarefree, SpecExamples) {
    FpField F13(13);
    Poly<FpField> f(&F13, {0, 1, 0, 0, 1});  // x^4 + x
    EXPECT_TRUE(poly_squarefree(f));

    Poly<FpField> sq = Poly<FpField>::linear_root(F13, 1);
    Poly<FpField> g = sq * sq * Poly<FpField>(&F13, {1, 0, 1});  // (x-1)^2 (x^2+1)
    EXPECT_FALSE(poly_squarefree(g));

    Poly<FpField> x4 = Poly<FpField>::x_power(F13, 4);
    EXPECT_FALSE(poly_squarefree(x4));
}

TEST(FactorFp, RecombinesAndMatchesSplitting) {
    FpField F(13);
    Rng rng(derive_seed(6, "factor"));
    for (int it = 0; it < 30; ++it) {
        std::vector<std::uint64_t> c;
        int deg = 1 + static_cast<int>(rng.below(7));
        for (int i = 0; i < deg; ++i) c.push_back(F.rand_elem(rng));
        c.push_back(1);
        Poly<FpField> f(&F, std::move(c));
        auto fac = factor_fp(f);
        Poly<FpField> prod = Poly<FpField>::one(F);
        long degsum = 0;
        for (const auto& [g, e] : fac) {
            EXPECT_TRUE(is_irreducible_fp(g));
            for (unsigned i = 0; i < e; ++i) prod = prod * g;
            degsum += g.degree() * e;
        }
        EXPECT_EQ(prod, f.monic());
        EXPECT_EQ(degsum, f.degree());
    }
}

TEST(FactorFp, RepeatedFactorSeen) {
    // x^3 - x^2 - 2x + 1 mod 7 = (x+2)^3: 7 is totally ramified here
    FpField F(7);
    Poly<FpField> c(&F, {F.from_int(1), F.from_int(-2), F.from_int(-1), F.from_int(1)});
    auto fac = factor_fp(c);
    ASSERT_EQ(fac.size(), 1u);
    EXPECT_EQ(fac[0].first.degree(), 1);
    EXPECT_EQ(fac[0].second, 3u);
}
