#ifndef PICM_NUMFIELD_HPP
#define PICM_NUMFIELD_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "picm/bigfloat.hpp"
#include "picm/poly.hpp"
#include "picm/zmath.hpp"

namespace picm {

// The rationals as a runtime field object, so the generic Poly machinery
// works over Q.
struct QField {
    using Elem = QQ;
    static QQ zero() { return QQ(0); }
    static QQ one() { return QQ(1); }
    static QQ from_int(long long v) { return QQ(static_cast<long>(v)); }
    static bool is_zero(const QQ& a) { return a == 0; }
    static bool eq(const QQ& a, const QQ& b) { return a == b; }
    static QQ add(const QQ& a, const QQ& b) { return a + b; }
    static QQ sub(const QQ& a, const QQ& b) { return a - b; }
    static QQ neg(const QQ& a) { return -a; }
    static QQ mul(const QQ& a, const QQ& b) { return a * b; }
    static QQ inv(const QQ& a) {
        if (a == 0) throw invalid_input("QField: inverse of zero");
        return 1 / a;
    }
    static std::uint64_t char_p() { return 0; }
};

using QPoly = Poly<QField>;

inline QPoly qpoly_from_z(const QField& Q, const ZPoly& f) {
    std::vector<QQ> c;
    c.reserve(f.size());
    for (const auto& a : f) c.emplace_back(a);
    return QPoly(&Q, std::move(c));
}

// Element of a number field in power-basis coordinates (length n, exact
// rationals). Always paired with the owning NumberFieldCtx.
using NfElem = std::vector<QQ>;

class NumberFieldCtx;
using NfCtxPtr = std::shared_ptr<const NumberFieldCtx>;

// Integral ideal as a Z-basis in Hermite normal form with respect to the
// integral basis of the maximal order. Rows are basis vectors; the matrix
// is upper triangular with positive diagonal.
struct IdealHNF {
    ZMat h;       // n x n, row HNF
    ZZ norm = 0;  // product of the diagonal

    bool operator==(const IdealHNF& o) const { return h == o.h; }
};

// Exact arithmetic context for a number field K = Q[x]/(m), m monic
// irreducible over Z, together with its complex embeddings, maximal order,
// and the complex-conjugation automorphism (for totally imaginary K).
// Immutable after construction; share via NfCtxPtr.
class NumberFieldCtx {
public:
    // `roots`: the n complex roots of m, in a fixed labeling chosen by the
    // caller (the labeling defines the embedding indices used throughout).
    NumberFieldCtx(ZPoly m, std::vector<CF> roots, bool want_conjugation = true)
        : m_(std::move(m)), roots_(std::move(roots)) {
        zpoly_trim(m_);
        n_ = static_cast<std::size_t>(zpoly_deg(m_));
        if (n_ < 1) throw invalid_input("NumberFieldCtx: constant polynomial");
        if (m_.back() != 1) throw invalid_input("NumberFieldCtx: polynomial must be monic");
        if (roots_.size() != n_) throw invalid_input("NumberFieldCtx: need exactly deg(m) roots");
        prec_ = roots_[0].prec();
        mq_ = qpoly_from_z(Q_, m_);
        disc_poly_ = zpoly_disc(m_);
        if (disc_poly_ == 0) throw invalid_input("NumberFieldCtx: polynomial not squarefree");
        build_power_sums();
        compute_maximal_order();
        build_mult_table();
        if (want_conjugation) find_conjugation();
    }

    std::size_t degree() const { return n_; }
    const ZPoly& defining_poly() const { return m_; }
    const std::vector<CF>& embeddings() const { return roots_; }
    unsigned prec() const { return prec_; }
    const ZZ& disc_poly() const { return disc_poly_; }
    const ZZ& disc_field() const { return disc_field_; }
    const ZZ& index() const { return index_; }
    // rows of the integral basis in power-basis coordinates
    const QMat& integral_basis() const { return basis_; }
    bool has_conjugation() const { return have_rho_; }

    // ---- elements -----------------------------------------------------

    NfElem zero() const { return NfElem(n_, QQ(0)); }
    NfElem one() const {
        NfElem e(n_, QQ(0));
        e[0] = 1;
        return e;
    }
    NfElem gen() const {
        NfElem e(n_, QQ(0));
        if (n_ == 1)
            e[0] = QQ(-m_[0]);
        else
            e[1] = 1;
        return e;
    }
    NfElem from_q(const QQ& a) const {
        NfElem e(n_, QQ(0));
        e[0] = a;
        return e;
    }

    bool is_zero(const NfElem& a) const {
        for (const auto& c : a)
            if (c != 0) return false;
        return true;
    }
    bool eq(const NfElem& a, const NfElem& b) const { return a == b; }

    NfElem add(const NfElem& a, const NfElem& b) const {
        NfElem r(n_);
        for (std::size_t i = 0; i < n_; ++i) r[i] = a[i] + b[i];
        return r;
    }
    NfElem sub(const NfElem& a, const NfElem& b) const {
        NfElem r(n_);
        for (std::size_t i = 0; i < n_; ++i) r[i] = a[i] - b[i];
        return r;
    }
    NfElem neg(const NfElem& a) const {
        NfElem r(n_);
        for (std::size_t i = 0; i < n_; ++i) r[i] = -a[i];
        return r;
    }
    NfElem scale(const NfElem& a, const QQ& s) const {
        NfElem r(n_);
        for (std::size_t i = 0; i < n_; ++i) r[i] = a[i] * s;
        return r;
    }

    NfElem mul(const NfElem& a, const NfElem& b) const {
        QPoly pa(&Q_, std::vector<QQ>(a.begin(), a.end()));
        QPoly pb(&Q_, std::vector<QQ>(b.begin(), b.end()));
        QPoly pr = poly_mod(pa * pb, mq_);
        NfElem r(n_, QQ(0));
        for (std::size_t i = 0; i < n_; ++i) r[i] = pr.coeff(i);
        return r;
    }

    NfElem inv(const NfElem& a) const {
        if (is_zero(a)) throw invalid_input("NumberFieldCtx: inverse of zero");
        QPoly pa(&Q_, std::vector<QQ>(a.begin(), a.end()));
        auto [g, u, v] = poly_xgcd(pa, mq_);
        (void)v;
        if (g.degree() != 0) throw invalid_input("NumberFieldCtx: defining polynomial is reducible");
        QPoly ui = poly_mod(u.scaled(QField::inv(g.coeff(0))), mq_);
        NfElem r(n_, QQ(0));
        for (std::size_t i = 0; i < n_; ++i) r[i] = ui.coeff(i);
        return r;
    }

    NfElem pow(const NfElem& a, const ZZ& e) const {
        if (e < 0) return pow(inv(a), -e);
        NfElem r = one(), b = a;
        ZZ k = e;
        while (k > 0) {
            if (mpz_odd_p(k.get_mpz_t())) r = mul(r, b);
            b = mul(b, b);
            k >>= 1;
        }
        return r;
    }

    QQ trace(const NfElem& a) const {
        QQ t = 0;
        for (std::size_t i = 0; i < n_; ++i) t += a[i] * psums_[i];
        return t;
    }

    QQ norm(const NfElem& a) const { return qmat_det(mult_matrix(a)); }

    // matrix of multiplication by a on the power basis (columns = images)
    QMat mult_matrix(const NfElem& a) const {
        QMat m(n_, n_);
        NfElem cur = a;
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t i = 0; i < n_; ++i) m(i, j) = cur[i];
            if (j + 1 < n_) cur = mul_by_theta(cur);
        }
        return m;
    }

    // evaluate an integer polynomial at the generator
    NfElem eval_zpoly_at_gen(const ZPoly& f) const {
        NfElem r = zero();
        for (std::size_t i = f.size(); i-- > 0;) {
            r = mul_by_theta(r);
            r[0] += QQ(f[i]);
        }
        return r;
    }

    // numeric value of the element under embedding idx
    CF embed(const NfElem& a, std::size_t idx) const {
        CF r(BF(0, prec_));
        for (std::size_t i = n_; i-- > 0;) r = r * roots_[idx] + cf_from_q(a[i], prec_);
        return r;
    }

    // ---- integral structure --------------------------------------------

    // coordinates with respect to the integral basis; integral elements
    // have integer coordinates
    std::vector<QQ> to_order_coords(const NfElem& a) const {
        std::vector<QQ> r(n_, QQ(0));
        for (std::size_t j = 0; j < n_; ++j) {
            if (a[j] == 0) continue;
            for (std::size_t i = 0; i < n_; ++i) r[i] += a[j] * basis_inv_(j, i);
        }
        return r;
    }
    bool is_integral(const NfElem& a) const {
        for (auto& c : to_order_coords(a))
            if (c.get_den() != 1) return false;
        return true;
    }
    std::vector<ZZ> to_order_coords_z(const NfElem& a) const {
        std::vector<ZZ> r;
        r.reserve(n_);
        for (auto& c : to_order_coords(a)) {
            if (c.get_den() != 1) throw invalid_input("to_order_coords_z: element not integral");
            r.push_back(c.get_num());
        }
        return r;
    }
    NfElem from_order_coords(const std::vector<ZZ>& v) const {
        NfElem r(n_, QQ(0));
        for (std::size_t i = 0; i < n_; ++i) {
            if (v[i] == 0) continue;
            for (std::size_t j = 0; j < n_; ++j) r[j] += QQ(v[i]) * basis_(i, j);
        }
        return r;
    }
    NfElem basis_element(std::size_t i) const {
        NfElem r(n_, QQ(0));
        for (std::size_t j = 0; j < n_; ++j) r[j] = basis_(i, j);
        return r;
    }

    // ---- complex conjugation -------------------------------------------

    const NfElem& rho_gen() const {
        if (!have_rho_) throw invalid_input("NumberFieldCtx: conjugation not available");
        return rho_theta_;
    }
    NfElem conj(const NfElem& a) const {
        if (!have_rho_) throw invalid_input("NumberFieldCtx: conjugation not available");
        NfElem r = zero();
        for (std::size_t i = n_; i-- > 0;) {
            r = mul(r, rho_theta_);
            r[0] += a[i];
        }
        return r;
    }
    // embedding index paired with idx under complex conjugation
    std::size_t conj_embedding(std::size_t idx) const {
        if (!have_rho_) throw invalid_input("NumberFieldCtx: conjugation not available");
        return rho_perm_[idx];
    }

    // T2 Gram matrix on the integral basis: G_ij = Tr(w_i conj(w_j)).
    // Exact, positive definite.
    const QMat& t2_gram() const {
        if (gram_.rows == 0) {
            QMat g(n_, n_);
            std::vector<NfElem> wc(n_);
            for (std::size_t j = 0; j < n_; ++j) wc[j] = conj(basis_element(j));
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j < n_; ++j) g(i, j) = trace(mul(basis_element(i), wc[j]));
            gram_ = std::move(g);
        }
        return gram_;
    }

    // exact T2 value of an integral element given by order coordinates
    QQ t2_of_coords(const std::vector<ZZ>& v) const {
        const QMat& g = t2_gram();
        QQ acc = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (v[i] == 0) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (v[j] == 0) continue;
                acc += QQ(v[i] * v[j]) * g(i, j);
            }
        }
        return acc;
    }

    // ---- element recognition from numerics -------------------------------

    // Find x in K whose embedding values match `targets` (one per embedding
    // index), by solving the Vandermonde system at working precision,
    // rationalizing, and verifying exactly via the supplied predicate.
    template <class Verify>
    std::optional<NfElem> element_from_embedding_values(const std::vector<CF>& targets, Verify verify,
                                                        const ZZ& den_bound) const {
        if (targets.size() != n_) throw invalid_input("element_from_embedding_values: wrong target count");
        // solve V c = t with V_{ij} = roots_i^j by Gaussian elimination in CF
        std::vector<std::vector<CF>> v(n_, std::vector<CF>(n_ + 1, CF(BF(0, prec_))));
        for (std::size_t i = 0; i < n_; ++i) {
            CF p(BF(1, prec_));
            for (std::size_t j = 0; j < n_; ++j) {
                v[i][j] = p;
                p = p * roots_[i];
            }
            v[i][n_] = targets[i];
        }
        for (std::size_t col = 0; col < n_; ++col) {
            std::size_t piv = col;
            for (std::size_t i = col + 1; i < n_; ++i)
                if (v[i][col].norm2() > v[piv][col].norm2()) piv = i;
            if (v[piv][col].norm2() == 0) return std::nullopt;
            std::swap(v[piv], v[col]);
            for (std::size_t i = 0; i < n_; ++i) {
                if (i == col) continue;
                CF f = v[i][col] / v[col][col];
                for (std::size_t j = col; j <= n_; ++j) v[i][j] = v[i][j] - f * v[col][j];
            }
        }
        NfElem cand(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            CF c = v[i][n_] / v[i][i];
            cand[i] = rationalize(bf_to_q(c.re), den_bound);
        }
        if (!verify(cand)) return std::nullopt;
        return cand;
    }

    // Find the element of K equal to a root of `g` whose embedding values
    // are `targets`; verification is exact evaluation of g.
    std::optional<NfElem> root_with_embedding_values(const ZPoly& g, const std::vector<CF>& targets) const {
        for (int attempt = 0; attempt < 3; ++attempt) {
            ZZ den_bound = index_;
            mpz_mul_2exp(den_bound.get_mpz_t(), den_bound.get_mpz_t(), 16 + 16 * attempt);
            auto got = element_from_embedding_values(
                targets,
                [&](const NfElem& x) {
                    NfElem acc = zero();
                    for (std::size_t i = g.size(); i-- > 0;) {
                        acc = mul(acc, x);
                        acc[0] += QQ(g[i]);
                    }
                    return is_zero(acc);
                },
                den_bound);
            if (got) return got;
        }
        return std::nullopt;
    }

    // ---- ideals ----------------------------------------------------------

    IdealHNF ideal_whole() const {
        IdealHNF i;
        i.h = ZMat::identity(n_);
        i.norm = 1;
        return i;
    }

    IdealHNF ideal_from_rows(ZMat rows) const {
        IdealHNF r;
        r.h = hnf_rows(std::move(rows));
        if (r.h.rows != n_) throw invalid_input("ideal_from_rows: rank-deficient module");
        r.norm = 1;
        for (std::size_t i = 0; i < n_; ++i) r.norm *= r.h(i, i);
        return r;
    }

    // ideal generated by the listed integral elements together with the
    // rational integer c (use c = 0 for purely element-generated ideals)
    IdealHNF ideal_from_generators(const std::vector<NfElem>& gens, const ZZ& c = ZZ(0)) const {
        std::vector<std::vector<ZZ>> rows;
        for (const auto& g : gens) {
            auto gc = to_order_coords_z(g);
            for (std::size_t j = 0; j < n_; ++j) rows.push_back(table_mul(gc, j));
        }
        if (c != 0)
            for (std::size_t j = 0; j < n_; ++j) {
                std::vector<ZZ> r(n_, ZZ(0));
                r[j] = c;
                rows.push_back(r);
            }
        ZMat m(rows.size(), n_);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < n_; ++j) m(i, j) = rows[i][j];
        return ideal_from_rows(std::move(m));
    }

    IdealHNF ideal_mul(const IdealHNF& a, const IdealHNF& b) const {
        ZMat m(n_ * n_, n_);
        for (std::size_t i = 0; i < n_; ++i) {
            std::vector<ZZ> ra(n_);
            for (std::size_t k = 0; k < n_; ++k) ra[k] = a.h(i, k);
            for (std::size_t j = 0; j < n_; ++j) {
                std::vector<ZZ> rb(n_);
                for (std::size_t k = 0; k < n_; ++k) rb[k] = b.h(j, k);
                auto prod = table_mul_vec(ra, rb);
                for (std::size_t k = 0; k < n_; ++k) m(i * n_ + j, k) = prod[k];
            }
        }
        return ideal_from_rows(std::move(m));
    }

    IdealHNF ideal_principal_int(const ZZ& c) const {
        ZMat m(n_, n_);
        for (std::size_t i = 0; i < n_; ++i) m(i, i) = c;
        return ideal_from_rows(std::move(m));
    }

    bool ideal_contains(const IdealHNF& i, const std::vector<ZZ>& coords) const {
        std::vector<ZZ> x = coords;
        for (std::size_t col = n_; col-- > 0;) {
            ZZ q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x[col].get_mpz_t(), i.h(col, col).get_mpz_t());
            if (r != 0) return false;
            if (q != 0)
                for (std::size_t j = 0; j <= col; ++j) x[j] -= q * i.h(col, j);
        }
        return true;
    }

    bool ideal_contains_elem(const IdealHNF& i, const NfElem& x) const { return ideal_contains(i, to_order_coords_z(x)); }

    // image of an ideal under complex conjugation
    IdealHNF ideal_conj(const IdealHNF& i) const {
        ZMat rows(n_, n_);
        for (std::size_t r = 0; r < n_; ++r) {
            std::vector<ZZ> coords(n_);
            for (std::size_t j = 0; j < n_; ++j) coords[j] = i.h(r, j);
            auto img = to_order_coords_z(conj(from_order_coords(coords)));
            for (std::size_t j = 0; j < n_; ++j) rows(r, j) = img[j];
        }
        return ideal_from_rows(std::move(rows));
    }

    // multiply an order element (coords) by the j-th integral basis vector
    std::vector<ZZ> table_mul(const std::vector<ZZ>& a, std::size_t j) const {
        std::vector<ZZ> r(n_, ZZ(0));
        for (std::size_t i = 0; i < n_; ++i) {
            if (a[i] == 0) continue;
            const ZZ* row = &multtab_[(i * n_ + j) * n_];
            for (std::size_t k = 0; k < n_; ++k)
                if (row[k] != 0) r[k] += a[i] * row[k];
        }
        return r;
    }
    std::vector<ZZ> table_mul_vec(const std::vector<ZZ>& a, const std::vector<ZZ>& b) const {
        std::vector<ZZ> r(n_, ZZ(0));
        for (std::size_t i = 0; i < n_; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (b[j] == 0) continue;
                ZZ c = a[i] * b[j];
                const ZZ* row = &multtab_[(i * n_ + j) * n_];
                for (std::size_t k = 0; k < n_; ++k)
                    if (row[k] != 0) r[k] += c * row[k];
            }
        }
        return r;
    }

    // Dedekind-Kummer splitting of p (requires p coprime to the index).
    // Returns (prime ideal, residue degree, ramification index) sorted by
    // the factor ordering of factor_fp.
    struct PrimeFactor {
        IdealHNF ideal;
        unsigned f;
        unsigned e;
        ZPoly gen_poly;  // lift of the local factor: the prime is (p, g(theta))
    };
    std::vector<PrimeFactor> split_prime(std::uint64_t p) const;

private:
    NfElem mul_by_theta(const NfElem& a) const {
        NfElem r(n_, QQ(0));
        QQ top = a[n_ - 1];
        for (std::size_t i = n_ - 1; i-- > 0;) r[i + 1] = a[i];
        if (top != 0)
            for (std::size_t i = 0; i < n_; ++i) r[i] -= top * QQ(m_[i]);
        return r;
    }

    void build_power_sums() {
        // Newton's identities for the power sums of the roots of m:
        // p_k + sum_{i=1}^{min(k,n)-?} ... for monic m = x^n + a_{n-1}x^{n-1}+...+a_0,
        // k <= n: p_k = -k a_{n-k} - sum_{i=1}^{k-1} a_{n-i} p_{k-i}
        // k >  n: p_k = -sum_{i=1}^{n} a_{n-i} p_{k-i}
        std::size_t need = 2 * n_;
        psums_.assign(need, QQ(0));
        psums_[0] = QQ(static_cast<long>(n_));
        auto a = [&](std::size_t i) { return QQ(m_[i]); };
        for (std::size_t k = 1; k < need; ++k) {
            QQ s = 0;
            for (std::size_t i = 1; i <= std::min(k, n_); ++i) {
                if (i == k) continue;  // the i = k term is handled by the -k a_{n-k} summand
                s += a(n_ - i) * psums_[k - i];
            }
            psums_[k] = -s;
            if (k <= n_) psums_[k] -= QQ(static_cast<long>(k)) * a(n_ - k);
        }
    }

    void compute_maximal_order();
    void build_mult_table();
    void find_conjugation();

    QField Q_;
    ZPoly m_;
    QPoly mq_;
    std::vector<CF> roots_;
    std::size_t n_ = 0;
    unsigned prec_ = 0;
    ZZ disc_poly_, disc_field_, index_;
    QMat basis_, basis_inv_;
    std::vector<ZZ> multtab_;  // flattened n^3 structure constants
    std::vector<QQ> psums_;
    bool have_rho_ = false;
    NfElem rho_theta_;
    std::vector<std::size_t> rho_perm_;
    mutable QMat gram_;
};

// ---------------------------------------------------------------------------

inline void NumberFieldCtx::build_mult_table() {
    multtab_.assign(n_ * n_ * n_, ZZ(0));
    // products of integral basis elements, re-expressed in the integral basis
    std::vector<NfElem> w(n_);
    for (std::size_t i = 0; i < n_; ++i) w[i] = basis_element(i);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j) {
            auto prod = mul(w[i], w[j]);
            auto coords = to_order_coords(prod);
            for (std::size_t k = 0; k < n_; ++k) {
                if (coords[k].get_den() != 1)
                    throw std::logic_error("integral basis not multiplicatively closed");
                multtab_[(i * n_ + j) * n_ + k] = coords[k].get_num();
                multtab_[(j * n_ + i) * n_ + k] = coords[k].get_num();
            }
        }
}

inline void NumberFieldCtx::compute_maximal_order() {
    // Round-2 (Pohst-Zassenhaus): start from Z[theta] and enlarge at every
    // prime whose square divides the discriminant until p-maximal.
    basis_ = QMat::identity(n_);
    basis_inv_ = QMat::identity(n_);
    index_ = 1;
    ZZ disc = disc_poly_;
    auto fac = factor_integer(disc);

    for (const auto& [ell_z, e] : fac) {
        if (e < 2) continue;
        ZZ ell = ell_z;
        for (;;) {
            // order O given by basis_ (rows over power basis); work in O-coords
            // mult table of O mod ell
            std::vector<NfElem> w(n_);
            for (std::size_t i = 0; i < n_; ++i) w[i] = basis_element(i);
            // structure constants mod ell
            std::vector<ZZ> tab(n_ * n_ * n_);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = i; j < n_; ++j) {
                    auto coords = to_order_coords(mul(w[i], w[j]));
                    for (std::size_t k = 0; k < n_; ++k) {
                        if (coords[k].get_den() != 1) throw std::logic_error("order not closed");
                        ZZ v = coords[k].get_num() % ell;
                        if (v < 0) v += ell;
                        tab[(i * n_ + j) * n_ + k] = v;
                        tab[(j * n_ + i) * n_ + k] = v;
                    }
                }
            auto algebra_mul = [&](const std::vector<ZZ>& a, const std::vector<ZZ>& b) {
                std::vector<ZZ> r(n_, ZZ(0));
                for (std::size_t i = 0; i < n_; ++i) {
                    if (a[i] == 0) continue;
                    for (std::size_t j = 0; j < n_; ++j) {
                        if (b[j] == 0) continue;
                        ZZ c = a[i] * b[j] % ell;
                        for (std::size_t k = 0; k < n_; ++k) {
                            const ZZ& t = tab[(i * n_ + j) * n_ + k];
                            if (t != 0) r[k] = (r[k] + c * t) % ell;
                        }
                    }
                }
                return r;
            };
            // radical of ell O: kernel of x -> x^(ell^t), ell^t >= n
            ZZ lt = ell;
            while (lt < static_cast<long>(n_)) lt *= ell;
            // columns: image of each basis vector under x -> x^(ell^t)
            ZMat frob(n_, n_);
            for (std::size_t j = 0; j < n_; ++j) {
                std::vector<ZZ> x(n_, ZZ(0));
                x[j] = 1;
                // power by repeated multiplication: x^(ell^t) via square-and-multiply
                std::vector<ZZ> acc(n_, ZZ(0));
                acc[0] = 1;
                std::vector<ZZ> base = x;
                ZZ k = lt;
                while (k > 0) {
                    if (mpz_odd_p(k.get_mpz_t())) acc = algebra_mul(acc, base);
                    base = algebra_mul(base, base);
                    k >>= 1;
                }
                for (std::size_t i = 0; i < n_; ++i) frob(i, j) = acc[i];
            }
            // kernel of frob over F_ell
            // gaussian elimination mod ell
            std::vector<std::vector<ZZ>> mrows(n_, std::vector<ZZ>(n_));
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j < n_; ++j) mrows[i][j] = frob(i, j);
            std::vector<long> pivot_col;
            std::size_t rank = 0;
            auto invmod = [&](ZZ a) {
                ZZ g, u, v;
                a %= ell;
                if (a < 0) a += ell;
                mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), ell.get_mpz_t());
                u %= ell;
                if (u < 0) u += ell;
                return u;
            };
            std::vector<long> where(n_, -1);
            for (std::size_t col = 0; col < n_ && rank < n_; ++col) {
                std::size_t piv = rank;
                while (piv < n_ && mrows[piv][col] % ell == 0) ++piv;
                if (piv == n_) continue;
                std::swap(mrows[piv], mrows[rank]);
                ZZ iv = invmod(mrows[rank][col]);
                for (std::size_t j = 0; j < n_; ++j) mrows[rank][j] = mrows[rank][j] * iv % ell;
                for (std::size_t i = 0; i < n_; ++i) {
                    if (i == rank) continue;
                    ZZ f = mrows[i][col] % ell;
                    if (f < 0) f += ell;
                    if (f == 0) continue;
                    for (std::size_t j = 0; j < n_; ++j) {
                        mrows[i][j] = (mrows[i][j] - f * mrows[rank][j]) % ell;
                        if (mrows[i][j] < 0) mrows[i][j] += ell;
                    }
                }
                where[col] = static_cast<long>(rank);
                ++rank;
            }
            std::vector<std::vector<ZZ>> kernel;
            for (std::size_t col = 0; col < n_; ++col) {
                if (where[col] != -1) continue;
                std::vector<ZZ> v(n_, ZZ(0));
                v[col] = 1;
                for (std::size_t c2 = 0; c2 < n_; ++c2)
                    if (where[c2] != -1) {
                        ZZ val = mrows[static_cast<std::size_t>(where[c2])][col] % ell;
                        if (val < 0) val += ell;
                        v[c2] = (ell - val) % ell;
                    }
                kernel.push_back(std::move(v));
            }
            // J = radical lattice in O-coords: ker lifts + ell * identity
            ZMat jr(kernel.size() + n_, n_);
            for (std::size_t i = 0; i < kernel.size(); ++i)
                for (std::size_t j = 0; j < n_; ++j) jr(i, j) = kernel[i][j];
            for (std::size_t i = 0; i < n_; ++i) jr(kernel.size() + i, i) = ell;
            ZMat jh = hnf_rows(std::move(jr));
            // multiplier ring: x = (1/ell) sum a_i w_i with x J <= J
            // u_{i,k} = J-basis coordinates of w_i * g_k (integral since J is an ideal)
            // solve sum_i a_i u_{i,k} = 0 mod ell
            // J-coords of a vector via back substitution
            auto j_coords = [&](std::vector<ZZ> x) {
                std::vector<ZZ> y(n_, ZZ(0));
                for (std::size_t col = n_; col-- > 0;) {
                    ZZ q;
                    mpz_fdiv_q(q.get_mpz_t(), x[col].get_mpz_t(), jh(col, col).get_mpz_t());
                    ZZ r = x[col] - q * jh(col, col);
                    if (r != 0) throw std::logic_error("radical is not an ideal (coords)");
                    y[col] = q;
                    if (q != 0)
                        for (std::size_t j2 = 0; j2 <= col; ++j2) x[j2] -= q * jh(col, j2);
                }
                return y;
            };
            std::vector<std::vector<ZZ>> cond;  // rows indexed by (i), concatenated over k
            cond.assign(n_, std::vector<ZZ>());
            for (std::size_t k = 0; k < n_; ++k) {
                std::vector<ZZ> g(n_);
                for (std::size_t j = 0; j < n_; ++j) g[j] = jh(k, j);
                for (std::size_t i = 0; i < n_; ++i) {
                    std::vector<ZZ> wi(n_, ZZ(0));
                    wi[i] = 1;
                    // product w_i * g in O-coords via exact field mult
                    auto prod = to_order_coords(mul(w[i], from_order_coords(g)));
                    std::vector<ZZ> pz(n_);
                    for (std::size_t j = 0; j < n_; ++j) {
                        if (prod[j].get_den() != 1) throw std::logic_error("order not closed (radical)");
                        pz[j] = prod[j].get_num();
                    }
                    auto y = j_coords(std::move(pz));
                    for (std::size_t j = 0; j < n_; ++j) {
                        ZZ v = y[j] % ell;
                        if (v < 0) v += ell;
                        cond[i].push_back(v);
                    }
                }
            }
            // kernel over F_ell of the condition matrix (unknowns a_i)
            std::size_t m_eq = cond[0].size();
            std::vector<std::vector<ZZ>> cm(m_eq, std::vector<ZZ>(n_));
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t r2 = 0; r2 < m_eq; ++r2) cm[r2][i] = cond[i][r2];
            std::vector<long> where2(n_, -1);
            std::size_t rank2 = 0;
            for (std::size_t col = 0; col < n_ && rank2 < m_eq; ++col) {
                std::size_t piv = rank2;
                while (piv < m_eq && cm[piv][col] % ell == 0) ++piv;
                if (piv == m_eq) continue;
                std::swap(cm[piv], cm[rank2]);
                ZZ iv = invmod(cm[rank2][col]);
                for (std::size_t j = 0; j < n_; ++j) cm[rank2][j] = cm[rank2][j] * iv % ell;
                for (std::size_t i = 0; i < m_eq; ++i) {
                    if (i == rank2) continue;
                    ZZ f = cm[i][col] % ell;
                    if (f < 0) f += ell;
                    if (f == 0) continue;
                    for (std::size_t j = 0; j < n_; ++j) {
                        cm[i][j] = (cm[i][j] - f * cm[rank2][j]) % ell;
                        if (cm[i][j] < 0) cm[i][j] += ell;
                    }
                }
                where2[col] = static_cast<long>(rank2);
                ++rank2;
            }
            std::vector<std::vector<ZZ>> newelems;
            for (std::size_t col = 0; col < n_; ++col) {
                if (where2[col] != -1) continue;
                std::vector<ZZ> v(n_, ZZ(0));
                v[col] = 1;
                for (std::size_t c2 = 0; c2 < n_; ++c2)
                    if (where2[c2] != -1) {
                        ZZ val = cm[static_cast<std::size_t>(where2[c2])][col] % ell;
                        if (val < 0) val += ell;
                        v[c2] = (ell - val) % ell;
                    }
                newelems.push_back(std::move(v));
            }
            // always contains the trivial solutions a = ell e_i? no: a = 0 only;
            // the identity coset x in O corresponds to a = ell e_i which maps to 0 mod ell
            // O' lattice in O-coords: (1/ell) * span(ell I, newelems)
            ZMat oe(n_ + newelems.size(), n_);
            for (std::size_t i = 0; i < n_; ++i) oe(i, i) = ell;
            for (std::size_t i = 0; i < newelems.size(); ++i)
                for (std::size_t j = 0; j < n_; ++j) oe(n_ + i, j) = newelems[i][j];
            ZMat oh = hnf_rows(std::move(oe));
            ZZ det = 1;
            for (std::size_t i = 0; i < n_; ++i) det *= oh(i, i);
            ZZ elln;
            mpz_pow_ui(elln.get_mpz_t(), ell.get_mpz_t(), static_cast<unsigned long>(n_));
            if (det == elln) break;  // ell-maximal already
            // gained index: elln / det is a power of ell
            ZZ gain = elln / det;
            // new basis rows = (oh / ell) * basis_
            QMat nb(n_, n_);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j < n_; ++j) {
                    QQ acc = 0;
                    for (std::size_t k = 0; k < n_; ++k)
                        if (oh(i, k) != 0) acc += QQ(oh(i, k)) * basis_(k, j);
                    nb(i, j) = acc / QQ(ell);
                }
            basis_ = std::move(nb);
            basis_inv_ = qmat_inverse(basis_);
            // index of Z[theta] in O grows by gain^(1/?) -- actually the
            // enlargement multiplies [O':O] = gain ... but gain counts lattice
            // index directly: [O' : O] = elln / det
            index_ *= gain;  // wait: index_ is [O : Z[theta]]; new index = old * [O':O]
        }
        basis_inv_ = qmat_inverse(basis_);
    }
    basis_inv_ = qmat_inverse(basis_);
    // recompute the true index from the basis determinant: det(basis_) = 1/index
    QQ d = qmat_det(basis_);
    if (d == 0) throw std::logic_error("maximal order basis singular");
    QQ inv_index = d < 0 ? -d : d;
    // inv_index = 1/index
    QQ idx = 1 / inv_index;
    if (idx.get_den() != 1) throw std::logic_error("index not integral");
    index_ = idx.get_num();
    disc_field_ = disc_poly_ / (index_ * index_);
}

inline void NumberFieldCtx::find_conjugation() {
    // pair each embedding with its complex conjugate, then reconstruct the
    // automorphism sending theta to the element whose i-th embedding value
    // is conj(root_i)
    rho_perm_.assign(n_, 0);
    BF tol = bf_pow2(-static_cast<long>(prec_) / 2, prec_);
    bool totally_imaginary = true;
    for (std::size_t i = 0; i < n_; ++i) {
        CF target = roots_[i].conj();
        std::size_t best = n_;
        for (std::size_t j = 0; j < n_; ++j) {
            CF d = roots_[j] - target;
            if (d.norm2() < tol * tol) {
                best = j;
                break;
            }
        }
        if (best == n_) throw std::logic_error("embeddings not closed under conjugation");
        rho_perm_[i] = best;
        if (best == i) totally_imaginary = false;
    }
    if (!totally_imaginary) {
        have_rho_ = false;
        return;
    }
    std::vector<CF> targets(n_);
    for (std::size_t i = 0; i < n_; ++i) targets[i] = roots_[rho_perm_[i]];
    auto got = root_with_embedding_values(m_, targets);
    if (!got) throw std::logic_error("failed to reconstruct complex conjugation");
    rho_theta_ = *got;
    have_rho_ = true;
    // rho must be an involution: rho(rho(theta)) = theta
    NfElem twice = conj(rho_theta_);
    if (!eq(twice, gen())) throw std::logic_error("conjugation is not an involution");
}

inline std::vector<NumberFieldCtx::PrimeFactor> NumberFieldCtx::split_prime(std::uint64_t p) const {
    if (mpz_divisible_ui_p(index_.get_mpz_t(), p))
        throw invalid_input("split_prime: p divides the index [O_K : Z[theta]] (unsupported prime)");
    FpField F(p);
    std::vector<FpField::Elem> mc(n_ + 1);
    for (std::size_t i = 0; i <= n_; ++i) mc[i] = F.from_mpz(m_[i]);
    Poly<FpField> mp(&F, std::move(mc));
    if (mp.degree() != static_cast<long>(n_)) throw std::logic_error("split_prime: degree drop mod p");
    auto fac = factor_fp(mp);
    std::vector<PrimeFactor> out;
    for (const auto& [g, e] : fac) {
        ZPoly lift(static_cast<std::size_t>(g.degree()) + 1);
        for (std::size_t i = 0; i < lift.size(); ++i)
            lift[i] = ZZ(static_cast<unsigned long>(g.coeff(i)));
        NfElem gtheta = eval_zpoly_at_gen(lift);
        PrimeFactor pf;
        pf.ideal = ideal_from_generators({gtheta}, ZZ(static_cast<unsigned long>(p)));
        pf.f = static_cast<unsigned>(g.degree());
        pf.e = e;
        pf.gen_poly = lift;
        out.push_back(std::move(pf));
    }
    return out;
}

}  // namespace picm

#endif
