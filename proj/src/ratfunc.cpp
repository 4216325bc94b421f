#include "kappa/ratfunc.hpp"

#include <map>
#include <sstream>

namespace kappa {

namespace {

Scalar exact(const Scalar& s) { return s.trunc().is_exact() ? s : s.truncated(Trunc::exact()); }

int min_xi(const Scalar& s) {
    int m = 0;
    bool first = true;
    for (auto& [mono, c] : s.terms()) {
        if (first || mono.dx < m) m = mono.dx;
        first = false;
    }
    return m;
}

Scalar from_map(const std::map<Mono, GaussRat>& m) {
    Scalar s;
    for (auto& [mono, c] : m) s += Scalar(c, mono);
    return s;
}

std::optional<Q> rational_sqrt(const Q& q) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    Q r(rn, rd);
    r.canonicalize();
    return r;
}

std::optional<GaussRat> gauss_sqrt(const GaussRat& c) {
    auto m = rational_sqrt(c.re * c.re + c.im * c.im);
    if (!m) return std::nullopt;
    GaussRat r;
    if (auto x = rational_sqrt((c.re + *m) / 2); x && sgn(*x) != 0) {
        r = GaussRat(*x, c.im / (2 * *x));
    } else if (auto y = rational_sqrt((*m - c.re) / 2)) {
        r = GaussRat(Q(0), *y);
    } else {
        return std::nullopt;
    }
    if (r * r != c) return std::nullopt;
    return r;
}

}  // namespace

std::optional<Scalar> exact_divide(const Scalar& n0, const Scalar& d0) {
    Scalar n = exact(n0), d = exact(d0);
    if (d.is_zero()) throw AlgebraError("exact_divide: division by zero");
    if (n.is_zero()) return Scalar();
    int nh = n.min_h_degree(), dh = d.min_h_degree(), nx = min_xi(n), dx = min_xi(d);
    if (nx < dx) return std::nullopt;
    Scalar nn = n.shifted(-nh, -nx), dd = d.shifted(-dh, -dx);
    std::map<Mono, GaussRat> rem;
    for (auto& [m, c] : nn.terms()) rem[m] = c;
    auto [lm, lc] = dd.terms().back();  // terms are sorted; the last is lex-leading
    GaussRat lc_inv = lc.inverse();
    std::map<Mono, GaussRat> quo;
    while (!rem.empty()) {
        auto [m, c] = *rem.rbegin();
        if (m.dh < lm.dh || m.dx < lm.dx) return std::nullopt;
        Mono qm{m.dh - lm.dh, m.dx - lm.dx};
        GaussRat qc = c * lc_inv;
        quo[qm] += qc;
        for (auto& [dm, dc] : dd.terms()) {
            Mono t{dm.dh + qm.dh, dm.dx + qm.dx};
            GaussRat v = rem[t] - qc * dc;
            if (v.is_zero()) rem.erase(t);
            else rem[t] = v;
        }
    }
    return from_map(quo).shifted(nh - dh, nx - dx);
}

std::optional<Scalar> monomial_sqrt(const Scalar& s0) {
    Scalar s = exact(s0);
    if (s.is_zero()) return Scalar();
    if (!s.single_monomial()) return std::nullopt;
    auto [m, c] = s.terms()[0];
    if (m.dh % 2 != 0 || m.dx % 2 != 0) return std::nullopt;
    auto r = gauss_sqrt(c);
    if (!r) return std::nullopt;
    return Scalar(*r, {m.dh / 2, m.dx / 2});
}

RatFunc::RatFunc(const Scalar& n) : num_(exact(n)), den_(1) {}

RatFunc::RatFunc(const Scalar& n, const Scalar& d) : num_(exact(n)), den_(exact(d)) { reduce(); }

void RatFunc::reduce() {
    if (den_.is_zero()) throw AlgebraError("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Scalar(1);
        return;
    }
    int mh = std::min(num_.min_h_degree(), den_.min_h_degree());
    int mx = std::min(min_xi(num_), min_xi(den_));
    if (mh != 0 || mx != 0) {
        num_ = num_.shifted(-mh, -mx);
        den_ = den_.shifted(-mh, -mx);
    }
    if (den_.single_monomial()) {
        num_ = num_.divided_by_monomial(den_);
        den_ = Scalar(1);
        return;
    }
    GaussRat lc_inv = den_.terms().back().second.inverse();
    num_ *= lc_inv;
    den_ *= lc_inv;
    if (auto q = exact_divide(num_, den_)) {
        num_ = *q;
        den_ = Scalar(1);
    } else if (!num_.single_monomial()) {
        if (auto r = exact_divide(den_, num_)) {
            GaussRat c = r->terms().back().second.inverse();
            num_ = Scalar(c);
            den_ = *r * c;
        }
    }
}

std::optional<Scalar> RatFunc::as_scalar() const {
    if (den_ == Scalar(1)) return num_;
    return exact_divide(num_, den_);
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw AlgebraError("inverse of a zero rational function");
    return RatFunc(den_, num_);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.den_ == Scalar(1) && b.den_ == Scalar(1)) return RatFunc(a.num_ * b.num_);
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string RatFunc::str() const {
    if (den_ == Scalar(1)) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RMat rmat_identity(int n) {
    RMat m(n, RVec(n));
    for (int k = 0; k < n; ++k) m[k][k] = 1;
    return m;
}

RMat rmat_mul(const RMat& a, const RMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RMat out(n, RVec(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

namespace {

// In-place reduced row echelon form; returns the pivot columns.
std::vector<int> rref(RMat& m, int ncols) {
    std::vector<int> pivots;
    int r = 0;
    for (int col = 0; col < ncols && r < (int)m.size(); ++col) {
        int p = -1;
        for (int i = r; i < (int)m.size(); ++i)
            if (!m[i][col].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        RatFunc inv = m[r][col].inverse();
        for (auto& x : m[r]) x = x * inv;
        for (int i = 0; i < (int)m.size(); ++i) {
            if (i == r || m[i][col].is_zero()) continue;
            RatFunc f = m[i][col];
            for (size_t j = 0; j < m[i].size(); ++j)
                if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

}  // namespace

std::optional<RMat> rmat_inverse(const RMat& a) {
    int n = (int)a.size();
    RMat aug(n, RVec(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    auto piv = rref(aug, n);
    if ((int)piv.size() < n) return std::nullopt;
    RMat out(n, RVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
    return out;
}

RMat row_basis(const RMat& rows) {
    if (rows.empty()) return {};
    RMat m = rows;
    auto piv = rref(m, (int)m[0].size());
    m.resize(piv.size());
    return m;
}

std::optional<RVec> coordinates(const RVec& v, const RMat& basis) {
    int k = (int)basis.size(), n = (int)v.size();
    // columns: the basis vectors, then v
    RMat aug(n, RVec(k + 1));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < k; ++i) aug[j][i] = basis[i][j];
        aug[j][k] = v[j];
    }
    auto piv = rref(aug, k + 1);
    if (!piv.empty() && piv.back() == k) return std::nullopt;
    if ((int)piv.size() < k) throw AlgebraError("coordinates: basis vectors are dependent");
    RVec out(k);
    for (int i = 0; i < k; ++i) out[i] = aug[i][k];
    return out;
}

RMat nullspace(const RMat& m0) {
    if (m0.empty()) return {};
    int n = (int)m0[0].size();
    RMat m = m0;
    auto piv = rref(m, n);
    std::vector<bool> is_piv(n);
    for (int p : piv) is_piv[p] = true;
    RMat out;
    for (int f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        RVec v(n);
        v[f] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
        out.push_back(v);
    }
    return out;
}

std::string rmat_str(const RMat& m) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < m.size(); ++i) {
        os << (i ? ", [" : "[");
        for (size_t j = 0; j < m[i].size(); ++j) os << (j ? ", " : "") << m[i][j].str();
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace kappa
