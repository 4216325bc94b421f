#include "kappa/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace kappa {

Q parse_rational(const std::string& text) {
    std::string s;
    for (size_t k = 0; k < text.size(); ++k) {
        // U+2212 MINUS SIGN is accepted alongside '-'
        if (k + 2 < text.size() && (unsigned char)text[k] == 0xE2 && (unsigned char)text[k + 1] == 0x88 &&
            (unsigned char)text[k + 2] == 0x92) {
            s += '-';
            k += 2;
        } else if (!isspace((unsigned char)text[k])) {
            s += text[k];
        }
    }
    if (s.empty()) throw ConfigError("empty rational");
    if (s[0] == '+') s.erase(0, 1);
    Q q;
    if (q.set_str(s, 10) != 0) throw ConfigError("malformed rational '" + text + "'");
    if (s.find('/') != std::string::npos) {
        std::string den = s.substr(s.find('/') + 1);
        if (den.find_first_not_of('0') == std::string::npos) throw ConfigError("zero denominator in '" + text + "'");
    }
    q.canonicalize();
    return q;
}

std::string rational_str(const Q& q) { return q.get_str(); }

GaussRat GaussRat::inverse() const {
    Q n = re * re + im * im;
    if (sgn(n) == 0) throw AlgebraError("division by zero Gaussian rational");
    return GaussRat(Q(re / n), Q(-im / n));
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
    re += o.re;
    if (sgn(o.im) != 0) im += o.im;
    return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
    re -= o.re;
    if (sgn(o.im) != 0) im -= o.im;
    return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
        re *= o.re;
        return *this;
    }
    Q r = re * o.re - im * o.im;
    Q i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

std::string GaussRat::str() const {
    if (sgn(im) == 0) return re.get_str();
    if (sgn(re) == 0) {
        if (im == 1) return "i";
        if (im == -1) return "-i";
        return im.get_str() + "*i";
    }
    std::string s = "(" + re.get_str();
    if (sgn(im) > 0) s += "+";
    if (im == 1) s += "i";
    else if (im == -1) s += "-i";
    else s += im.get_str() + "*i";
    return s + ")";
}

std::string Trunc::str() const {
    auto one = [](int v) { return v == kExact ? std::string("exact") : std::to_string(v); };
    return "(" + one(h) + "," + one(xi) + ")";
}

Trunc merge_trunc(const Trunc& a, const Trunc& b) {
    Trunc r;
    auto pick = [](int x, int y, const char* what) {
        if (x == Trunc::kExact) return y;
        if (y == Trunc::kExact) return x;
        if (x != y) throw ConfigError(std::string("mismatched truncation orders in ") + what);
        return x;
    };
    r.h = pick(a.h, b.h, "h");
    r.xi = pick(a.xi, b.xi, "xi");
    return r;
}

Scalar::Scalar(const GaussRat& c, Mono m, Trunc t) : trunc_(t) {
    if (!c.is_zero() && m.dh <= t.h && m.dx <= t.xi) terms_.emplace_back(m, c);
}

void Scalar::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (t.first.dh > trunc_.h || t.first.dx > trunc_.xi) continue;
        if (!out.empty() && out.back().first == t.first) out.back().second += t.second;
        else out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second.is_zero(); }), out.end());
    terms_ = std::move(out);
}

bool Scalar::is_real() const {
    for (auto& t : terms_)
        if (!t.second.is_real()) return false;
    return true;
}

bool Scalar::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Mono{0, 0});
}

GaussRat Scalar::coeff(Mono m) const {
    for (auto& t : terms_)
        if (t.first == m) return t.second;
    return GaussRat();
}

int Scalar::min_h_degree() const {
    int d = 0;
    bool first = true;
    for (auto& t : terms_) {
        if (first || t.first.dh < d) d = t.first.dh;
        first = false;
    }
    return d;
}

int Scalar::max_h_degree() const {
    int d = 0;
    bool first = true;
    for (auto& t : terms_) {
        if (first || t.first.dh > d) d = t.first.dh;
        first = false;
    }
    return d;
}

int Scalar::max_xi_degree() const {
    int d = 0;
    for (auto& t : terms_) d = std::max(d, t.first.dx);
    return d;
}

Scalar Scalar::truncated(Trunc t) const {
    Scalar r = *this;
    r.trunc_ = t;
    r.normalize();
    return r;
}

Scalar Scalar::conj() const {
    Scalar r = *this;
    for (auto& t : r.terms_) t.second = t.second.conj();
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    trunc_ = merge_trunc(trunc_, o.trunc_);
    if (o.terms_.empty()) {
        if (!trunc_.is_exact()) normalize();
        return *this;
    }
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    r.trunc_ = merge_trunc(a.trunc_, b.trunc_);
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (auto& x : a.terms_)
        for (auto& y : b.terms_) {
            Mono m{x.first.dh + y.first.dh, x.first.dx + y.first.dx};
            if (m.dh > r.trunc_.h || m.dx > r.trunc_.xi) continue;
            r.terms_.emplace_back(m, x.second * y.second);
        }
    r.normalize();
    return r;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar& Scalar::operator*=(const GaussRat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

Scalar Scalar::shifted(int dh, int dx) const {
    Scalar r = *this;
    for (auto& t : r.terms_) {
        t.first.dh += dh;
        t.first.dx += dx;
    }
    r.normalize();
    return r;
}

Scalar Scalar::divided_by_monomial(const Scalar& m) const {
    if (m.terms_.size() != 1) throw AlgebraError("divided_by_monomial: divisor is not a monomial");
    auto& [mono, c] = m.terms_[0];
    Scalar r = shifted(-mono.dh, -mono.dx);
    r *= c.inverse();
    return r;
}

Scalar Scalar::rescale_h(const Q& lambda) const {
    Scalar r = *this;
    for (auto& t : r.terms_) {
        Q f(1);
        int n = t.first.dh;
        for (int k = 0; k < std::abs(n); ++k) f *= lambda;
        if (n < 0) f = 1 / f;
        t.second *= GaussRat(f);
    }
    r.normalize();
    return r;
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        std::string cs = c.str();
        bool unit_mono = m.dh == 0 && m.dx == 0;
        std::string mono;
        if (m.dh > 0) mono += "h" + (m.dh > 1 ? "^" + std::to_string(m.dh) : "");
        if (m.dh < 0) mono += "kappa" + (m.dh < -1 ? "^" + std::to_string(-m.dh) : "");
        if (m.dx > 0) mono += std::string(mono.empty() ? "" : "*") + "xi" + (m.dx > 1 ? "^" + std::to_string(m.dx) : "");
        std::string term;
        if (unit_mono) term = cs;
        else if (cs == "1") term = mono;
        else if (cs == "-1") term = "-" + mono;
        else term = cs + "*" + mono;
        if (!first && term[0] != '-') os << "+";
        os << term;
        first = false;
    }
    return os.str();
}

Scalar specialize(const Scalar& s, const std::map<std::string, Q>& values) {
    bool has_h = values.count("h") || values.count("kappa");
    Q hv;
    if (values.count("h")) hv = values.at("h");
    else if (values.count("kappa")) {
        if (sgn(values.at("kappa")) == 0) throw ConfigError("kappa must be nonzero");
        hv = 1 / values.at("kappa");
    }
    bool has_xi = values.count("xi") > 0;
    Scalar r;
    for (auto& [m, c] : s.terms()) {
        if (m.dh != 0 && !has_h) throw ConfigError("specialize: missing value for parameter h (kappa)");
        if (m.dx != 0 && !has_xi) throw ConfigError("specialize: missing value for parameter xi");
        Q f(1);
        if (m.dh != 0) {
            if (m.dh < 0 && sgn(hv) == 0) throw ConfigError("specialize: h = 0 in a kappa power");
            for (int k = 0; k < std::abs(m.dh); ++k) f *= hv;
            if (m.dh < 0) f = 1 / f;
        }
        for (int k = 0; k < m.dx; ++k) f *= values.at("xi");
        r += Scalar(c * GaussRat(f));
    }
    return r;
}

QMatrix identity(int n) {
    QMatrix m(n, std::vector<Q>(n));
    for (int k = 0; k < n; ++k) m[k][k] = 1;
    return m;
}

QMatrix transpose(const QMatrix& a) {
    if (a.empty()) return a;
    QMatrix t(a[0].size(), std::vector<Q>(a.size()));
    for (size_t r = 0; r < a.size(); ++r)
        for (size_t c = 0; c < a[r].size(); ++c) t[c][r] = a[r][c];
    return t;
}

QMatrix matmul(const QMatrix& a, const QMatrix& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    QMatrix r(n, std::vector<Q>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (sgn(a[i][l]) == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

QMatrix invert(const QMatrix& a) {
    int n = (int)a.size();
    QMatrix m = a, inv = identity(n);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (sgn(m[r][c]) != 0) { p = r; break; }
        if (p < 0) throw ConfigError("singular matrix");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        Q piv = m[c][c];
        for (int j = 0; j < n; ++j) {
            m[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || sgn(m[r][c]) == 0) continue;
            Q f = m[r][c];
            for (int j = 0; j < n; ++j) {
                m[r][j] -= f * m[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

Q determinant(QMatrix m) {
    int n = (int)m.size();
    Q det(1);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (sgn(m[r][c]) != 0) { p = r; break; }
        if (p < 0) return Q(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (sgn(m[r][c]) == 0) continue;
            Q f = m[r][c] / m[c][c];
            for (int j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

std::pair<int, int> exact_inertia(const QMatrix& g0) {
    int n = (int)g0.size();
    for (auto& row : g0)
        if ((int)row.size() != n) throw ConfigError("metric is not square");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g0[i][j] != g0[j][i]) throw ConfigError("metric is not symmetric");
    QMatrix g = g0;
    int p = 0, q = 0;
    while (!g.empty()) {
        int m = (int)g.size();
        int piv = -1;
        for (int k = 0; k < m; ++k)
            if (sgn(g[k][k]) != 0) { piv = k; break; }
        if (piv < 0) {
            // zero diagonal: the congruence e_i -> e_i + e_j produces 2 g_ij on the diagonal
            int pi = -1, pj = -1;
            for (int i = 0; i < m && pi < 0; ++i)
                for (int j = i + 1; j < m; ++j)
                    if (sgn(g[i][j]) != 0) { pi = i; pj = j; break; }
            if (pi < 0) throw ConfigError("degenerate metric");
            for (int k = 0; k < m; ++k) g[pi][k] += g[pj][k];
            for (int k = 0; k < m; ++k) g[k][pi] += g[k][pj];
            piv = pi;
        }
        Q d = g[piv][piv];
        (sgn(d) > 0 ? p : q)++;
        QMatrix next;
        for (int i = 0; i < m; ++i) {
            if (i == piv) continue;
            std::vector<Q> row;
            for (int j = 0; j < m; ++j) {
                if (j == piv) continue;
                row.push_back(g[i][j] - g[i][piv] * g[piv][j] / d);
            }
            next.push_back(std::move(row));
        }
        g = std::move(next);
    }
    return {p, q};
}

MetricData MetricData::from_matrix(const QMatrix& g) {
    MetricData m;
    m.dim = (int)g.size();
    if (m.dim == 0) throw ConfigError("metric of dimension 0");
    m.signature = exact_inertia(g);
    m.g = g;
    m.g_inv = invert(g);
    return m;
}

MetricData MetricData::diag(const std::vector<Q>& d) {
    QMatrix g(d.size(), std::vector<Q>(d.size()));
    for (size_t k = 0; k < d.size(); ++k) g[k][k] = d[k];
    return from_matrix(g);
}

MetricData MetricData::lorentz(int D) {
    std::vector<Q> d(D, Q(1));
    d[0] = -1;
    return diag(d);
}

MetricData MetricData::euclid(int D) { return diag(std::vector<Q>(D, Q(1))); }

MetricData MetricData::null_plane(int D) {
    if (D < 2) throw ConfigError("null-plane metric needs D >= 2");
    QMatrix g(D, std::vector<Q>(D));
    g[0][1] = g[1][0] = 1;
    for (int k = 2; k < D; ++k) g[k][k] = 1;
    return from_matrix(g);
}

MetricData MetricData::preset(const std::string& name, int D) {
    if (name == "lorentz") return lorentz(D);
    if (name == "euclid") return euclid(D);
    if (name == "null") return null_plane(D);
    if (name == "split") {
        std::vector<Q> d(D, Q(1));
        for (int k = 0; k < D / 2; ++k) d[k] = -1;
        return diag(d);
    }
    if (name == "mostly-minus") {
        std::vector<Q> d(D, Q(-1));
        d[0] = 1;
        return diag(d);
    }
    throw ConfigError("unknown metric preset '" + name + "'");
}

TauVector TauVector::make(const MetricData& m, const std::vector<Q>& up) {
    if ((int)up.size() != m.dim) throw ConfigError("tau has wrong number of components");
    bool nonzero = false;
    for (auto& c : up) nonzero = nonzero || sgn(c) != 0;
    if (!nonzero) throw ConfigError("tau must be nonzero");
    TauVector t;
    t.up = up;
    t.down.assign(m.dim, Q(0));
    for (int a = 0; a < m.dim; ++a)
        for (int b = 0; b < m.dim; ++b) t.down[a] += m.g[a][b] * up[b];
    t.tau2 = 0;
    for (int a = 0; a < m.dim; ++a) t.tau2 += t.down[a] * up[a];
    return t;
}

}  // namespace kappa
