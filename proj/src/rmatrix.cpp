#include "kappa/rmatrix.hpp"

#include <algorithm>
#include <array>

namespace kappa {

int LieAlgebra::index(const std::string& name) const {
    for (int k = 0; k < size(); ++k)
        if (names[k] == name) return k;
    throw ConfigError("unknown Lie generator '" + name + "'");
}

LieVec LieAlgebra::bracket(const LieVec& u, const LieVec& v) const {
    LieVec out;
    for (auto& [a, ca] : u)
        for (auto& [b, cb] : v)
            for (auto& [e, c] : f[a][b]) out[e] += ca * cb * c;
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero()) it = out.erase(it);
        else ++it;
    }
    return out;
}

bool LieAlgebra::jacobi_holds() const {
    int n = size();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                LieVec xa{{a, Scalar(1)}}, xb{{b, Scalar(1)}}, xc{{c, Scalar(1)}};
                LieVec s = bracket(xa, bracket(xb, xc));
                for (auto& [k, v] : bracket(xb, bracket(xc, xa))) s[k] += v;
                for (auto& [k, v] : bracket(xc, bracket(xa, xb))) s[k] += v;
                for (auto& [k, v] : s)
                    if (!v.is_zero()) return false;
            }
    return true;
}

LieAlgebra iso_lie(const IsoLayout& L, const MetricData& m) {
    LieAlgebra lie;
    for (auto& g : L.generators()) lie.names.push_back(g.name);
    lie.f.assign(L.size(), std::vector<LinComb>(L.size()));
    for (int a = 0; a < L.size(); ++a)
        for (int b = 0; b < L.size(); ++b) lie.f[a][b] = iso_bracket(L, m.g, a, b);
    return lie;
}

IsoContext IsoContext::make(const MetricData& m) { return make(m, numeric_labels(m.dim)); }

IsoContext IsoContext::make(const MetricData& m, const std::vector<std::string>& labels) {
    IsoContext c;
    c.layout = IsoLayout(m.dim, labels);
    c.metric = m;
    c.lie = iso_lie(c.layout, m);
    return c;
}

LieVec IsoContext::M(int mu, int nu) const {
    if (mu == nu) return {};
    if (mu < nu) return {{layout.M(mu, nu), Scalar(1)}};
    return {{layout.M(nu, mu), Scalar(-1)}};
}

LieVec IsoContext::P(int mu) const { return {{layout.P(mu), Scalar(1)}}; }

LieVec IsoContext::P_up(int mu) const {
    LieVec v;
    for (int nu = 0; nu < metric.dim; ++nu)
        if (sgn(metric.g_inv[mu][nu]) != 0) v[layout.P(nu)] = Scalar(GaussRat(metric.g_inv[mu][nu]));
    return v;
}

LieVec IsoContext::P_tau(const std::vector<Q>& tau_up) const {
    LieVec v;
    for (int mu = 0; mu < metric.dim; ++mu)
        if (sgn(tau_up[mu]) != 0) v[layout.P(mu)] = Scalar(GaussRat(tau_up[mu]));
    return v;
}

namespace {

// Sorts idx ascending; returns the permutation sign, or 0 on a repeated index.
int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j + 1 < idx.size() - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
    for (size_t j = 0; j + 1 < idx.size(); ++j)
        if (idx[j] == idx[j + 1]) return 0;
    return sign;
}

}  // namespace

Scalar WedgeTensor::coeff(std::vector<int> idx) const {
    int sign = sort_sign(idx);
    auto it = terms_.find(idx);
    if (sign == 0 || it == terms_.end()) return Scalar();
    return sign > 0 ? it->second : -it->second;
}

void WedgeTensor::add(std::vector<int> idx, const Scalar& c) {
    if ((int)idx.size() != rank_) throw AlgebraError("wedge rank mismatch");
    int sign = sort_sign(idx);
    if (c.is_zero() || sign == 0) return;
    Scalar& slot = terms_[idx];
    if (sign < 0) slot -= c;
    else slot += c;
    if (slot.is_zero()) terms_.erase(idx);
}

WedgeTensor& WedgeTensor::operator+=(const WedgeTensor& o) {
    if (o.rank_ != rank_) throw AlgebraError("wedge rank mismatch");
    for (auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

WedgeTensor& WedgeTensor::operator-=(const WedgeTensor& o) {
    if (o.rank_ != rank_) throw AlgebraError("wedge rank mismatch");
    for (auto& [k, c] : o.terms_) add(k, -c);
    return *this;
}

WedgeTensor& WedgeTensor::operator*=(const Scalar& s) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= s;
        if (it->second.is_zero()) it = terms_.erase(it);
        else ++it;
    }
    return *this;
}

std::string WedgeTensor::str(const LieAlgebra& lie) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [k, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")*";
        for (size_t j = 0; j < k.size(); ++j) s += (j ? "^" : "") + lie.names[k[j]];
    }
    return s;
}

WedgeTensor wedge(const LieVec& u, const LieVec& v) {
    WedgeTensor w(2);
    for (auto& [a, ca] : u)
        for (auto& [b, cb] : v) w.add({a, b}, ca * cb);
    return w;
}

WedgeTensor wedge(const LieVec& u, const LieVec& v, const LieVec& x) {
    WedgeTensor w(3);
    for (auto& [a, ca] : u)
        for (auto& [b, cb] : v)
            for (auto& [c, cc] : x) w.add({a, b, c}, ca * cb * cc);
    return w;
}

WedgeTensor build_r(const IsoContext& ctx, const std::vector<Q>& tau_up) {
    TauVector::make(ctx.metric, tau_up);
    WedgeTensor r(2);
    int D = ctx.metric.dim;
    for (int a = 0; a < D; ++a) {
        if (sgn(tau_up[a]) == 0) continue;
        for (int mu = 0; mu < D; ++mu) r += wedge(ctx.M(a, mu), ctx.P_up(mu)) * Scalar(GaussRat(tau_up[a]));
    }
    return r;
}

WedgeTensor wedge_from_terms(const LieAlgebra& lie,
                             const std::vector<std::tuple<std::string, std::string, Scalar>>& terms) {
    WedgeTensor r(2);
    for (auto& [a, b, c] : terms) r.add({lie.index(a), lie.index(b)}, c);
    return r;
}

WedgeTensor schouten(const LieAlgebra& lie, const WedgeTensor& r) {
    if (r.rank() != 2) throw AlgebraError("schouten bracket needs a rank-2 tensor");
    // full antisymmetric components r^{ab}
    std::vector<std::tuple<int, int, Scalar>> full;
    for (auto& [k, c] : r.terms()) {
        full.emplace_back(k[0], k[1], c);
        full.emplace_back(k[1], k[0], -c);
    }
    std::map<std::array<int, 3>, Scalar> T;
    for (auto& [a, b, rab] : full)
        for (auto& [c, d, rcd] : full) {
            Scalar w = rab * rcd;
            for (auto& [e, f] : lie.f[a][c]) T[{e, b, d}] += w * f;  // [r12, r13]
            for (auto& [e, f] : lie.f[b][c]) T[{a, e, d}] += w * f;  // [r12, r23]
            for (auto& [e, f] : lie.f[b][d]) T[{a, c, e}] += w * f;  // [r13, r23]
        }
    WedgeTensor out(3);
    for (auto& [k, c] : T)
        if (k[0] < k[1] && k[1] < k[2] && !c.is_zero()) out.add({k[0], k[1], k[2]}, c);
    return out;
}

WedgeTensor omega(const IsoContext& ctx) {
    int D = ctx.metric.dim;
    WedgeTensor w(3);
    for (int mu = 0; mu < D; ++mu)
        for (int nu = 0; nu < D; ++nu) w += wedge(ctx.M(mu, nu), ctx.P_up(mu), ctx.P_up(nu));
    // [[r, r]] = −(i/2) τ² M_{μν}∧P^μ∧P^ν for r = τ^α M_{αμ}∧P^μ
    return w * Scalar(GaussRat(Q(0), Q(1, 2)));
}

WedgeTensor ad_action(const LieAlgebra& lie, const LieVec& x, const WedgeTensor& w) {
    WedgeTensor out(w.rank());
    for (auto& [k, c] : w.terms())
        for (size_t leg = 0; leg < k.size(); ++leg)
            for (auto& [e, f] : lie.bracket(x, LieVec{{k[leg], Scalar(1)}})) {
                std::vector<int> idx = k;
                idx[leg] = e;
                out.add(idx, c * f);
            }
    return out;
}

std::string ybe_kind_name(YbeKind k) {
    switch (k) {
        case YbeKind::CYBE: return "CYBE";
        case YbeKind::MYBE: return "MYBE";
        case YbeKind::other: return "other";
    }
    return "?";
}

YbeResult ybe_classify(const IsoContext& ctx, const WedgeTensor& r) {
    YbeResult res{YbeKind::other, Scalar(), schouten(ctx.lie, r), WedgeTensor(3)};
    if (res.schouten.is_zero()) {
        res.kind = YbeKind::CYBE;
        return res;
    }
    WedgeTensor om = omega(ctx);
    auto first = om.terms().begin();
    GaussRat w = first->second.constant_term();
    res.lambda = res.schouten.coeff(first->first) * w.inverse();
    res.residual = res.schouten - om * res.lambda;
    if (res.residual.is_zero() && !res.lambda.is_zero()) res.kind = YbeKind::MYBE;
    else res.residual = res.schouten;
    return res;
}

}  // namespace kappa
