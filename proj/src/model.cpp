#include "kappa/model.hpp"

namespace kappa {

IsoLayout::IsoLayout(int D, std::vector<std::string> labels) : D_(D), labels_(std::move(labels)) {
    if (D < 1) throw ConfigError("dimension must be positive");
    if ((int)labels_.size() != D) throw ConfigError("label count does not match dimension");
    m_index_.assign(D, std::vector<int>(D, -1));
    for (int mu = 0; mu < D; ++mu)
        for (int nu = mu + 1; nu < D; ++nu) {
            Generator g;
            g.kind = GenKind::M;
            g.mu = mu;
            g.nu = nu;
            g.weight = 2;
            g.name = "M" + labels_[mu] + labels_[nu];
            m_index_[mu][nu] = (int)gens_.size();
            gens_.push_back(g);
        }
    n_m_ = (int)gens_.size();
    for (int mu = 0; mu < D; ++mu) {
        Generator g;
        g.kind = GenKind::P;
        g.mu = mu;
        g.weight = 1;
        g.name = "P" + labels_[mu];
        gens_.push_back(g);
    }
}

int IsoLayout::M(int mu, int nu) const {
    if (mu >= nu) throw AlgebraError("IsoLayout::M expects mu < nu");
    return m_index_[mu][nu];
}

std::vector<std::string> numeric_labels(int D) {
    std::vector<std::string> l;
    for (int k = 0; k < D; ++k) l.push_back(std::to_string(k));
    return l;
}

std::vector<std::string> null_labels(int D) {
    if (D < 2) throw ConfigError("null-plane labels need D >= 2");
    std::vector<std::string> l{"+", "-"};
    for (int k = 1; k <= D - 2; ++k) l.push_back(std::to_string(k));
    return l;
}

namespace {

void add_M(const IsoLayout& L, LinComb& out, int x, int y, const GaussRat& c) {
    if (x == y || c.is_zero()) return;
    if (x < y) out[L.M(x, y)] += c;
    else out[L.M(y, x)] -= c;
}

void prune(LinComb& l) {
    for (auto it = l.begin(); it != l.end();) {
        if (it->second.is_zero()) it = l.erase(it);
        else ++it;
    }
}

// [M_μν, P_ρ] = i(g_νρ P_μ − g_μρ P_ν)
LinComb bracket_MP(const IsoLayout& L, const QMatrix& g, int mu, int nu, int rho) {
    LinComb out;
    GaussRat i = GaussRat::I();
    out[L.P(mu)] += i * GaussRat(g[nu][rho]);
    out[L.P(nu)] -= i * GaussRat(g[mu][rho]);
    prune(out);
    return out;
}

// [M_μν, M_ρλ] = i(g_μλ M_νρ − g_νλ M_μρ + g_νρ M_μλ − g_μρ M_νλ)
LinComb bracket_MM(const IsoLayout& L, const QMatrix& g, int mu, int nu, int rho, int lam) {
    LinComb out;
    GaussRat i = GaussRat::I();
    add_M(L, out, nu, rho, i * GaussRat(g[mu][lam]));
    add_M(L, out, mu, rho, -(i * GaussRat(g[nu][lam])));
    add_M(L, out, mu, lam, i * GaussRat(g[nu][rho]));
    add_M(L, out, nu, lam, -(i * GaussRat(g[mu][rho])));
    prune(out);
    return out;
}

LinComb negate(LinComb l) {
    for (auto& [k, c] : l) c = -c;
    return l;
}

}  // namespace

LinComb iso_bracket(const IsoLayout& L, const QMatrix& g, int a, int b) {
    const auto& ga = L.generators()[a];
    const auto& gb = L.generators()[b];
    bool ma = ga.kind == GenKind::M, mb = gb.kind == GenKind::M;
    if (ma && mb) return bracket_MM(L, g, ga.mu, ga.nu, gb.mu, gb.nu);
    if (ma && !mb) return bracket_MP(L, g, ga.mu, ga.nu, gb.mu);
    if (!ma && mb) return negate(bracket_MP(L, g, gb.mu, gb.nu, ga.mu));
    return {};
}

PresPtr build_iso(const IsoLayout& L, const MetricData& m, Trunc t) {
    if (m.dim != L.dim()) throw ConfigError("metric dimension does not match layout");
    auto p = std::make_shared<Presentation>(L.generators(), t);
    for (int b = 0; b < L.size(); ++b)
        for (int a = 0; a < b; ++a) {
            LinComb c = iso_bracket(L, m.g, b, a);
            if (c.empty()) continue;
            Poly comm;
            for (auto& [k, v] : c) poly_add(comm, Word(1, (char)k), Scalar(v));
            p->set_swap(b, a, comm);
        }
    return p;
}

AlgElement IsoElements::M(int mu, int nu) const {
    if (mu == nu) return AlgElement(p);
    if (mu < nu) return AlgElement::gen(p, L.generators()[L.M(mu, nu)].name);
    return -AlgElement::gen(p, L.generators()[L.M(nu, mu)].name);
}

AlgElement IsoElements::P(int mu) const {
    if (mu == 0 && p0_subst) return *p0_subst;
    return AlgElement::gen(p, L.generators()[L.P(mu)].name);
}

AlgElement IsoElements::P_up(int mu) const {
    AlgElement out(p);
    for (int nu = 0; nu < L.dim(); ++nu)
        if (sgn(metric.g_inv[mu][nu]) != 0) out += P(nu) * Scalar(GaussRat(metric.g_inv[mu][nu]));
    return out;
}

AlgElement IsoElements::C() const {
    AlgElement out(p);
    for (int mu = 0; mu < L.dim(); ++mu)
        for (int nu = 0; nu < L.dim(); ++nu)
            if (sgn(metric.g_inv[mu][nu]) != 0) out += P(mu) * P(nu) * Scalar(GaussRat(metric.g_inv[mu][nu]));
    return out;
}

AlgElement IsoElements::P_tau() const {
    AlgElement out(p);
    for (int mu = 0; mu < L.dim(); ++mu)
        if (sgn(tau_up[mu]) != 0) out += P(mu) * Scalar(GaussRat(tau_up[mu]));
    return out;
}

AlgElement IsoElements::M_tau(int lambda) const {
    AlgElement out(p);
    for (int a = 0; a < L.dim(); ++a)
        if (sgn(tau_up[a]) != 0) out += M(a, lambda) * Scalar(GaussRat(tau_up[a]));
    return out;
}

std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::covariant_hadic: return "covariant_hadic";
        case Flavor::orthog_1_plus: return "orthog_1_plus";
        case Flavor::null_plane: return "null_plane";
        case Flavor::qanalog_timelike: return "qanalog_timelike";
        case Flavor::qanalog_lightlike: return "qanalog_lightlike";
    }
    return "?";
}

Flavor parse_flavor(const std::string& s) {
    for (Flavor f : {Flavor::covariant_hadic, Flavor::orthog_1_plus, Flavor::null_plane, Flavor::qanalog_timelike,
                     Flavor::qanalog_lightlike})
        if (flavor_name(f) == s) return f;
    throw ConfigError("unknown flavor '" + s + "'");
}

namespace {

using Vec = std::vector<Q>;

Q gdot(const QMatrix& g, const Vec& u, const Vec& v) {
    Q s;
    for (size_t a = 0; a < u.size(); ++a)
        for (size_t b = 0; b < v.size(); ++b)
            if (sgn(g[a][b]) != 0) s += u[a] * g[a][b] * v[b];
    return s;
}

Vec axpy(const Vec& x, const Q& a, const Vec& y) {
    Vec r = x;
    for (size_t k = 0; k < r.size(); ++k) r[k] += a * y[k];
    return r;
}

bool is_zero_vec(const Vec& v) {
    for (auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

// Orthogonal basis (nonzero norms) of span(pool), picking vectors in order.
std::vector<Vec> orthogonalize(const QMatrix& g, std::vector<Vec> pool, size_t want) {
    std::vector<Vec> out;
    while (out.size() < want) {
        std::vector<Vec> live;
        for (auto& v : pool)
            if (!is_zero_vec(v)) live.push_back(v);
        pool = live;
        if (pool.empty()) throw ConfigError("orthogonal complement is degenerate");
        std::optional<Vec> pick;
        for (auto& v : pool)
            if (sgn(gdot(g, v, v)) != 0) {
                pick = v;
                break;
            }
        if (!pick) {
            for (size_t a = 0; a < pool.size() && !pick; ++a)
                for (size_t b = a + 1; b < pool.size() && !pick; ++b)
                    if (sgn(gdot(g, pool[a], pool[b])) != 0) pick = axpy(pool[a], Q(1), pool[b]);
        }
        if (!pick) throw ConfigError("orthogonal complement is degenerate");
        Q n = gdot(g, *pick, *pick);
        for (auto& v : pool) v = axpy(v, -gdot(g, v, *pick) / n, *pick);
        out.push_back(*pick);
    }
    return out;
}

Vec unit(int D, int k) {
    Vec v(D);
    v[k] = 1;
    return v;
}

}  // namespace

Decomposition orthogonal_decompose(const MetricData& m, const std::vector<Q>& tau) {
    int D = m.dim;
    TauVector t = TauVector::make(m, tau);
    std::vector<Vec> basis;
    basis.push_back(tau);
    if (sgn(t.tau2) != 0) {
        std::vector<Vec> pool;
        for (int k = 0; k < D; ++k) {
            Vec e = unit(D, k);
            pool.push_back(axpy(e, -gdot(m.g, e, tau) / t.tau2, tau));
        }
        for (auto& v : orthogonalize(m.g, pool, D - 1)) basis.push_back(v);
    } else {
        if (m.signature.first == 0 || m.signature.second == 0)
            throw ConfigError("a null tau requires a non-Euclidean metric");
        int k0 = -1;
        for (int k = 0; k < D && k0 < 0; ++k)
            if (sgn(t.down[k]) != 0) k0 = k;
        Vec u = unit(D, k0);
        Q s = gdot(m.g, tau, u);
        for (auto& x : u) x /= s;
        Vec em = axpy(u, -gdot(m.g, u, u) / 2, tau);
        basis.push_back(em);
        std::vector<Vec> pool;
        for (int k = 0; k < D; ++k) {
            Vec e = unit(D, k);
            Vec w = axpy(e, -gdot(m.g, e, em), tau);
            w = axpy(w, -gdot(m.g, e, tau), em);
            pool.push_back(w);
        }
        for (auto& v : orthogonalize(m.g, pool, D - 2)) basis.push_back(v);
    }
    Decomposition d;
    d.A = basis;
    d.metric = MetricData::from_matrix(matmul(d.A, matmul(m.g, transpose(d.A))));
    d.tau_up = Vec(D);
    d.tau_up[0] = 1;
    return d;
}

BasisChange change_basis(const IsoElements& old_el, const QMatrix& A) {
    int D = old_el.L.dim();
    if ((int)A.size() != D) throw ConfigError("basis change has wrong size");
    if (sgn(determinant(A)) == 0) throw ConfigError("basis change matrix is singular");
    BasisChange bc;
    bc.metric = MetricData::from_matrix(matmul(A, matmul(old_el.metric.g, transpose(A))));
    bc.tau_down.assign(D, Q(0));
    for (int a = 0; a < D; ++a)
        for (int mu = 0; mu < D; ++mu) bc.tau_down[a] += A[a][mu] * old_el.tau_down[mu];
    bc.tau_up.assign(D, Q(0));
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) bc.tau_up[a] += bc.metric.g_inv[a][b] * bc.tau_down[b];
    IsoLayout L(D, old_el.L.labels());
    for (auto& g : L.generators()) {
        AlgElement img(old_el.p);
        if (g.kind == GenKind::P) {
            for (int mu = 0; mu < D; ++mu)
                if (sgn(A[g.mu][mu]) != 0) img += old_el.P(mu) * Scalar(GaussRat(A[g.mu][mu]));
        } else {
            for (int mu = 0; mu < D; ++mu)
                for (int nu = 0; nu < D; ++nu) {
                    Q c = A[g.mu][mu] * A[g.nu][nu];
                    if (sgn(c) != 0) img += old_el.M(mu, nu) * Scalar(GaussRat(c));
                }
        }
        bc.images.push_back(img);
    }
    return bc;
}

namespace {

TensorElement T(const AlgElement& a, const AlgElement& b) { return TensorElement::pure({a, b}); }
Scalar H(int n = 1) { return Scalar::h(n); }
Scalar R(const Q& q) { return Scalar(GaussRat(q)); }

AlgElement c_tau_series(const AlgElement& C, const Q& tau2) {
    return scaled_series<AlgElement>(
        C,
        [&](int k) {
            Q c = 2 * sqrt_coeff(k);
            for (int j = 1; j < k; ++j) c *= tau2;
            return c;
        },
        2, 2);
}

}  // namespace

KappaModel build_covariant(const MetricData& m, const std::vector<Q>& tau, Trunc t,
                           const std::vector<std::string>& labels, PresPtr reuse) {
    if (t.h == Trunc::kExact) throw ConfigError("h-adic flavors need a finite h order");
    KappaModel km;
    km.flavor = Flavor::covariant_hadic;
    km.metric = m;
    km.tau = TauVector::make(m, tau);
    km.layout = IsoLayout(m.dim, labels);
    km.pres = reuse ? reuse : build_iso(km.layout, m, t);
    IsoElements& e = km.el;
    e.p = km.pres;
    e.L = km.layout;
    e.metric = m;
    e.tau_up = km.tau.up;
    e.tau_down = km.tau.down;
    const Q& tau2 = km.tau.tau2;
    int D = m.dim;

    AlgElement one = e.one();
    AlgElement C = e.C();
    AlgElement Pt = e.P_tau();
    AlgElement root = series_sqrt(one + C * (R(tau2) * H(2)));
    AlgElement Pi = Pt * H() + root;
    AlgElement PiInv = series_inv(Pi);
    AlgElement Ct = c_tau_series(C, tau2);
    km.cas = {C, Ct, Pi, PiInv};

    HopfData hd(km.pres, "covariant " + flavor_name(km.flavor));
    std::vector<AlgElement> Pup;
    for (int a = 0; a < D; ++a) Pup.push_back(e.P_up(a));
    AlgElement CtPiInv = Ct * PiInv;

    for (int mu = 0; mu < D; ++mu) {
        Scalar tmu = R(km.tau.down[mu]);
        AlgElement P = e.P(mu);
        TensorElement d = T(P, Pi) + T(one, P);
        AlgElement s = P;
        if (!tmu.is_zero()) {
            for (int a = 0; a < D; ++a) d -= T(Pup[a] * PiInv, e.P(a)) * (tmu * H());
            d -= T(CtPiInv, Pt) * (tmu * H(2) * R(Q(1, 2)));
            s += (C + Pt * Ct * (H() * R(Q(1, 2)))) * (tmu * H());
        }
        hd.set(km.layout.P(mu), d, -(s * PiInv), Scalar());
    }
    for (int mu = 0; mu < D; ++mu)
        for (int nu = mu + 1; nu < D; ++nu) {
            Scalar tm = R(km.tau.down[mu]), tn = R(km.tau.down[nu]);
            AlgElement M = e.M(mu, nu);
            TensorElement d = T(M, one) + T(one, M);
            AlgElement s = -M;
            for (int a = 0; a < D; ++a) {
                AlgElement rhs = e.M(a, mu) * tn - e.M(a, nu) * tm;
                if (rhs.is_zero()) continue;
                d += T(Pup[a] * PiInv, rhs) * H();
                s += Pup[a] * rhs * H();
            }
            AlgElement mt = e.M_tau(nu) * tm - e.M_tau(mu) * tn;
            d -= T(CtPiInv, mt) * (H(2) * R(Q(1, 2)));
            s -= Ct * mt * (H(2) * R(Q(1, 2)));
            hd.set(km.layout.M(mu, nu), d, s, Scalar());
        }
    km.hopf = std::move(hd);
    km.star = self_adjoint_table(km.pres);
    return km;
}

namespace {

// Sub-Hopf algebra generated by every iso generator except P_0, plus Π^{±1}.
KappaModel build_qanalog(const Decomposition& dec, bool timelike) {
    KappaModel km;
    km.flavor = timelike ? Flavor::qanalog_timelike : Flavor::qanalog_lightlike;
    km.metric = dec.metric;
    km.tau = TauVector::make(dec.metric, dec.tau_up);
    int D = dec.metric.dim;
    km.layout = IsoLayout(D, timelike ? numeric_labels(D) : null_labels(D));
    const IsoLayout& L = km.layout;
    const QMatrix& g = dec.metric.g;
    const QMatrix& gi = dec.metric.g_inv;
    const Q& tau2 = km.tau.tau2;

    std::vector<Generator> gens;
    std::vector<int> map(L.size(), -1);
    for (int k = 0; k < L.size(); ++k) {
        if (k == L.P(0)) continue;
        map[k] = (int)gens.size();
        gens.push_back(L.generators()[k]);
    }
    Generator pi, pinv;
    pi.kind = GenKind::Pi;
    pi.name = "Pi";
    pinv.kind = GenKind::PiInv;
    pinv.name = "PiInv";
    int iPi = (int)gens.size(), iPinv = iPi + 1;
    gens.push_back(pi);
    gens.push_back(pinv);

    auto p = std::make_shared<Presentation>(gens, Trunc::exact());
    p->set_rule(iPi, iPinv, Poly{{Word(), Scalar(1)}});
    p->set_rule(iPinv, iPi, Poly{{Word(), Scalar(1)}});
    PresPtr cp = p;
    auto gen = [&](int k) { return AlgElement::gen(cp, k); };
    AlgElement one = AlgElement::one(cp), Pi = gen(iPi), PiInv = gen(iPinv);

    int first_t = timelike ? 1 : 2;
    AlgElement PP(cp);
    for (int a = first_t; a < D; ++a)
        for (int b = first_t; b < D; ++b)
            if (sgn(gi[a][b]) != 0) PP += gen(map[L.P(a)]) * gen(map[L.P(b)]) * R(gi[a][b]);

    AlgElement P0 = timelike ? (Pi - PiInv - PP * PiInv * (R(tau2) * H(2))) * (Scalar::kappa() * R(Q(1, 2)))
                             : (Pi - one) * Scalar::kappa();

    auto lift = [&](const LinComb& l) {
        AlgElement out(cp);
        for (auto& [k, c] : l) out += (k == L.P(0) ? P0 : gen(map[k])) * Scalar(c);
        return out;
    };

    for (int b = 0; b < L.size(); ++b)
        for (int a = 0; a < b; ++a) {
            if (map[a] < 0 || map[b] < 0) continue;
            AlgElement c = lift(iso_bracket(L, g, b, a));
            if (!c.is_zero()) p->set_swap(map[b], map[a], c.terms());
        }
    // [X, Π] = h [X, P_0]
    std::vector<AlgElement> xpi(L.size());
    for (int x = 0; x < L.size(); ++x) {
        if (map[x] < 0) continue;
        xpi[x] = lift(iso_bracket(L, g, x, L.P(0))) * H();
        if (!xpi[x].is_zero()) p->set_swap(iPi, map[x], (-xpi[x]).terms());
    }
    // Π^{-1} X = X Π^{-1} + Π^{-1} [X, Π] Π^{-1}
    for (int x = 0; x < L.size(); ++x) {
        if (map[x] < 0 || !xpi[x].pres() || xpi[x].is_zero()) continue;
        AlgElement c = PiInv * xpi[x] * PiInv;
        p->set_swap(iPinv, map[x], c.terms());
    }

    km.pres = cp;
    IsoElements& e = km.el;
    e.p = cp;
    e.L = L;
    e.metric = dec.metric;
    e.tau_up = km.tau.up;
    e.tau_down = km.tau.down;
    e.p0_subst = P0;
    km.P_tau_from_pi = P0;

    auto Pg = [&](int a) { return gen(map[L.P(a)]); };
    auto Pup = [&](int a) {
        AlgElement out(cp);
        for (int b = first_t; b < D; ++b)
            if (sgn(gi[a][b]) != 0) out += Pg(b) * R(gi[a][b]);
        return out;
    };
    auto Mg = [&](int mu, int nu) { return e.M(mu, nu); };

    HopfData hd(cp, flavor_name(km.flavor));
    hd.set(iPi, T(Pi, Pi), PiInv, Scalar(1));
    hd.set(iPinv, T(PiInv, PiInv), Pi, Scalar(1));
    AlgElement C = e.C();
    if (timelike) {
        for (int i = 1; i < D; ++i) {
            hd.set(map[L.P(i)], T(Pg(i), Pi) + T(one, Pg(i)), -(Pg(i) * PiInv), Scalar());
            for (int j = i + 1; j < D; ++j) {
                AlgElement M = Mg(i, j);
                hd.set(map[L.M(i, j)], T(M, one) + T(one, M), -M, Scalar());
            }
            AlgElement M = Mg(0, i);
            TensorElement d = T(M, one) + T(PiInv, M);
            AlgElement s = -(Pi * M);
            for (int j = 1; j < D; ++j) {
                d += T(Pup(j) * PiInv, Mg(i, j)) * (R(tau2) * H());
                s -= Pup(j) * Mg(j, i) * (R(tau2) * H());
            }
            hd.set(map[L.M(0, i)], d, s, Scalar());
        }
        AlgElement Ct = (Pi + PiInv - one * Scalar(2) + PP * PiInv * (R(tau2) * H(2))) *
                        (Scalar::kappa(2) * R(1 / tau2));
        km.cas = {C, Ct, Pi, PiInv};
    } else {
        AlgElement Pm = Pg(1);
        AlgElement Q1 = Pm + C * (H() * R(Q(1, 2)));  // P_- + C/(2κ)
        for (int a = 2; a < D; ++a)
            hd.set(map[L.P(a)], T(Pg(a), Pi) + T(one, Pg(a)), -(Pg(a) * PiInv), Scalar());
        {
            TensorElement d = T(Pm, Pi) + T(PiInv, Pm) - T(Q1 * PiInv, Pi - one);
            AlgElement PaPa(cp);
            for (int a = 2; a < D; ++a) {
                d -= T(Pup(a) * PiInv, Pg(a)) * H();
                PaPa += Pg(a) * Pup(a);
            }
            AlgElement s = -(Pm * Pi) - (one + Pi) * PaPa * PiInv * (H() * R(Q(1, 2)));
            hd.set(map[L.P(1)], d, s, Scalar());
        }
        {
            AlgElement M = Mg(0, 1);
            TensorElement d = T(M, one) + T(PiInv, M);
            AlgElement s = -(Pi * M);
            for (int a = 2; a < D; ++a) {
                d -= T(Pup(a) * PiInv, Mg(0, a)) * H();
                s -= Pup(a) * Mg(0, a) * H();
            }
            hd.set(map[L.M(0, 1)], d, s, Scalar());
        }
        for (int a = 2; a < D; ++a) {
            AlgElement Mp = Mg(0, a), Mm = Mg(1, a);
            hd.set(map[L.M(0, a)], T(Mp, one) + T(one, Mp), -Mp, Scalar());
            TensorElement d = T(Mm, one) + T(PiInv, Mm) - T(Q1 * PiInv, Mp) * H();
            AlgElement s = -(Pi * Mm) - Q1 * Mp * H();
            for (int b = 2; b < D; ++b) {
                d -= T(Pup(b) * PiInv, Mg(b, a)) * H();
                s -= Pup(b) * Mg(b, a) * H();
            }
            hd.set(map[L.M(1, a)], d, s, Scalar());
            for (int b = a + 1; b < D; ++b) {
                AlgElement M = Mg(a, b);
                hd.set(map[L.M(a, b)], T(M, one) + T(one, M), -M, Scalar());
            }
        }
        km.cas = {C, C, Pi, PiInv};
    }
    km.hopf = std::move(hd);
    km.star = self_adjoint_table(cp);
    return km;
}

}  // namespace

KappaModel build_kappa_hopf(const ModelConfig& cfg) {
    TauVector t = TauVector::make(cfg.metric, cfg.tau);
    bool null = sgn(t.tau2) == 0;
    bool euclid = cfg.metric.signature.first == 0 || cfg.metric.signature.second == 0;
    switch (cfg.flavor) {
        case Flavor::covariant_hadic:
            return build_covariant(cfg.metric, cfg.tau, cfg.trunc, numeric_labels(cfg.metric.dim));
        case Flavor::orthog_1_plus: {
            if (null) throw ConfigError("orthog_1_plus requires tau^2 != 0");
            auto dec = orthogonal_decompose(cfg.metric, cfg.tau);
            auto km = build_covariant(dec.metric, dec.tau_up, cfg.trunc, numeric_labels(cfg.metric.dim));
            km.flavor = Flavor::orthog_1_plus;
            km.hopf.name = "covariant " + flavor_name(km.flavor);
            return km;
        }
        case Flavor::null_plane: {
            if (!null || euclid) throw ConfigError("null_plane requires tau^2 = 0 and a non-Euclidean metric");
            auto dec = orthogonal_decompose(cfg.metric, cfg.tau);
            auto km = build_covariant(dec.metric, dec.tau_up, cfg.trunc, null_labels(cfg.metric.dim));
            km.flavor = Flavor::null_plane;
            km.hopf.name = "covariant " + flavor_name(km.flavor);
            return km;
        }
        case Flavor::qanalog_timelike:
            if (null) throw ConfigError("qanalog_timelike requires tau^2 != 0");
            return build_qanalog(orthogonal_decompose(cfg.metric, cfg.tau), true);
        case Flavor::qanalog_lightlike:
            if (!null || euclid) throw ConfigError("qanalog_lightlike requires tau^2 = 0 and a non-Euclidean metric");
            return build_qanalog(orthogonal_decompose(cfg.metric, cfg.tau), false);
    }
    throw ConfigError("unknown flavor");
}

HopfData orthog_display_hopf(const KappaModel& m) {
    if (m.flavor != Flavor::orthog_1_plus) throw ConfigError("orthogonal displays need the orthog_1_plus flavor");
    const IsoElements& e = m.el;
    int D = m.metric.dim;
    const Q& tau2 = m.tau.tau2;
    const QMatrix& gi = m.metric.g_inv;
    AlgElement one = e.one(), C = e.C(), P0 = e.P(0);
    AlgElement PP(e.p);
    for (int a = 1; a < D; ++a)
        for (int b = 1; b < D; ++b)
            if (sgn(gi[a][b]) != 0) PP += e.P(a) * e.P(b) * R(gi[a][b]);
    AlgElement root = series_sqrt(one + C * (R(tau2) * H(2)));
    AlgElement Pi = P0 * H() + root;
    AlgElement PiInv = (root - P0 * H()) * series_inv(one + PP * (R(tau2) * H(2)));
    AlgElement Ct = c_tau_series(C, tau2);
    auto Pup = [&](int a) {
        AlgElement out(e.p);
        for (int b = 1; b < D; ++b)
            if (sgn(gi[a][b]) != 0) out += e.P(b) * R(gi[a][b]);
        return out;
    };

    HopfData hd(e.p, "orthogonal display");
    const IsoLayout& L = m.layout;
    {
        TensorElement d = T(P0, Pi) + T(PiInv, P0);
        for (int j = 1; j < D; ++j) d -= T(PiInv * Pup(j), e.P(j)) * (R(tau2) * H());
        AlgElement s = -((P0 + (C + P0 * Ct * (H() * R(Q(1, 2)))) * (R(tau2) * H())) * PiInv);
        hd.set(L.P(0), d, s, Scalar());
    }
    for (int i = 1; i < D; ++i) {
        hd.set(L.P(i), T(e.P(i), Pi) + T(one, e.P(i)), -(e.P(i) * PiInv), Scalar());
        for (int j = i + 1; j < D; ++j) {
            AlgElement M = e.M(i, j);
            hd.set(L.M(i, j), T(M, one) + T(one, M), -M, Scalar());
        }
        AlgElement M = e.M(0, i);
        TensorElement d = T(M, one) + T(PiInv, M);
        for (int j = 1; j < D; ++j) d += T(PiInv * Pup(j), e.M(i, j)) * (R(tau2) * H());
        AlgElement s = -M - Ct * M * (R(tau2) * H(2) * R(Q(1, 2)));
        for (int a = 0; a < D; ++a) s -= e.P_up(a) * e.M(a, i) * (R(tau2) * H());
        hd.set(L.M(0, i), d, s, Scalar());
    }
    return hd;
}

HopfData null_plane_display_hopf(const KappaModel& m) {
    if (m.flavor != Flavor::null_plane) throw ConfigError("null-plane displays need the null_plane flavor");
    const IsoElements& e = m.el;
    int D = m.metric.dim;
    const IsoLayout& L = m.layout;
    AlgElement one = e.one(), C = e.C();
    AlgElement Pp = e.P(0), Pm = e.P(1);
    AlgElement Pi = one + Pp * H();
    AlgElement PiInv = series_inv(Pi);
    AlgElement Q1 = Pm + C * (H() * R(Q(1, 2)));
    HopfData hd(e.p, "null-plane display");

    hd.set(L.P(0), T(Pp, Pi) + T(one, Pp), -(Pp * PiInv), Scalar());
    {
        TensorElement d = T(Pm, Pi) + T(PiInv, Pm) - T(Q1 * PiInv, Pp) * H();
        AlgElement PaPa(e.p);
        for (int a = 2; a < D; ++a) {
            d -= T(e.P_up(a) * PiInv, e.P(a)) * H();
            PaPa += e.P(a) * e.P_up(a);
        }
        AlgElement s = -(Pm * Pi) - (one + Pp * (H() * R(Q(1, 2)))) * PaPa * PiInv * H();
        hd.set(L.P(1), d, s, Scalar());
    }
    {
        AlgElement M = e.M(0, 1);
        TensorElement d = T(M, one) + T(PiInv, M);
        AlgElement s = -(Pi * M);
        for (int a = 2; a < D; ++a) {
            d -= T(e.P_up(a) * PiInv, e.M(0, a)) * H();
            s -= e.P_up(a) * e.M(0, a) * H();
        }
        hd.set(L.M(0, 1), d, s, Scalar());
    }
    for (int a = 2; a < D; ++a) {
        hd.set(L.P(a), T(e.P(a), Pi) + T(one, e.P(a)), -(e.P(a) * PiInv), Scalar());
        AlgElement Mp = e.M(0, a), Mm = e.M(1, a);
        hd.set(L.M(0, a), T(Mp, one) + T(one, Mp), -Mp, Scalar());
        TensorElement d = T(Mm, one) + T(PiInv, Mm) - T(Q1 * PiInv, Mp) * H();
        AlgElement s = -(Pi * Mm) - Q1 * Mp * H();
        for (int b = 2; b < D; ++b) {
            d -= T(e.P_up(b) * PiInv, e.M(b, a)) * H();
            s -= e.P_up(b) * e.M(b, a) * H();
        }
        hd.set(L.M(1, a), d, s, Scalar());
        for (int b = a + 1; b < D; ++b) {
            AlgElement M = e.M(a, b);
            hd.set(L.M(a, b), T(M, one) + T(one, M), -M, Scalar());
        }
    }
    return hd;
}

std::map<std::string, AlgElement> qanalog_timelike_display_antipode(const KappaModel& m) {
    if (m.flavor != Flavor::qanalog_timelike) throw ConfigError("needs the qanalog_timelike flavor");
    const IsoElements& e = m.el;
    int D = m.metric.dim;
    const Q& tau2 = m.tau.tau2;
    AlgElement one = e.one(), Pi = m.cas.Pi, PiInv = m.cas.PiInv;
    AlgElement PP(e.p);
    for (int a = 1; a < D; ++a)
        for (int b = 1; b < D; ++b)
            if (sgn(m.metric.g_inv[a][b]) != 0) PP += e.P(a) * e.P(b) * R(m.metric.g_inv[a][b]);
    std::map<std::string, AlgElement> out;
    for (int i = 1; i < D; ++i) {
        AlgElement M = e.M(0, i);
        AlgElement s = -M;
        for (int k = 1; k < D; ++k) s -= e.P_up(k) * e.M(k, i) * (R(tau2) * H());
        s -= (Pi - PiInv * (one + PP * H(2))) * M * R(tau2 / 2);
        s -= m.cas.C_tau * M * (R(tau2 / 2) * H(2));
        out.emplace(m.layout.generators()[m.layout.M(0, i)].name, s);
    }
    return out;
}

Report compare_hopf(const HopfData& a, const HopfData& b) {
    Report rep;
    rep.title = "compare " + a.name + " vs " + b.name;
    const PresPtr& p = a.pres();
    for (int g = 0; g < p->size(); ++g) {
        const std::string& n = p->generators()[g].name;
        TensorElement d = a.delta_gen(g) - b.delta_gen(g);
        rep.add("coproduct " + n, d.is_zero(), d.size(), residual_summary(d));
        AlgElement s = a.antipode_gen(g) - b.antipode_gen(g);
        rep.add("antipode " + n, s.is_zero(), s.size(), residual_summary(s));
        Scalar c = a.counit_gen(g) - b.counit_gen(g);
        rep.add("counit " + n, c.is_zero(), c.is_zero() ? 0 : 1, c.str());
    }
    return rep;
}

Report casimir_check(const KappaModel& m) {
    Report rep;
    rep.title = "casimirs: " + flavor_name(m.flavor);
    const PresPtr& p = m.pres;
    const CasimirSet& c = m.cas;
    const Q& tau2 = m.tau.tau2;
    for (int g = 0; g < p->size(); ++g) {
        AlgElement x = AlgElement::gen(p, g);
        const std::string& n = p->generators()[g].name;
        AlgElement r1 = commutator(c.C, x);
        rep.add("[C, " + n + "] = 0", r1.is_zero(), r1.size(), residual_summary(r1));
        AlgElement r2 = commutator(c.C_tau, x);
        rep.add("[C_tau, " + n + "] = 0", r2.is_zero(), r2.size(), residual_summary(r2));
    }
    AlgElement pp = c.Pi * c.PiInv - AlgElement::one(p);
    rep.add("Pi Pi^-1 = 1", pp.is_zero(), pp.size(), residual_summary(pp));
    AlgElement rel = c.C - c.C_tau * (AlgElement::one(p) + c.C_tau * (R(tau2 / 4) * H(2)));
    rep.add("C = C_tau (1 + tau^2 C_tau / (4 kappa^2))", rel.is_zero(), rel.size(), residual_summary(rel));
    if (sgn(tau2) == 0) {
        AlgElement r = c.C_tau - c.C;
        rep.add("C_tau = C for null tau", r.is_zero(), r.size(), residual_summary(r));
    }
    if (m.flavor != Flavor::qanalog_timelike && m.flavor != Flavor::qanalog_lightlike) {
        // τ² C_τ h² = Π + Π^{-1} − 2 + h² (τ² C − P_τ²) Π^{-1}
        AlgElement Pt = m.el.P_tau();
        AlgElement lhs = c.C_tau * (R(tau2) * H(2));
        AlgElement rhs = c.Pi + c.PiInv - AlgElement::one(p) * Scalar(2) +
                         (c.C * R(tau2) - Pt * Pt) * c.PiInv * H(2);
        AlgElement r = lhs - rhs;
        rep.add("tau^2 C_tau in terms of Pi", r.is_zero(), r.size(), residual_summary(r));
    }
    if (m.P_tau_from_pi && sgn(tau2) != 0) {
        // C = P_τ²/τ² + P^m P_m with P_τ rebuilt from the group-likes
        AlgElement r = c.C - m.el.C();
        rep.add("C from the dependence relation", r.is_zero(), r.size(), residual_summary(r));
    }
    return rep;
}

Report rescaling_isomorphism_check(const ModelConfig& cfg, const Q& lambda) {
    if (sgn(lambda) == 0) throw ConfigError("rescaling factor must be nonzero");
    if (cfg.flavor == Flavor::qanalog_timelike || cfg.flavor == Flavor::qanalog_lightlike)
        return qanalog_specialization_check(cfg, lambda);
    KappaModel a = build_covariant(cfg.metric, cfg.tau, cfg.trunc, numeric_labels(cfg.metric.dim));
    std::vector<Q> scaled = cfg.tau;
    for (auto& x : scaled) x *= lambda;
    KappaModel b = build_covariant(cfg.metric, scaled, cfg.trunc, numeric_labels(cfg.metric.dim), a.pres);
    Q inv = 1 / lambda;
    HopfData bs = map_hopf_coefficients(b.hopf, a.pres, [&](const Scalar& s) { return s.rescale_h(inv); });
    bs.name = "rescaled (lambda kappa, lambda tau)";
    Report rep = compare_hopf(a.hopf, bs);
    rep.title = "rescaling lambda = " + rational_str(lambda);
    return rep;
}

Report qanalog_specialization_check(const ModelConfig& cfg, const Q& kappa) {
    if (sgn(kappa) == 0) throw ConfigError("kappa must be nonzero");
    KappaModel m = build_kappa_hopf(cfg);
    if (m.flavor != Flavor::qanalog_timelike && m.flavor != Flavor::qanalog_lightlike)
        throw ConfigError("specialization applies to q-analog flavors");
    Report rep;
    rep.title = "specialization kappa = " + rational_str(kappa);
    // Laurent polynomial structure: no xi, finitely many h powers
    bool poly = true;
    auto scan = [&](const Scalar& s) {
        for (auto& [mono, c] : s.terms())
            if (mono.dx != 0) poly = false;
    };
    for (auto& [k, rhs] : m.pres->rules())
        for (auto& [w, s] : rhs) scan(s);
    rep.add("structure constants are Laurent polynomials in h without xi", poly);

    auto make = [&](const Q& kv) {
        std::map<std::string, Q> vals{{"kappa", kv}};
        auto f = [vals](const Scalar& s) { return specialize(s, vals); };
        PresPtr sp = m.pres->map_coefficients(f, Trunc::exact());
        HopfData H = map_hopf_coefficients(m.hopf, sp, f);
        H.name = flavor_name(m.flavor) + " at kappa=" + rational_str(kv);
        return H;
    };
    HopfData H1 = make(Q(1)), Hk = make(kappa);
    rep.merge(verify_axioms(Hk, {true, false, {}}), "specialized axioms");
    const PresPtr& q = Hk.pres();
    Q inv = 1 / kappa;
    auto image = [&](int g) {
        AlgElement x = AlgElement::gen(q, g);
        if (q->generators()[g].kind == GenKind::P) x *= R(inv);
        return x;
    };
    rep.merge(check_hopf_morphism(H1, Hk, image), "P -> P/kappa");
    return rep;
}

}  // namespace kappa
