#include "kappa/spacetime.hpp"

namespace kappa {

namespace {

Scalar R(const Q& q) { return Scalar(GaussRat(q)); }

int poly_degree(const Poly& p) {
    int d = 0;
    for (auto& [w, c] : p) d = std::max(d, (int)w.size());
    return d;
}

std::string poly_str(const PresPtr& p, const Poly& poly) { return AlgElement(p, poly, true).str(); }

}  // namespace

CoordinateAlgebra CoordinateAlgebra::make(const std::vector<Q>& tau_up, const std::vector<std::string>& labels, Trunc t,
                                          const Scalar& hbar) {
    int D = (int)tau_up.size();
    if ((int)labels.size() != D) throw ConfigError("coordinate labels do not match tau");
    std::vector<Generator> gens;
    for (int mu = 0; mu < D; ++mu) {
        Generator g;
        g.kind = GenKind::X;
        g.mu = mu;
        g.name = "x" + labels[mu];
        g.weight = 1;
        gens.push_back(g);
    }
    auto p = std::make_shared<Presentation>(gens, t);
    Scalar ih = Scalar::i() * hbar;
    for (int a = 0; a < D; ++a)
        for (int b = a + 1; b < D; ++b) {
            // [x^b, x^a] = i hbar (τ^b x^a − τ^a x^b)
            Poly comm;
            poly_add(comm, Word(1, (char)a), ih * R(tau_up[b]));
            poly_add(comm, Word(1, (char)b), -ih * R(tau_up[a]));
            poly_prune(comm);
            p->set_swap(b, a, comm);
        }
    CoordinateAlgebra A;
    A.pres_ = p;
    A.tau_ = tau_up;
    A.labels_ = labels;
    A.hbar_ = hbar;
    return A;
}

CoordinateAlgebra CoordinateAlgebra::for_model(const KappaModel& m) {
    return make(m.tau.up, m.layout.labels(), m.pres->trunc());
}

AlgElement CoordinateAlgebra::dagger(const AlgElement& e) const { return star_conjugate(e, self_adjoint_table(pres_)); }

LieSC CoordinateAlgebra::structure() const {
    std::vector<std::string> names;
    for (auto& g : pres_->generators()) names.push_back(g.name);
    LieSC L(names);
    for (int a = 0; a < dim(); ++a)
        for (int b = a + 1; b < dim(); ++b) {
            std::vector<Scalar> v(dim());
            v[b] += Scalar::i() * hbar_ * R(tau_[a]);
            v[a] -= Scalar::i() * hbar_ * R(tau_[b]);
            L.set(a, b, v);
        }
    return L;
}

ModuleAction::ModuleAction(const HopfData& H, const KappaModel& m, const CoordinateAlgebra& A, Options opt)
    : H_(H), A_(A), opt_(opt) {
    const int D = A.dim();
    if (m.metric.dim != D) throw ConfigError("coordinate algebra and model differ in dimension");
    const QMatrix& g = m.metric.g;
    Scalar i = Scalar::i(), ih = Scalar::i() * A.hbar();
    const auto& gens = H.pres()->generators();
    base_.assign(gens.size(), std::vector<std::vector<Scalar>>(D + 1, std::vector<Scalar>(D + 1)));
    for (size_t k = 0; k < gens.size(); ++k) {
        auto& B = base_[k];
        const Generator& G = gens[k];
        B[0][0] = H.counit_gen((int)k);
        switch (G.kind) {
        case GenKind::P:
            B[G.mu + 1][0] = -i;
            break;
        case GenKind::M:
            // M_{μν}▷x^ρ = i(g_{μα}δ_ν^ρ − g_{να}δ_μ^ρ) x^α
            for (int a = 0; a < D; ++a) {
                B[G.nu + 1][a + 1] += i * R(g[G.mu][a]);
                B[G.mu + 1][a + 1] -= i * R(g[G.nu][a]);
            }
            break;
        case GenKind::Pi:
        case GenKind::PiInv: {
            Scalar s = G.kind == GenKind::Pi ? -ih : ih;
            for (int mu = 0; mu < D; ++mu) {
                B[mu + 1][mu + 1] = Scalar(1);
                B[mu + 1][0] = s * R(A.tau_up()[mu]);
            }
            break;
        }
        default:
            throw ConfigError("no coordinate action for generator " + G.name);
        }
    }
}

Poly ModuleAction::act_affine(const Word& w, const Word& mono) const {
    const int n = A_.dim() + 1;
    std::vector<std::vector<Scalar>> M;
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->affine.find(w);
        if (it != cache_->affine.end()) M = it->second;
    }
    if (M.empty()) {
        M.assign(n, std::vector<Scalar>(n));
        for (int j = 0; j < n; ++j) {
            std::vector<Scalar> v(n);
            v[j] = Scalar(1);
            for (auto it = w.rbegin(); it != w.rend(); ++it) {
                const auto& B = base_[(unsigned char)*it];
                std::vector<Scalar> next(n);
                for (int k = 0; k < n; ++k) {
                    if (v[k].is_zero()) continue;
                    for (int l = 0; l < n; ++l)
                        if (!B[k][l].is_zero()) next[l] += v[k] * B[k][l];
                }
                v = std::move(next);
            }
            M[j] = std::move(v);
        }
        std::lock_guard<std::mutex> lk(cache_->mu);
        cache_->affine.emplace(w, M);
    }
    int j = mono.empty() ? 0 : (unsigned char)mono[0] + 1;
    Poly out;
    for (int l = 0; l < n; ++l)
        if (!M[j][l].is_zero()) poly_add(out, l == 0 ? Word() : Word(1, (char)(l - 1)), M[j][l]);
    return out;
}

Poly ModuleAction::act_gen(int g, const Word& mono) const {
    if (mono.size() <= 1) return act_affine(Word(1, (char)g), mono);
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->gen.find({g, mono});
        if (it != cache_->gen.end()) return it->second;
    }
    Word first = mono.substr(0, 1), rest = mono.substr(1);
    Poly rest_poly{{rest, Scalar(1)}};
    Poly out;
    for (auto& [k, c] : H_.delta_gen(g).terms()) {
        auto legs = TensorElement::split_key(k);
        const Word& a = opt_.opposite ? legs[1] : legs[0];
        const Word& b = opt_.opposite ? legs[0] : legs[1];
        Poly left = act_affine(a, first);
        if (left.empty()) continue;
        Poly right = act_word(b, rest_poly);
        if (right.empty()) continue;
        poly_add(out, A_.pres()->mul(left, right), c);
    }
    poly_prune(out);
    std::lock_guard<std::mutex> lk(cache_->mu);
    cache_->gen.emplace(std::make_pair(g, mono), out);
    return out;
}

Poly ModuleAction::act_gen_poly(int g, const Poly& p) const {
    Poly out;
    for (auto& [w, c] : p) poly_add(out, act_gen(g, w), c);
    poly_prune(out);
    return out;
}

Poly ModuleAction::act_word(const Word& w, const Poly& p) const {
    if (poly_degree(p) <= 1) {
        Poly out;
        for (auto& [m, c] : p) poly_add(out, act_affine(w, m), c);
        poly_prune(out);
        return out;
    }
    Poly cur = p;
    for (auto it = w.rbegin(); it != w.rend() && !cur.empty(); ++it) cur = act_gen_poly((unsigned char)*it, cur);
    return cur;
}

AlgElement ModuleAction::act(const AlgElement& L, const AlgElement& p) const {
    if (p.max_word_length() > opt_.max_degree)
        throw AlgebraError("coordinate polynomial exceeds the degree bound " + std::to_string(opt_.max_degree));
    Poly out;
    for (auto& [w, c] : L.terms()) poly_add(out, act_word(w, p.terms()), c);
    poly_prune(out);
    return AlgElement(A_.pres(), out, true).truncated(A_.pres()->trunc());
}

AlgElement ModuleAction::act_pair(const TensorElement& t, const AlgElement& p, const AlgElement& q) const {
    if (t.rank() != 2) throw AlgebraError("act_pair needs a rank-2 tensor");
    if (p.max_word_length() > opt_.max_degree || q.max_word_length() > opt_.max_degree)
        throw AlgebraError("coordinate polynomial exceeds the degree bound " + std::to_string(opt_.max_degree));
    Poly out;
    for (auto& [k, c] : t.terms()) {
        auto legs = TensorElement::split_key(k);
        Poly left = act_word(legs[0], p.terms());
        if (left.empty()) continue;
        Poly right = act_word(legs[1], q.terms());
        if (right.empty()) continue;
        poly_add(out, A_.pres()->mul(left, right), c);
    }
    poly_prune(out);
    return AlgElement(A_.pres(), out, true).truncated(A_.pres()->trunc());
}

AlgElement star_product(const ModuleAction& act, const TwistElement& F, const AlgElement& p, const AlgElement& q) {
    return act.act_pair(F.inverse(), p, q);
}

StarAlgebra star_commutators(const ModuleAction& act, const TwistElement& F) {
    const CoordinateAlgebra& A = act.coords();
    const int D = A.dim();
    std::vector<std::string> names;
    for (auto& g : A.pres()->generators()) names.push_back(g.name);
    StarAlgebra out;
    out.sc = LieSC(names);
    out.sc.complex_field = F.complex;
    out.central.assign(D, std::vector<Scalar>(D));
    out.report.title = "star commutators " + F.label;
    for (int a = 0; a < D; ++a)
        for (int b = a + 1; b < D; ++b) {
            AlgElement c = star_product(act, F, A.x(a), A.x(b)) - star_product(act, F, A.x(b), A.x(a));
            std::vector<Scalar> v(D);
            Poly quad;
            for (auto& [w, s] : c.terms()) {
                if (w.empty())
                    out.central[a][b] = s;
                else if (w.size() == 1)
                    v[(unsigned char)w[0]] = s;
                else
                    quad.emplace(w, s);
            }
            if (!quad.empty())
                throw AlgebraError("[" + names[a] + "," + names[b] + "] does not close: remainder " +
                                   poly_str(A.pres(), quad));
            out.central[b][a] = -out.central[a][b];
            out.sc.set(a, b, v);
        }
    out.report.add("affine closure", true);
    out.report.add("antisymmetry", out.sc.antisymmetric());
    out.report.add("Jacobi", out.sc.jacobi());
    bool central = false;
    for (auto& row : out.central)
        for (auto& s : row) central |= !s.is_zero();
    if (central) out.report.note("central terms present");
    return out;
}

ModuleAction row_action(const TwistSetup& s, ModuleAction::Options opt) {
    return ModuleAction(s.model.hopf, s.model, CoordinateAlgebra::for_model(s.model), opt);
}

StarAlgebra row_star_algebra(const TwistSetup& s) { return star_commutators(row_action(s), s.F); }

Report module_algebra_check(const ModuleAction& act) {
    Report rep;
    rep.title = "module algebra";
    const HopfData& H = act.hopf();
    const CoordinateAlgebra& A = act.coords();
    const int D = A.dim();
    for (int g = 0; g < H.pres()->size(); ++g) {
        TensorElement d = H.delta_gen(g);
        if (act.options().opposite) d = d.flip();
        AlgElement L = AlgElement::gen(H.pres(), g);
        for (int a = 0; a < D; ++a)
            for (int b = 0; b < D; ++b) {
                if (a == b) continue;
                AlgElement lhs = act.act(L, A.x(a) * A.x(b));
                AlgElement rhs = act.act_pair(d, A.x(a), A.x(b));
                AlgElement r = lhs - rhs;
                rep.add(H.pres()->generators()[g].name + " on " + A.pres()->generators()[a].name + A.pres()->generators()[b].name,
                        r.is_zero(), r.size(), r.is_zero() ? "" : residual_summary(r));
            }
    }
    return rep;
}

CrossedProduct crossed_product(const ModuleAction& act, const KappaModel& m) {
    const HopfData& H = act.hopf();
    const CoordinateAlgebra& A = act.coords();
    const PresPtr& hp = H.pres();
    const int D = A.dim();
    const char shift = (char)D;

    std::vector<Generator> gens = A.pres()->generators();
    for (auto& g : hp->generators()) gens.push_back(g);
    auto p = std::make_shared<Presentation>(gens, hp->trunc());
    auto shifted = [&](const Word& w) {
        Word out = w;
        for (auto& ch : out) ch = (char)(ch + shift);
        return out;
    };
    for (auto& [key, rhs] : A.pres()->rules()) p->set_rule(key.first, key.second, rhs);
    for (auto& [key, rhs] : hp->rules()) {
        Poly r;
        for (auto& [w, c] : rhs) poly_add(r, shifted(w), c);
        p->set_rule(key.first + D, key.second + D, r);
    }
    for (int g = 0; g < hp->size(); ++g) {
        TensorElement d = H.delta_gen(g);
        if (act.options().opposite) d = d.flip();
        for (int rho = 0; rho < D; ++rho) {
            Poly comm;
            for (auto& [k, c] : d.terms()) {
                auto legs = TensorElement::split_key(k);
                AlgElement left = act.act(AlgElement::word(hp, legs[0]), A.x(rho));
                for (auto& [w, s] : left.terms()) poly_add(comm, w + shifted(legs[1]), c * s);
            }
            poly_add(comm, Word(1, (char)rho) + Word(1, (char)(g + D)), Scalar(-1));
            poly_prune(comm);
            p->set_swap(g + D, rho, comm);
        }
    }

    CrossedProduct out;
    out.pres = p;
    out.report.title = "crossed product";
    // [P_μ, x^ρ] = −iδ_μ^ρ Π_τ + i h τ_μ P^ρ
    // [M_μν, x^ρ] = i(g_μα δ_ν^ρ − g_να δ_μ^ρ) x^α + i h g^ρα (τ_μ M_αν − τ_ν M_αμ)
    IsoElements e = m.el;
    e.p = p;
    e.p0_subst.reset();
    const QMatrix& g = m.metric.g;
    const QMatrix& ginv = m.metric.g_inv;
    const auto& td = m.tau.down;
    Scalar i = Scalar::i(), ih = Scalar::i() * A.hbar();
    AlgElement Pi = m.cas.Pi.transported(p);
    auto x = [&](int a) { return AlgElement::gen(p, a); };
    for (int k = 0; k < hp->size(); ++k) {
        const Generator& G = hp->generators()[k];
        if (G.kind != GenKind::P && G.kind != GenKind::M) continue;
        AlgElement L = AlgElement::gen(p, k + D);
        for (int rho = 0; rho < D; ++rho) {
            AlgElement want(p);
            if (G.kind == GenKind::P) {
                if (G.mu == rho) want -= Pi * i;
                want += e.P_up(rho) * (ih * R(td[G.mu]));
            } else {
                int mu = G.mu, nu = G.nu;
                for (int a = 0; a < D; ++a) {
                    Q c = (nu == rho ? g[mu][a] : Q(0)) - (mu == rho ? g[nu][a] : Q(0));
                    if (c != 0) want += x(a) * (i * R(c));
                    if (ginv[rho][a] != 0)
                        want += (e.M(a, nu) * R(td[mu]) - e.M(a, mu) * R(td[nu])) * (ih * R(ginv[rho][a]));
                }
            }
            AlgElement got = commutator(L, x(rho));
            AlgElement r = (got - want).truncated(p->trunc());
            out.report.add("[" + G.name + "," + gens[rho].name + "]", r.is_zero(), r.size(),
                           r.is_zero() ? "" : residual_summary(r));
        }
    }
    return out;
}

Report module_reality_check(const ModuleAction& act, const std::vector<AlgElement>& star) {
    Report rep;
    rep.title = "module reality";
    const HopfData& H = act.hopf();
    const CoordinateAlgebra& A = act.coords();
    const auto& xs = A.pres()->generators();
    std::vector<std::pair<std::string, AlgElement>> coords{{"1", A.one()}};
    for (int mu = 0; mu < A.dim(); ++mu) coords.emplace_back(xs[mu].name, A.x(mu));
    // degree-1 coordinates do not see the h-dependent part of S(L); products do
    for (int mu = 0; mu < A.dim(); ++mu)
        for (int nu = 0; nu < A.dim(); ++nu)
            if (mu != nu) coords.emplace_back(xs[mu].name + "*" + xs[nu].name, A.x(mu) * A.x(nu));
    for (int g = 0; g < H.pres()->size(); ++g) {
        AlgElement Ls = star[g];
        AlgElement SLs = star_conjugate(H.antipode(Ls), star);
        for (auto& [name, x] : coords) {
            AlgElement r = act.act(Ls, A.dagger(x)) - A.dagger(act.act(SLs, x));
            rep.add(H.pres()->generators()[g].name + " on " + name, r.is_zero(), r.size(),
                    r.is_zero() ? "" : residual_summary(r));
        }
    }
    return rep;
}

Report nonreal_kappa_reality_check(const KappaModel& m) {
    // h^n -> i^n h^n
    auto rotate = [](const Scalar& s) {
        Scalar out = Scalar::zero(s.trunc());
        static const GaussRat phase[4] = {GaussRat(1), GaussRat::I(), GaussRat(-1), GaussRat(Q(0), Q(-1))};
        for (auto& [mono, c] : s.terms()) out += Scalar(c * phase[((mono.dh % 4) + 4) % 4], mono, s.trunc());
        return out;
    };
    Trunc t = m.pres->trunc();
    PresPtr target = m.pres->map_coefficients(rotate, t);
    HopfData H = map_hopf_coefficients(m.hopf, target, rotate);
    std::vector<AlgElement> star;
    for (auto& s : m.star) star.push_back(rebase(s, target, rotate));
    CoordinateAlgebra A = CoordinateAlgebra::make(m.tau.up, m.layout.labels(), t, Scalar::i() * Scalar::h());
    Report rep = module_reality_check(ModuleAction(H, m, A), star);
    rep.title = "module reality, kappa -> i kappa";
    return rep;
}

}  // namespace kappa
