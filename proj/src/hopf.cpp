#include "kappa/hopf.hpp"

namespace kappa {

HopfData::HopfData(PresPtr p, std::string n) : name(std::move(n)), pres_(std::move(p)) {
    delta_.resize(pres_->size());
    s_.resize(pres_->size());
    eps_.resize(pres_->size());
}

void HopfData::set(int g, TensorElement delta, AlgElement s, Scalar eps) {
    if (delta.rank() != 2) throw AlgebraError("coproduct image must have rank 2");
    delta_.at(g) = std::move(delta);
    s_.at(g) = std::move(s);
    eps_.at(g) = std::move(eps);
    std::lock_guard<std::mutex> lk(cache_->mu);
    cache_->delta.clear();
    cache_->s.clear();
}

bool HopfData::complete() const {
    for (int g = 0; g < pres_->size(); ++g)
        if (!delta_[g] || !s_[g] || !eps_[g]) return false;
    return true;
}

const TensorElement& HopfData::delta_gen(int g) const {
    if (!delta_.at(g)) throw AlgebraError("no coproduct for generator " + pres_->generators()[g].name);
    return *delta_[g];
}

const AlgElement& HopfData::antipode_gen(int g) const {
    if (!s_.at(g)) throw AlgebraError("no antipode for generator " + pres_->generators()[g].name);
    return *s_[g];
}

const Scalar& HopfData::counit_gen(int g) const {
    if (!eps_.at(g)) throw AlgebraError("no counit for generator " + pres_->generators()[g].name);
    return *eps_[g];
}

TensorElement HopfData::delta_word(const Word& w) const {
    if (w.empty()) return TensorElement::one(pres_, 2);
    if (w.size() == 1) return delta_gen((unsigned char)w[0]);
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->delta.find(w);
        if (it != cache_->delta.end()) return it->second;
    }
    TensorElement r = delta_word(w.substr(0, w.size() - 1)) * delta_gen((unsigned char)w.back());
    std::lock_guard<std::mutex> lk(cache_->mu);
    cache_->delta.emplace(w, r);
    return r;
}

TensorElement HopfData::delta(const AlgElement& e) const {
    TensorElement out(pres_, 2);
    for (auto& [w, c] : e.terms()) out += delta_word(w) * c;
    return out;
}

TensorElement HopfData::delta_on_leg(const TensorElement& t, int leg) const {
    return t.expand_leg(leg, 2, [&](const Word& w) { return delta_word(w); });
}

AlgElement HopfData::antipode_word(const Word& w) const {
    if (w.empty()) return AlgElement::one(pres_);
    if (w.size() == 1) return antipode_gen((unsigned char)w[0]);
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->s.find(w);
        if (it != cache_->s.end()) return it->second;
    }
    // S(w' g) = S(g) S(w')
    AlgElement r = antipode_gen((unsigned char)w.back()) * antipode_word(w.substr(0, w.size() - 1));
    std::lock_guard<std::mutex> lk(cache_->mu);
    cache_->s.emplace(w, r);
    return r;
}

AlgElement HopfData::antipode(const AlgElement& e) const {
    AlgElement out(pres_);
    for (auto& [w, c] : e.terms()) out += antipode_word(w) * c;
    return out;
}

TensorElement HopfData::antipode_on_leg(const TensorElement& t, int leg) const {
    return t.expand_leg(leg, 1, [&](const Word& w) { return TensorElement::from_alg(antipode_word(w)); });
}

Scalar HopfData::counit_word(const Word& w) const {
    Scalar r(1);
    for (char ch : w) {
        r *= counit_gen((unsigned char)ch);
        if (r.is_zero()) break;
    }
    return r;
}

Scalar HopfData::counit(const AlgElement& e) const {
    Scalar r;
    for (auto& [w, c] : e.terms()) r += c * counit_word(w);
    return r;
}

TensorElement HopfData::counit_on_leg(const TensorElement& t, int leg) const {
    return t.expand_leg(leg, 0, [&](const Word& w) { return TensorElement::scalar(pres_, 0, counit_word(w)); });
}

namespace {

std::string grade_str(int dh, int dx) {
    return "h^" + std::to_string(dh) + " xi^" + std::to_string(dx);
}

template <class Map>
std::string summary(const Map& terms) {
    if (terms.empty()) return "0";
    int best_h = 0, best_x = 0;
    bool first = true;
    for (auto& [k, c] : terms)
        for (auto& [m, g] : c.terms())
            if (first || m.dh + m.dx < best_h + best_x || (m.dh + m.dx == best_h + best_x && m.dh < best_h)) {
                best_h = m.dh;
                best_x = m.dx;
                first = false;
            }
    return std::to_string(terms.size()) + " terms, lowest grade " + grade_str(best_h, best_x);
}

void check_axioms_on(const HopfData& H, const AlgElement& x, const std::string& label, Report& rep) {
    const PresPtr& p = H.pres();
    TensorElement d = H.delta(x);
    TensorElement left = H.delta_on_leg(d, 0), right = H.delta_on_leg(d, 1);
    TensorElement ca = left - right;
    rep.add("coassociativity " + label, ca.is_zero(), ca.size(), residual_summary(ca));

    AlgElement e1 = H.counit_on_leg(d, 0).to_alg() - x;
    AlgElement e2 = H.counit_on_leg(d, 1).to_alg() - x;
    rep.add("counit " + label, e1.is_zero() && e2.is_zero(), e1.size() + e2.size(),
            residual_summary(e1) + " / " + residual_summary(e2));

    AlgElement unit = AlgElement::scalar(p, H.counit(x));
    AlgElement s1 = H.antipode_on_leg(d, 0).multiply_legs() - unit;
    AlgElement s2 = H.antipode_on_leg(d, 1).multiply_legs() - unit;
    rep.add("antipode " + label, s1.is_zero() && s2.is_zero(), s1.size() + s2.size(),
            residual_summary(s1) + " / " + residual_summary(s2));
}

}  // namespace

std::string residual_summary(const TensorElement& t) { return summary(t.terms()); }
std::string residual_summary(const AlgElement& e) { return summary(e.terms()); }

Report verify_axioms(const HopfData& H, const VerifyOptions& opt) {
    Report rep;
    rep.title = "hopf axioms: " + H.name;
    const PresPtr& p = H.pres();
    const auto& gens = p->generators();
    std::vector<int> which = opt.generators;
    if (which.empty())
        for (int g = 0; g < p->size(); ++g) which.push_back(g);

    for (int g : which) check_axioms_on(H, AlgElement::gen(p, g), gens[g].name, rep);

    if (opt.degree2)
        for (size_t i = 0; i < which.size(); ++i)
            for (size_t j = i; j < which.size(); ++j) {
                AlgElement x = AlgElement::gen(p, which[i]) * AlgElement::gen(p, which[j]);
                check_axioms_on(H, x, gens[which[i]].name + "*" + gens[which[j]].name, rep);
            }

    if (opt.relations) {
        std::vector<bool> in(p->size(), false);
        for (int g : which) in[g] = true;
        for (int b = 0; b < p->size(); ++b)
            for (int a = 0; a < p->size(); ++a) {
                if (!in[a] || !in[b]) continue;
                if (!(b > a || p->rule(b, a))) continue;
                Word raw;
                raw += (char)b;
                raw += (char)a;
                AlgElement nf = AlgElement::word(p, raw);
                std::string label = gens[b].name + "*" + gens[a].name;
                TensorElement dr = H.delta_gen(b) * H.delta_gen(a) - H.delta(nf);
                rep.add("coproduct respects " + label, dr.is_zero(), dr.size(), residual_summary(dr));
                AlgElement sr = H.antipode_gen(a) * H.antipode_gen(b) - H.antipode(nf);
                rep.add("antipode respects " + label, sr.is_zero(), sr.size(), residual_summary(sr));
                Scalar er = H.counit_gen(b) * H.counit_gen(a) - H.counit(nf);
                rep.add("counit respects " + label, er.is_zero(), er.is_zero() ? 0 : 1, er.str());
            }
    }
    return rep;
}

Report verify_reality(const HopfData& H, const std::vector<AlgElement>& star, const AlgElement* pi,
                      const AlgElement* pi_inv, int D) {
    Report rep;
    rep.title = "reality: " + H.name;
    const PresPtr& p = H.pres();
    for (int g = 0; g < p->size(); ++g) {
        const std::string& n = p->generators()[g].name;
        AlgElement x = AlgElement::gen(p, g);
        const AlgElement& xs = star.at(g);
        TensorElement d = H.delta(xs) - star_conjugate(H.delta(x), star);
        rep.add("coproduct star " + n, d.is_zero(), d.size(), residual_summary(d));
        AlgElement ss = H.antipode(star_conjugate(H.antipode(xs), star)) - x;
        rep.add("S(S(X*)*) = X " + n, ss.is_zero(), ss.size(), residual_summary(ss));
        if (pi && pi_inv) {
            AlgElement lhs = H.antipode(H.antipode(x));
            AlgElement rhs = pi->pow(D - 1) * x * pi_inv->pow(D - 1);
            AlgElement r = lhs - rhs;
            rep.add("S^2 = Pi^(D-1) X Pi^(1-D) " + n, r.is_zero(), r.size(), residual_summary(r));
        }
    }
    return rep;
}

Report check_rmatrix_intertwiner(const HopfData& Ha, const HopfData& Hb, const TensorElement& R) {
    Report rep;
    rep.title = "R-matrix: " + Ha.name + " -> " + Hb.name;
    if (R.constant_term() != Scalar(1)) throw AlgebraError("R is not a unital perturbation");
    TensorElement Rinv = series_inv(R);
    const PresPtr& p = Ha.pres();
    for (int g = 0; g < p->size(); ++g) {
        TensorElement r = R * Ha.delta_gen(g) * Rinv - Hb.delta_gen(g);
        rep.add("intertwines " + p->generators()[g].name, r.is_zero(), r.size(), residual_summary(r));
    }
    TensorElement tri = R.flip() * R - TensorElement::one(p, 2);
    rep.add("triangularity R21 R = 1", tri.is_zero(), tri.size(), residual_summary(tri));
    return rep;
}

HopfData undeformed_hopf(const PresPtr& p) {
    HopfData H(p, "undeformed");
    for (int g = 0; g < p->size(); ++g) {
        AlgElement x = AlgElement::gen(p, g), one = AlgElement::one(p);
        H.set(g, TensorElement::pure({x, one}) + TensorElement::pure({one, x}), -x, Scalar());
    }
    return H;
}

}  // namespace kappa

namespace kappa {

AlgElement rebase(const AlgElement& e, const PresPtr& target, const std::function<Scalar(const Scalar&)>& f) {
    Poly out;
    for (auto& [w, c] : e.terms()) poly_add(out, w, f(c));
    return AlgElement(target, std::move(out), true);
}

TensorElement rebase(const TensorElement& t, const PresPtr& target, const std::function<Scalar(const Scalar&)>& f) {
    TensorElement out(target, t.rank());
    for (auto& [k, c] : t.terms()) out.add_key(k, f(c));
    return out;
}

HopfData map_hopf_coefficients(const HopfData& H, const PresPtr& target,
                               const std::function<Scalar(const Scalar&)>& f) {
    HopfData out(target, H.name);
    for (int g = 0; g < H.pres()->size(); ++g)
        out.set(g, rebase(H.delta_gen(g), target, f), rebase(H.antipode_gen(g), target, f), f(H.counit_gen(g)));
    return out;
}

namespace {

TensorElement tensor_image(const TensorElement& t, const PresPtr& target, const std::function<AlgElement(int)>& image) {
    TensorElement out(target, t.rank());
    for (auto& [k, c] : t.terms()) {
        std::vector<AlgElement> legs;
        for (auto& w : TensorElement::split_key(k)) legs.push_back(apply_hom(AlgElement::word(t.pres(), w), target, image));
        out += TensorElement::pure(legs) * c;
    }
    return out;
}

}  // namespace

Report check_hopf_morphism(const HopfData& H1, const HopfData& H2, const std::function<AlgElement(int)>& image) {
    Report rep;
    rep.title = "morphism " + H1.name + " -> " + H2.name;
    const PresPtr& p = H1.pres();
    const PresPtr& q = H2.pres();
    const auto& gens = p->generators();
    for (int b = 0; b < p->size(); ++b)
        for (int a = 0; a < p->size(); ++a) {
            const Poly* rhs = p->rule(b, a);
            if (!rhs && b <= a) continue;
            AlgElement r = image(b) * image(a);
            if (rhs) r -= apply_hom(AlgElement(p, *rhs, true), q, image);
            else r -= image(a) * image(b);
            rep.add("relation " + gens[b].name + "*" + gens[a].name, r.is_zero(), r.size(), residual_summary(r));
        }
    for (int g = 0; g < p->size(); ++g) {
        AlgElement img = image(g);
        TensorElement d = tensor_image(H1.delta_gen(g), q, image) - H2.delta(img);
        rep.add("coproduct " + gens[g].name, d.is_zero(), d.size(), residual_summary(d));
        AlgElement s = apply_hom(H1.antipode_gen(g), q, image) - H2.antipode(img);
        rep.add("antipode " + gens[g].name, s.is_zero(), s.size(), residual_summary(s));
        Scalar e = H1.counit_gen(g) - H2.counit(img);
        rep.add("counit " + gens[g].name, e.is_zero(), e.is_zero() ? 0 : 1, e.str());
    }
    return rep;
}

}  // namespace kappa
