#include "kappa/twist.hpp"

#include <algorithm>

namespace kappa {

namespace {

TensorElement T(const AlgElement& a, const AlgElement& b) { return TensorElement::pure({a, b}); }
Scalar R(const Q& q) { return Scalar(GaussRat(q)); }
Scalar I(const Q& q = Q(1)) { return Scalar(GaussRat(Q(0), q)); }

// +1 or -1 for the sign that occurs once in a Lorentzian signature, else 0.
int lone_sign(const MetricData& m) {
    if (m.signature.first == 1 && m.signature.second == m.dim - 1) return 1;
    if (m.signature.second == 1 && m.signature.first == m.dim - 1) return -1;
    return 0;
}

bool is_axis(const std::vector<Q>& v, int k) {
    for (int a = 0; a < (int)v.size(); ++a)
        if (v[a] != (a == k ? Q(1) : Q(0))) return false;
    return true;
}

bool is_diagonal(const MetricData& m) {
    for (int a = 0; a < m.dim; ++a)
        for (int b = 0; b < m.dim; ++b)
            if (a != b && sgn(m.g[a][b]) != 0) return false;
    return true;
}

bool hadic(Flavor f) { return f == Flavor::covariant_hadic || f == Flavor::orthog_1_plus || f == Flavor::null_plane; }

// Splits "T3-" into ("T3", -1).
std::pair<std::string, int> split_sign(const std::string& label) {
    if (!label.empty() && (label.back() == '+' || label.back() == '-'))
        return {label.substr(0, label.size() - 1), label.back() == '-' ? -1 : 1};
    return {label, 1};
}

enum class RowKind { light, space, time };

RowKind row_kind(const std::string& base) {
    if (base == "LC" || base == "L1" || base == "L2") return RowKind::light;
    if (base == "S1" || base == "S2" || base == "S3") return RowKind::space;
    if (base == "T1" || base == "T3" || base == "T4") return RowKind::time;
    throw ConfigError("unknown twist label '" + base + "'");
}

void require_flavor(RowKind k, const KappaModel& m, const std::string& label) {
    auto fail = [&](const std::string& why) {
        throw ConfigError("twist " + label + " does not fit the model: " + why);
    };
    if (m.metric.dim != 4) fail("the catalog is four-dimensional");
    if (k == RowKind::light) {
        if (m.flavor != Flavor::null_plane) fail("needs the null_plane flavor");
        return;
    }
    if (m.flavor != Flavor::covariant_hadic && m.flavor != Flavor::orthog_1_plus) fail("needs an h-adic covariant model");
    if (!is_diagonal(m.metric) || lone_sign(m.metric) == 0) fail("needs a diagonal Lorentzian metric");
    int s = sgn(m.tau.tau2);
    if (k == RowKind::time) {
        if (!is_axis(m.tau.up, 0) || s != lone_sign(m.metric)) fail("needs a time-like tau along the first axis");
    } else {
        if (!is_axis(m.tau.up, 1) || s != -lone_sign(m.metric)) fail("needs a space-like tau along the second axis");
    }
}

}  // namespace

TwistElement::TwistElement(PresPtr p, std::string lbl) : label(std::move(lbl)), pres_(std::move(p)) {
    F_ = TensorElement::one(pres_, 2);
    Finv_ = F_;
}

void TwistElement::append(const TensorElement& a) {
    if (a.rank() != 2) throw AlgebraError("twist exponents live in U⊗U");
    detail::require_positive_grade(a, "twist exponent");
    factors_.push_back(a);
    F_ = F_ * alg_exp(a);
    Finv_ = alg_exp(-a) * Finv_;
}

TwistElement TwistElement::flipped() const {
    TwistElement out(pres_, label + "_21");
    out.unitary = unitary;
    out.complex = complex;
    for (auto& a : factors_) out.append(a.flip());
    return out;
}

TwistElement TwistElement::compose(const TwistElement& outer, const TwistElement& inner) {
    if (outer.pres_ != inner.pres_) throw AlgebraError("twists over different presentations");
    TwistElement out(outer.pres_, outer.label + "*" + inner.label);
    out.unitary = outer.unitary && inner.unitary;
    out.complex = outer.complex || inner.complex;
    for (auto& a : outer.factors_) out.append(a);
    for (auto& a : inner.factors_) out.append(a);
    return out;
}

TensorElement wedge_tensor(const AlgElement& a, const AlgElement& b) { return T(a, b) - T(b, a); }

AlgElement kappa_log_pi(const KappaModel& m) {
    if (!hadic(m.flavor)) throw ConfigError("kappa ln Pi needs an h-adic flavor");
    // Π = 1 + h m with m = P_τ + Σ_k c_k (τ²)^k C^k h^{2k-1}
    const Q t2 = m.tau.tau2;
    AlgElement mm = m.el.P_tau();
    if (sgn(t2) != 0) {
        mm += scaled_series<AlgElement>(
            m.cas.C,
            [&](int k) {
                Q c = sqrt_coeff(k);
                for (int j = 0; j < k; ++j) c *= t2;
                return c;
            },
            2, 1);
    }
    return kappa_log(mm);
}

std::vector<std::string> twist_labels() { return {"LC", "L1", "L2", "S1", "S2", "S3", "T1", "T3", "T4"}; }

TwistElement build_twist(const std::string& label, const KappaModel& m, TwistForm form) {
    auto [base, sign] = split_sign(label);
    RowKind kind = row_kind(base);
    if (sign < 0 && base != "T3" && base != "T4") throw ConfigError("only T3 and T4 take a sign suffix");
    require_flavor(kind, m, label);
    const IsoElements& e = m.el;
    TwistElement F(m.pres, label);
    Scalar xi = Scalar::xi(), h = Scalar::h();

    if (base == "LC") {
        // exp(−i M_{+−}⊗lnΠ_+) exp(−(i/κ) M_{+a}⊗P^a Π_+⁻¹)
        AlgElement lnPi = kappa_log_pi(m) * h;
        F.append(T(e.M(0, 1), lnPi) * -I());
        TensorElement second(m.pres, 2);
        for (int a = 2; a < 4; ++a) second += T(e.M(0, a), e.P_up(a) * m.cas.PiInv);
        F.append(second * (-I() * h));
        F.unitary = true;
    } else if (base == "L1" || base == "L2") {
        AlgElement M = base == "L1" ? e.M(0, 2) : e.M(2, 3);
        F.append(wedge_tensor(M, kappa_log_pi(m)) * (I() * xi));
        F.unitary = true;
    } else if (kind == RowKind::space) {
        AlgElement M1 = e.M(2, 3), N3 = e.M(0, 3);
        AlgElement right = base == "S1" ? M1 : base == "S2" ? M1 + N3 : N3;
        // P_1 as printed twists Δ0; κ ln Π_1 (equal to P_1 at first order) twists Δ_τ
        AlgElement left = form == TwistForm::displayed ? e.P(1) : kappa_log_pi(m);
        F.append(T(left, right) * (I() * xi));
        F.unitary = true;
    } else if (base == "T1") {
        F.append(wedge_tensor(kappa_log_pi(m), e.M(1, 2)) * (I() * xi));
        F.unitary = true;
    } else {
        // P̃_± = P_1 ± iP_2, M̃_± = M_1 ± iM_2 with M_1 = M_23, M_2 = M_31
        Scalar s = R(Q(sign));
        AlgElement Pt = e.P(1) + e.P(2) * (I() * s);
        AlgElement Mt = e.M(2, 3) + e.M(3, 1) * (I() * s);
        AlgElement M3 = e.M(1, 2);
        AlgElement lnPi = kappa_log_pi(m) * h;
        AlgElement one = e.one();
        if (form == TwistForm::displayed) {
            if (base == "T3") {
                F.append(T(Pt * series_sqrt(m.cas.Pi), Mt) * xi);
                F.append(T(lnPi, M3) * (I(Q(1, 2)) * s));
            } else {
                AlgElement u = one + Pt * xi;
                F.append(T(Mt * series_inv(u) * m.cas.PiInv, e.P(3)) * (xi * s));
                F.append(T(series_log(u), M3));
                F.append(T(lnPi, M3) * (I() * s));
            }
        } else {
            // spatial momenta enter as P_k Π⁻¹, and the M_3 factors are real
            AlgElement Pk = Pt * m.cas.PiInv;
            AlgElement Pi_half = alg_exp(lnPi * R(Q(1, 2)));
            if (base == "T3") {
                F.append(T(Pk * Pi_half, Mt) * xi);
                F.append(T(lnPi, M3) * (R(Q(-1, 2)) * s));
            } else {
                AlgElement u = one + Pk * xi;
                F.append(T(Mt * series_inv(u) * m.cas.PiInv, e.P(3) * m.cas.PiInv) * (xi * -s));
                F.append(T(series_log(u), M3) * -s);
                F.append(T(lnPi, M3) * -s);
            }
        }
        F.complex = true;
    }
    return F;
}

TwistSetup twist_setup(const std::string& label, Trunc t, TwistForm form) {
    auto [base, sign] = split_sign(label);
    RowKind kind = row_kind(base);
    ModelConfig cfg;
    cfg.trunc = t;
    if (kind == RowKind::light) {
        cfg.metric = MetricData::null_plane(4);
        cfg.tau = {Q(1), Q(0), Q(0), Q(0)};
        cfg.flavor = Flavor::null_plane;
    } else if (kind == RowKind::space) {
        cfg.metric = MetricData::preset("mostly-minus", 4);
        cfg.tau = {Q(0), Q(1), Q(0), Q(0)};
    } else {
        cfg.metric = MetricData::lorentz(4);
        cfg.tau = {Q(1), Q(0), Q(0), Q(0)};
    }
    TwistSetup s;
    s.label = label;
    s.model = build_kappa_hopf(cfg);
    s.F = build_twist(label, s.model, form);
    if (kind == RowKind::time || (kind == RowKind::space && form == TwistForm::cocycle)) {
        s.base = s.model.hopf;
        s.base_name = "Delta_tau";
    } else if (kind == RowKind::space || base == "LC") {
        s.base = undeformed_hopf(s.model.pres);
        s.base_name = "Delta_0";
    } else {
        TwistElement lc = build_twist("LC", s.model);
        s.base = twist_hopf(undeformed_hopf(s.model.pres), lc, false);
        s.base.name = "Delta_LC";
        s.base_name = "Delta_LC";
    }
    return s;
}

Report cocycle_check(const TwistElement& F, const HopfData& H) {
    Report r;
    r.title = "cocycle " + F.label + " against " + H.name;
    const TensorElement& f = F.F();
    AlgElement one = AlgElement::one(F.pres());
    TensorElement lhs = f.tensor_right(one) * H.delta_on_leg(f, 0);
    TensorElement rhs = f.tensor_left(one) * H.delta_on_leg(f, 1);
    TensorElement d = lhs - rhs;
    r.add("two-cocycle", d.is_zero(), d.size(), residual_summary(d));
    for (int leg = 0; leg < 2; ++leg) {
        TensorElement n = H.counit_on_leg(f, leg) - TensorElement::one(F.pres(), 1);
        r.add(leg == 0 ? "(eps x id)F = 1" : "(id x eps)F = 1", n.is_zero(), n.size(), residual_summary(n));
    }
    return r;
}

HopfData twist_hopf(const HopfData& H, const TwistElement& F, bool verify) {
    if (verify) {
        Report r = cocycle_check(F, H);
        if (!r.ok()) throw AlgebraError("twist " + F.label + " is not a cocycle for " + H.name + ": " + r.first_failure()->name);
    }
    const PresPtr& p = H.pres();
    HopfData out(p, H.name + " twisted by " + F.label);
    AlgElement u = H.antipode_on_leg(F.F(), 1).multiply_legs();
    AlgElement uinv = series_inv(u);
    for (int g = 0; g < p->size(); ++g)
        out.set(g, F.F() * H.delta_gen(g) * F.inverse(), u * H.antipode_gen(g) * uinv, H.counit_gen(g));
    return out;
}

Report factor_order_check(const KappaModel& m, bool flip_sign) {
    TwistElement a = build_twist("LC", m);
    const IsoElements& e = m.el;
    Scalar h = Scalar::h();
    TwistElement b(m.pres, "LC reordered");
    TensorElement first(m.pres, 2);
    for (int k = 2; k < 4; ++k) first += T(e.M(0, k), e.P_up(k));
    b.append(first * (-I() * h * R(Q(flip_sign ? -1 : 1))));
    b.append(T(e.M(0, 1), kappa_log_pi(m) * h) * -I());
    Report r;
    r.title = "light-cone twist factor orders";
    TensorElement d = a.F() - b.F();
    r.add("both orderings agree", d.is_zero(), d.size(), residual_summary(d));
    return r;
}

TensorElement universal_r(const TwistElement& F) { return F.F().flip() * F.inverse(); }

Report universal_r_check(const HopfData& twisted, const TwistElement& F) {
    // only the coproducts of the target are compared
    HopfData op(twisted.pres(), twisted.name + " (opposite)");
    for (int g = 0; g < twisted.pres()->size(); ++g)
        op.set(g, twisted.delta_gen(g).flip(), twisted.antipode_gen(g), twisted.counit_gen(g));
    return check_rmatrix_intertwiner(twisted, op, universal_r(F));
}

namespace {

struct Blocks {
    AlgElement one, pi, pi_inv, kl, c, s;
    Scalar h;
};

// With `limit` set, every block is replaced by its κ → ∞ value.
Blocks make_blocks(const KappaModel& m, bool limit) {
    Blocks b;
    b.one = m.el.one();
    b.kl = limit ? m.el.P_tau() : kappa_log_pi(m);
    b.pi = limit ? b.one : m.cas.Pi;
    b.pi_inv = limit ? b.one : m.cas.PiInv;
    AlgElement e = alg_exp(b.kl * (I() * Scalar::xi())), ei = alg_exp(b.kl * (-I() * Scalar::xi()));
    b.c = (e + ei) * R(Q(1, 2));
    b.s = (e - ei) * R(Q(1, 2));
    b.h = limit ? Scalar() : Scalar::h();
    return b;
}

struct Shown {
    std::string gen, reading;
    bool strict;
    TensorElement t;
};

std::vector<Shown> shown_lines(const std::string& base, const KappaModel& m, const Blocks& b) {
    auto g = [&](const char* n) { return AlgElement::gen(m.pres, n); };
    const AlgElement &one = b.one, &pi = b.pi, &pv = b.pi_inv, &kl = b.kl, &c = b.c, &s = b.s;
    Scalar xi = Scalar::xi(), i = I(), h = b.h;
    std::vector<Shown> out;
    if (base == "L1") {
        AlgElement Pp = g("P+"), Mp1 = g("M+1"), Mp2 = g("M+2"), M3 = g("M12"), Mpm = g("M+-");
        AlgElement U1 = m.el.P_up(2), U2 = m.el.P_up(3);
        out.push_back({"P+", "printed", true, T(Pp, one) + T(pi, Pp)});
        out.push_back({"M+1", "printed", true, T(Mp1, one) + T(one, Mp1)});
        out.push_back({"M+2", "printed", true, T(Mp2, one) + T(one, Mp2)});
        out.push_back({"M12", "printed", true, T(M3, one) + T(one, M3) - (T(Mp2, kl) - T(kl, Mp2)) * xi});
        TensorElement common = T(Mpm, pv) + T(one, Mpm) - (T(Mp1, U1 * pv) + T(Mp2, U2 * pv)) * h +
                               T(Mp1, pv * kl) * xi - T(kl, Mp1) * xi - T(Pp * pv, Mp1 * pv) * xi;
        out.push_back({"M+-", "printed", true, common - T(Mp1 * (kl * xi - one), Pp * pv) * h});
        // the factor (ξκ ln Π_+ − 1) read as (ξκ ln Π_+ − ξκ)
        out.push_back({"M+-", "corrected", true, common - T(Mp1 * (kl * h - one), Pp * pv) * xi});
    } else if (base == "T1") {
        AlgElement P1 = g("P1"), P2 = g("P2"), P3 = g("P3"), M3 = g("M12");
        out.push_back({"P3", "printed", true, T(P3, pi) + T(one, P3)});
        out.push_back({"M12", "printed", true, T(M3, one) + T(one, M3)});
        out.push_back({"P1", "printed", true, T(P1, pi - one) + T(P1, c) + T(c, P1) + T(s, P2) * i - T(P2, s) * i});
        // rotated first leg times Π_0; the sine terms change sign with the metric signature
        out.push_back({"P1", "corrected", true, T(P1, pi * c) + T(P2, pi * s) * i + T(c, P1) - T(s, P2) * i});
    } else if (base == "L2") {
        AlgElement P1 = g("P1"), P2 = g("P2"), Pp = g("P+"), M12 = g("M12"), Mp1 = g("M+1"), Mp2 = g("M+2"),
                   Mpm = g("M+-");
        AlgElement U1 = m.el.P_up(2), U2 = m.el.P_up(3);
        out.push_back({"P1", "printed", false, T(pi - one + c, P1) + T(P1, c) - T(s, P2) * i + T(P2, s) * i});
        out.push_back({"P2", "printed", false, T(pi - one, P2) + T(P2, c) + T(c, P2) - T(P1, s) * i + T(s, P1) * i});
        out.push_back({"P+", "printed", false, T(Pp, one) + T(pi, Pp)});
        out.push_back({"M12", "printed", false, T(M12, one) + T(one, M12)});
        out.push_back({"M+1", "printed", false, T(Mp1, c) + T(c, Mp1) + T(s, Mp2) * i - T(Mp2, s) * i});
        out.push_back({"M+2", "printed", false, T(Mp2, c) + T(c, Mp2) + T(s, Mp1) * i - T(Mp1, s) * i});
        out.push_back({"M+-", "printed", false,
                       T(Mpm, pv) + T(one, Mpm) - (T(Mp1, c * U1 * pv) + T(Mp2, c * U2 * pv)) * h -
                           (T((c - one) * Mp1, U1 * pv) + T((c - one) * Mp2, U2 * pv)) * h +
                           (T(s * Mp1, P2 * pv) - T(Mp1, s * P2 * pv) + T(Mp2, s * P1 * pv) - T(s * Mp2, P1 * pv)) * (i * h)});
    } else {
        throw ConfigError("no displayed coproducts for row " + base);
    }
    return out;
}

std::string coassociativity(const HopfData& H, const TensorElement& t) {
    TensorElement d = H.delta_on_leg(t, 0) - H.delta_on_leg(t, 1);
    return d.is_zero() ? "shown line is coassociative" : "shown line is not coassociative (" + residual_summary(d) + ")";
}

}  // namespace

Report twisted_display_check(const std::string& label, Trunc t, std::vector<DisplayLine>* lines) {
    TwistSetup s = twist_setup(label, t);
    HopfData H = twist_hopf(s.base, s.F);
    Report r;
    r.title = "displayed coproducts " + label;
    for (auto& sh : shown_lines(label, s.model, make_blocks(s.model, false))) {
        DisplayLine dl{sh.gen, sh.reading, sh.strict, H.delta(AlgElement::gen(s.model.pres, sh.gen)), sh.t};
        std::string name = "Delta_" + label + "(" + sh.gen + ") " + sh.reading;
        TensorElement d = dl.engine - dl.shown;
        if (sh.strict) {
            std::string detail = d.is_zero() ? "" : residual_summary(d) + "; " + coassociativity(H, sh.t);
            r.add(name, d.is_zero(), d.size(), detail);
        } else {
            r.note(name + (d.is_zero() ? ": agrees with the engine" : ": differs from the engine, difference " + residual_summary(d)));
        }
        if (lines) lines->push_back(std::move(dl));
    }
    return r;
}

Report twisted_limit_check(const std::string& label, Trunc t, std::vector<DisplayLine>* lines) {
    TwistSetup s = twist_setup(label, t);
    const KappaModel& m = s.model;
    HopfData H = twist_hopf(s.base, s.F, false);  // cocycle_check covers this
    HopfData U = undeformed_hopf(m.pres);
    TensorElement F0 = classical_limit(s.F.F()), F0inv = classical_limit(s.F.inverse());
    Trunc no_xi{m.pres->trunc().h, 0};
    Report r;
    r.title = "classical limit " + label;
    int base_bad = 0, twisted_bad = 0, primitive_bad = 0;
    for (int g = 0; g < m.pres->size(); ++g) {
        base_bad += classical_limit(s.base.delta_gen(g)) != U.delta_gen(g);
        TensorElement lim = classical_limit(H.delta_gen(g));
        twisted_bad += lim != F0 * U.delta_gen(g) * F0inv;
        primitive_bad += lim.truncated(no_xi) != U.delta_gen(g).truncated(no_xi);
    }
    r.add(s.base_name + " -> primitive", base_bad == 0, base_bad);
    r.add("twisted -> F0 Delta_0 F0^-1", twisted_bad == 0, twisted_bad);
    r.add("twisted at xi = 0 -> primitive", primitive_bad == 0, primitive_bad);
    AlgElement kl = classical_limit(kappa_log_pi(m)) - m.el.P_tau();
    r.add("kappa ln Pi -> P_tau", kl.is_zero(), kl.size());
    if (label == "L2") {
        Blocks fin = make_blocks(m, false), lim = make_blocks(m, true);
        r.add("Pi^{+-1} -> 1", classical_limit(fin.pi) == lim.one && classical_limit(fin.pi_inv) == lim.one);
        AlgElement dc = classical_limit(fin.c) - lim.c, ds = classical_limit(fin.s) - lim.s;
        r.add("(Pi^{i xi kappa} + Pi^{-i xi kappa})/2 -> cos(xi P+)", dc.is_zero(), dc.size());
        r.add("(Pi^{i xi kappa} - Pi^{-i xi kappa})/2 -> i sin(xi P+)", ds.is_zero(), ds.size());
        for (auto& sh : shown_lines(label, m, lim)) {
            DisplayLine dl{sh.gen, "limit", false, classical_limit(H.delta(AlgElement::gen(m.pres, sh.gen))), sh.t};
            TensorElement d = dl.engine - dl.shown;
            r.note("Delta_0,L2(" + sh.gen + ") by substitution" +
                   (d.is_zero() ? ": agrees with the limit" : ": differs from the limit, difference " + residual_summary(d)));
            if (lines) lines->push_back(std::move(dl));
        }
    }
    return r;
}

}  // namespace kappa
