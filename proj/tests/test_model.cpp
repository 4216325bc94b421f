#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kappa/model.hpp"

#include <random>

using namespace kappa;

namespace {

bool all_ok(const std::vector<Residual>& rs) {
    for (auto& r : rs)
        if (!r.ok) return false;
    return true;
}

std::string failures(const Report& r) {
    std::string s;
    for (auto& c : r.checks)
        if (!c.ok) s += c.name + " [" + c.detail + "]\n";
    return s;
}

ModelConfig config(const MetricData& m, std::vector<Q> tau, Flavor f, Trunc t = {3, 3}) {
    ModelConfig c;
    c.metric = m;
    c.tau = std::move(tau);
    c.flavor = f;
    c.trunc = t;
    return c;
}

std::vector<Q> vec(std::initializer_list<long> xs) {
    std::vector<Q> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

QMatrix random_invertible(int D, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-2, 2);
    for (;;) {
        QMatrix B(D, std::vector<Q>(D));
        for (auto& row : B)
            for (auto& x : row) x = d(rng);
        if (sgn(determinant(B)) != 0) return B;
    }
}

std::vector<Q> mat_vec(const QMatrix& A, const std::vector<Q>& v) {
    std::vector<Q> r(A.size());
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += A[i][j] * v[j];
    return r;
}

Q gdot(const QMatrix& g, const std::vector<Q>& u, const std::vector<Q>& v) {
    Q s;
    for (size_t a = 0; a < u.size(); ++a)
        for (size_t b = 0; b < v.size(); ++b) s += u[a] * g[a][b] * v[b];
    return s;
}

}  // namespace

TEST_CASE("iso layout names and order") {
    IsoLayout L(4, numeric_labels(4));
    CHECK(L.size() == 10);
    CHECK(L.generators()[L.M(0, 1)].name == "M01");
    CHECK(L.generators()[L.M(2, 3)].name == "M23");
    CHECK(L.generators()[L.P(3)].name == "P3");
    CHECK(L.is_M(L.M(1, 3)));
    CHECK_FALSE(L.is_M(L.P(0)));
    CHECK(null_labels(4) == std::vector<std::string>{"+", "-", "1", "2"});
    IsoLayout N(3, null_labels(3));
    CHECK(N.generators()[N.M(0, 1)].name == "M+-");
    CHECK_THROWS_AS(IsoLayout(3, numeric_labels(2)), ConfigError);
    CHECK_THROWS_AS(null_labels(1), ConfigError);
}

TEST_CASE("iso(g) presentations are confluent") {
    for (int D = 2; D <= 4; ++D)
        for (auto m : {MetricData::lorentz(D), MetricData::euclid(D), MetricData::null_plane(D)}) {
            IsoLayout L(D, numeric_labels(D));
            CHECK(all_ok(presentation_check(build_iso(L, m))));
        }
    IsoLayout L(4, numeric_labels(4));
    CHECK(all_ok(presentation_check(build_iso(L, MetricData::diag(vec({1, 1, -1, -1}))))));
}

TEST_CASE("boost and momentum reorder") {
    IsoLayout L(4, numeric_labels(4));
    IsoElements e;
    e.p = build_iso(L, MetricData::lorentz(4));
    e.L = L;
    e.metric = MetricData::lorentz(4);
    // P_1 M_01 = M_01 P_1 - i P_0
    CHECK(e.P(1) * e.M(0, 1) == e.M(0, 1) * e.P(1) - e.P(0) * Scalar::i());
    CHECK(e.M(1, 0) == -e.M(0, 1));
    CHECK(e.M(2, 2).is_zero());
    // [M_12, M_23] = i g_22 M_13 for a diagonal metric
    CHECK(commutator(e.M(1, 2), e.M(2, 3)) == e.M(1, 3) * Scalar::i());
    // Casimir of iso(g) is central
    for (int g = 0; g < L.size(); ++g) CHECK(commutator(e.C(), AlgElement::gen(e.p, g)).is_zero());
}

TEST_CASE("a sign flip in one bracket breaks confluence") {
    IsoLayout L(3, numeric_labels(3));
    MetricData m = MetricData::lorentz(3);
    auto p = std::make_shared<Presentation>(L.generators(), Trunc::exact());
    bool flipped = false;
    for (int b = 0; b < L.size(); ++b)
        for (int a = 0; a < b; ++a) {
            LinComb c = iso_bracket(L, m.g, b, a);
            if (c.empty()) continue;
            Poly comm;
            for (auto& [k, v] : c) poly_add(comm, Word(1, (char)k), Scalar(flipped ? v : -v));
            flipped = true;
            p->set_swap(b, a, comm);
        }
    CHECK_FALSE(all_ok(presentation_check(p)));
}

TEST_CASE("orthogonal decomposition examples") {
    SUBCASE("null direction") {
        auto d = orthogonal_decompose(MetricData::lorentz(4), vec({1, 0, 0, 1}));
        CHECK((d.A[0] == vec({1, 0, 0, 1})));
        CHECK((d.A[1] == std::vector<Q>{Q(-1, 2), Q(0), Q(0), Q(1, 2)}));
        CHECK(d.metric.g[0][1] == 1);
        CHECK(d.metric.g[0][0] == 0);
        CHECK(d.metric.g[1][1] == 0);
        CHECK((d.tau_up == vec({1, 0, 0, 0})));
    }
    SUBCASE("space-like direction") {
        auto d = orthogonal_decompose(MetricData::lorentz(3), vec({0, 1, 0}));
        CHECK(d.metric.g[0][0] == 1);
        CHECK(d.metric.signature == MetricData::lorentz(3).signature);
    }
    SUBCASE("Euclidean diagonal") {
        auto d = orthogonal_decompose(MetricData::euclid(2), vec({1, 1}));
        CHECK(d.metric.g[0][0] == 2);
        CHECK(d.metric.g[0][1] == 0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(orthogonal_decompose(MetricData::euclid(3), vec({0, 0, 0})), ConfigError);
        CHECK_THROWS_AS(orthogonal_decompose(MetricData::euclid(3), vec({1, 0})), ConfigError);
    }
}

TEST_CASE("orthogonal decomposition on random metrics") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> sd(0, 1), cd(-2, 2);
    for (int trial = 0; trial < 60; ++trial) {
        int D = 2 + trial % 4;
        std::vector<Q> diag(D);
        for (auto& x : diag) x = sd(rng) ? 1 : -1;
        bool null = trial % 2 == 0 && D >= 2;
        std::vector<Q> tau0(D);
        if (null) {
            diag[0] = -1;
            diag[1] = 1;
            tau0[0] = 1;
            tau0[1] = 1;
        } else {
            for (auto& x : tau0) x = cd(rng);
            if (sgn(gdot(MetricData::diag(diag).g, tau0, tau0)) == 0) continue;
        }
        QMatrix B = random_invertible(D, rng);
        MetricData g0 = MetricData::diag(diag);
        MetricData g = MetricData::from_matrix(matmul(transpose(B), matmul(g0.g, B)));
        std::vector<Q> tau = mat_vec(invert(B), tau0);
        auto d = orthogonal_decompose(g, tau);
        CHECK(sgn(determinant(d.A)) != 0);
        CHECK((d.A[0] == tau));
        CHECK(d.metric.signature == g.signature);
        const QMatrix& gt = d.metric.g;
        Q t2 = gdot(g.g, tau, tau);
        int first = null ? 2 : 1;
        if (null) {
            CHECK(gt[0][0] == 0);
            CHECK(gt[1][1] == 0);
            CHECK(gt[0][1] == 1);
        } else {
            CHECK(gt[0][0] == t2);
        }
        for (int a = 0; a < D; ++a)
            for (int b = std::max(a + 1, first); b < D; ++b) CHECK(gt[a][b] == 0);
    }
}

TEST_CASE("basis change preserves the brackets") {
    MetricData m = MetricData::lorentz(3);
    CHECK_THROWS_AS(build_covariant(m, vec({1, 0, 0}), Trunc::exact(), numeric_labels(3)), ConfigError);
    auto km = build_covariant(m, vec({1, 0, 0}), Trunc{1, 1}, numeric_labels(3));
    QMatrix A = {{Q(1), Q(1), Q(0)}, {Q(0), Q(1), Q(2)}, {Q(1), Q(0), Q(1)}};
    BasisChange bc = change_basis(km.el, A);
    IsoLayout L(3, numeric_labels(3));
    for (int b = 0; b < L.size(); ++b)
        for (int a = 0; a < b; ++a) {
            AlgElement want(km.pres);
            for (auto& [k, c] : iso_bracket(L, bc.metric.g, b, a)) want += bc.images[k] * Scalar(c);
            CHECK(commutator(bc.images[b], bc.images[a]) == want);
        }
    CHECK((bc.tau_down == mat_vec(A, km.tau.down)));
    CHECK_THROWS_AS(change_basis(km.el, QMatrix{{Q(1), Q(1), Q(0)}, {Q(1), Q(1), Q(0)}, {Q(0), Q(0), Q(1)}}),
                    ConfigError);
}

TEST_CASE("covariant structure satisfies the Hopf axioms") {
    MetricData m = MetricData::lorentz(3);
    for (auto tau : {vec({1, 0, 0}), vec({0, 1, 0}), vec({1, 0, 1}), vec({2, 1, 0})}) {
        auto km = build_kappa_hopf(config(m, tau, Flavor::covariant_hadic));
        Report r = verify_axioms(km.hopf);
        CHECK_MESSAGE(r.ok(), failures(r));
        Report c = casimir_check(km);
        CHECK_MESSAGE(c.ok(), failures(c));
        Report re = verify_reality(km.hopf, km.star, &km.cas.Pi, &km.cas.PiInv, 3);
        CHECK_MESSAGE(re.ok(), failures(re));
    }
}

TEST_CASE("covariant structure in four dimensions") {
    VerifyOptions o;
    o.degree2 = false;
    for (auto tau : {vec({1, 0, 0, 0}), vec({1, 0, 0, 1})}) {
        auto km = build_kappa_hopf(config(MetricData::lorentz(4), tau, Flavor::covariant_hadic));
        Report r = verify_axioms(km.hopf, o);
        CHECK_MESSAGE(r.ok(), failures(r));
    }
    auto split = build_kappa_hopf(config(MetricData::diag(vec({1, 1, -1, -1})), vec({0, 0, 1, 1}), Flavor::covariant_hadic));
    CHECK(verify_axioms(split.hopf, o).ok());
}

TEST_CASE("classical limit is undeformed") {
    auto km = build_kappa_hopf(config(MetricData::lorentz(3), vec({1, 0, 0}), Flavor::covariant_hadic));
    HopfData U = undeformed_hopf(km.pres);
    for (int g = 0; g < km.pres->size(); ++g) {
        CHECK(classical_limit(km.hopf.delta_gen(g)) == U.delta_gen(g));
        CHECK(classical_limit(km.hopf.antipode_gen(g)) == U.antipode_gen(g));
    }
    // first order: the P_0 coproduct picks up h P_0⊗P_0 from Π
    TensorElement d1 = km.hopf.delta_gen(km.layout.P(0)) - U.delta_gen(km.layout.P(0));
    CHECK_FALSE(d1.is_zero());
}

TEST_CASE("decomposed displays agree with the covariant maps") {
    for (auto tau : {vec({1, 0, 0}), vec({0, 0, 1}), vec({2, 1, 0})}) {
        auto km = build_kappa_hopf(config(MetricData::lorentz(3), tau, Flavor::orthog_1_plus));
        Report r = compare_hopf(km.hopf, orthog_display_hopf(km));
        CHECK_MESSAGE(r.ok(), failures(r));
    }
    auto e = build_kappa_hopf(config(MetricData::euclid(3), vec({1, 0, 0}), Flavor::orthog_1_plus));
    CHECK(compare_hopf(e.hopf, orthog_display_hopf(e)).ok());

    for (auto tau : {vec({1, 0, 1}), vec({1, 1, 0})}) {
        auto km = build_kappa_hopf(config(MetricData::lorentz(3), tau, Flavor::null_plane));
        Report r = compare_hopf(km.hopf, null_plane_display_hopf(km));
        CHECK_MESSAGE(r.ok(), failures(r));
        CHECK(verify_axioms(km.hopf).ok());
    }
    auto n4 = build_kappa_hopf(config(MetricData::lorentz(4), vec({1, 0, 0, 1}), Flavor::null_plane));
    CHECK(compare_hopf(n4.hopf, null_plane_display_hopf(n4)).ok());
    CHECK_THROWS_AS(orthog_display_hopf(n4), ConfigError);
}

TEST_CASE("q-analog algebras are exact Hopf algebras") {
    for (int D = 2; D <= 4; ++D) {
        std::vector<Q> t(D), n(D);
        t[0] = 1;
        n[0] = 1;
        n[D - 1] = 1;
        auto q = build_kappa_hopf(config(MetricData::lorentz(D), t, Flavor::qanalog_timelike));
        CHECK(q.pres->trunc().is_exact());
        CHECK(all_ok(presentation_check(q.pres)));
        Report r = verify_axioms(q.hopf);
        CHECK_MESSAGE(r.ok(), failures(r));
        Report c = casimir_check(q);
        CHECK_MESSAGE(c.ok(), failures(c));
        CHECK(verify_reality(q.hopf, q.star, &q.cas.Pi, &q.cas.PiInv, D).ok());
        if (D >= 3) {
            auto l = build_kappa_hopf(config(MetricData::lorentz(D), n, Flavor::qanalog_lightlike));
            CHECK(all_ok(presentation_check(l.pres)));
            Report rl = verify_axioms(l.hopf);
            CHECK_MESSAGE(rl.ok(), failures(rl));
            CHECK(casimir_check(l).ok());
        }
    }
    // non-unit τ²
    auto q = build_kappa_hopf(config(MetricData::diag(vec({-2, 1, 1})), vec({1, 0, 0}), Flavor::qanalog_timelike));
    CHECK(verify_axioms(q.hopf).ok());
    CHECK(casimir_check(q).ok());
}

TEST_CASE("q-analog boost antipode display") {
    // the displayed form agrees only when τ² = 1
    auto e = build_kappa_hopf(config(MetricData::euclid(3), vec({1, 0, 0}), Flavor::qanalog_timelike));
    for (auto& [n, s] : qanalog_timelike_display_antipode(e)) CHECK(s == e.hopf.antipode_gen(e.pres->index(n)));
    auto l = build_kappa_hopf(config(MetricData::lorentz(3), vec({1, 0, 0}), Flavor::qanalog_timelike));
    for (auto& [n, s] : qanalog_timelike_display_antipode(l)) CHECK(s != l.hopf.antipode_gen(l.pres->index(n)));
}

TEST_CASE("rescaling isomorphisms") {
    ModelConfig c = config(MetricData::lorentz(3), vec({1, 0, 0}), Flavor::covariant_hadic);
    for (Q lam : {Q(2), Q(-1, 3), Q(5, 2)}) CHECK(rescaling_isomorphism_check(c, lam).ok());
    CHECK_THROWS_AS(rescaling_isomorphism_check(c, Q(0)), ConfigError);
    ModelConfig n = config(MetricData::lorentz(3), vec({1, 0, 1}), Flavor::covariant_hadic);
    CHECK(rescaling_isomorphism_check(n, Q(3)).ok());

    ModelConfig q = config(MetricData::lorentz(3), vec({1, 0, 0}), Flavor::qanalog_timelike);
    for (Q k : {Q(1), Q(2), Q(10)}) CHECK(qanalog_specialization_check(q, k).ok());
    ModelConfig ql = config(MetricData::lorentz(3), vec({1, 0, 1}), Flavor::qanalog_lightlike);
    CHECK(rescaling_isomorphism_check(ql, Q(2)).ok());
    CHECK_THROWS_AS(qanalog_specialization_check(c, Q(2)), ConfigError);
}

TEST_CASE("flavor configuration errors") {
    MetricData m = MetricData::lorentz(3);
    CHECK_THROWS_AS(build_kappa_hopf(config(m, vec({1, 0, 0}), Flavor::null_plane)), ConfigError);
    CHECK_THROWS_AS(build_kappa_hopf(config(m, vec({1, 0, 1}), Flavor::orthog_1_plus)), ConfigError);
    CHECK_THROWS_AS(build_kappa_hopf(config(m, vec({1, 0, 1}), Flavor::qanalog_timelike)), ConfigError);
    CHECK_THROWS_AS(build_kappa_hopf(config(m, vec({0, 1, 0}), Flavor::qanalog_lightlike)), ConfigError);
    CHECK_THROWS_AS(build_kappa_hopf(config(m, vec({0, 0, 0}), Flavor::covariant_hadic)), ConfigError);
    CHECK_THROWS_AS(parse_flavor("bogus"), ConfigError);
    CHECK(parse_flavor("null_plane") == Flavor::null_plane);
    CHECK(flavor_name(Flavor::qanalog_lightlike) == "qanalog_lightlike");
}
