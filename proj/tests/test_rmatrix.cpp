#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kappa/rmatrix.hpp"

#include <algorithm>
#include <random>

using namespace kappa;

namespace {

std::vector<Q> vec(std::initializer_list<long> xs) {
    std::vector<Q> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

Scalar iq(long n) { return Scalar(GaussRat(Q(0), Q(n))); }

int idx(const IsoContext& c, const std::string& n) { return c.lie.index(n); }

// Random nondegenerate symmetric rational metric of dimension D.
MetricData random_metric(int D, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-2, 2);
    for (;;) {
        QMatrix g(D, std::vector<Q>(D));
        for (int a = 0; a < D; ++a)
            for (int b = a; b < D; ++b) {
                g[a][b] = Q(d(rng), a == b ? 1 : 2);
                g[a][b].canonicalize();
                g[b][a] = g[a][b];
            }
        if (sgn(determinant(g)) != 0) return MetricData::from_matrix(g);
    }
}

}  // namespace

TEST_CASE("iso structure constants satisfy Jacobi") {
    for (int D = 2; D <= 4; ++D) {
        CHECK(IsoContext::make(MetricData::lorentz(D)).lie.jacobi_holds());
        CHECK(IsoContext::make(MetricData::null_plane(D)).lie.jacobi_holds());
    }
    LieAlgebra bad = IsoContext::make(MetricData::euclid(3)).lie;
    bad.f[0][1].begin()->second = -bad.f[0][1].begin()->second;
    CHECK_FALSE(bad.jacobi_holds());
}

TEST_CASE("wedge storage is antisymmetric") {
    WedgeTensor w(2);
    w.add({3, 1}, Scalar(2));
    CHECK(w.coeff({1, 3}) == Scalar(-2));
    CHECK(w.coeff({3, 1}) == Scalar(2));
    w.add({1, 3}, Scalar(-2));
    CHECK(w.coeff({1, 3}) == Scalar(-4));
    w.add({2, 2}, Scalar(5));
    CHECK(w.terms().size() == 1);
    WedgeTensor t(3);
    t.add({2, 0, 1}, Scalar(1));  // even permutation of (0,1,2)
    CHECK(t.coeff({0, 1, 2}) == Scalar(1));
    t.add({1, 0, 2}, Scalar(1));
    CHECK(t.is_zero());
    CHECK_THROWS_AS(w.add({1, 2, 3}, Scalar(1)), AlgebraError);
}

TEST_CASE("r-matrix from tau") {
    auto c = IsoContext::make(MetricData::lorentz(4));
    WedgeTensor r = build_r(c, vec({1, 0, 0, 0}));
    // τ^0 M_{0μ} ∧ P^μ with P^k = P_k
    CHECK(r.terms().size() == 3);
    CHECK(r.coeff({idx(c, "M01"), idx(c, "P1")}) == Scalar(1));
    CHECK(r.coeff({idx(c, "M03"), idx(c, "P3")}) == Scalar(1));
    WedgeTensor s = build_r(c, vec({0, 0, 0, 1}));
    // τ^3 M_{3μ} ∧ P^μ: M_30 ∧ P^0 = M_03 ∧ P_0
    CHECK(s.coeff({idx(c, "M03"), idx(c, "P0")}) == Scalar(1));
    CHECK(s.coeff({idx(c, "M13"), idx(c, "P1")}) == Scalar(-1));
    CHECK_THROWS_AS(build_r(c, vec({0, 0, 0, 0})), ConfigError);
    auto lit = wedge_from_terms(c.lie, {{"M01", "P1", Scalar(1)}, {"M02", "P2", Scalar(1)}, {"M03", "P3", Scalar(1)}});
    CHECK(lit == r);
    CHECK_THROWS_AS(wedge_from_terms(c.lie, {{"M01", "Q", Scalar(1)}}), ConfigError);
}

TEST_CASE("Schouten brackets against the dense oracle") {
    // values from tests/oracles/schouten.py
    auto c = IsoContext::make(MetricData::lorentz(4));
    WedgeTensor S = schouten(c.lie, build_r(c, vec({1, 0, 0, 0})));
    CHECK(S.terms().size() == 6);
    CHECK(S.coeff({idx(c, "M01"), idx(c, "P0"), idx(c, "P1")}) == iq(-1));
    CHECK(S.coeff({idx(c, "M03"), idx(c, "P0"), idx(c, "P3")}) == iq(-1));
    CHECK(S.coeff({idx(c, "M12"), idx(c, "P1"), idx(c, "P2")}) == iq(1));
    CHECK(S.coeff({idx(c, "M23"), idx(c, "P2"), idx(c, "P3")}) == iq(1));

    WedgeTensor Ss = schouten(c.lie, build_r(c, vec({0, 0, 0, 1})));
    CHECK(Ss == S * Scalar(-1));
    CHECK(schouten(c.lie, build_r(c, vec({1, 0, 0, 1}))).is_zero());

    auto c3 = IsoContext::make(MetricData::lorentz(3));
    WedgeTensor S3 = schouten(c3.lie, build_r(c3, vec({2, 1, 0})));
    CHECK(S3.terms().size() == 3);
    CHECK(S3.coeff({idx(c3, "M01"), idx(c3, "P0"), idx(c3, "P1")}) == iq(-3));
    CHECK(S3.coeff({idx(c3, "M12"), idx(c3, "P1"), idx(c3, "P2")}) == iq(3));

    CHECK(schouten(c.lie, WedgeTensor(2)).is_zero());
    CHECK_THROWS_AS(schouten(c.lie, WedgeTensor(3)), AlgebraError);
}

TEST_CASE("Yang-Baxter classification") {
    auto c = IsoContext::make(MetricData::lorentz(4));
    auto t = ybe_classify(c, build_r(c, vec({1, 0, 0, 0})));
    CHECK(t.kind == YbeKind::MYBE);
    CHECK(t.lambda == Scalar(1));
    auto s = ybe_classify(c, build_r(c, vec({0, 0, 0, 1})));
    CHECK(s.kind == YbeKind::MYBE);
    CHECK(s.lambda == Scalar(-1));
    CHECK(ybe_classify(c, build_r(c, vec({1, 0, 0, 1}))).kind == YbeKind::CYBE);

    // abelian extensions keep the type (oracle: unchanged brackets)
    auto n = IsoContext::make(MetricData::null_plane(4), null_labels(4));
    WedgeTensor rl = build_r(n, vec({1, 0, 0, 0})) + wedge(n.P(0), n.M(0, 2)) * Scalar::xi();
    CHECK(ybe_classify(n, rl).kind == YbeKind::CYBE);
    WedgeTensor rt = build_r(c, vec({1, 0, 0, 0})) + wedge(c.P(0), c.M(1, 2)) * Scalar::xi();
    auto yt = ybe_classify(c, rt);
    CHECK(yt.kind == YbeKind::MYBE);
    CHECK(yt.lambda == Scalar(1));

    // M_01 ∧ M_02 is neither
    WedgeTensor odd = wedge(c.M(0, 1), c.M(0, 2));
    auto yo = ybe_classify(c, odd);
    CHECK(yo.kind == YbeKind::other);
    CHECK_FALSE(yo.residual.is_zero());
    CHECK(ybe_kind_name(YbeKind::CYBE) == "CYBE");
}

TEST_CASE("Schouten is independent of the order terms are added") {
    auto c = IsoContext::make(MetricData::lorentz(4));
    WedgeTensor r = build_r(c, vec({1, 2, 0, 1})) + wedge(c.P(1), c.M(2, 3)) * Scalar::xi();
    std::vector<std::pair<std::vector<int>, Scalar>> terms(r.terms().begin(), r.terms().end());
    std::mt19937 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(terms.begin(), terms.end(), rng);
        WedgeTensor q(2);
        for (auto& [k, v] : terms) {
            std::vector<int> rev(k.rbegin(), k.rend());
            q.add(rev, -v);
        }
        CHECK(q == r);
        CHECK(schouten(c.lie, q) == schouten(c.lie, r));
    }
}

TEST_CASE("Omega is ad-invariant") {
    for (auto m : {MetricData::lorentz(3), MetricData::lorentz(4), MetricData::null_plane(4), MetricData::euclid(3)}) {
        auto c = IsoContext::make(m);
        WedgeTensor om = omega(c);
        CHECK_FALSE(om.is_zero());
        for (int g = 0; g < c.lie.size(); ++g) CHECK(ad_action(c.lie, LieVec{{g, Scalar(1)}}, om).is_zero());
    }
    // r itself is not invariant
    auto c = IsoContext::make(MetricData::lorentz(3));
    CHECK_FALSE(ad_action(c.lie, c.P(1), build_r(c, vec({1, 0, 0}))).is_zero());
}

TEST_CASE("[[r,r]] = -tau^2 Omega on random metrics") {
    std::mt19937 rng(19);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 24; ++trial) {
        int D = 3 + trial % 2;
        MetricData m = random_metric(D, rng);
        std::vector<Q> tau(D);
        for (auto& x : tau) x = d(rng);
        if (std::all_of(tau.begin(), tau.end(), [](const Q& x) { return sgn(x) == 0; })) tau[0] = 1;
        auto c = IsoContext::make(m);
        Q t2 = TauVector::make(m, tau).tau2;
        WedgeTensor S = schouten(c.lie, build_r(c, tau));
        CHECK(S == omega(c) * Scalar(GaussRat(-t2)));
        auto y = ybe_classify(c, build_r(c, tau));
        CHECK(y.kind == (sgn(t2) == 0 ? YbeKind::CYBE : YbeKind::MYBE));
    }
}
