#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kappa/scalar.hpp"

#include <random>

using namespace kappa;

namespace {

Scalar random_scalar(std::mt19937& rng, Trunc t) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4), deg(0, 3), count(0, 4);
    Scalar s = Scalar::zero(t);
    int n = count(rng);
    for (int k = 0; k < n; ++k) {
        Q re(num(rng), den(rng)), im(num(rng), den(rng));
        re.canonicalize();
        im.canonicalize();
        GaussRat c(re, im);
        s += Scalar(c, {deg(rng), deg(rng)}, t);
    }
    return s;
}

QMatrix random_invertible(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> d(-3, 3);
    while (true) {
        QMatrix a(n, std::vector<Q>(n));
        for (auto& row : a)
            for (auto& x : row) x = d(rng);
        if (sgn(determinant(a)) != 0) return a;
    }
}

}  // namespace

TEST_CASE("gaussian rationals") {
    GaussRat i = GaussRat::I();
    CHECK(i * i == GaussRat(-1));
    GaussRat z(Q(2), Q(3));
    CHECK(z.conj() == GaussRat(Q(2), Q(-3)));
    CHECK(z.conj().conj() == z);
    CHECK(z * z.inverse() == GaussRat(1));
    CHECK_THROWS_AS(GaussRat().inverse(), AlgebraError);
}

TEST_CASE("parse rationals") {
    CHECK(parse_rational("-1/2") == Q(-1, 2));
    CHECK(parse_rational("\xE2\x88\x92" "3") == Q(-3));
    CHECK(parse_rational("+4/6") == Q(2, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_rational("abc"), ConfigError);
}

TEST_CASE("truncated arithmetic") {
    Trunc t{1, 3};
    Scalar a = Scalar::one(t) + Scalar::h().truncated(t);
    Scalar sq = a * a;
    CHECK(sq == Scalar(1) + Scalar(GaussRat(2), {1, 0}));
    CHECK(Scalar::h(2).truncated(t).is_zero());
    CHECK_THROWS_AS(Scalar::one(Trunc{1, 3}) + Scalar::one(Trunc{2, 3}), ConfigError);
    // exact scalars adopt the finite side
    Scalar e = Scalar::h(5) + Scalar::one(t);
    CHECK(e == Scalar(1));
}

TEST_CASE("conjugation fixes parameters") {
    Scalar s = Scalar(GaussRat(Q(2), Q(3))) * Scalar::h() * Scalar::xi();
    Scalar c = s.conj();
    CHECK(c.coeff({1, 1}) == GaussRat(Q(2), Q(-3)));
    CHECK(c.conj() == s);
}

TEST_CASE("kappa powers") {
    Scalar k = Scalar::kappa();
    CHECK(k * Scalar::h() == Scalar(1));
    CHECK(k.str() == "kappa");
    CHECK((Scalar::kappa(2) * Scalar(3)).str() == "3*kappa^2");
}

TEST_CASE("specialize") {
    Scalar s = Scalar(1) + Scalar(2) * Scalar::h();
    CHECK(specialize(s, {{"h", Q(1, 2)}}) == Scalar(2));
    CHECK(specialize(Scalar::h() * Scalar::xi(), {{"h", Q(1)}, {"xi", Q(0)}}).is_zero());
    // L2 row parameter a = -(3 + (2 kappa xi)^2)/9 at kappa xi = 1/2
    Scalar kx = Scalar::kappa() * Scalar::xi();
    Scalar a = Scalar(GaussRat(Q(-1, 9))) * (Scalar(3) + Scalar(4) * kx * kx);
    CHECK(specialize(a, {{"kappa", Q(1)}, {"xi", Q(1, 2)}}) == Scalar(GaussRat(Q(-4, 9))));
    CHECK_THROWS_WITH_AS(specialize(Scalar::xi(), {{"h", Q(1)}}), doctest::Contains("xi"), ConfigError);
    CHECK_THROWS_AS(specialize(Scalar::h(), {}), ConfigError);
}

TEST_CASE("ring axioms and specialization on random scalars") {
    std::mt19937 rng(7);
    Trunc t{3, 3};
    for (int n = 0; n < 200; ++n) {
        Scalar a = random_scalar(rng, t), b = random_scalar(rng, t), c = random_scalar(rng, t);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a * b).conj() == a.conj() * b.conj());
    }
    for (int n = 0; n < 100; ++n) {
        Scalar a = random_scalar(rng, Trunc::exact()), b = random_scalar(rng, Trunc::exact());
        std::map<std::string, Q> v{{"h", Q(2, 3)}, {"xi", Q(-5, 7)}};
        CHECK(specialize(a * b, v) == specialize(a, v) * specialize(b, v));
    }
}

TEST_CASE("exact inertia") {
    CHECK(exact_inertia(MetricData::lorentz(4).g) == std::make_pair(3, 1));
    CHECK(exact_inertia({{Q(0), Q(1)}, {Q(1), Q(0)}}) == std::make_pair(1, 1));
    CHECK(exact_inertia(MetricData::euclid(4).g) == std::make_pair(4, 0));
    CHECK_THROWS_AS(exact_inertia({{Q(1), Q(0)}, {Q(0), Q(0)}}), ConfigError);

    std::mt19937 rng(11);
    std::vector<QMatrix> metrics = {MetricData::lorentz(4).g, MetricData::preset("split", 4).g,
                                    MetricData::null_plane(4).g, MetricData::euclid(3).g};
    for (auto& g : metrics) {
        auto base = exact_inertia(g);
        for (int n = 0; n < 20; ++n) {
            QMatrix a = random_invertible(rng, (int)g.size());
            CHECK(exact_inertia(matmul(transpose(a), matmul(g, a))) == base);
        }
    }
}

TEST_CASE("metric data and tau") {
    auto m = MetricData::null_plane(4);
    CHECK(matmul(m.g, m.g_inv) == identity(4));
    CHECK(m.signature == std::make_pair(3, 1));
    auto tau = TauVector::make(MetricData::lorentz(4), {Q(1), Q(0), Q(0), Q(1)});
    CHECK(tau.tau2 == 0);
    CHECK(tau.down[0] == -1);
    CHECK_THROWS_AS(TauVector::make(MetricData::lorentz(4), {Q(0), Q(0), Q(0), Q(0)}), ConfigError);
    CHECK_THROWS_AS(MetricData::preset("nope", 4), ConfigError);
}
