#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kappa/series.hpp"

#include <random>

using namespace kappa;

namespace {

Generator aux(const std::string& name) {
    Generator g;
    g.name = name;
    return g;
}

// Free commutative algebra on x, y (y x -> x y) truncated at (3, 3).
PresPtr commuting(Trunc t = {3, 3}) {
    auto p = std::make_shared<Presentation>(std::vector<Generator>{aux("x"), aux("y")}, t);
    p->set_swap(1, 0, {});
    return p;
}

// Two-generator algebra with [y, x] = i x.
PresPtr noncommuting(Trunc t = {3, 3}) {
    auto p = std::make_shared<Presentation>(std::vector<Generator>{aux("x"), aux("y")}, t);
    p->set_swap(1, 0, Poly{{Word(1, 0), Scalar::i()}});
    return p;
}

Scalar Qs(long n, long d = 1) { return Scalar(GaussRat(Q(n, d))); }

AlgElement random_small(const PresPtr& p, std::mt19937& rng) {
    std::uniform_int_distribution<int> c(-3, 3), w(0, 1), len(0, 2), gr(0, 2);
    AlgElement e(p);
    for (int t = 0; t < 3; ++t) {
        Word word;
        for (int k = len(rng); k > 0; --k) word.push_back((char)w(rng));
        int dh = gr(rng), dx = gr(rng);
        if (dh + dx == 0) dh = 1;
        e += AlgElement::word(p, word, Scalar(GaussRat(Q(c(rng)), Q(c(rng))), {dh, dx}));
    }
    return e;
}

}  // namespace

TEST_CASE("binomial coefficients for the square root") {
    // values from sympy binomial(1/2, k)
    std::vector<Q> want = {Q(1), Q(1, 2), Q(-1, 8), Q(1, 16), Q(-5, 128), Q(7, 256), Q(-21, 1024)};
    for (int k = 0; k < (int)want.size(); ++k) {
        want[k].canonicalize();
        CHECK(sqrt_coeff(k) == want[k]);
    }
    CHECK(inverse_factorial(5) == Q(1, 120));
}

TEST_CASE("kappa log expansion") {
    auto p = commuting();
    AlgElement x = AlgElement::gen(p, 0);
    AlgElement got = kappa_log(x);
    // sympy: log(1 + h x)/h to O(h^4)
    AlgElement want = x - x.pow(2) * (Qs(1, 2) * Scalar::h()) + x.pow(3) * (Qs(1, 3) * Scalar::h(2)) -
                      x.pow(4) * (Qs(1, 4) * Scalar::h(3));
    CHECK(got == want);
}

TEST_CASE("square root of a two-term series") {
    auto p = commuting();
    AlgElement x = AlgElement::gen(p, 0);
    AlgElement one = AlgElement::one(p);
    AlgElement r = series_sqrt(one + x * Scalar::h() + x.pow(2) * Scalar::h(2));
    AlgElement want = one + x * (Qs(1, 2) * Scalar::h()) + x.pow(2) * (Qs(3, 8) * Scalar::h(2)) -
                      x.pow(3) * (Qs(3, 16) * Scalar::h(3));
    CHECK(r == want);
}

TEST_CASE("series identities on random elements") {
    std::mt19937 rng(7);
    for (auto p : {commuting(), noncommuting()}) {
        AlgElement one = AlgElement::one(p);
        for (int trial = 0; trial < 25; ++trial) {
            AlgElement n = random_small(p, rng);
            AlgElement u = one + n;
            CHECK(series_inv(u) * u == one);
            CHECK(u * series_inv(u) == one);
            AlgElement s = series_sqrt(u);
            CHECK(s * s == u);
            CHECK(alg_exp(series_log(u)) == u);
            CHECK(series_log(alg_exp(n)) == n);
        }
    }
}

TEST_CASE("series argument validation") {
    auto p = commuting();
    AlgElement x = AlgElement::gen(p, 0);
    AlgElement one = AlgElement::one(p);
    CHECK_THROWS_AS(series_inv(x), AlgebraError);            // constant term 0
    CHECK_THROWS_AS(series_inv(one + x), AlgebraError);      // grade 0 part
    CHECK_THROWS_AS(alg_exp(one + x * Scalar::h()), AlgebraError);
    CHECK_THROWS_AS(series_inv(one * Scalar(2) + x * Scalar::h()), AlgebraError);

    auto e = commuting(Trunc::exact());
    AlgElement ex = AlgElement::gen(e, 0);
    CHECK_THROWS_AS(series_inv(AlgElement::one(e) + ex * Scalar::h()), AlgebraError);
    CHECK_THROWS_AS(kappa_log(ex), AlgebraError);
    // a zero argument terminates at once
    CHECK(series_inv(AlgElement::one(e)) == AlgElement::one(e));
}

TEST_CASE("classical limit") {
    auto p = commuting();
    AlgElement x = AlgElement::gen(p, 0), y = AlgElement::gen(p, 1);
    AlgElement e = x + y * Scalar::h() + x * y * Scalar::xi();
    CHECK(classical_limit(e) == x + x * y * Scalar::xi());
    CHECK_THROWS_AS(classical_limit(x * Scalar::kappa()), AlgebraError);
    TensorElement t = TensorElement::pure({x, y}) + TensorElement::pure({y, x}) * Scalar::h(2);
    CHECK(classical_limit(t) == TensorElement::pure({x, y}));
}

TEST_CASE("tensor leg operations") {
    auto p = noncommuting();
    AlgElement x = AlgElement::gen(p, 0), y = AlgElement::gen(p, 1), one = AlgElement::one(p);
    TensorElement a = TensorElement::pure({x, y});
    CHECK(a.flip() == TensorElement::pure({y, x}));
    CHECK(a.flip().flip() == a);
    CHECK(a.multiply_legs() == x * y);
    CHECK(a.flip().multiply_legs() == x * y + x * Scalar::i());

    TensorElement b = TensorElement::pure({y, x});
    // (x⊗y)(y⊗x) = xy ⊗ yx
    CHECK(a * b == TensorElement::pure({x * y, y * x}));

    TensorElement c = TensorElement::pure({x, y, one});
    CHECK(c.permuted({2, 0, 1}) == TensorElement::pure({one, x, y}));
    CHECK(a.tensor_left(y) == TensorElement::pure({y, x, y}));
    CHECK(a.tensor_right(x) == TensorElement::pure({x, y, x}));

    // replace leg 0 by a primitive coproduct
    auto prim = [&](const Word& w) {
        AlgElement g = AlgElement::word(p, w);
        if (w.empty()) return TensorElement::pure({one, one});
        return TensorElement::pure({g, one}) + TensorElement::pure({one, g});
    };
    TensorElement d = a.expand_leg(0, 2, prim);
    CHECK(d == TensorElement::pure({x, one, y}) + TensorElement::pure({one, x, y}));

    TensorElement s = TensorElement::scalar(p, 2, Scalar::h());
    CHECK(s.constant_term() == Scalar::h());
    CHECK(TensorElement::split_key(TensorElement::make_key({Word(1, 0), Word(), Word(1, 1)})).size() == 3);
    CHECK(TensorElement::pure({x}).to_alg() == x);
}

TEST_CASE("tensor star conjugation") {
    auto p = noncommuting();
    auto star = self_adjoint_table(p);
    AlgElement x = AlgElement::gen(p, 0), y = AlgElement::gen(p, 1);
    TensorElement t = TensorElement::pure({x * y, y}) * Scalar::i();
    TensorElement st = star_conjugate(t, star);
    CHECK(st == TensorElement::pure({y * x, y}) * (-Scalar::i()));
    CHECK(star_conjugate(st, star) == t);
}
