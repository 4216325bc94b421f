#include "kappa/series.hpp"

namespace kappa {

Q sqrt_coeff(int k) {
    // (1/2)(1/2 - 1)...(1/2 - k + 1) / k!
    Q c(1);
    for (int j = 0; j < k; ++j) c *= Q(1, 2) - Q(j);
    c *= inverse_factorial(k);
    c.canonicalize();
    return c;
}

Q inverse_factorial(int k) {
    mpz_class f = 1;
    for (int j = 2; j <= k; ++j) f *= j;
    return Q(mpz_class(1), f);
}

namespace {

Scalar drop_positive_h(const Scalar& c) {
    Scalar r;
    for (auto& [m, g] : c.terms()) {
        if (m.dh < 0) throw AlgebraError("classical limit: coefficient has a negative h power");
        if (m.dh == 0) r += Scalar(g, m);
    }
    return r;
}

}  // namespace

AlgElement classical_limit(const AlgElement& e) {
    Poly out;
    for (auto& [w, c] : e.terms()) poly_add(out, w, drop_positive_h(c).truncated(c.trunc()));
    return AlgElement(e.pres(), std::move(out), true);
}

TensorElement classical_limit(const TensorElement& t) {
    TensorElement out(t.pres(), t.rank());
    for (auto& [k, c] : t.terms()) out.add_key(k, drop_positive_h(c).truncated(c.trunc()));
    return out;
}

}  // namespace kappa
