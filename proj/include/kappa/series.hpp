#pragma once

#include "kappa/tensor.hpp"

#include <functional>

namespace kappa {

// Binomial coefficient (1/2 choose k).
Q sqrt_coeff(int k);

namespace detail {

template <class E>
void require_positive_grade(const E& n, const char* what) {
    for (auto& [w, c] : n.terms())
        for (auto& [m, g] : c.terms())
            if (m.dh < 0 || m.dx < 0 || m.dh + m.dx < 1)
                throw AlgebraError(std::string(what) + ": argument has a term of non-positive grade");
}

template <class E>
int power_bound(const E& n) {
    const Trunc& t = n.pres()->trunc();
    if (t.h == Trunc::kExact || t.xi == Trunc::kExact) return 64;
    return t.h + t.xi + 1;
}

}  // namespace detail

// Σ_{k≥0} coeff(k) n^k for n of positive grade; stops once n^k vanishes.
template <class E>
E power_series(const E& n, const std::function<Scalar(int)>& coeff, const char* what = "series") {
    detail::require_positive_grade(n, what);
    E out = unit_like(n) * coeff(0);
    E p = unit_like(n);
    int bound = detail::power_bound(n);
    for (int k = 1;; ++k) {
        p = p * n;
        if (p.is_zero()) break;
        if (k > bound) throw AlgebraError(std::string(what) + ": series does not terminate under truncation");
        out += p * coeff(k);
    }
    return out;
}

template <class E>
E unital_part(const E& u, const char* what) {
    if (u.constant_term().constant_term() != GaussRat(1)) throw AlgebraError(std::string(what) + ": constant term is not 1");
    return u - unit_like(u);
}

template <class E>
E series_inv(const E& u) {
    return power_series<E>(unital_part(u, "inv"), [](int k) { return Scalar(k % 2 ? -1 : 1); }, "inv");
}

template <class E>
E series_sqrt(const E& u) {
    return power_series<E>(unital_part(u, "sqrt"), [](int k) { return Scalar(GaussRat(sqrt_coeff(k))); }, "sqrt");
}

template <class E>
E series_log(const E& u) {
    return power_series<E>(
        unital_part(u, "log"),
        [](int k) { return k == 0 ? Scalar() : Scalar(GaussRat(Q(k % 2 ? 1 : -1, k))); }, "log");
}

Q inverse_factorial(int k);

template <class E>
E alg_exp(const E& a) {
    if (!a.constant_term().constant_term().is_zero()) throw AlgebraError("exp: argument has a nonzero constant part");
    return power_series<E>(a, [](int k) { return Scalar(GaussRat(inverse_factorial(k))); }, "exp");
}

// Σ_{k≥1} c_k h^{step k - drop} m^k, where m need not be small; terms stop
// once the h-power passes the truncation order.
template <class E>
E scaled_series(const E& m, const std::function<Q(int)>& c, int step, int drop) {
    const Trunc& t = m.pres()->trunc();
    if (t.h == Trunc::kExact) throw AlgebraError("scaled_series needs a finite h order");
    if (step <= 0) throw AlgebraError("scaled_series needs a positive step");
    E out = unit_like(m) * Scalar();
    E p = unit_like(m);
    for (int k = 1; step * k - drop <= t.h; ++k) {
        p = p * m;
        if (p.is_zero()) break;
        Q ck = c(k);
        if (sgn(ck) == 0) continue;
        out += p * (Scalar(GaussRat(ck)) * Scalar::h(step * k - drop));
    }
    return out;
}

// κ ln(1 + h m)
template <class E>
E kappa_log(const E& m) {
    return scaled_series<E>(m, [](int k) { return Q(k % 2 ? 1 : -1, k); }, 1, 1);
}

// Drops every term of positive h-degree; negative powers have no limit.
AlgElement classical_limit(const AlgElement& e);
TensorElement classical_limit(const TensorElement& t);

}  // namespace kappa
