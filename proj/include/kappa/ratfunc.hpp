#pragma once

#include "kappa/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kappa {

// n/d for Laurent polynomials in h with polynomial xi-dependence, i.e. an
// element of Q(i)(h, xi). Fractions are not fully reduced (no gcd); common
// monomials are cancelled and d is made monic, and d is divided out when it
// divides n exactly. Equality is by cross-multiplication.
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(long v) : num_(v), den_(1) {}
    RatFunc(const Scalar& n);  // NOLINT: implicit on purpose
    RatFunc(const Scalar& n, const Scalar& d);

    const Scalar& num() const { return num_; }
    const Scalar& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    // The Laurent polynomial n/d when d divides n.
    std::optional<Scalar> as_scalar() const;
    RatFunc inverse() const;  // throws AlgebraError on zero

    RatFunc operator-() const { return RatFunc(-num_, den_, true); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    // "n" when d = 1, else "(n)/(d)".
    std::string str() const;

private:
    RatFunc(Scalar n, Scalar d, bool) : num_(std::move(n)), den_(std::move(d)) {}
    void reduce();
    Scalar num_, den_;
};

// q with n = q*d when it exists (d nonzero).
std::optional<Scalar> exact_divide(const Scalar& n, const Scalar& d);
// A square root inside Q(i)[h, 1/h, xi] for single-monomial inputs, when one
// exists with a Gaussian rational coefficient.
std::optional<Scalar> monomial_sqrt(const Scalar& s);

using RVec = std::vector<RatFunc>;
using RMat = std::vector<RVec>;

RMat rmat_identity(int n);
RMat rmat_mul(const RMat& a, const RMat& b);
std::optional<RMat> rmat_inverse(const RMat& a);
// Reduced row echelon basis of the span of the rows.
RMat row_basis(const RMat& rows);
// Coordinates of v in the independent rows of basis, if v lies in their span.
std::optional<RVec> coordinates(const RVec& v, const RMat& basis);
// Basis of {x : Σ_j m[i][j] x_j = 0 for every i}.
RMat nullspace(const RMat& m);
std::string rmat_str(const RMat& m);

}  // namespace kappa
