#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kappa {

using Q = mpq_class;

// Bad user input or incompatible settings; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal contract violation (missing table entry, fuel exhausted, ...).
struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Q parse_rational(const std::string& text);
std::string rational_str(const Q& q);

struct GaussRat {
    Q re;
    Q im;

    GaussRat() = default;
    GaussRat(long v) : re(v) {}
    GaussRat(const Q& r) : re(r) {}
    GaussRat(Q r, Q i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat I() { return GaussRat(Q(0), Q(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GaussRat conj() const { return GaussRat(re, -im); }
    GaussRat inverse() const;

    GaussRat operator-() const { return GaussRat(-re, -im); }
    GaussRat& operator+=(const GaussRat& o);
    GaussRat& operator-=(const GaussRat& o);
    GaussRat& operator*=(const GaussRat& o);
    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) { return a * b.inverse(); }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    std::string str() const;
};

// Bigraded truncation orders. A component equal to kExact means "no truncation".
struct Trunc {
    static constexpr int kExact = 1 << 20;
    int h = 3;
    int xi = 3;

    static Trunc exact() { return {kExact, kExact}; }
    bool is_exact() const { return h == kExact && xi == kExact; }
    friend bool operator==(const Trunc& a, const Trunc& b) { return a.h == b.h && a.xi == b.xi; }
    friend bool operator!=(const Trunc& a, const Trunc& b) { return !(a == b); }
    std::string str() const;
};

// Combines two truncation settings; finite settings must agree.
Trunc merge_trunc(const Trunc& a, const Trunc& b);

// Monomial h^dh xi^dx. dh may be negative: kappa = 1/h appears in polynomial
// (q-analog) presentations.
struct Mono {
    int dh = 0;
    int dx = 0;
    friend bool operator<(const Mono& a, const Mono& b) {
        return a.dh != b.dh ? a.dh < b.dh : a.dx < b.dx;
    }
    friend bool operator==(const Mono& a, const Mono& b) { return a.dh == b.dh && a.dx == b.dx; }
};

class Scalar {
public:
    using Term = std::pair<Mono, GaussRat>;

    Scalar() : trunc_(Trunc::exact()) {}
    Scalar(long v) : Scalar(GaussRat(v)) {}
    Scalar(const GaussRat& c, Mono m = {}, Trunc t = Trunc::exact());

    static Scalar zero(Trunc t = Trunc::exact()) { Scalar s; s.trunc_ = t; return s; }
    static Scalar one(Trunc t = Trunc::exact()) { return Scalar(GaussRat(1), {}, t); }
    static Scalar i() { return Scalar(GaussRat::I()); }
    static Scalar h(int power = 1) { return Scalar(GaussRat(1), {power, 0}); }
    static Scalar kappa(int power = 1) { return Scalar(GaussRat(1), {-power, 0}); }
    static Scalar xi(int power = 1) { return Scalar(GaussRat(1), {0, power}); }

    const std::vector<Term>& terms() const { return terms_; }
    const Trunc& trunc() const { return trunc_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_real() const;
    bool is_constant() const;  // only the grade (0,0) term, if any
    GaussRat coeff(Mono m) const;
    GaussRat constant_term() const { return coeff({0, 0}); }
    // Smallest h-degree present (0 for the zero scalar).
    int min_h_degree() const;
    int max_h_degree() const;
    int max_xi_degree() const;
    bool single_monomial() const { return terms_.size() == 1; }

    Scalar truncated(Trunc t) const;
    Scalar with_trunc(Trunc t) const { return truncated(t); }
    Scalar conj() const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator*=(const GaussRat& c);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator*(Scalar a, const GaussRat& c) { return a *= c; }
    friend Scalar operator*(const GaussRat& c, Scalar a) { return a *= c; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Multiplies by h^dh xi^dx, then re-truncates.
    Scalar shifted(int dh, int dx) const;
    // Exact division by a single-monomial scalar.
    Scalar divided_by_monomial(const Scalar& m) const;
    // Substitutes h -> lambda*h (used by the rescaling isomorphism).
    Scalar rescale_h(const Q& lambda) const;

    std::string str() const;

private:
    void normalize();
    std::vector<Term> terms_;
    Trunc trunc_;
};

inline bool operator<(const GaussRat& a, const GaussRat& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
}

// Inverse of Scalar::str(): sums of terms like "-3/2*i*h^2*xi" or "(1/2-i)*kappa".
Scalar parse_scalar(const std::string& text);  // throws ConfigError

// Parameters are named "h", "kappa" (sets h = 1/kappa) and "xi".
Scalar specialize(const Scalar& s, const std::map<std::string, Q>& values);

using QMatrix = std::vector<std::vector<Q>>;

std::pair<int, int> exact_inertia(const QMatrix& g);
QMatrix invert(const QMatrix& a);  // throws ConfigError when singular
Q determinant(QMatrix a);
QMatrix transpose(const QMatrix& a);
QMatrix matmul(const QMatrix& a, const QMatrix& b);
QMatrix identity(int n);

struct MetricData {
    int dim = 0;
    QMatrix g;
    QMatrix g_inv;
    std::pair<int, int> signature;  // (p, q): counts of +, -

    static MetricData from_matrix(const QMatrix& g);
    static MetricData diag(const std::vector<Q>& d);
    static MetricData lorentz(int D);    // diag(-1, 1, ..., 1)
    static MetricData euclid(int D);
    // Null pair on the first two slots, then +1 entries.
    static MetricData null_plane(int D);
    // A named preset: "lorentz", "euclid", "split" (2,2), "null".
    static MetricData preset(const std::string& name, int D);
};

struct TauVector {
    std::vector<Q> up;    // tau^mu
    std::vector<Q> down;  // tau_mu = g_{mu nu} tau^nu
    Q tau2;

    static TauVector make(const MetricData& m, const std::vector<Q>& up);
};

}  // namespace kappa
