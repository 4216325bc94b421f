#pragma once

#include "kappa/model.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace kappa {

using LieVec = std::map<int, Scalar>;

// Finite-dimensional Lie algebra given by structure constants on a basis.
struct LieAlgebra {
    std::vector<std::string> names;
    std::vector<std::vector<LinComb>> f;  // f[a][b] = [x_a, x_b]

    int size() const { return (int)names.size(); }
    int index(const std::string& name) const;  // throws ConfigError
    LieVec bracket(const LieVec& u, const LieVec& v) const;
    bool jacobi_holds() const;
};

LieAlgebra iso_lie(const IsoLayout& L, const MetricData& m);

// iso(g) together with its layout; r-matrices live in its exterior powers.
struct IsoContext {
    IsoLayout layout;
    MetricData metric;
    LieAlgebra lie;

    static IsoContext make(const MetricData& m);
    static IsoContext make(const MetricData& m, const std::vector<std::string>& labels);
    LieVec M(int mu, int nu) const;
    LieVec P(int mu) const;
    LieVec P_up(int mu) const;
    LieVec P_tau(const std::vector<Q>& tau_up) const;
};

// Antisymmetric tensor of rank 2 or 3, stored on strictly increasing index
// tuples. x_a ∧ x_b = x_a ⊗ x_b − x_b ⊗ x_a.
class WedgeTensor {
public:
    explicit WedgeTensor(int rank = 2) : rank_(rank) {}

    int rank() const { return rank_; }
    const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(std::vector<int> idx) const;

    // Adds c · x_{i1} ∧ ... in any index order; the sign of the sort is absorbed.
    void add(std::vector<int> idx, const Scalar& c);

    WedgeTensor& operator+=(const WedgeTensor& o);
    WedgeTensor& operator-=(const WedgeTensor& o);
    WedgeTensor& operator*=(const Scalar& s);
    friend WedgeTensor operator+(WedgeTensor a, const WedgeTensor& b) { return a += b; }
    friend WedgeTensor operator-(WedgeTensor a, const WedgeTensor& b) { return a -= b; }
    friend WedgeTensor operator*(WedgeTensor a, const Scalar& s) { return a *= s; }
    friend bool operator==(const WedgeTensor& a, const WedgeTensor& b) { return (a - b).is_zero(); }

    std::string str(const LieAlgebra& lie) const;

private:
    int rank_;
    std::map<std::vector<int>, Scalar> terms_;
};

WedgeTensor wedge(const LieVec& u, const LieVec& v);
WedgeTensor wedge(const LieVec& u, const LieVec& v, const LieVec& w);

// r = τ^α M_{αμ} ∧ P^μ
WedgeTensor build_r(const IsoContext& ctx, const std::vector<Q>& tau_up);

// Literal form: (generator, generator, coefficient) triples.
WedgeTensor wedge_from_terms(const LieAlgebra& lie, const std::vector<std::tuple<std::string, std::string, Scalar>>& terms);

// [[r, r]] = [r12, r13] + [r12, r23] + [r13, r23]
WedgeTensor schouten(const LieAlgebra& lie, const WedgeTensor& r);

// The invariant element, scaled so that [[r, r]] = −τ² Ω for the r above.
WedgeTensor omega(const IsoContext& ctx);

// ad_x acting on every leg.
WedgeTensor ad_action(const LieAlgebra& lie, const LieVec& x, const WedgeTensor& w);

enum class YbeKind { CYBE, MYBE, other };
std::string ybe_kind_name(YbeKind k);

struct YbeResult {
    YbeKind kind;
    Scalar lambda;         // [[r, r]] = λ Ω when MYBE
    WedgeTensor schouten;  // full bracket
    WedgeTensor residual;  // [[r, r]] − λ Ω for "other"
};

YbeResult ybe_classify(const IsoContext& ctx, const WedgeTensor& r);

}  // namespace kappa
