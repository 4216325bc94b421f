#pragma once

#include "kappa/liesc.hpp"
#include "kappa/ratfunc.hpp"
#include "kappa/report.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kappa {

struct DerivedSeries {
    std::vector<int> derived;  // dims of g, [g,g], [[g,g],[g,g]], ... down to the first repeat
    std::vector<int> central;  // dims of g, [g,g], [g,[g,g]], ...
    bool solvable = false;
    bool nilpotent = false;
};

// Throws AlgebraError when L violates antisymmetry or Jacobi.
DerivedSeries derived_series(const LieSC& L);

// Canonical classes. Three-dimensional ones use the basis x1, x2, x3 with
// K = span{x1, x2} and derivation x3:
//   L1     abelian
//   L2     [x3,x1] = x1, [x3,x2] = x2
//   L3_a   [x3,x1] = x2, [x3,x2] = a x1 + x2
//   L4_a   [x3,x1] = x2, [x3,x2] = a x1
// Four-dimensional ones use x0, x1, x2, x3:
//   M2     [x0,xi] = xi
//   M3_a   [x0,x1] = x1, [x0,x2] = x3, [x0,x3] = -a x2 + (a+1) x3
//   M6_ab  [x0,x1] = x3, [x0,x2] = x1, [x0,x3] = a x1 + b x2 + x3
//   M8     [x1,x2] = x2, [x0,x3] = x3
//   M13_b  [x0,x1] = x1 + b x3, [x0,x2] = x2, [x3,x1] = x2, [x0,x3] = x1
//   K_v    [x0,x1] = x1 + v x2, [x0,x2] = x1, [x3,x1] = x1, [x3,x2] = x2
const std::vector<std::string>& class_names();
std::vector<std::string> class_param_names(const std::string& name);
LieSC canonical_constants(const std::string& name, const std::vector<Scalar>& params = {});

struct ClassLabel {
    std::string name;  // a class name, or "unclassified"
    std::vector<std::pair<std::string, RatFunc>> params;
    // New basis in terms of the input one: e'_i = Σ_j T[i][j] e_j.
    RMat certificate;
    bool complex_field = false;
    bool verified = false;
    std::vector<std::string> invariants;
    // The same algebra presented in another class of the list (M8 as K_v
    // over the complex field).
    std::vector<ClassLabel> aliases;

    const RatFunc& param(const std::string& p) const;  // throws ConfigError
    std::string str() const;
};

// Classifies a solvable algebra of dimension 3 or 4. A returned class always
// carries a certificate that has been re-checked exactly.
ClassLabel classify(const LieSC& L);
// Transforms L by the certificate and compares with the canonical constants.
Report verify_certificate(const LieSC& L, const ClassLabel& c);

struct CharPoly {
    RVec raw;         // monic, coefficients from t^0 up, of ad_D on K
    RVec normalized;  // the same after scaling D to trace 1 (empty if the trace is 0)
    std::string str(bool normalized_form) const;
};

// Characteristic polynomial of ad_D restricted to a codimension-one abelian
// ideal K, with D the first basis element outside K, computed from principal
// minors. Throws AlgebraError when L has no such split.
CharPoly eigen_oracle(const LieSC& L);

// Reruns the substitution chain that turns the L1 or L2 ⋆-algebra into its
// canonical form, checking every displayed bracket along the way. With no
// algebra given, the row's ⋆-algebra is computed first.
Report replay_paper_chain(const std::string& which, const LieSC& L);
Report replay_paper_chain(const std::string& which);

struct Table1Row {
    std::string row;
    LieSC algebra;
    ClassLabel got;
    std::string expected;
    bool ok = false;
};
// Rows L1, L2, S1, S2, S3, T1, T3, T4 (T3 and T4 for both signs).
Report table1_verify(std::vector<Table1Row>* rows = nullptr, Trunc t = {2, 2});

}  // namespace kappa
