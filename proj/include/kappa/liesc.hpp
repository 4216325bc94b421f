#pragma once

#include "kappa/scalar.hpp"

#include <functional>
#include <string>
#include <vector>

namespace kappa {

// Structure constants [e_i, e_j] = Σ_k c[i][j][k] e_k of a small Lie algebra
// over the parametric scalars.
struct LieSC {
    int n = 0;
    std::vector<std::string> names;
    std::vector<std::vector<std::vector<Scalar>>> c;
    bool complex_field = false;

    LieSC() = default;
    explicit LieSC(std::vector<std::string> basis);

    int index(const std::string& name) const;  // throws ConfigError
    // Sets [e_i, e_j] and [e_j, e_i] together.
    void set(int i, int j, std::vector<Scalar> v);
    std::vector<Scalar> bracket(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const;

    // Structure constants in the basis e'_i = Σ_j T[i][j] e_j; tinv is T⁻¹.
    LieSC transformed(const std::vector<std::vector<Scalar>>& t, const std::vector<std::vector<Scalar>>& tinv,
                      std::vector<std::string> new_names = {}) const;
    LieSC map_coefficients(const std::function<Scalar(const Scalar&)>& f) const;

    bool antisymmetric() const;
    bool jacobi() const;
    bool abelian() const;

    // One line per nonzero bracket with i < j: "[a,b] = (2*i*xi)*c + h*d".
    std::string str() const;
    // Header "liesc <n> real|complex", a line of names, then str().
    std::string serialize() const;
    static LieSC parse(const std::string& text);  // throws ConfigError

    friend bool operator==(const LieSC& a, const LieSC& b) { return a.names == b.names && a.c == b.c; }
};

}  // namespace kappa
