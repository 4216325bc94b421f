#pragma once

#include "kappa/report.hpp"
#include "kappa/scalar.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace kappa {

enum class GenKind { M, P, Pi, PiInv, X, Aux };

struct Generator {
    GenKind kind = GenKind::Aux;
    int mu = -1;  // first index (M, P, X)
    int nu = -1;  // second index (M only), mu < nu
    std::string name;
    int weight = 0;
};

// A word is a string of generator indices (one char per letter). Short words
// stay in the small-string buffer, which keeps the rewriting loop cheap.
using Word = std::string;
using Poly = std::map<Word, Scalar>;

void poly_add(Poly& acc, const Word& w, const Scalar& c);
void poly_add(Poly& acc, const Poly& p, const Scalar& c);
void poly_prune(Poly& p);

class Presentation;
using PresPtr = std::shared_ptr<const Presentation>;

class Presentation {
public:
    Presentation(std::vector<Generator> gens, Trunc trunc);

    const std::vector<Generator>& generators() const { return gens_; }
    int size() const { return (int)gens_.size(); }
    const Trunc& trunc() const { return trunc_; }
    int index(const std::string& name) const;  // throws ConfigError
    std::optional<int> find(const std::string& name) const;
    std::string word_str(const Word& w) const;

    // first·second -> rhs. rhs words must be normal.
    void set_rule(int first, int second, Poly rhs);
    // For b > a: g_b g_a = g_a g_b + comm.
    void set_swap(int b, int a, const Poly& comm);
    const Poly* rule(int first, int second) const;
    // All installed rules keyed by (first, second).
    const std::map<std::pair<int, int>, Poly>& rules() const { return rules_; }

    int max_word_length = 16;
    long fuel_limit = 50'000'000;

    // Normal form of an arbitrary (unordered) linear combination.
    Poly normalize(const Poly& raw) const;
    Poly normal_word(const Word& w) const;
    // Product of two normal words.
    Poly mul_words(const Word& u, const Word& v) const;
    Poly mul(const Poly& a, const Poly& b) const;
    bool is_normal(const Word& w) const;

    std::string dump() const;
    static std::shared_ptr<Presentation> load(const std::string& text);

    // Same generators and rules with every coefficient mapped through f.
    std::shared_ptr<Presentation> map_coefficients(const std::function<Scalar(const Scalar&)>& f, Trunc t) const;

    // For a presentation whose rule right-hand sides are linear in the
    // generators: structure constants [g_b, g_a] as a Poly of single letters.
    Poly bracket(int b, int a) const;

    void clear_cache() const;

private:
    Poly insert_letter(int g, const Word& v, long& fuel) const;
    Poly insert_word(const Word& u, const Word& v, long& fuel) const;

    std::vector<Generator> gens_;
    Trunc trunc_;
    std::map<std::pair<int, int>, Poly> rules_;
    std::vector<std::vector<const Poly*>> table_;
    std::unordered_map<std::string, int> by_name_;

    mutable std::mutex cache_mu_;
    mutable std::unordered_map<Word, Poly> cache_;
};

class AlgElement {
public:
    AlgElement() = default;
    explicit AlgElement(PresPtr p) : pres_(std::move(p)) {}
    AlgElement(PresPtr p, Poly terms, bool normalized);

    static AlgElement one(const PresPtr& p) { return scalar(p, Scalar(1)); }
    static AlgElement zero(const PresPtr& p) { return AlgElement(p); }
    static AlgElement scalar(const PresPtr& p, const Scalar& s);
    static AlgElement gen(const PresPtr& p, int index);
    static AlgElement gen(const PresPtr& p, const std::string& name);
    static AlgElement word(const PresPtr& p, const Word& w, const Scalar& c = Scalar(1));

    const PresPtr& pres() const { return pres_; }
    const Poly& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar constant_term() const;
    // Smallest h-degree over all coefficients, and the same for xi.
    int min_h_degree() const;
    int min_xi_degree() const;
    int max_word_length() const;
    size_t size() const { return terms_.size(); }

    AlgElement operator-() const;
    AlgElement& operator+=(const AlgElement& o);
    AlgElement& operator-=(const AlgElement& o);
    AlgElement& operator*=(const Scalar& s);
    friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
    friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
    friend AlgElement operator*(const AlgElement& a, const AlgElement& b);
    friend AlgElement operator*(AlgElement a, const Scalar& s) { return a *= s; }
    friend AlgElement operator*(const Scalar& s, AlgElement a) { return a *= s; }
    friend bool operator==(const AlgElement& a, const AlgElement& b) { return (a - b).is_zero(); }
    friend bool operator!=(const AlgElement& a, const AlgElement& b) { return !(a == b); }

    AlgElement pow(int n) const;
    AlgElement map_coefficients(const std::function<Scalar(const Scalar&)>& f) const;
    // Re-express in another presentation with the same generator names.
    AlgElement transported(const PresPtr& target) const;
    AlgElement truncated(Trunc t) const;
    std::string str() const;

private:
    void check_same(const AlgElement& o) const;
    PresPtr pres_;
    Poly terms_;
};

AlgElement commutator(const AlgElement& a, const AlgElement& b);

// Image of a word under an algebra map given on generators.
AlgElement apply_hom(const AlgElement& e, const PresPtr& target,
                     const std::function<AlgElement(int)>& image);

// Antilinear anti-automorphism: reverse words, conjugate scalars, substitute.
AlgElement star_conjugate(const AlgElement& e, const std::vector<AlgElement>& table);
std::vector<AlgElement> self_adjoint_table(const PresPtr& p);

// Local confluence over every descending triple, plus overlaps with
// contraction rules.
std::vector<Residual> presentation_check(const PresPtr& p);

}  // namespace kappa
