#pragma once

#include "kappa/ncalg.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace kappa {

// Element of U^{⊗k}. A key is the legs' words joined by kLegSep.
class TensorElement {
public:
    static constexpr char kLegSep = '\xff';
    using Key = std::string;

    TensorElement() = default;
    TensorElement(PresPtr p, int rank) : pres_(std::move(p)), rank_(rank) {}

    static TensorElement one(const PresPtr& p, int rank);
    static TensorElement scalar(const PresPtr& p, int rank, const Scalar& s);
    static TensorElement pure(const std::vector<AlgElement>& legs);
    static TensorElement from_alg(const AlgElement& a) { return pure({a}); }
    static Key make_key(const std::vector<Word>& legs);
    static std::vector<Word> split_key(const Key& k);

    const PresPtr& pres() const { return pres_; }
    int rank() const { return rank_; }
    const std::map<Key, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    Scalar constant_term() const;

    void add_term(const std::vector<Word>& legs, const Scalar& c);
    void add_key(const Key& k, const Scalar& c);

    TensorElement operator-() const;
    TensorElement& operator+=(const TensorElement& o);
    TensorElement& operator-=(const TensorElement& o);
    TensorElement& operator*=(const Scalar& s);
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
    friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
    friend TensorElement operator*(TensorElement a, const Scalar& s) { return a *= s; }
    friend TensorElement operator*(const Scalar& s, TensorElement a) { return a *= s; }
    friend bool operator==(const TensorElement& a, const TensorElement& b) { return (a - b).is_zero(); }
    friend bool operator!=(const TensorElement& a, const TensorElement& b) { return !(a == b); }

    // Leg permutation: result leg j holds input leg perm[j].
    TensorElement permuted(const std::vector<int>& perm) const;
    TensorElement flip() const { return permuted({1, 0}); }
    // Replace leg `leg` by f(word), which may have any rank (0 = scalar).
    TensorElement expand_leg(int leg, int image_rank, const std::function<TensorElement(const Word&)>& f) const;
    // Product of all legs into a single algebra element.
    AlgElement multiply_legs() const;
    AlgElement to_alg() const;
    // a ⊗ this or this ⊗ a
    TensorElement tensor_left(const AlgElement& a) const;
    TensorElement tensor_right(const AlgElement& a) const;

    TensorElement map_coefficients(const std::function<Scalar(const Scalar&)>& f) const;
    TensorElement truncated(Trunc t) const;
    std::string str() const;

private:
    PresPtr pres_;
    int rank_ = 0;
    std::map<Key, Scalar> terms_;
};

inline AlgElement unit_like(const AlgElement& e) { return AlgElement::one(e.pres()); }
inline TensorElement unit_like(const TensorElement& e) { return TensorElement::one(e.pres(), e.rank()); }

// Antilinear conjugation leg by leg: (a⊗b)^{*⊗*} = a*⊗b*.
TensorElement star_conjugate(const TensorElement& t, const std::vector<AlgElement>& table);

}  // namespace kappa
