#pragma once

#include "kappa/liesc.hpp"
#include "kappa/twist.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace kappa {

// κ-Minkowski coordinates: [x^μ, x^ν] = i hbar (τ^μ x^ν − τ^ν x^μ), where
// hbar is h = 1/κ unless a different value is substituted.
class CoordinateAlgebra {
public:
    CoordinateAlgebra() = default;
    static CoordinateAlgebra make(const std::vector<Q>& tau_up, const std::vector<std::string>& labels, Trunc t,
                                  const Scalar& hbar = Scalar::h());
    static CoordinateAlgebra for_model(const KappaModel& m);

    const PresPtr& pres() const { return pres_; }
    int dim() const { return (int)tau_.size(); }
    const std::vector<Q>& tau_up() const { return tau_; }
    const Scalar& hbar() const { return hbar_; }
    const std::vector<std::string>& labels() const { return labels_; }
    AlgElement x(int mu) const { return AlgElement::gen(pres_, mu); }
    AlgElement one() const { return AlgElement::one(pres_); }
    // (x^μ)† = x^μ
    AlgElement dagger(const AlgElement& e) const;
    // The defining relations as a LieSC on the x's.
    LieSC structure() const;

private:
    PresPtr pres_;
    std::vector<Q> tau_;
    std::vector<std::string> labels_;
    Scalar hbar_;
};

// Action of a Hopf algebra containing iso(g) on coordinate polynomials: the
// vector action on {1, x^μ}, extended by L▷(xy) = (L(1)▷x)(L(2)▷y) and by
// composition on words.
class ModuleAction {
public:
    struct Options {
        int max_degree = 4;
        // Use the opposite leg order of Δ in the Leibniz rule.
        bool opposite = false;
    };

    ModuleAction(const HopfData& H, const KappaModel& m, const CoordinateAlgebra& A, Options opt);
    ModuleAction(const HopfData& H, const KappaModel& m, const CoordinateAlgebra& A)
        : ModuleAction(H, m, A, Options{}) {}

    const HopfData& hopf() const { return H_; }
    const CoordinateAlgebra& coords() const { return A_; }
    const Options& options() const { return opt_; }

    // Throws AlgebraError when p exceeds the degree bound.
    AlgElement act(const AlgElement& L, const AlgElement& p) const;
    Poly act_word(const Word& w, const Poly& p) const;
    // m∘t▷(p⊗q) for a rank-2 tensor t.
    AlgElement act_pair(const TensorElement& t, const AlgElement& p, const AlgElement& q) const;

private:
    Poly act_gen(int g, const Word& mono) const;
    Poly act_affine(const Word& w, const Word& mono) const;
    Poly act_gen_poly(int g, const Poly& p) const;

    HopfData H_;
    CoordinateAlgebra A_;
    Options opt_;
    // base[g][j] = g ▷ e_j with e_0 = 1, e_{μ+1} = x^μ, as coefficients on the same basis
    std::vector<std::vector<std::vector<Scalar>>> base_;

    struct Cache {
        std::mutex mu;
        std::map<std::pair<int, Word>, Poly> gen;
        std::map<Word, std::vector<std::vector<Scalar>>> affine;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// x ⋆ y = (f̄^α▷x)(f̄_α▷y) with F⁻¹ = f̄^α⊗f̄_α. F must be a two-cocycle for
// the coproduct the action uses.
AlgElement star_product(const ModuleAction& act, const TwistElement& F, const AlgElement& p, const AlgElement& q);

struct StarAlgebra {
    LieSC sc;
    // Central terms of [x^μ, x^ν]⋆, indexed like sc.c[μ][ν].
    std::vector<std::vector<Scalar>> central;
    Report report;  // closure on the affine span, antisymmetry, Jacobi
};

// Pairwise ⋆-commutators of the coordinates. Throws AlgebraError carrying the
// remainder when a commutator has a quadratic part.
StarAlgebra star_commutators(const ModuleAction& act, const TwistElement& F);

// Action of the row's κ-Poincaré algebra on its coordinates, and the row's
// ⋆-commutators. Every catalog twist in cocycle form is a two-cocycle for Δ_τ.
ModuleAction row_action(const TwistSetup& s, ModuleAction::Options opt = {});
StarAlgebra row_star_algebra(const TwistSetup& s);

// L▷(x y) against (L(1)▷x)(L(2)▷y), and L▷ of every defining relation, for
// each generator L and coordinates x, y.
Report module_algebra_check(const ModuleAction& act);

// DSR algebra: x generators first, then those of H, with cross relations
// [L, x] = (L(1)▷x) L(2) − x L.
struct CrossedProduct {
    PresPtr pres;
    Report report;  // comparison with the closed-form cross relations
};
CrossedProduct crossed_product(const ModuleAction& act, const KappaModel& m);

// L▷x† = (S(L)*▷x)† for self-adjoint generators L and coordinates x.
Report module_reality_check(const ModuleAction& act, const std::vector<AlgElement>& star);
// The same check with κ rotated to i κ in the algebra, the coordinates and the
// action, keeping the star structures.
Report nonreal_kappa_reality_check(const KappaModel& m);

}  // namespace kappa
