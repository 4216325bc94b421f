#pragma once

#include "kappa/report.hpp"
#include "kappa/series.hpp"
#include "kappa/tensor.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace kappa {

// Structure maps on generators; extended to words on demand.
class HopfData {
public:
    HopfData() = default;
    explicit HopfData(PresPtr p, std::string name = {});

    std::string name;

    const PresPtr& pres() const { return pres_; }
    void set(int g, TensorElement delta, AlgElement s, Scalar eps);
    void set(const std::string& g, TensorElement delta, AlgElement s, Scalar eps) {
        set(pres_->index(g), std::move(delta), std::move(s), std::move(eps));
    }
    bool complete() const;
    const TensorElement& delta_gen(int g) const;
    const AlgElement& antipode_gen(int g) const;
    const Scalar& counit_gen(int g) const;

    TensorElement delta(const AlgElement& e) const;
    TensorElement delta_word(const Word& w) const;
    // Δ applied to one leg of a tensor (leg is replaced by two legs).
    TensorElement delta_on_leg(const TensorElement& t, int leg) const;
    AlgElement antipode(const AlgElement& e) const;
    AlgElement antipode_word(const Word& w) const;
    TensorElement antipode_on_leg(const TensorElement& t, int leg) const;
    Scalar counit(const AlgElement& e) const;
    Scalar counit_word(const Word& w) const;
    TensorElement counit_on_leg(const TensorElement& t, int leg) const;

private:
    PresPtr pres_;
    std::vector<std::optional<TensorElement>> delta_;
    std::vector<std::optional<AlgElement>> s_;
    std::vector<std::optional<Scalar>> eps_;

    struct Cache {
        std::mutex mu;
        std::map<Word, TensorElement> delta;
        std::map<Word, AlgElement> s;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

using HopfPtr = std::shared_ptr<const HopfData>;

struct VerifyOptions {
    bool relations = true;
    bool degree2 = true;
    std::vector<int> generators;  // empty = all
};

Report verify_axioms(const HopfData& H, const VerifyOptions& opt = {});

// Reality conditions against a star table; when pi is given, also
// S(S(X)) = Π^{D-1} X Π^{1-D} with pi_inv its inverse.
Report verify_reality(const HopfData& H, const std::vector<AlgElement>& star, const AlgElement* pi = nullptr,
                      const AlgElement* pi_inv = nullptr, int D = 0);

// R Δ_a(g) R^{-1} = Δ_b(g) on generators, and R_21 R = 1⊗1.
Report check_rmatrix_intertwiner(const HopfData& Ha, const HopfData& Hb, const TensorElement& R);

// Summary used in reports: count and lowest (h, xi) grade present.
std::string residual_summary(const TensorElement& t);
std::string residual_summary(const AlgElement& e);

// Same structure with every coefficient mapped through f, over a presentation
// whose rules were mapped the same way (target from Presentation::map_coefficients).
HopfData map_hopf_coefficients(const HopfData& H, const PresPtr& target, const std::function<Scalar(const Scalar&)>& f);
AlgElement rebase(const AlgElement& e, const PresPtr& target, const std::function<Scalar(const Scalar&)>& f);
TensorElement rebase(const TensorElement& t, const PresPtr& target, const std::function<Scalar(const Scalar&)>& f);

// ψ: H1 -> H2 given on generators; checks relations, Δ, S and ε.
Report check_hopf_morphism(const HopfData& H1, const HopfData& H2, const std::function<AlgElement(int)>& image);

// Primitive coproducts, S = -id and ε = 0 on every generator.
HopfData undeformed_hopf(const PresPtr& p);

}  // namespace kappa
