#pragma once

#include "kappa/model.hpp"

#include <string>
#include <vector>

namespace kappa {

// F = exp(A_1) exp(A_2) ... exp(A_n) with each A_k in U⊗U of positive grade.
class TwistElement {
public:
    TwistElement() = default;
    TwistElement(PresPtr p, std::string label);

    std::string label;
    bool unitary = false;  // claimed unitary; the twisted structure is checked for reality
    bool complex = false;  // built over the complexified algebra

    const PresPtr& pres() const { return pres_; }
    const std::vector<TensorElement>& factors() const { return factors_; }
    // Appends exp(a) on the right.
    void append(const TensorElement& a);
    const TensorElement& F() const { return F_; }
    const TensorElement& inverse() const { return Finv_; }
    // F_21, keeping the factor structure.
    TwistElement flipped() const;
    // outer · inner: twisting by inner, then by outer.
    static TwistElement compose(const TwistElement& outer, const TwistElement& inner);

private:
    PresPtr pres_;
    std::vector<TensorElement> factors_;
    TensorElement F_, Finv_;
};

// a ∧ b = a⊗b − b⊗a
TensorElement wedge_tensor(const AlgElement& a, const AlgElement& b);

// κ ln Π_τ of the model, exact at the presentation's truncation.
AlgElement kappa_log_pi(const KappaModel& m);

// Twists of the catalog: LC, L1, L2, S1, S2, S3, T1, T3, T4. T3 and T4 take
// an optional sign suffix ("T3-"); the default is "+".
std::vector<std::string> twist_labels();

// `displayed` keeps the printed exponents. `cocycle` differs for T3/T4 (the
// printed ones are not cocycles here; this form uses P_k Π⁻¹ for transverse
// momenta and real M_3 coefficients) and for S1-S3 (κ ln Π_1 in place of
// P_1, so that the twist deforms Δ_τ rather than Δ0).
enum class TwistForm { cocycle, displayed };
TwistElement build_twist(const std::string& label, const KappaModel& m, TwistForm form = TwistForm::cocycle);  // throws ConfigError

// The model each row lives on and the coproduct the twist deforms.
struct TwistSetup {
    std::string label;
    KappaModel model;
    HopfData base;
    std::string base_name;
    TwistElement F;
};
// Bases: Δ0 for LC and displayed S rows, Δ_LC = F_LC Δ0 F_LC⁻¹ for L1/L2,
// Δ_τ otherwise.
TwistSetup twist_setup(const std::string& label, Trunc t = {3, 3}, TwistForm form = TwistForm::cocycle);

// (F⊗1)(Δ⊗id)F = (1⊗F)(id⊗Δ)F and (ε⊗id)F = (id⊗ε)F = 1.
Report cocycle_check(const TwistElement& F, const HopfData& H);

// Δ^F = F Δ F⁻¹, S^F = u S u⁻¹ with u = m(id⊗S)F. Throws AlgebraError when
// `verify` is set and the cocycle check fails.
HopfData twist_hopf(const HopfData& H, const TwistElement& F, bool verify = true);

// The two displayed orderings of the light-cone twist. `flip_sign` corrupts
// the M_{+a} exponent of the second form.
Report factor_order_check(const KappaModel& m, bool flip_sign = false);

// R = F_21 F⁻¹
TensorElement universal_r(const TwistElement& F);

// R Δ^F R⁻¹ = (Δ^F)^op on generators and R_21 R = 1, for Δ^F = twist_hopf(H, F)
// with H cocommutative.
Report universal_r_check(const HopfData& twisted, const TwistElement& F);

// A closed-form coproduct line as displayed for a twisted row, next to the
// engine's F Δ F⁻¹. cos and sin of ξκ ln Π enter through
// c = (Π^{iξκ} + Π^{-iξκ})/2 and s = (Π^{iξκ} - Π^{-iξκ})/2.
struct DisplayLine {
    std::string generator;
    std::string reading;  // "printed" or "corrected"
    bool strict = true;   // false: reported side by side, not asserted
    TensorElement engine, shown;
    bool matches() const { return engine == shown; }
};

// Rows L1, T1 (strict) and L2 (side by side, Π_0 read as Π_+). Failing strict
// lines also report whether the shown line is coassociative on its own.
Report twisted_display_check(const std::string& label, Trunc t = {3, 3}, std::vector<DisplayLine>* lines = nullptr);

// κ → ∞ of the row: Δ_base and κ ln Π_τ reduce to Δ0 and P_τ, the twisted
// coproducts to F0 Δ0 F0⁻¹ with F0 the limit of F (primitive once ξ = 0 as
// well). For L2 also the substitution of c, s by cos(ξP_+), i sin(ξP_+).
Report twisted_limit_check(const std::string& label, Trunc t = {3, 3}, std::vector<DisplayLine>* lines = nullptr);

}  // namespace kappa
