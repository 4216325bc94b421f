#pragma once

#include "kappa/hopf.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kappa {

// Index layout of iso(g): all M(mu,nu) with mu<nu in lexicographic order,
// then P(mu). Names are "M" + label(mu) + label(nu) and "P" + label(mu).
class IsoLayout {
public:
    IsoLayout() = default;
    IsoLayout(int D, std::vector<std::string> labels);

    int dim() const { return D_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Generator>& generators() const { return gens_; }
    int size() const { return (int)gens_.size(); }
    int M(int mu, int nu) const;  // mu < nu
    int P(int mu) const { return n_m_ + mu; }
    bool is_M(int g) const { return g < n_m_; }

private:
    int D_ = 0;
    int n_m_ = 0;
    std::vector<std::string> labels_;
    std::vector<Generator> gens_;
    std::vector<std::vector<int>> m_index_;
};

std::vector<std::string> numeric_labels(int D);
std::vector<std::string> null_labels(int D);  // "+", "-", "1", ..., "D-2"

using LinComb = std::map<int, GaussRat>;

// [X_a, X_b] of iso(g) in the layout's basis.
LinComb iso_bracket(const IsoLayout& L, const QMatrix& g, int a, int b);

PresPtr build_iso(const IsoLayout& L, const MetricData& m, Trunc t = Trunc::exact());

// Element helpers over a presentation containing the iso(g) generators
// (possibly without P_0 when building q-analogs).
struct IsoElements {
    PresPtr p;
    IsoLayout L;
    MetricData metric;
    std::vector<Q> tau_up;
    std::vector<Q> tau_down;
    // Stands in for P_0 when the presentation has no P_0 generator.
    std::optional<AlgElement> p0_subst;

    AlgElement one() const { return AlgElement::one(p); }
    AlgElement c(const Scalar& s) const { return AlgElement::scalar(p, s); }
    AlgElement M(int mu, int nu) const;  // antisymmetric, zero on the diagonal
    AlgElement P(int mu) const;
    AlgElement P_up(int mu) const;
    AlgElement C() const;
    AlgElement P_tau() const;
    AlgElement M_tau(int lambda) const;  // τ^α M_{αλ}
};

enum class Flavor { covariant_hadic, orthog_1_plus, null_plane, qanalog_timelike, qanalog_lightlike };

std::string flavor_name(Flavor f);
Flavor parse_flavor(const std::string& s);  // throws ConfigError

struct ModelConfig {
    MetricData metric = MetricData::lorentz(4);
    std::vector<Q> tau = {Q(1), Q(0), Q(0), Q(0)};
    Flavor flavor = Flavor::covariant_hadic;
    Trunc trunc{3, 3};
};

struct CasimirSet {
    AlgElement C;
    AlgElement C_tau;
    AlgElement Pi;
    AlgElement PiInv;
};

struct KappaModel {
    Flavor flavor;
    MetricData metric;
    TauVector tau;
    IsoLayout layout;
    PresPtr pres;
    HopfData hopf;
    CasimirSet cas;
    std::vector<AlgElement> star;
    IsoElements el;
    // P_τ rebuilt from the group-likes (q-analog flavors only).
    std::optional<AlgElement> P_tau_from_pi;
};

struct Decomposition {
    QMatrix A;  // row α holds the components of the new basis vector ẽ_α
    MetricData metric;
    std::vector<Q> tau_up;
};

// τ² ≠ 0: ẽ_0 = τ and an orthogonal complement. τ² = 0: ẽ_+ = τ, a null ẽ_-
// with g(τ, ẽ_-) = 1, then an orthogonal transverse block.
Decomposition orthogonal_decompose(const MetricData& m, const std::vector<Q>& tau);

// Covariant generator images under a basis change: P̃_α = A_α^μ P_μ, M̃_αβ = A_α^μ A_β^ν M_μν.
// Returns the new metric A g Aᵀ, the lowered τ̃ and the generator images in the old algebra.
struct BasisChange {
    MetricData metric;
    std::vector<Q> tau_down;
    std::vector<Q> tau_up;
    std::vector<AlgElement> images;  // indexed by generators of the new layout
};
BasisChange change_basis(const IsoElements& old_el, const QMatrix& A);

KappaModel build_covariant(const MetricData& m, const std::vector<Q>& tau, Trunc t,
                           const std::vector<std::string>& labels, PresPtr reuse = nullptr);
KappaModel build_kappa_hopf(const ModelConfig& cfg);

// Structure maps exactly as displayed for the decomposed bases, over the
// model's presentation, for generator-by-generator comparison.
HopfData orthog_display_hopf(const KappaModel& m);
HopfData null_plane_display_hopf(const KappaModel& m);
// Antipode S(M_τi) as written in the q-analog display, for comparison.
std::map<std::string, AlgElement> qanalog_timelike_display_antipode(const KappaModel& m);

Report compare_hopf(const HopfData& a, const HopfData& b);
Report casimir_check(const KappaModel& m);

// U_{κ,τ} ≅ U_{λκ,λτ} for h-adic flavors; for q-analog flavors, the
// specialized algebras at κ and at 1 are related by P ↦ P/κ.
Report rescaling_isomorphism_check(const ModelConfig& cfg, const Q& lambda);
Report qanalog_specialization_check(const ModelConfig& cfg, const Q& kappa);

}  // namespace kappa
