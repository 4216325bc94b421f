#include "kappa/tensor.hpp"

namespace kappa {

TensorElement TensorElement::one(const PresPtr& p, int rank) { return scalar(p, rank, Scalar(1)); }

TensorElement TensorElement::scalar(const PresPtr& p, int rank, const Scalar& s) {
    TensorElement t(p, rank);
    t.add_term(std::vector<Word>(rank), s.truncated(p->trunc()));
    return t;
}

TensorElement TensorElement::pure(const std::vector<AlgElement>& legs) {
    if (legs.empty()) throw AlgebraError("pure tensor needs at least one leg");
    PresPtr p = legs[0].pres();
    for (auto& l : legs)
        if (l.pres() && l.pres() != p) throw AlgebraError("presentation mismatch in tensor legs");
    TensorElement t(p, (int)legs.size());
    t.terms_.emplace(make_key(std::vector<Word>(legs.size())), Scalar(1));
    for (size_t k = 0; k < legs.size(); ++k) {
        std::map<Key, Scalar> next;
        for (auto& [key, c] : t.terms_) {
            auto ws = split_key(key);
            for (auto& [w, d] : legs[k].terms()) {
                ws[k] = w;
                Scalar cd = c * d;
                if (cd.is_zero()) continue;
                auto it = next.find(make_key(ws));
                if (it == next.end()) next.emplace(make_key(ws), cd);
                else {
                    it->second += cd;
                    if (it->second.is_zero()) next.erase(it);
                }
            }
        }
        t.terms_ = std::move(next);
    }
    return t;
}

TensorElement::Key TensorElement::make_key(const std::vector<Word>& legs) {
    Key k;
    for (size_t j = 0; j < legs.size(); ++j) {
        if (j) k += kLegSep;
        k += legs[j];
    }
    return k;
}

std::vector<Word> TensorElement::split_key(const Key& k) {
    std::vector<Word> out(1);
    for (char ch : k) {
        if (ch == kLegSep) out.emplace_back();
        else out.back() += ch;
    }
    return out;
}

Scalar TensorElement::constant_term() const {
    auto it = terms_.find(make_key(std::vector<Word>(rank_)));
    return it == terms_.end() ? Scalar() : it->second;
}

void TensorElement::add_key(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void TensorElement::add_term(const std::vector<Word>& legs, const Scalar& c) {
    if ((int)legs.size() != rank_) throw AlgebraError("tensor rank mismatch");
    add_key(make_key(legs), c);
}

TensorElement TensorElement::operator-() const {
    TensorElement r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
    if (!pres_) {
        pres_ = o.pres_;
        rank_ = o.rank_;
    }
    if (o.pres_ && o.pres_ != pres_) throw AlgebraError("presentation mismatch");
    if (o.pres_ && o.rank_ != rank_) throw AlgebraError("tensor rank mismatch");
    for (auto& [k, c] : o.terms_) add_key(k, c);
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) { return *this += -o; }

TensorElement& TensorElement::operator*=(const Scalar& s) {
    for (auto& [k, c] : terms_) c *= s;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero()) it = terms_.erase(it);
        else ++it;
    }
    return *this;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b) {
    if (!a.pres_) return TensorElement(b.pres_, b.rank_);
    if (!b.pres_) return TensorElement(a.pres_, a.rank_);
    if (a.pres_ != b.pres_) throw AlgebraError("presentation mismatch");
    if (a.rank_ != b.rank_) throw AlgebraError("tensor rank mismatch");
    const Presentation& p = *a.pres_;
    TensorElement out(a.pres_, a.rank_);
    std::vector<std::vector<Word>> bl;
    bl.reserve(b.terms_.size());
    for (auto& [kb, cb] : b.terms_) bl.push_back(TensorElement::split_key(kb));
    for (auto& [ka, ca] : a.terms_) {
        auto la = TensorElement::split_key(ka);
        size_t idx = 0;
        for (auto& [kb, cb] : b.terms_) {
            const auto& lb = bl[idx++];
            Scalar c = ca * cb;
            if (c.is_zero()) continue;
            // per-leg products, then the Cartesian combination
            std::vector<std::pair<std::vector<Word>, Scalar>> acc{{{}, c}};
            for (int j = 0; j < a.rank_; ++j) {
                Poly leg;
                if (la[j].empty()) leg.emplace(lb[j], Scalar(1));
                else if (lb[j].empty()) leg.emplace(la[j], Scalar(1));
                else leg = p.mul_words(la[j], lb[j]);
                std::vector<std::pair<std::vector<Word>, Scalar>> next;
                next.reserve(acc.size() * leg.size());
                for (auto& [ws, s] : acc)
                    for (auto& [w, d] : leg) {
                        Scalar sd = s * d;
                        if (sd.is_zero()) continue;
                        auto nws = ws;
                        nws.push_back(w);
                        next.emplace_back(std::move(nws), std::move(sd));
                    }
                acc = std::move(next);
            }
            for (auto& [ws, s] : acc) out.add_key(TensorElement::make_key(ws), s);
        }
    }
    return out;
}

TensorElement TensorElement::permuted(const std::vector<int>& perm) const {
    if ((int)perm.size() != rank_) throw AlgebraError("permutation size mismatch");
    TensorElement out(pres_, rank_);
    for (auto& [k, c] : terms_) {
        auto ws = split_key(k);
        std::vector<Word> nw(rank_);
        for (int j = 0; j < rank_; ++j) nw[j] = ws[perm[j]];
        out.add_key(make_key(nw), c);
    }
    return out;
}

TensorElement TensorElement::expand_leg(int leg, int image_rank,
                                        const std::function<TensorElement(const Word&)>& f) const {
    int new_rank = rank_ - 1 + image_rank;
    TensorElement out(pres_, new_rank);
    std::map<Word, TensorElement> cache;
    for (auto& [k, c] : terms_) {
        auto ws = split_key(k);
        auto it = cache.find(ws[leg]);
        if (it == cache.end()) it = cache.emplace(ws[leg], f(ws[leg])).first;
        const TensorElement& img = it->second;
        if (img.pres_ && img.rank_ != image_rank) throw AlgebraError("expand_leg: image rank mismatch");
        for (auto& [ik, ic] : img.terms_) {
            std::vector<Word> nw;
            nw.insert(nw.end(), ws.begin(), ws.begin() + leg);
            if (image_rank > 0) {
                auto iw = split_key(ik);
                nw.insert(nw.end(), iw.begin(), iw.end());
            }
            nw.insert(nw.end(), ws.begin() + leg + 1, ws.end());
            out.add_key(make_key(nw), c * ic);
        }
    }
    return out;
}

AlgElement TensorElement::multiply_legs() const {
    AlgElement out(pres_);
    for (auto& [k, c] : terms_) {
        auto ws = split_key(k);
        Poly cur{{Word(), c}};
        for (auto& w : ws) {
            if (w.empty()) continue;
            cur = pres_->mul(cur, Poly{{w, Scalar(1)}});
        }
        out += AlgElement(pres_, std::move(cur), true);
    }
    return out;
}

AlgElement TensorElement::to_alg() const {
    if (rank_ != 1) throw AlgebraError("to_alg needs a rank-1 tensor");
    Poly p;
    for (auto& [k, c] : terms_) poly_add(p, k, c);
    return AlgElement(pres_, std::move(p), true);
}

TensorElement TensorElement::tensor_left(const AlgElement& a) const {
    TensorElement out(pres_, rank_ + 1);
    for (auto& [w, c] : a.terms())
        for (auto& [k, d] : terms_) out.add_key(w + kLegSep + k, c * d);
    return out;
}

TensorElement TensorElement::tensor_right(const AlgElement& a) const {
    TensorElement out(pres_, rank_ + 1);
    for (auto& [k, d] : terms_)
        for (auto& [w, c] : a.terms()) out.add_key(k + kLegSep + w, c * d);
    return out;
}

TensorElement TensorElement::map_coefficients(const std::function<Scalar(const Scalar&)>& f) const {
    TensorElement out(pres_, rank_);
    for (auto& [k, c] : terms_) out.add_key(k, f(c));
    return out;
}

TensorElement TensorElement::truncated(Trunc t) const {
    return map_coefficients([&](const Scalar& c) { return c.truncated(t); });
}

std::string TensorElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [k, c] : terms_) {
        if (!first) s += " + ";
        first = false;
        std::string legs;
        auto ws = split_key(k);
        for (size_t j = 0; j < ws.size(); ++j) {
            if (j) legs += " (x) ";
            legs += pres_->word_str(ws[j]);
        }
        s += "(" + c.str() + ")*" + legs;
    }
    return s;
}

TensorElement star_conjugate(const TensorElement& t, const std::vector<AlgElement>& table) {
    TensorElement out(t.pres(), t.rank());
    for (auto& [k, c] : t.terms()) {
        auto ws = TensorElement::split_key(k);
        std::vector<AlgElement> legs;
        for (auto& w : ws) legs.push_back(star_conjugate(AlgElement::word(t.pres(), w), table));
        out += TensorElement::pure(legs) * c.conj();
    }
    return out;
}

}  // namespace kappa
