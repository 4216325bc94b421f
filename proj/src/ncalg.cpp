#include "kappa/ncalg.hpp"

#include <algorithm>
#include <sstream>

namespace kappa {

void poly_add(Poly& acc, const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = acc.find(w);
    if (it == acc.end()) {
        acc.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
}

void poly_add(Poly& acc, const Poly& p, const Scalar& c) {
    if (c.is_zero()) return;
    for (auto& [w, s] : p) poly_add(acc, w, s * c);
}

void poly_prune(Poly& p) {
    for (auto it = p.begin(); it != p.end();) {
        if (it->second.is_zero()) it = p.erase(it);
        else ++it;
    }
}

Presentation::Presentation(std::vector<Generator> gens, Trunc trunc) : gens_(std::move(gens)), trunc_(trunc) {
    if (gens_.size() > 250) throw ConfigError("too many generators");
    for (int k = 0; k < (int)gens_.size(); ++k) {
        if (by_name_.count(gens_[k].name)) throw ConfigError("duplicate generator " + gens_[k].name);
        by_name_[gens_[k].name] = k;
    }
    table_.assign(gens_.size(), std::vector<const Poly*>(gens_.size(), nullptr));
}

int Presentation::index(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw ConfigError("unknown generator '" + name + "'");
    return it->second;
}

std::optional<int> Presentation::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

std::string Presentation::word_str(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) s += "*";
        s += gens_[(unsigned char)w[k]].name;
    }
    return s;
}

void Presentation::set_rule(int first, int second, Poly rhs) {
    poly_prune(rhs);
    for (auto& [w, c] : rhs) {
        if (!is_normal(w)) throw AlgebraError("rule right-hand side word " + word_str(w) + " is not normal");
        (void)c;
    }
    auto key = std::make_pair(first, second);
    rules_[key] = std::move(rhs);
    for (auto& [k, p] : rules_) table_[k.first][k.second] = &p;
    clear_cache();
}

void Presentation::set_swap(int b, int a, const Poly& comm) {
    if (b <= a) throw AlgebraError("set_swap expects b > a");
    Poly rhs;
    Word ab;
    ab += (char)a;
    ab += (char)b;
    poly_add(rhs, ab, Scalar(1));
    for (auto& [w, c] : comm) poly_add(rhs, w, c.truncated(trunc_));
    set_rule(b, a, std::move(rhs));
}

const Poly* Presentation::rule(int first, int second) const { return table_[first][second]; }

bool Presentation::is_normal(const Word& w) const {
    for (size_t k = 1; k < w.size(); ++k) {
        int x = (unsigned char)w[k - 1], y = (unsigned char)w[k];
        if (x > y || table_[x][y]) return false;
    }
    return true;
}

void Presentation::clear_cache() const {
    std::lock_guard<std::mutex> lk(cache_mu_);
    cache_.clear();
}

Poly Presentation::insert_letter(int g, const Word& v, long& fuel) const {
    if (--fuel < 0) throw AlgebraError("normal-form fuel exhausted");
    Word key;
    key.reserve(v.size() + 1);
    key += (char)g;
    key += v;
    if ((int)key.size() > max_word_length)
        throw AlgebraError("word length cap exceeded: " + word_str(key));
    {
        std::lock_guard<std::mutex> lk(cache_mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    Poly out;
    if (v.empty()) {
        out.emplace(key, Scalar::one(trunc_));
    } else {
        int a = (unsigned char)v[0];
        const Poly* r = table_[g][a];
        if (!r && g <= a) {
            out.emplace(key, Scalar::one(trunc_));
        } else if (!r) {
            // plain swap: g a v' = a (g v')
            Poly inner = insert_letter(g, v.substr(1), fuel);
            for (auto& [w, c] : inner) poly_add(out, insert_letter(a, w, fuel), c);
        } else {
            Word rest = v.substr(1);
            for (auto& [w, c] : *r) poly_add(out, insert_word(w, rest, fuel), c);
        }
    }
    std::lock_guard<std::mutex> lk(cache_mu_);
    cache_.emplace(key, out);
    return out;
}

Poly Presentation::insert_word(const Word& u, const Word& v, long& fuel) const {
    Poly cur;
    cur.emplace(v, Scalar::one(trunc_));
    for (int k = (int)u.size() - 1; k >= 0; --k) {
        Poly next;
        for (auto& [w, c] : cur) poly_add(next, insert_letter((unsigned char)u[k], w, fuel), c);
        cur = std::move(next);
    }
    return cur;
}

Poly Presentation::normal_word(const Word& w) const {
    long fuel = fuel_limit;
    return insert_word(w, Word(), fuel);
}

Poly Presentation::mul_words(const Word& u, const Word& v) const {
    long fuel = fuel_limit;
    return insert_word(u, v, fuel);
}

Poly Presentation::normalize(const Poly& raw) const {
    Poly out;
    for (auto& [w, c] : raw) {
        for (int ch : w)
            if ((unsigned char)ch >= gens_.size()) throw AlgebraError("unknown generator index in word");
        if (is_normal(w)) poly_add(out, w, c.truncated(trunc_));
        else poly_add(out, normal_word(w), c.truncated(trunc_));
    }
    return out;
}

Poly Presentation::mul(const Poly& a, const Poly& b) const {
    Poly out;
    for (auto& [u, cu] : a)
        for (auto& [v, cv] : b) {
            Scalar c = cu * cv;
            if (c.is_zero()) continue;
            if (u.empty()) poly_add(out, v, c);
            else if (v.empty()) poly_add(out, u, c);
            else poly_add(out, mul_words(u, v), c);
        }
    return out;
}

Poly Presentation::bracket(int b, int a) const {
    Word ba, ab;
    ba += (char)b;
    ba += (char)a;
    ab += (char)a;
    ab += (char)b;
    Poly p = normal_word(ba);
    Poly q = normal_word(ab);
    poly_add(p, q, Scalar(-1));
    return p;
}

std::shared_ptr<Presentation> Presentation::map_coefficients(const std::function<Scalar(const Scalar&)>& f,
                                                            Trunc t) const {
    auto out = std::make_shared<Presentation>(gens_, t);
    out->max_word_length = max_word_length;
    out->fuel_limit = fuel_limit;
    for (auto& [k, rhs] : rules_) {
        Poly m;
        for (auto& [w, c] : rhs) poly_add(m, w, f(c).truncated(t));
        out->set_rule(k.first, k.second, std::move(m));
    }
    return out;
}

static const char* kind_name(GenKind k) {
    switch (k) {
        case GenKind::M: return "M";
        case GenKind::P: return "P";
        case GenKind::Pi: return "Pi";
        case GenKind::PiInv: return "PiInv";
        case GenKind::X: return "X";
        default: return "aux";
    }
}

std::string Presentation::dump() const {
    std::ostringstream os;
    os << "presentation " << gens_.size() << " trunc " << trunc_.str() << "\n";
    for (auto& g : gens_)
        os << "gen " << g.name << " " << kind_name(g.kind) << " " << g.mu << " " << g.nu << " " << g.weight << "\n";
    for (auto& [k, rhs] : rules_) {
        os << "rule " << gens_[k.first].name << " " << gens_[k.second].name << " :=";
        for (auto& [w, c] : rhs) os << " [" << c.str() << "] " << word_str(w) << " ;";
        os << "\n";
    }
    return os.str();
}

namespace {

GenKind parse_kind(const std::string& s) {
    if (s == "M") return GenKind::M;
    if (s == "P") return GenKind::P;
    if (s == "Pi") return GenKind::Pi;
    if (s == "PiInv") return GenKind::PiInv;
    if (s == "X") return GenKind::X;
    return GenKind::Aux;
}

int parse_trunc_part(const std::string& s) { return s == "exact" ? Trunc::kExact : std::stoi(s); }

// Parses one product term such as "-3/2*i*h^2*xi", "kappa", "(1/2-i)*h".
Scalar parse_term(std::string t) {
    GaussRat coeff(1);
    Mono m;
    if (!t.empty() && t[0] == '-') {
        coeff = -coeff;
        t.erase(0, 1);
    }
    std::vector<std::string> factors;
    int depth = 0;
    std::string cur;
    for (char ch : t) {
        if (ch == '(') depth++;
        if (ch == ')') depth--;
        if (ch == '*' && depth == 0) {
            factors.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    factors.push_back(cur);
    for (auto& f : factors) {
        if (f.empty()) throw ConfigError("malformed scalar term '" + t + "'");
        auto power = [&](const std::string& base) {
            if (f == base) return 1;
            if (f.rfind(base + "^", 0) == 0) return std::stoi(f.substr(base.size() + 1));
            return 0;
        };
        if (f == "i") coeff *= GaussRat::I();
        else if (int p = power("h")) m.dh += p;
        else if (int p2 = power("kappa")) m.dh -= p2;
        else if (int p3 = power("xi")) m.dx += p3;
        else if (f.front() == '(') coeff *= parse_scalar(f.substr(1, f.size() - 2)).constant_term();
        else coeff *= GaussRat(parse_rational(f));
    }
    return Scalar(coeff, m);
}

}  // namespace

Scalar parse_scalar(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!isspace((unsigned char)ch)) s += ch;
    if (s.empty() || s == "0") return Scalar();
    Scalar out;
    int depth = 0;
    size_t start = 0;
    for (size_t k = 0; k <= s.size(); ++k) {
        char ch = k < s.size() ? s[k] : '+';
        if (ch == '(') depth++;
        if (ch == ')') depth--;
        bool split = depth == 0 && (ch == '+' || ch == '-') && k > start && s[k - 1] != '^' && s[k - 1] != '/' &&
                     s[k - 1] != '*';
        if (split || k == s.size()) {
            out += parse_term(s.substr(start, k - start));
            start = k;
            if (ch == '+') start = k + 1;
        }
    }
    return out;
}




std::shared_ptr<Presentation> Presentation::load(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Generator> gens;
    Trunc t;
    std::vector<std::string> rule_lines;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag.empty()) continue;
        if (tag == "presentation") {
            std::string n, tr, tt;
            ls >> n >> tr >> tt;
            auto comma = tt.find(',');
            if (tt.size() < 5 || comma == std::string::npos)
                throw ConfigError("line " + std::to_string(line_no) + ": bad truncation");
            t.h = parse_trunc_part(tt.substr(1, comma - 1));
            t.xi = parse_trunc_part(tt.substr(comma + 1, tt.size() - comma - 2));
        } else if (tag == "gen") {
            Generator g;
            std::string kind;
            ls >> g.name >> kind >> g.mu >> g.nu >> g.weight;
            if (!ls) throw ConfigError("line " + std::to_string(line_no) + ": bad generator line");
            g.kind = parse_kind(kind);
            gens.push_back(g);
        } else if (tag == "rule") {
            rule_lines.push_back(line);
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown record '" + tag + "'");
        }
    }
    auto p = std::make_shared<Presentation>(gens, t);
    for (auto& rl : rule_lines) {
        std::istringstream ls(rl);
        std::string tag, a, b, assign;
        ls >> tag >> a >> b >> assign;
        std::string body;
        std::getline(ls, body);
        Poly rhs;
        size_t pos = 0;
        while (true) {
            auto lb = body.find('[', pos);
            if (lb == std::string::npos) break;
            auto rb = body.find(']', lb);
            auto semi = body.find(';', rb);
            if (rb == std::string::npos || semi == std::string::npos) throw ConfigError("malformed rule: " + rl);
            Scalar c = parse_scalar(body.substr(lb + 1, rb - lb - 1));
            std::string ws = body.substr(rb + 1, semi - rb - 1);
            ws.erase(std::remove_if(ws.begin(), ws.end(), ::isspace), ws.end());
            Word w;
            if (ws != "1") {
                std::istringstream ws_in(ws);
                std::string name;
                while (std::getline(ws_in, name, '*')) w += (char)p->index(name);
            }
            poly_add(rhs, w, c.truncated(t));
            pos = semi + 1;
        }
        p->set_rule(p->index(a), p->index(b), std::move(rhs));
    }
    return p;
}

AlgElement::AlgElement(PresPtr p, Poly terms, bool normalized) : pres_(std::move(p)) {
    if (normalized) {
        terms_ = std::move(terms);
        poly_prune(terms_);
    } else {
        terms_ = pres_->normalize(terms);
    }
}

AlgElement AlgElement::scalar(const PresPtr& p, const Scalar& s) {
    Poly t;
    poly_add(t, Word(), s.truncated(p->trunc()));
    return AlgElement(p, std::move(t), true);
}

AlgElement AlgElement::gen(const PresPtr& p, int index) {
    if (index < 0 || index >= p->size()) throw AlgebraError("generator index out of range");
    Poly t;
    t.emplace(Word(1, (char)index), Scalar::one(p->trunc()));
    return AlgElement(p, std::move(t), true);
}

AlgElement AlgElement::gen(const PresPtr& p, const std::string& name) { return gen(p, p->index(name)); }

AlgElement AlgElement::word(const PresPtr& p, const Word& w, const Scalar& c) {
    Poly t;
    poly_add(t, w, c);
    return AlgElement(p, std::move(t), false);
}

Scalar AlgElement::constant_term() const {
    auto it = terms_.find(Word());
    return it == terms_.end() ? Scalar() : it->second;
}

int AlgElement::min_h_degree() const {
    int d = 1 << 20;
    for (auto& [w, c] : terms_)
        for (auto& [m, g] : c.terms()) d = std::min(d, m.dh);
    return d;
}

int AlgElement::min_xi_degree() const {
    int d = 1 << 20;
    for (auto& [w, c] : terms_)
        for (auto& [m, g] : c.terms()) d = std::min(d, m.dx);
    return d;
}

int AlgElement::max_word_length() const {
    int d = 0;
    for (auto& [w, c] : terms_) d = std::max(d, (int)w.size());
    return d;
}

void AlgElement::check_same(const AlgElement& o) const {
    if (!pres_) return;
    if (o.pres_ && o.pres_ != pres_) throw AlgebraError("presentation mismatch");
}

AlgElement AlgElement::operator-() const {
    AlgElement r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
    if (!pres_) pres_ = o.pres_;
    check_same(o);
    for (auto& [w, c] : o.terms_) poly_add(terms_, w, c);
    return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
    if (!pres_) pres_ = o.pres_;
    check_same(o);
    for (auto& [w, c] : o.terms_) poly_add(terms_, w, -c);
    return *this;
}

AlgElement& AlgElement::operator*=(const Scalar& s) {
    for (auto& [w, c] : terms_) c *= s;
    poly_prune(terms_);
    return *this;
}

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
    a.check_same(b);
    const PresPtr& p = a.pres_ ? a.pres_ : b.pres_;
    if (!p) return AlgElement();
    return AlgElement(p, p->mul(a.terms_, b.terms_), true);
}

AlgElement AlgElement::pow(int n) const {
    if (n < 0) throw AlgebraError("negative power");
    AlgElement r = one(pres_);
    for (int k = 0; k < n; ++k) r = r * *this;
    return r;
}

AlgElement AlgElement::map_coefficients(const std::function<Scalar(const Scalar&)>& f) const {
    Poly t;
    for (auto& [w, c] : terms_) poly_add(t, w, f(c));
    return AlgElement(pres_, std::move(t), true);
}

AlgElement AlgElement::transported(const PresPtr& target) const {
    Poly t;
    for (auto& [w, c] : terms_) {
        Word nw;
        for (char ch : w) nw += (char)target->index(pres_->generators()[(unsigned char)ch].name);
        poly_add(t, nw, c.truncated(target->trunc()));
    }
    return AlgElement(target, std::move(t), false);
}

AlgElement AlgElement::truncated(Trunc t) const {
    return map_coefficients([&](const Scalar& c) { return c.truncated(t); });
}

std::string AlgElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [w, c] : terms_) {
        if (!first) s += " + ";
        first = false;
        std::string cs = c.str();
        if (w.empty()) s += "(" + cs + ")";
        else if (cs == "1") s += pres_->word_str(w);
        else s += "(" + cs + ")*" + pres_->word_str(w);
    }
    return s;
}

AlgElement commutator(const AlgElement& a, const AlgElement& b) { return a * b - b * a; }

AlgElement apply_hom(const AlgElement& e, const PresPtr& target, const std::function<AlgElement(int)>& image) {
    std::vector<std::optional<AlgElement>> cache(e.pres()->size());
    auto img = [&](int g) -> const AlgElement& {
        if (!cache[g]) cache[g] = image(g);
        return *cache[g];
    };
    AlgElement out(target);
    for (auto& [w, c] : e.terms()) {
        AlgElement t = AlgElement::scalar(target, c);
        for (char ch : w) t = t * img((unsigned char)ch);
        out += t;
    }
    return out;
}

AlgElement star_conjugate(const AlgElement& e, const std::vector<AlgElement>& table) {
    const PresPtr& p = e.pres();
    if ((int)table.size() != p->size()) throw AlgebraError("star table does not cover every generator");
    AlgElement out(p);
    for (auto& [w, c] : e.terms()) {
        AlgElement t = AlgElement::scalar(p, c.conj());
        for (int k = (int)w.size() - 1; k >= 0; --k) {
            const AlgElement& img = table[(unsigned char)w[k]];
            if (!img.pres()) throw AlgebraError("missing star table entry");
            t = t * img;
        }
        out += t;
    }
    return out;
}

std::vector<AlgElement> self_adjoint_table(const PresPtr& p) {
    std::vector<AlgElement> t;
    for (int k = 0; k < p->size(); ++k) t.push_back(AlgElement::gen(p, k));
    return t;
}

std::vector<Residual> presentation_check(const PresPtr& p) {
    std::vector<Residual> out;
    int n = p->size();
    auto reducible = [&](int x, int y) { return x > y || p->rule(x, y); };
    auto rewrite_pair = [&](int x, int y) -> Poly {
        if (const Poly* r = p->rule(x, y)) return *r;
        Poly q;
        Word w;
        w += (char)y;
        w += (char)x;
        q.emplace(w, Scalar(1));
        return q;
    };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (!reducible(x, y)) continue;
            for (int z = 0; z < n; ++z) {
                if (!reducible(y, z)) continue;
                Poly left, right;
                for (auto& [w, c] : rewrite_pair(x, y)) {
                    Word full = w + (char)z;
                    poly_add(left, p->normal_word(full), c);
                }
                for (auto& [w, c] : rewrite_pair(y, z)) {
                    Word full = (char)x + w;
                    poly_add(right, p->normal_word(full), c);
                }
                poly_add(left, right, Scalar(-1));
                Residual r;
                const auto& g = p->generators();
                r.name = g[x].name + "*" + g[y].name + "*" + g[z].name;
                r.ok = left.empty();
                r.terms = left.size();
                if (!r.ok) r.detail = AlgElement(p, left, true).str();
                out.push_back(std::move(r));
            }
        }
    return out;
}

}  // namespace kappa
