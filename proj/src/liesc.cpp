#include "kappa/liesc.hpp"

#include <sstream>

namespace kappa {

LieSC::LieSC(std::vector<std::string> basis) : n((int)basis.size()), names(std::move(basis)) {
    c.assign(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
}

int LieSC::index(const std::string& name) const {
    for (int k = 0; k < n; ++k)
        if (names[k] == name) return k;
    throw ConfigError("unknown basis element '" + name + "'");
}

void LieSC::set(int i, int j, std::vector<Scalar> v) {
    if ((int)v.size() != n) throw ConfigError("bracket has the wrong length");
    c[i][j] = v;
    for (auto& s : v) s = -s;
    c[j][i] = std::move(v);
}

std::vector<Scalar> LieSC::bracket(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const {
    std::vector<Scalar> out(n);
    for (int i = 0; i < n; ++i) {
        if (u[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (v[j].is_zero()) continue;
            Scalar w = u[i] * v[j];
            for (int k = 0; k < n; ++k)
                if (!c[i][j][k].is_zero()) out[k] += w * c[i][j][k];
        }
    }
    return out;
}

LieSC LieSC::transformed(const std::vector<std::vector<Scalar>>& t, const std::vector<std::vector<Scalar>>& tinv,
                         std::vector<std::string> new_names) const {
    if ((int)t.size() != n || (int)tinv.size() != n) throw ConfigError("basis change has the wrong size");
    LieSC out(new_names.empty() ? names : std::move(new_names));
    if (out.n != n) throw ConfigError("basis change has the wrong number of names");
    out.complex_field = complex_field;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // [e'_i, e'_j] in the old basis, then rewritten with e_k = Σ_l tinv[k][l] e'_l
            std::vector<Scalar> old = bracket(t[i], t[j]), v(n);
            for (int k = 0; k < n; ++k) {
                if (old[k].is_zero()) continue;
                for (int l = 0; l < n; ++l)
                    if (!tinv[k][l].is_zero()) v[l] += old[k] * tinv[k][l];
            }
            out.set(i, j, v);
        }
    return out;
}

LieSC LieSC::map_coefficients(const std::function<Scalar(const Scalar&)>& f) const {
    LieSC out = *this;
    for (auto& row : out.c)
        for (auto& v : row)
            for (auto& s : v) s = f(s);
    return out;
}

bool LieSC::antisymmetric() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (c[i][j][k] != -c[j][i][k]) return false;
    return true;
}

bool LieSC::jacobi() const {
    auto e = [&](int k) {
        std::vector<Scalar> v(n);
        v[k] = Scalar(1);
        return v;
    };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int d = b + 1; d < n; ++d) {
                auto x = bracket(e(a), bracket(e(b), e(d)));
                auto y = bracket(e(b), bracket(e(d), e(a)));
                auto z = bracket(e(d), bracket(e(a), e(b)));
                for (int k = 0; k < n; ++k)
                    if (!(x[k] + y[k] + z[k]).is_zero()) return false;
            }
    return true;
}

bool LieSC::abelian() const {
    for (auto& row : c)
        for (auto& v : row)
            for (auto& s : v)
                if (!s.is_zero()) return false;
    return true;
}

std::string LieSC::str() const {
    std::ostringstream os;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::string rhs;
            for (int k = 0; k < n; ++k) {
                if (c[i][j][k].is_zero()) continue;
                if (!rhs.empty()) rhs += " + ";
                rhs += "(" + c[i][j][k].str() + ")*" + names[k];
            }
            if (!rhs.empty()) os << "[" << names[i] << "," << names[j] << "] = " << rhs << "\n";
        }
    return os.str();
}

std::string LieSC::serialize() const {
    std::ostringstream os;
    os << "liesc " << n << " " << (complex_field ? "complex" : "real") << "\n";
    for (int k = 0; k < n; ++k) os << (k ? " " : "") << names[k];
    os << "\n" << str();
    return os.str();
}

LieSC LieSC::parse(const std::string& text) {
    std::istringstream in(text);
    std::string tag, field;
    int n = 0;
    if (!(in >> tag >> n >> field) || tag != "liesc" || n <= 0 || (field != "real" && field != "complex"))
        throw ConfigError("liesc: bad header");
    std::vector<std::string> names(n);
    for (auto& s : names)
        if (!(in >> s)) throw ConfigError("liesc: missing basis names");
    LieSC L(names);
    L.complex_field = field == "complex";
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto lb = line.find('['), comma = line.find(','), rb = line.find(']'), eq = line.find('=');
        if (lb == std::string::npos || comma == std::string::npos || rb == std::string::npos || eq == std::string::npos)
            throw ConfigError("liesc: malformed line '" + line + "'");
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        int i = L.index(trim(line.substr(lb + 1, comma - lb - 1)));
        int j = L.index(trim(line.substr(comma + 1, rb - comma - 1)));
        std::vector<Scalar> v(n);
        std::string rhs = line.substr(eq + 1);
        // terms "(coeff)*name" separated by " + "
        size_t pos = 0;
        while ((pos = rhs.find('(', pos)) != std::string::npos) {
            int depth = 0;
            size_t end = pos;
            for (; end < rhs.size(); ++end) {
                if (rhs[end] == '(') depth++;
                if (rhs[end] == ')' && --depth == 0) break;
            }
            if (end >= rhs.size() || end + 1 >= rhs.size() || rhs[end + 1] != '*')
                throw ConfigError("liesc: malformed term in '" + line + "'");
            size_t nstart = end + 2, nend = rhs.find(' ', nstart);
            std::string name = trim(rhs.substr(nstart, nend == std::string::npos ? std::string::npos : nend - nstart));
            v[L.index(name)] += parse_scalar(rhs.substr(pos + 1, end - pos - 1));
            pos = nend == std::string::npos ? rhs.size() : nend;
        }
        L.set(i, j, v);
    }
    return L;
}

}  // namespace kappa
