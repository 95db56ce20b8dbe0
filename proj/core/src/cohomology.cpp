#include "tophier/cohomology.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tophier/error.hpp"

namespace tophier {

Rat CohomologyRing::pairing(const CohVec& a, const CohVec& b) const {
    Rat r(0);
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) r += a[i] * b[j] * eta[i][j];
    return r;
}

CohVec CohomologyRing::cup_vec(const CohVec& a, const CohVec& b) const {
    CohVec r(n(), Rat(0));
    for (int i = 0; i < n(); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < n(); ++j) {
            if (b[j].is_zero()) continue;
            for (int g = 0; g < n(); ++g) {
                if (cup[i][j][g].is_zero()) continue;
                r[g] += a[i] * b[j] * cup[i][j][g];
            }
        }
    }
    return r;
}

CohVec CohomologyRing::unit_vec() const { return basis_vec(0); }

CohVec CohomologyRing::basis_vec(int alpha) const {
    CohVec r(n(), Rat(0));
    r[alpha] = Rat(1);
    return r;
}

CohVec CohomologyRing::dual_basis_vec(int alpha) const {
    CohVec r(n(), Rat(0));
    for (int b = 0; b < n(); ++b) r[b] = eta_inv[alpha][b];
    return r;
}

Rat CohomologyRing::integral(const CohVec& a) const { return pairing(a, unit_vec()); }

namespace {

std::vector<std::vector<Rat>> invert_matrix(const std::vector<std::vector<Rat>>& m) {
    int n = static_cast<int>(m.size());
    std::vector<std::vector<Rat>> a = m;
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = Rat(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) raise(ErrorKind::ValidationError, "eta is singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat lead = a[col][col];
        for (int c = 0; c < n; ++c) {
            a[col][c] /= lead;
            inv[col][c] /= lead;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rat f = a[r][col];
            for (int c = 0; c < n; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

}  // namespace

void CohomologyRing::validate() const {
    auto fail = [this](const std::string& axiom) {
        raise(ErrorKind::ValidationError, "cohomology ring '" + name + "': " + axiom);
    };
    int N = n();
    if (N < 1) fail("basis must be nonempty");
    if (static_cast<int>(deg.size()) != N || static_cast<int>(eta.size()) != N ||
        static_cast<int>(cup.size()) != N || static_cast<int>(c1.size()) != N ||
        static_cast<int>(cdm1.size()) != N || static_cast<int>(cd.size()) != N)
        fail("field sizes must all match the basis size");
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (basis[i] == basis[j]) fail("basis labels must be distinct");
    if (deg[0] != 0) fail("q_1 = 0 (the unit spans H^0)");
    if (deg[N - 1] != d) fail("q_n = d (the volume class is last)");
    for (int a = 0; a < N; ++a)
        if (deg[a] < 0 || deg[a] > d) fail("gradings must lie in [0, d]");
    int n0 = 0, nd = 0;
    for (int a = 0; a < N; ++a) {
        if (deg[a] == 0) ++n0;
        if (deg[a] == d) ++nd;
    }
    if (n0 != 1) fail("H^0 must be one-dimensional");
    if (d > 0 && nd != 1) fail("H^{2d} must be one-dimensional");

    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            if (!(eta[a][b] == eta[b][a])) fail("eta must be symmetric");
            if (deg[a] + deg[b] != d && !eta[a][b].is_zero())
                fail("eta_{ab} = 0 unless q_a + q_b = d (Poincare degree)");
        }
    // invertibility (raises if singular)
    auto inv = invert_matrix(eta);
    (void)inv;

    if (!(integral(basis_vec(N - 1)) == Rat(1)))
        fail("volume normalization: int gamma_n = 1");

    // sparse rows keep the axiom sweeps fast for larger rings
    std::vector<std::vector<std::vector<std::pair<int, Rat>>>> rows(
        N, std::vector<std::vector<std::pair<int, Rat>>>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int g = 0; g < N; ++g) {
                if (!(cup[a][b][g] == cup[b][a][g])) fail("cup product must be commutative");
                if (cup[a][b][g].is_zero()) continue;
                if (deg[g] != deg[a] + deg[b])
                    fail("cup product must be graded: c_{ab}^g = 0 unless q_g = q_a + q_b");
                rows[a][b].push_back({g, cup[a][b][g]});
            }
    for (int b = 0; b < N; ++b)
        for (int g = 0; g < N; ++g)
            if (!(cup[0][b][g] == Rat(g == b ? 1 : 0)))
                fail("gamma_1 must be the unit of the cup product");
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c) {
                std::map<int, Rat> lhs, rhs;
                for (const auto& [i, x] : rows[a][b])
                    for (const auto& [g, y] : rows[i][c]) {
                        auto [it, fresh] = lhs.emplace(g, x * y);
                        if (!fresh) it->second += x * y;
                    }
                for (const auto& [i, x] : rows[b][c])
                    for (const auto& [g, y] : rows[a][i]) {
                        auto [it, fresh] = rhs.emplace(g, x * y);
                        if (!fresh) it->second += x * y;
                    }
                for (auto& [g, x] : lhs) {
                    auto it = rhs.find(g);
                    Rat other = it == rhs.end() ? Rat(0) : it->second;
                    if (!(x == other)) fail("cup product must be associative");
                }
                for (auto& [g, x] : rhs)
                    if (lhs.find(g) == lhs.end() && !x.is_zero())
                        fail("cup product must be associative");
                // Frobenius compatibility <ab, c> = <a, bc>
                Rat fl(0), fr(0);
                for (const auto& [g, x] : rows[a][b]) fl += x * eta[g][c];
                for (const auto& [g, x] : rows[b][c]) fr += x * eta[a][g];
                if (!(fl == fr)) fail("pairing must be invariant: <ab,c> = <a,bc>");
            }

    auto check_degree = [&](const CohVec& v, int q, const char* what) {
        for (int a = 0; a < N; ++a)
            if (!v[a].is_zero() && deg[a] != q)
                fail(std::string(what) + " must be homogeneous of complex degree " +
                     std::to_string(q));
    };
    check_degree(c1, 1, "c_1");
    if (d >= 1) check_degree(cdm1, d - 1, "c_{d-1}");
    check_degree(cd, d, "c_d");

    if (!(integral(cd) == Rat(chi))) fail("chi = int c_d consistency");
    if (chi != N) fail("chi = dim H* under vanishing odd cohomology");
}

CohomologyRing::ChernReport CohomologyRing::chern_check() const {
    ChernReport r;
    r.lhs = pairing(c1, cdm1);
    Rat trdeg2(0);
    for (int a = 0; a < n(); ++a) trdeg2 += Rat(4LL * deg[a] * deg[a]);
    r.rhs = Rat(3, 2) * trdeg2 - Rat(chi, 2) * Rat(d) * Rat(3 * d + 1);
    r.pass = r.lhs == r.rhs;
    return r;
}

CohomologyRing CohomologyRing::projective(int dim) {
    if (dim < 0 || dim > 60) raise(ErrorKind::ValidationError, "pn:<d> needs 0 <= d <= 60");
    CohomologyRing R;
    R.name = "pn:" + std::to_string(dim);
    R.d = dim;
    int N = dim + 1;
    for (int a = 0; a < N; ++a) {
        R.basis.push_back(a == 0 ? "1" : (a == 1 ? "h" : "h" + std::to_string(a)));
        R.deg.push_back(a);
    }
    R.eta.assign(N, std::vector<Rat>(N, Rat(0)));
    for (int a = 0; a < N; ++a) R.eta[a][N - 1 - a] = Rat(1);
    R.cup.assign(N, std::vector<std::vector<Rat>>(N, std::vector<Rat>(N, Rat(0))));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            if (a + b < N) R.cup[a][b][a + b] = Rat(1);
    // c(T) = (1+h)^{d+1}
    R.c1.assign(N, Rat(0));
    R.cdm1.assign(N, Rat(0));
    R.cd.assign(N, Rat(0));
    if (dim >= 1) R.c1[1] = Rat(binomial(dim + 1, 1));
    if (dim >= 1) R.cdm1[dim - 1] = Rat(binomial(dim + 1, dim - 1));
    R.cd[dim] = Rat(binomial(dim + 1, dim));
    if (dim == 0) {
        R.c1[0] = Rat(0);
        R.cdm1[0] = Rat(0);  // c_{-1}: absent
        R.cd[0] = Rat(1);
    }
    R.chi = dim + 1;
    R.eta_inv = invert_matrix(R.eta);
    R.validate();
    return R;
}

CohomologyRing CohomologyRing::k3() {
    CohomologyRing R;
    R.name = "k3";
    R.d = 2;
    int N = 24;
    R.basis.push_back("1");
    for (int i = 1; i <= 22; ++i) R.basis.push_back("e" + std::to_string(i));
    R.basis.push_back("vol");
    R.deg.assign(N, 1);
    R.deg[0] = 0;
    R.deg[N - 1] = 2;

    // intersection form on H^2: (-E8) + (-E8) + U + U + U
    std::vector<std::vector<int>> G(22, std::vector<int>(22, 0));
    auto put_e8 = [&](int off, int sign) {
        // nodes 1..7 in a chain, node 8 attached to node 5
        int adj[8][8] = {};
        for (int i = 0; i + 1 < 7; ++i) adj[i][i + 1] = adj[i + 1][i] = 1;
        adj[4][7] = adj[7][4] = 1;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) G[off + i][off + j] = sign * (i == j ? 2 : -adj[i][j]);
    };
    put_e8(0, -1);
    put_e8(8, -1);
    for (int u = 0; u < 3; ++u) {
        int off = 16 + 2 * u;
        G[off][off + 1] = G[off + 1][off] = 1;
    }

    R.eta.assign(N, std::vector<Rat>(N, Rat(0)));
    R.eta[0][N - 1] = R.eta[N - 1][0] = Rat(1);
    for (int i = 0; i < 22; ++i)
        for (int j = 0; j < 22; ++j) R.eta[1 + i][1 + j] = Rat(G[i][j]);

    R.cup.assign(N, std::vector<std::vector<Rat>>(N, std::vector<Rat>(N, Rat(0))));
    for (int b = 0; b < N; ++b) {
        R.cup[0][b][b] = Rat(1);
        R.cup[b][0][b] = Rat(1);
    }
    for (int i = 0; i < 22; ++i)
        for (int j = 0; j < 22; ++j) R.cup[1 + i][1 + j][N - 1] = Rat(G[i][j]);

    R.c1.assign(N, Rat(0));
    R.cdm1.assign(N, Rat(0));  // c_1 = 0 for K3
    R.cd.assign(N, Rat(0));
    R.cd[N - 1] = Rat(24);
    R.chi = 24;
    R.eta_inv = invert_matrix(R.eta);
    R.validate();
    return R;
}

// ----------------------------------------------------------------- file load

namespace {

struct Value {
    enum class Kind { Scalar, Array } kind = Kind::Scalar;
    std::string scalar;
    std::vector<Value> items;
};

class VarietyParser {
public:
    explicit VarietyParser(std::string text) : s_(std::move(text)) {}

    std::map<std::string, Value> run() {
        std::map<std::string, Value> out;
        while (true) {
            skip_ws();
            if (pos_ >= s_.size()) break;
            std::string key = word();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != '=') fail("expected '=' after key " + key);
            ++pos_;
            Value v = value();
            if (!out.emplace(key, std::move(v)).second) fail("duplicate key " + key);
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& why) {
        raise(ErrorKind::ValidationError, "variety file: " + why);
    }
    void skip_ws() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                    s_[pos_] == '_' || s_[pos_] == '-' || s_[pos_] == '/'))
            ++pos_;
        if (start == pos_) fail("expected a token");
        return s_.substr(start, pos_ - start);
    }
    Value value() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected a value");
        Value v;
        if (s_[pos_] == '[') {
            ++pos_;
            v.kind = Value::Kind::Array;
            skip_ws();
            while (pos_ < s_.size() && s_[pos_] != ']') {
                v.items.push_back(value());
                skip_ws();
                if (pos_ < s_.size() && s_[pos_] == ',') {
                    ++pos_;
                    skip_ws();
                }
            }
            if (pos_ >= s_.size()) fail("unterminated array");
            ++pos_;
            return v;
        }
        if (s_[pos_] == '"') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
            if (pos_ >= s_.size()) fail("unterminated string");
            v.scalar = s_.substr(start, pos_ - start);
            ++pos_;
            return v;
        }
        v.scalar = word();
        return v;
    }

    std::string s_;
    std::size_t pos_ = 0;
};

Rat value_rat(const Value& v) {
    if (v.kind != Value::Kind::Scalar)
        raise(ErrorKind::ValidationError, "variety file: expected a rational scalar");
    return Rat::parse(v.scalar);
}

long value_int(const Value& v) {
    Rat r = value_rat(v);
    if (!r.is_integer()) raise(ErrorKind::ValidationError, "variety file: expected an integer");
    return std::stol(r.str());
}

}  // namespace

CohomologyRing CohomologyRing::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::ValidationError, "cannot open variety file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    auto kv = VarietyParser(ss.str()).run();

    static const std::set<std::string> known = {"name", "dim",  "basis", "degrees",
                                                "eta",  "cup",  "c1",    "cdm1",
                                                "cd",   "euler_characteristic"};
    for (const auto& [k, v] : kv) {
        (void)v;
        if (known.find(k) == known.end())
            raise(ErrorKind::ValidationError, "variety file: unknown key '" + k + "'");
    }
    auto need = [&](const std::string& k) -> const Value& {
        auto it = kv.find(k);
        if (it == kv.end())
            raise(ErrorKind::ValidationError, "variety file: missing key '" + k + "'");
        return it->second;
    };

    CohomologyRing R;
    R.name = need("name").scalar;
    R.d = static_cast<int>(value_int(need("dim")));
    for (const auto& b : need("basis").items) R.basis.push_back(b.scalar);
    int N = R.n();
    for (const auto& q : need("degrees").items) R.deg.push_back(static_cast<int>(value_int(q)));

    const auto& eta = need("eta");
    if (static_cast<int>(eta.items.size()) != N)
        raise(ErrorKind::ValidationError, "variety file: eta must be n x n");
    for (const auto& row : eta.items) {
        std::vector<Rat> r;
        for (const auto& x : row.items) r.push_back(value_rat(x));
        if (static_cast<int>(r.size()) != N)
            raise(ErrorKind::ValidationError, "variety file: eta must be n x n");
        R.eta.push_back(std::move(r));
    }

    R.cup.assign(N, std::vector<std::vector<Rat>>(N, std::vector<Rat>(N, Rat(0))));
    for (const auto& quad : need("cup").items) {
        if (quad.items.size() != 4)
            raise(ErrorKind::ValidationError, "variety file: cup entries are [a, b, g, coeff]");
        long a = value_int(quad.items[0]), b = value_int(quad.items[1]),
             g = value_int(quad.items[2]);
        Rat c = value_rat(quad.items[3]);
        if (a < 1 || a > N || b < 1 || b > N || g < 1 || g > N)
            raise(ErrorKind::ValidationError, "variety file: cup index out of range (1-based)");
        R.cup[a - 1][b - 1][g - 1] = c;
        R.cup[b - 1][a - 1][g - 1] = c;
    }

    auto vec = [&](const char* key) {
        CohVec v;
        for (const auto& x : need(key).items) v.push_back(value_rat(x));
        if (static_cast<int>(v.size()) != N)
            raise(ErrorKind::ValidationError,
                  std::string("variety file: ") + key + " must have n entries");
        return v;
    };
    R.c1 = vec("c1");
    R.cdm1 = vec("cdm1");
    R.cd = vec("cd");
    R.chi = value_int(need("euler_characteristic"));
    R.eta_inv = invert_matrix(R.eta);
    R.validate();
    return R;
}

CohomologyRing CohomologyRing::load(const std::string& source) {
    if (source.rfind("pn:", 0) == 0) return projective(std::stoi(source.substr(3)));
    if (source == "pt") return projective(0);
    if (source == "k3") return k3();
    return from_file(source);
}

}  // namespace tophier
