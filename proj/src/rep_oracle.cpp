#include "casimir/rep_oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace casimir {

namespace {

using Word = std::vector<std::uint8_t>;          // f_{w[0]} f_{w[1]} ... v
using Combo = std::map<Word, GaussianRational>;  // linear combination of words
using Matrix = std::vector<std::vector<GaussianRational>>;
using Vector = std::vector<GaussianRational>;

void combo_add(Combo& c, const Word& w, const GaussianRational& v) {
    if (v.is_zero()) return;
    auto it = c.find(w);
    if (it == c.end()) {
        c.emplace(w, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) c.erase(it);
    }
}

// Exact reduced row echelon of [A | B]; returns pivot column indices of A.
std::vector<int> row_reduce(Matrix& a, Matrix* b = nullptr) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<int> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && a[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        if (b) std::swap((*b)[sel], (*b)[r]);
        const GaussianRational inv = GaussianRational(1) / a[r][c];
        for (auto& v : a[r]) v *= inv;
        if (b) {
            for (auto& v : (*b)[r]) v *= inv;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const GaussianRational factor = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= factor * a[r][j];
            if (b) {
                for (std::size_t j = 0; j < (*b)[0].size(); ++j) {
                    (*b)[i][j] -= factor * (*b)[r][j];
                }
            }
        }
        pivots.push_back(int(c));
        ++r;
    }
    return pivots;
}

struct SolveOutcome {
    bool consistent = true;
    bool unique = true;
    Vector solution;  // valid when consistent && unique
};

// Exact solve of A x = b (possibly overdetermined).
SolveOutcome solve_exact(Matrix a, Vector b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    Matrix rhs(rows, Vector(1));
    for (std::size_t i = 0; i < rows; ++i) rhs[i][0] = b[i];
    const std::vector<int> pivots = row_reduce(a, &rhs);
    SolveOutcome out;
    out.unique = pivots.size() == cols;
    // consistency: zero rows of A must carry zero rhs
    for (std::size_t i = pivots.size(); i < rows; ++i) {
        if (!rhs[i][0].is_zero()) {
            out.consistent = false;
            return out;
        }
    }
    if (!out.unique) return out;
    out.solution.assign(cols, GaussianRational());
    for (std::size_t r = 0; r < pivots.size(); ++r) out.solution[pivots[r]] = rhs[r][0];
    return out;
}

class VermaModel {
  public:
    VermaModel(const Weight& lambda, int depth) : lambda_(lambda), depth_(depth) {
        for (int s = 0; s <= depth; ++s) {
            for (int x = 0; x <= s; ++x) build_space(x, s - x);
        }
    }

    struct Space {
        std::vector<Word> words;
        std::map<Word, int> index;
        Matrix gram;              // full word Gram matrix
        std::vector<int> pivots;  // word indices forming a basis mod radical
        Matrix gram_pp;           // pivot rows/cols of gram
    };

    const Space& space(int x, int y) const { return spaces_.at({x, y}); }
    int dim(int x, int y) const { return int(space(x, y).pivots.size()); }
    const Weight& lambda() const { return lambda_; }

    std::int64_t h_value(int j, int x, int y) const {
        // (lambda - x a0 - y a1)(h_j), cartan rows a0(h0)=2, a1(h0)=-2 ...
        const std::int64_t lam = j == 0 ? lambda_.h0() : lambda_.h1;
        const std::int64_t c0 = j == 0 ? 2 : -2;
        const std::int64_t c1 = j == 0 ? -2 : 2;
        return lam - x * c0 - y * c1;
    }

    // e_j applied to a word (weight raises by alpha_j)
    Combo e_action(int j, const Word& w) {
        const auto key = std::make_pair(j, w);
        auto it = e_cache_.find(key);
        if (it != e_cache_.end()) return it->second;
        Combo out;
        if (!w.empty()) {
            const int head = w.front();
            const Word rest(w.begin() + 1, w.end());
            for (const auto& [w2, c] : e_action(j, rest)) {
                Word ext;
                ext.reserve(w2.size() + 1);
                ext.push_back(std::uint8_t(head));
                ext.insert(ext.end(), w2.begin(), w2.end());
                combo_add(out, ext, c);
            }
            if (head == j) {
                int x = 0, y = 0;
                for (const auto b : rest) (b == 0 ? x : y)++;
                combo_add(out, rest, GaussianRational(Rational(h_value(j, x, y))));
            }
        }
        e_cache_.emplace(key, out);
        return out;
    }

    Combo f_action(int j, const Combo& u) const {
        Combo out;
        for (const auto& [w, c] : u) {
            Word ext;
            ext.reserve(w.size() + 1);
            ext.push_back(std::uint8_t(j));
            ext.insert(ext.end(), w.begin(), w.end());
            combo_add(out, ext, c);
        }
        return out;
    }

    // contravariant form on words: S(f_j u, w) = S(u, e_j w)
    GaussianRational shapovalov(const Word& u, const Word& w) {
        if (u.empty() && w.empty()) return GaussianRational(1);
        if (u.empty() || w.empty()) return GaussianRational();
        const auto key = std::make_pair(u, w);
        auto it = s_cache_.find(key);
        if (it != s_cache_.end()) return it->second;
        const int j = u.front();
        const Word rest(u.begin() + 1, u.end());
        GaussianRational acc;
        for (const auto& [w2, c] : e_action(j, w)) acc += c * shapovalov(rest, w2);
        s_cache_.emplace(key, acc);
        return acc;
    }

    // pivot coordinates of a word combination living in space (x, y)
    Vector express(int x, int y, const Combo& u) const {
        const Space& sp = space(x, y);
        const std::size_t d = sp.pivots.size();
        Vector rhs(d);
        for (std::size_t r = 0; r < d; ++r) {
            GaussianRational acc;
            for (const auto& [w, c] : u) acc += c * sp.gram[sp.pivots[r]][sp.index.at(w)];
            rhs[r] = acc;
        }
        SolveOutcome sol = solve_exact(sp.gram_pp, rhs);
        if (!sol.consistent || !sol.unique) {
            throw std::logic_error("rep oracle: pivot Gram solve failed");
        }
        return sol.solution;
    }

    Combo pivot_combo(int x, int y, const Vector& coords) const {
        const Space& sp = space(x, y);
        Combo out;
        for (std::size_t p = 0; p < sp.pivots.size(); ++p) {
            combo_add(out, sp.words[sp.pivots[p]], coords[p]);
        }
        return out;
    }

  private:
    void build_space(int x, int y) {
        Space sp;
        Word w(std::size_t(x + y), 0);
        for (int i = x; i < x + y; ++i) w[std::size_t(i)] = 1;
        // all distinct permutations (sorted start, next_permutation walk)
        do {
            sp.index.emplace(w, int(sp.words.size()));
            sp.words.push_back(w);
        } while (std::next_permutation(w.begin(), w.end()));

        const std::size_t n = sp.words.size();
        sp.gram.assign(n, Vector(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                sp.gram[i][j] = shapovalov(sp.words[i], sp.words[j]);
                sp.gram[j][i] = sp.gram[i][j];
            }
        }
        Matrix reduced = sp.gram;
        sp.pivots = row_reduce(reduced);
        sp.gram_pp.assign(sp.pivots.size(), Vector(sp.pivots.size()));
        for (std::size_t i = 0; i < sp.pivots.size(); ++i) {
            for (std::size_t j = 0; j < sp.pivots.size(); ++j) {
                sp.gram_pp[i][j] = sp.gram[sp.pivots[i]][sp.pivots[j]];
            }
        }
        spaces_.emplace(std::make_pair(x, y), std::move(sp));
    }

    Weight lambda_;
    int depth_;
    std::map<std::pair<int, int>, Space> spaces_;
    std::map<std::pair<int, Word>, Combo> e_cache_;
    std::map<std::pair<Word, Word>, GaussianRational> s_cache_;
};

// Layered solve of the eta-invariant vector: coordinates per space.
struct LayerData {
    std::map<std::pair<int, int>, Vector> coords;
};

}  // namespace

std::int64_t oracle_weight_multiplicity(const Weight& lambda, int x, int y) {
    if (!is_dominant(lambda)) {
        throw std::invalid_argument("oracle_weight_multiplicity: dominant weight required");
    }
    if (x < 0 || y < 0 || x + y > 8) {
        throw std::invalid_argument("oracle_weight_multiplicity: depth out of supported range");
    }
    VermaModel model(lambda, x + y);
    return model.dim(x, y);
}

OracleResult oracle_spherical_raw(const Weight& lambda, const Character1D& eta,
                                  const Character1D& chi, int depth) {
    if (!is_dominant(lambda)) {
        throw std::invalid_argument("oracle: dominant weight required");
    }
    if (depth < 0 || depth > 6) {
        throw std::invalid_argument("oracle: depth out of supported range (0..6)");
    }
    if (lambda.level > 4) {
        throw std::invalid_argument("oracle: level out of supported range (0..4)");
    }
    OracleResult result;
    VermaModel model(lambda, depth);

    const GaussianRational i_unit = GaussianRational::i_unit();
    const GaussianRational eta_v[2] = {GaussianRational(eta.b0), GaussianRational(eta.b1)};
    const GaussianRational chi_v[2] = {GaussianRational(chi.b0), GaussianRational(chi.b1)};

    // vec: eta-invariant element of the completed module, pivot coordinates
    // fun: chi-invariant functional, values on pivot words
    std::map<std::pair<int, int>, Vector> vec, fun;
    vec[{0, 0}] = Vector{GaussianRational(1)};
    fun[{0, 0}] = Vector{GaussianRational(1)};

    auto space_exists = [&](int x, int y, int d) { return x >= 0 && y >= 0 && x + y <= d; };

    for (int s = 0; s < depth; ++s) {
        // --- vector side: e_j vec_{sigma} = -i eta_j vec_{src} + f_j vec_{src - u_j}
        for (int x = 0; x <= s + 1; ++x) {
            const int y = s + 1 - x;
            if (y < 0) continue;
            const int dim_sigma = model.dim(x, y);
            Matrix a;
            Vector b;
            for (int j = 0; j <= 1; ++j) {
                const int sx = j == 0 ? x - 1 : x;
                const int sy = j == 0 ? y : y - 1;
                if (!space_exists(sx, sy, depth)) continue;
                const auto& src = model.space(sx, sy);
                const int dim_src = model.dim(sx, sy);
                // rhs combo in the source space
                Combo rhs_combo;
                const Vector& vsrc = vec.at({sx, sy});
                for (std::size_t p = 0; p < src.pivots.size(); ++p) {
                    combo_add(rhs_combo, src.words[src.pivots[p]], -(i_unit * eta_v[j]) * vsrc[p]);
                }
                const int px = j == 0 ? sx - 1 : sx;
                const int py = j == 0 ? sy : sy - 1;
                if (space_exists(px, py, depth)) {
                    Combo lower = model.pivot_combo(px, py, vec.at({px, py}));
                    for (const auto& [w, c] : model.f_action(j, lower)) combo_add(rhs_combo, w, c);
                }
                const Vector rhs_coords = model.express(sx, sy, rhs_combo);
                // lhs: e_j of each unknown pivot of sigma, in source coordinates
                Matrix block;
                block.assign(std::size_t(dim_src), Vector(std::size_t(dim_sigma)));
                const auto& sig = model.space(x, y);
                for (int col = 0; col < dim_sigma; ++col) {
                    Combo img = model.e_action(j, sig.words[sig.pivots[std::size_t(col)]]);
                    const Vector coords = model.express(sx, sy, img);
                    for (int row = 0; row < dim_src; ++row) {
                        block[std::size_t(row)][std::size_t(col)] = coords[std::size_t(row)];
                    }
                }
                for (int row = 0; row < dim_src; ++row) {
                    a.push_back(block[std::size_t(row)]);
                    b.push_back(rhs_coords[std::size_t(row)]);
                }
            }
            if (a.empty()) a.assign(1, Vector(std::size_t(dim_sigma)));
            if (b.empty()) b.assign(1, GaussianRational());
            SolveOutcome sol = solve_exact(a, b);
            if (!sol.consistent) {
                std::ostringstream os;
                os << "no eta-twisted vector: obstruction in layer " << (s + 1) << " at (x,y)=("
                   << x << "," << y << ")";
                result.obstruction = os.str();
                return result;
            }
            if (!sol.unique) throw std::logic_error("oracle: eta-side solution not unique");
            vec[{x, y}] = std::move(sol.solution);
        }

        // --- functional side: fun_{sigma}(f_j u) = fun(e_j u) + i chi_j fun(u)
        for (int x = 0; x <= s + 1; ++x) {
            const int y = s + 1 - x;
            if (y < 0) continue;
            const int dim_sigma = model.dim(x, y);
            Matrix a;
            Vector b;
            for (int j = 0; j <= 1; ++j) {
                const int sx = j == 0 ? x - 1 : x;
                const int sy = j == 0 ? y : y - 1;
                if (!space_exists(sx, sy, depth)) continue;
                const auto& src = model.space(sx, sy);
                const Vector& fsrc = fun.at({sx, sy});
                const int ex = j == 0 ? sx - 1 : sx;
                const int ey = j == 0 ? sy : sy - 1;
                for (std::size_t p = 0; p < src.pivots.size(); ++p) {
                    const Word& u = src.words[src.pivots[p]];
                    // lhs row: coordinates of f_j u in sigma
                    Combo fju = model.f_action(j, Combo{{u, GaussianRational(1)}});
                    const Vector lhs = model.express(x, y, fju);
                    // rhs scalar
                    GaussianRational rhs = i_unit * chi_v[j] * fsrc[p];
                    if (space_exists(ex, ey, depth)) {
                        Combo eu = model.e_action(j, u);
                        const Vector coords = model.express(ex, ey, eu);
                        const Vector& flow = fun.at({ex, ey});
                        for (std::size_t q = 0; q < coords.size(); ++q) rhs += flow[q] * coords[q];
                    }
                    a.push_back(lhs);
                    b.push_back(rhs);
                }
            }
            if (a.empty()) a.assign(1, Vector(std::size_t(dim_sigma)));
            if (b.empty()) b.assign(1, GaussianRational());
            SolveOutcome sol = solve_exact(a, b);
            if (!sol.consistent) {
                std::ostringstream os;
                os << "no chi-twisted functional: obstruction in layer " << (s + 1) << " at (x,y)=("
                   << x << "," << y << ")";
                result.obstruction = os.str();
                return result;
            }
            if (!sol.unique) throw std::logic_error("oracle: chi-side solution not unique");
            fun[{x, y}] = std::move(sol.solution);
        }
    }

    // diagonal pairing: coefficient of e^{lambda - x a0 - y a1}
    TruncatedSeries psi(lambda.level, g2(lambda) - 2 * depth);
    for (int s = 0; s <= depth; ++s) {
        for (int x = 0; x <= s; ++x) {
            const int y = s - x;
            const int d = model.dim(x, y);
            if (d == 0) continue;
            const Vector& v = vec.at({x, y});
            const Vector& f = fun.at({x, y});
            GaussianRational acc;
            for (int p = 0; p < d; ++p) acc += f[std::size_t(p)] * v[std::size_t(p)];
            const Weight mu = lambda - std::int64_t(x) * kAlpha0 - std::int64_t(y) * kAlpha1;
            psi.add_term({mu.h1, mu.d}, acc);
        }
    }
    psi.normalize();
    psi.set_g2_floor(g2(lambda) - 2 * depth);
    result.admissible = true;
    result.psi = std::move(psi);
    return result;
}

}  // namespace casimir
