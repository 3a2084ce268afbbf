#include "vchow/quadform.hpp"
#include "vchow/errors.hpp"
#include <algorithm>
#include <random>

namespace vchow {

/* ---------------- exact linear algebra ---------------- */

Mat mat_identity(int n) {
    Mat a(n, Vec(n, Rat(0)));
    for (int i = 0; i < n; ++i) a[i][i] = 1;
    return a;
}

Mat mat_zero(int rows, int cols) { return Mat(rows, Vec(cols, Rat(0))); }

static void check_rect(const Mat& a) {
    for (const auto& r : a)
        if (r.size() != a[0].size()) throw SchemaError("ragged matrix");
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.empty() || b.empty()) return {};
    check_rect(a);
    check_rect(b);
    if (a[0].size() != b.size()) throw SchemaError("matrix dimension mismatch");
    Mat c = mat_zero((int)a.size(), (int)b[0].size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < b[0].size(); ++j)
                if (b[k][j] != 0) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

Mat mat_transpose(const Mat& a) {
    if (a.empty()) return {};
    Mat t(a[0].size(), Vec(a.size(), Rat(0)));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

Mat mat_add(const Mat& a, const Mat& b) {
    if (a.size() != b.size() || (!a.empty() && a[0].size() != b[0].size()))
        throw SchemaError("matrix dimension mismatch");
    Mat c = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) c[i][j] += b[i][j];
    return c;
}

Vec mat_vec(const Mat& a, const Vec& x) {
    if (!a.empty() && a[0].size() != x.size())
        throw SchemaError("matrix dimension mismatch");
    Vec y(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

bool mat_is_zero(const Mat& a) {
    for (const auto& r : a)
        for (const auto& x : r)
            if (x != 0) return false;
    return true;
}

Rat mat_det(Mat a) {
    if (a.empty()) return Rat(1);
    check_rect(a);
    if (a.size() != a[0].size()) throw SchemaError("determinant of a non-square matrix");
    const int n = (int)a.size();
    Rat det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        Rat inv = Rat(1) / a[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rat f = a[r][col] * inv;
            for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

/* row-reduce in place; returns pivot columns (first-nonzero pivoting) */
static std::vector<int> rref(Mat& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    const int rows = (int)a.size(), cols = (int)a[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[piv], a[r]);
        Rat inv = Rat(1) / a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int mat_rank(Mat a) { return (int)rref(a).size(); }

Mat mat_kernel(const Mat& a) {
    if (a.empty()) return {};
    Mat m = a;
    std::vector<int> piv = rref(m);
    const int cols = (int)a[0].size();
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    Mat basis; // collect as rows first
    for (int c = 0; c < cols; ++c) {
        if (is_piv[c]) continue;
        Vec v(cols, Rat(0));
        v[c] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][c];
        basis.push_back(v);
    }
    return mat_transpose(basis); // columns = kernel vectors
}

std::optional<Vec> mat_solve(const Mat& a, const Vec& b) {
    if (a.empty()) {
        for (const auto& x : b)
            if (x != 0) return std::nullopt;
        return Vec{};
    }
    const int rows = (int)a.size(), cols = (int)a[0].size();
    if ((int)b.size() != rows) throw SchemaError("matrix dimension mismatch");
    Mat aug = a;
    for (int i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    std::vector<int> piv = rref(aug);
    Vec x(cols, Rat(0));
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == cols) return std::nullopt; // pivot in the RHS column
        x[piv[r]] = aug[r][cols];
    }
    // verify (guards the free-variable choice x_free = 0)
    Vec chk = mat_vec(a, x);
    for (int i = 0; i < rows; ++i)
        if (chk[i] != b[i]) return std::nullopt;
    return x;
}

std::vector<int> independent_columns(const Mat& a) {
    Mat m = a;
    return rref(m);
}

Mat columns(const Mat& a, const std::vector<int>& idx) {
    Mat out(a.size(), Vec(idx.size(), Rat(0)));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) out[i][j] = a[i][idx[j]];
    return out;
}

Mat hstack(const Mat& a, const Mat& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.size() != b.size()) throw SchemaError("matrix dimension mismatch");
    Mat out = a;
    for (size_t i = 0; i < a.size(); ++i)
        out[i].insert(out[i].end(), b[i].begin(), b[i].end());
    return out;
}

/* ---------------- quadratic spaces ---------------- */

QuadSpace make_quadspace(const Mat& gram) {
    check_rect(gram);
    if (!gram.empty() && gram.size() != gram[0].size())
        throw SchemaError("Gram matrix must be square");
    const int n = (int)gram.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (gram[i][j] != gram[j][i])
                throw MathError("Gram matrix must be symmetric");
    return QuadSpace{n, gram};
}

QuadSpace hyperbolic_space(int n) {
    Mat g = mat_zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        g[2 * i][2 * i + 1] = 1;
        g[2 * i + 1][2 * i] = 1;
    }
    return QuadSpace{2 * n, g};
}

Subspace make_subspace(const QuadSpace& Q, const Mat& basis_columns) {
    if (basis_columns.empty()) return Subspace{mat_zero(Q.dim, 0)};
    check_rect(basis_columns);
    if ((int)basis_columns.size() != Q.dim)
        throw SchemaError("subspace basis has the wrong ambient dimension");
    const int k = (int)basis_columns[0].size();
    if (mat_rank(basis_columns) != k)
        throw MathError("basis vectors are linearly dependent");
    return Subspace{basis_columns};
}

bool is_isotropic(const QuadSpace& Q, const Subspace& K) {
    Mat bt = mat_transpose(K.basis);
    return mat_is_zero(mat_mul(mat_mul(bt, Q.gram), K.basis));
}

bool is_nondegenerate(const QuadSpace& Q) { return mat_det(Q.gram) != 0; }

Rat quad_eval(const QuadSpace& Q, const Vec& v) {
    Vec gv = mat_vec(Q.gram, v);
    Rat s(0);
    for (int i = 0; i < Q.dim; ++i) s += v[i] * gv[i];
    return s;
}

QuadReduction reduce_quadspace(const QuadSpace& Q, const Subspace& K) {
    if (!is_nondegenerate(Q)) throw MathError("degenerate quadratic space");
    if (!is_isotropic(Q, K)) throw MathError("subspace is not isotropic");
    const int k = K.basis.empty() ? 0 : (int)K.basis[0].size();
    Mat perp; // columns spanning K^perp
    if (k == 0) {
        perp = mat_identity(Q.dim);
    } else {
        perp = mat_kernel(mat_mul(mat_transpose(K.basis), Q.gram));
    }
    // complement of K inside K^perp: first independent columns after K
    Mat stacked = hstack(K.basis, perp);
    std::vector<int> piv = independent_columns(stacked);
    std::vector<int> w_idx;
    for (int c : piv)
        if (c >= k) w_idx.push_back(c);
    Mat W = columns(stacked, w_idx);
    Mat G2 = mat_mul(mat_mul(mat_transpose(W), Q.gram), W);
    QuadReduction out{make_quadspace(G2), W};
    if ((int)w_idx.size() != Q.dim - 2 * k || !is_nondegenerate(out.reduced))
        throw MathError("reduction failed", "K^perp/K is not a nondegenerate complement");
    return out;
}

/* ---------------- invariants ---------------- */

Int squarefree_part(const Rat& r) {
    if (r == 0) throw MathError("square class of zero");
    Int n = r.get_num() * r.get_den();
    bool neg = n < 0;
    if (neg) n = -n;
    Int out(1);
    /* strip small square factors by trial division, then dispose of the
       leftover: 1, a perfect square, or a (probable) prime all resolve
       exactly; anything else is kept as-is (outside desk scale). */
    Int d(2);
    while (d * d <= n && d < 100000) {
        int e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            n /= d;
            ++e;
        }
        if (e % 2) out *= d;
        d += (d == 2) ? 1 : 2;
    }
    if (n != 1 && !mpz_perfect_square_p(n.get_mpz_t())) out *= n;
    return neg ? -out : out;
}

bool same_square_class(const Rat& a, const Rat& b) {
    if (a == 0 || b == 0) throw MathError("square class of zero");
    Rat p = a * b;
    Int n = p.get_num() * p.get_den();
    return n > 0 && mpz_perfect_square_p(n.get_mpz_t());
}

QuadInvariants quad_invariants(const QuadSpace& Q) {
    QuadInvariants inv;
    inv.dim = Q.dim;
    Rat det = mat_det(Q.gram);
    if (det == 0) throw MathError("degenerate quadratic space");
    inv.disc = squarefree_part(det);
    /* Lagrange congruence diagonalization with exact pivots. */
    Mat g = Q.gram;
    const int n = Q.dim;
    for (int i = 0; i < n; ++i) {
        if (g[i][i] == 0) {
            int sw = -1;
            for (int j = i + 1; j < n; ++j)
                if (g[j][j] != 0) { sw = j; break; }
            if (sw >= 0) {
                std::swap(g[i], g[sw]);
                for (auto& row : g) std::swap(row[i], row[sw]);
            } else {
                int off = -1;
                for (int j = i + 1; j < n; ++j)
                    if (g[i][j] != 0) { off = j; break; }
                if (off < 0) throw MathError("degenerate quadratic space");
                // e_i <- e_i + e_off gives diagonal 2 g[i][off]
                for (int c = 0; c < n; ++c) g[i][c] += g[off][c];
                for (int r = 0; r < n; ++r) g[r][i] += g[r][off];
            }
        }
        Rat inv_p = Rat(1) / g[i][i];
        for (int j = i + 1; j < n; ++j) {
            if (g[j][i] == 0) continue;
            Rat f = g[j][i] * inv_p;
            for (int c = 0; c < n; ++c) g[j][c] -= f * g[i][c];
            for (int r = 0; r < n; ++r) g[r][j] -= f * g[r][i];
        }
        if (g[i][i] > 0) ++inv.sig_pos;
        else ++inv.sig_neg;
    }
    return inv;
}

/* ---------------- symmetric resolutions ---------------- */

SymRes make_symres(int b_dim, const QuadSpace& E, const Mat& d, const Rat& orientation) {
    if (E.dim % 2) throw MathError("symmetric resolution needs an even-dimensional space");
    if (!is_nondegenerate(E)) throw MathError("degenerate quadratic space");
    if ((int)d.size() != E.dim) throw SchemaError("differential has the wrong ambient dimension");
    if (!d.empty() && (int)d[0].size() != b_dim)
        throw SchemaError("differential has the wrong source dimension");
    const int n = E.dim / 2;
    Rat want = mat_det(E.gram);
    if (n % 2) want = -want;
    if (orientation * orientation != want)
        throw MathError("orientation", "lambda^2 != (-1)^n det(gram)");
    return SymRes{b_dim, E, d, orientation};
}

bool symres_check(const SymRes& R) {
    if (R.b_dim == 0) return true;
    return mat_is_zero(mat_mul(mat_mul(mat_transpose(R.d), R.E.gram), R.d));
}

bool quadratic_descent_check(const SymRes& R, int samples, unsigned long seed) {
    if (!symres_check(R)) throw MathError("image of d is not isotropic");
    /* perp of d(B): kernel of d^T G */
    Mat dtG = mat_mul(mat_transpose(R.d), R.E.gram);
    Mat perp = R.b_dim == 0 ? mat_identity(R.E.dim) : mat_kernel(dtG);
    const int pk = perp.empty() ? 0 : (int)perp[0].size();
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int s = 0; s < samples; ++s) {
        Vec v(R.E.dim, Rat(0));
        for (int j = 0; j < pk; ++j) {
            int a = coef(rng);
            for (int i = 0; i < R.E.dim; ++i) v[i] += Rat(a) * perp[i][j];
        }
        Vec b(R.b_dim, Rat(0));
        for (int j = 0; j < R.b_dim; ++j) b[j] = coef(rng);
        Vec shifted = v;
        if (R.b_dim > 0) {
            Vec db = mat_vec(R.d, b);
            for (int i = 0; i < R.E.dim; ++i) shifted[i] += db[i];
        }
        if (quad_eval(R.E, shifted) != quad_eval(R.E, v)) return false;
    }
    return true;
}

/* span containment: every column of v lies in the column span of basis */
static bool in_span(const Mat& basis, const Mat& v) {
    if (v.empty() || v[0].empty()) return true;
    return mat_rank(hstack(basis, v)) == mat_rank(basis);
}

SymRes reduce_symres(const SymRes& R, const Mat& D_basis, const Mat& K_basis) {
    const int n2 = R.E.dim;
    Mat D = D_basis.empty() ? mat_zero(R.b_dim, 0) : D_basis;
    Mat K = K_basis.empty() ? mat_zero(n2, 0) : K_basis;
    if ((int)D.size() != R.b_dim) throw SchemaError("D basis has the wrong ambient dimension");
    if ((int)K.size() != n2) throw SchemaError("K basis has the wrong ambient dimension");
    const int dk = D.empty() || D[0].empty() ? 0 : (int)D[0].size();
    const int kk = K.empty() || K[0].empty() ? 0 : (int)K[0].size();
    if (dk > 0 && mat_rank(D) != dk) throw MathError("basis vectors are linearly dependent");
    if (kk > 0 && mat_rank(K) != kk) throw MathError("basis vectors are linearly dependent");

    Subspace Ksub = make_subspace(R.E, K);
    if (!is_isotropic(R.E, Ksub)) throw MathError("subspace is not isotropic");
    if (dk > 0 && !in_span(K, mat_mul(R.d, D)))
        throw MathError("chain compatibility", "d(D) is not contained in K");
    if (kk > 0 && R.b_dim > 0 &&
        !mat_is_zero(mat_mul(mat_mul(mat_transpose(K), R.E.gram), R.d)))
        throw MathError("chain compatibility", "d(B) does not pair to zero with K");

    /* reduced space K^perp/K with complement basis W */
    QuadReduction red = reduce_quadspace(R.E, Ksub);
    const Mat& W = red.w_basis;
    const int wk = W.empty() ? 0 : (int)W[0].size();

    /* quotient B/D: complement of D among the coordinate basis */
    std::vector<int> bpiv = independent_columns(hstack(D, mat_identity(R.b_dim)));
    std::vector<int> c_idx;
    for (int c : bpiv)
        if (c >= dk) c_idx.push_back(c - dk);
    Mat C = columns(mat_identity(R.b_dim), c_idx); // b_dim x (b_dim - dk)

    /* induced differential: write d(c) = W a + K b, keep a */
    Mat WK = hstack(W, K);
    Mat d2 = mat_zero(wk, (int)c_idx.size());
    Mat dC = R.b_dim > 0 ? mat_mul(R.d, C) : mat_zero(n2, 0);
    for (size_t j = 0; j < c_idx.size(); ++j) {
        Vec rhs(n2);
        for (int i = 0; i < n2; ++i) rhs[i] = dC[i][j];
        auto sol = mat_solve(WK, rhs);
        if (!sol) throw MathError("chain compatibility", "d(B) is not contained in K^perp");
        for (int i = 0; i < wk; ++i) d2[i][j] = (*sol)[i];
    }

    /* dual complement U: K^T G U = I, W^T G U = 0, then correct to make U
       isotropic; lambda transforms by det[K U W]. */
    Rat s(1);
    if (kk > 0) {
        Mat S = mat_mul(mat_transpose(K), R.E.gram);                   // kk x n2
        Mat S2 = wk > 0 ? mat_mul(mat_transpose(W), R.E.gram) : Mat{}; // wk x n2
        Mat U = mat_zero(n2, kk);
        for (int j = 0; j < kk; ++j) {
            Mat sys = S;
            Vec rhs(kk, Rat(0));
            rhs[j] = 1;
            if (wk > 0) {
                for (const auto& row : S2) sys.push_back(row);
                rhs.resize(kk + wk, Rat(0));
            }
            auto sol = mat_solve(sys, rhs);
            if (!sol) throw MathError("reduction failed", "no dual complement");
            for (int i = 0; i < n2; ++i) U[i][j] = (*sol)[i];
        }
        Mat A = mat_mul(mat_mul(mat_transpose(U), R.E.gram), U); // symmetric
        // U <- U - (1/2) K A
        Mat KA = mat_mul(K, A);
        for (int i = 0; i < n2; ++i)
            for (int j = 0; j < kk; ++j) U[i][j] -= Rat(1, 2) * KA[i][j];
        Mat full = hstack(hstack(K, U), W);
        s = mat_det(full);
    } else {
        s = mat_det(W); // W square when K = 0
    }
    Rat lambda2 = R.orientation * s;

    return make_symres((int)c_idx.size(), red.reduced, d2, lambda2);
}

} // namespace vchow
