#pragma once
#include "vchow/rational.hpp"
#include <optional>
#include <vector>

namespace vchow {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>; // row-major

/* exact dense linear algebra over Q */
Mat mat_identity(int n);
Mat mat_zero(int rows, int cols);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_transpose(const Mat& a);
Mat mat_add(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& x);
bool mat_is_zero(const Mat& a);
Rat mat_det(Mat a);
int mat_rank(Mat a);
/* null-space basis as columns of the returned matrix (cols = nullity) */
Mat mat_kernel(const Mat& a);
/* one solution of A x = b; nullopt when inconsistent */
std::optional<Vec> mat_solve(const Mat& a, const Vec& b);
/* column indices of the first maximal independent set, scanned left to
   right (deterministic exact pivoting) */
std::vector<int> independent_columns(const Mat& a);
Mat columns(const Mat& a, const std::vector<int>& idx);
Mat hstack(const Mat& a, const Mat& b);

/* Symmetric bilinear space over Q. */
struct QuadSpace {
    int dim = 0;
    Mat gram; // symmetric dim x dim
};
QuadSpace make_quadspace(const Mat& gram);
QuadSpace hyperbolic_space(int n); // H (+) ... (+) H, 2n-dimensional

/* Subspace given by independent column vectors of the ambient space. */
struct Subspace {
    Mat basis; // dim x k
};
Subspace make_subspace(const QuadSpace& Q, const Mat& basis_columns);

bool is_isotropic(const QuadSpace& Q, const Subspace& K);
bool is_nondegenerate(const QuadSpace& Q);
Rat quad_eval(const QuadSpace& Q, const Vec& v); // v^T G v

/* K^perp / K for isotropic K in nondegenerate Q; also returns the chosen
   complement basis W (ambient columns) used for the quotient. */
struct QuadReduction {
    QuadSpace reduced;
    Mat w_basis; // dim x (dim - 2k)
};
QuadReduction reduce_quadspace(const QuadSpace& Q, const Subspace& K);

/* (dimension, square-free discriminant representative, signature (p, n));
   the signature is computed by exact congruence diagonalization. */
struct QuadInvariants {
    int dim = 0;
    Int disc;
    int sig_pos = 0, sig_neg = 0;
    bool operator==(const QuadInvariants&) const = default;
};
QuadInvariants quad_invariants(const QuadSpace& Q);

/* a and b lie in the same rational square class (a, b nonzero). */
bool same_square_class(const Rat& a, const Rat& b);
/* square-free integer representative of the square class of r != 0 */
Int squarefree_part(const Rat& r);

/* Self-dual symmetric resolution datum at desk scale: B --d--> E with E a
   nondegenerate even-dimensional space, image of d isotropic, and an
   orientation lambda with lambda^2 = (-1)^n det(gram). */
struct SymRes {
    int b_dim = 0;
    QuadSpace E; // dim 2n
    Mat d;       // 2n x b_dim
    Rat orientation;
};
SymRes make_symres(int b_dim, const QuadSpace& E, const Mat& d, const Rat& orientation);

bool symres_check(const SymRes& R); // d^T G d == 0

/* q(v + d b) = q(v) for sampled v in the orthogonal complement of d(B); a
   regression guard on the descent of the quadratic function. */
bool quadratic_descent_check(const SymRes& R, int samples, unsigned long seed);

/* Reduction by D <= B and isotropic K <= E with d(D) <= K and <d(B), K> = 0;
   yields [(B/D) -> K^perp/K] with the induced orientation. */
SymRes reduce_symres(const SymRes& R, const Mat& D_basis, const Mat& K_basis);

} // namespace vchow
