#pragma once

// Input system classes and their reductions to scalar equations:
//   polynomial      x' = A(t) x,            A(t) = sum_{k<m} A_k t^k
//   Fuchsian        x' = (sum_j A_j/(t-t_j)) x
//   hypergeometric  (tE - B) x' = C x
// plus parameter-vector extraction, magnitude, and the clearance test for
// singularity-free disks. Fuchsian and hypergeometric systems are converted
// to a (numerator matrix, scalar denominator) pair so the chain recursion
// stays polynomial throughout.

#include <vector>

#include "oscbound/mpoly.hpp"
#include "oscbound/rat.hpp"
#include "oscbound/reduce.hpp"
#include "oscbound/unipoly.hpp"

namespace oscbound {

enum class MatrixNorm { rowsum, maxentry, frobenius };

// Exact (real-rational) entries and floating complex entries are mutually
// exclusive input modes; exact systems always carry a floating mirror so the
// numeric paths need no special cases.
struct PolySystem {
  int n = 0;
  int m = 1;  // number of coefficient matrices A_0..A_{m-1}
  bool exact = false;
  std::vector<std::vector<cplx>> coeff;       // m blocks of n*n, row-major
  std::vector<std::vector<Rat>> coeff_exact;  // filled iff exact
};

struct FuchsSystem {
  int n = 0;
  int m = 0;  // number of poles
  bool exact = false;
  std::vector<cplx> poles;
  std::vector<std::vector<cplx>> residues;  // m blocks of n*n, row-major
  std::vector<Rat> poles_exact;
  std::vector<std::vector<Rat>> residues_exact;
};

struct HypergeomSystem {
  int n = 0;
  bool exact = false;
  std::vector<cplx> B, C;  // n*n row-major
  std::vector<Rat> B_exact, C_exact;
};

// shape checks; Fuchsian rejects poles closer than 1e-9 * (1 + max |t_j|)
void validate(const PolySystem &s);
void validate(const FuchsSystem &s);
void validate(const HypergeomSystem &s);

// t = infinity is singular for a Fuchsian system unless the residues sum to 0
bool infinity_singular(const FuchsSystem &s);

// flattened parameter vectors; ordering is k-major, then row, then column;
// the Fuchsian vector appends the poles (length (n^2+1)m), the
// hypergeometric one is B then C (length 2n^2)
std::vector<cplx> lambda_vector(const PolySystem &s);
std::vector<cplx> lambda_vector(const FuchsSystem &s);
std::vector<cplx> lambda_vector(const HypergeomSystem &s);

double matrix_norm(const std::vector<cplx> &rowmajor, int n, MatrixNorm nk);

// max over coefficient-matrix norms; Fuchsian also maxes in the |t_j|
double magnitude(const PolySystem &s, MatrixNorm nk = MatrixNorm::rowsum);
double magnitude(const FuchsSystem &s, MatrixNorm nk = MatrixNorm::rowsum);
double magnitude(const HypergeomSystem &s, MatrixNorm nk = MatrixNorm::rowsum);

// x' = (num/chi) x forms
struct RationalSystemC {
  SysMat<CPoly> num;
  CPoly chi;
};
struct RationalSystemX {
  SysMat<MPoly> num;
  MPoly chi;
};

// num = adj(tE-B) * C, chi = det(tE-B); the adjugate identity
// adj(tE-B) * (tE-B) = chi * E is asserted during construction
RationalSystemC hypergeom_to_rational(const HypergeomSystem &h);
RationalSystemX hypergeom_to_rational_exact(const HypergeomSystem &h);

// num = sum_j A_j * prod_{l != j}(t - t_l), chi = prod_j (t - t_j)
RationalSystemC fuchs_to_rational(const FuchsSystem &f);
RationalSystemX fuchs_to_rational_exact(const FuchsSystem &f);

SysMat<CPoly> poly_system_matrix(const PolySystem &s);
SysMat<MPoly> poly_system_matrix_exact(const PolySystem &s);

// chain plus degeneracy verdict; deg.eq holds the reduced equation, of order
// deg.k <= n (lower order when an earlier linear dependence is detected)
template <class P>
struct Reduction {
  XiChain<P> chain;
  DegeneracyResult<P> deg;
};

Reduction<CPoly> poly_reduce(const PolySystem &s, double tau = 1e-10);
Reduction<MPoly> poly_reduce_exact(const PolySystem &s);
Reduction<CPoly> fuchs_reduce(const FuchsSystem &f, double tau = 1e-10);
Reduction<MPoly> fuchs_reduce_exact(const FuchsSystem &f);
Reduction<CPoly> hypergeom_reduce(const HypergeomSystem &h, double tau = 1e-10);
Reduction<MPoly> hypergeom_reduce_exact(const HypergeomSystem &h);

// singular points: the poles, resp. the eigenvalues of B (floating)
std::vector<cplx> singular_points(const FuchsSystem &f);
std::vector<cplx> singular_points(const HypergeomSystem &h);

struct ClearanceReport {
  bool clear = false;
  double min_distance = 0.0;  // to the nearest singular point; inf when none
  double required = 0.0;      // factor * r
  double factor = 0.0;
};

ClearanceReport singularity_clearance(const FuchsSystem &f, cplx center,
                                      double r, double factor = 6.0);
ClearanceReport singularity_clearance(const HypergeomSystem &h, cplx center,
                                      double r, double factor = 6.0);

}  // namespace oscbound
