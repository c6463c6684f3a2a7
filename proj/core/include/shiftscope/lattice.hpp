#pragma once

// Exact finitely supported vectors over the integer lattice (coordinates in
// the orthonormal basis (e_n)), the polynomial functional calculus p(W) +
// q(W^{-1}) applied to them, and operator-norm estimation for compressions
// P_N p(W) P_N. Vectors are never truncated; only norms go through a
// finite-dimensional compression.

#include <complex>
#include <cstdint>
#include <vector>

#include "shiftscope/weights.hpp"

namespace shiftscope {

struct LatticeVector {
  // Sorted by index; no stored amplitude is exactly zero.
  std::vector<std::pair<index_t, cplx>> terms;

  static LatticeVector basis(index_t k) { return LatticeVector{{{k, cplx{1.0, 0.0}}}}; }

  double norm_squared() const;
  double norm() const;
  bool empty() const { return terms.empty(); }
};

LatticeVector lv_scale(const LatticeVector& x, cplx alpha);
LatticeVector lv_add(const LatticeVector& x, const LatticeVector& y);
LatticeVector lv_combine(cplx alpha, const LatticeVector& x, cplx beta, const LatticeVector& y);
double lv_distance(const LatticeVector& x, const LatticeVector& y);
// sqrt of the squared mass on coordinates with index > cutoff.
double lv_tail_norm(const LatticeVector& x, index_t cutoff);

// p(z) = a_0 + a_1 z + ... + a_m z^m applied to W, plus an optional part
// b_1 mu + ... + b_l mu^l applied to W^{-1}. The backward part has no constant
// term, matching the q(0) = 0 convention of rational calculus on the shift.
struct ShiftPolynomial {
  std::vector<cplx> forward;   // a_0 .. a_m
  std::vector<cplx> backward;  // b_1 .. b_l

  // Index of the last nonzero forward coefficient; -1 for the zero polynomial.
  int degree() const;
  // Largest n with b_n != 0; 0 when there is no backward part.
  int backward_degree() const;

  static ShiftPolynomial monomial(int n, cplx coeff = cplx{1.0, 0.0});
};

// Exact W^power x. Support shifts by power; amplitudes pick up window
// products computed in the log domain (unit phases accumulated separately).
// pre: power < 0 requires an invertible weight sequence.
LatticeVector apply_shift(const WeightSequence& w, const LatticeVector& x, index_t power);

// Exact sum_a a_n W^n x + sum_b b_n W^{-n} x; finitely supported vectors are
// closed under the calculus, so there is no truncation error.
LatticeVector apply_polynomial(const WeightSequence& w, const ShiftPolynomial& p,
                               const LatticeVector& x);

// Compression P_N p(W) P_N to coordinates [-N, N], stored as bands: the pure
// power W^d contributes only to the d-th subdiagonal of the coordinate grid.
class TruncatedOperator {
 public:
  TruncatedOperator(const WeightSequence& w, const ShiftPolynomial& p, index_t half_width);

  index_t half_width() const { return half_width_; }
  index_t size() const { return 2 * half_width_ + 1; }

  // y = A x over coordinate arrays of length size() (coordinate c at c+N).
  void apply(const cplx* x, cplx* y) const;
  // y = A* x; the adjoint is the structural conjugate transpose of the bands.
  void apply_adjoint(const cplx* x, cplx* y) const;

  cplx entry(index_t row, index_t col) const;

 private:
  index_t half_width_;
  struct Band {
    index_t offset;                // row = col + offset
    std::vector<cplx> factors;     // per column, zero where the row falls outside
  };
  std::vector<Band> bands_;
};

struct OpNormResult {
  double value = 0.0;            // estimate of ||P_N p(W) P_N||
  double certified_lower = 0.0;  // value * (1 - 10 * tol)
  bool converged = false;
  index_t iterations = 0;
};

// Largest singular value of the compression via a Krylov (Lanczos) sweep on
// the Gram operator A*A with a deterministic start vector and full
// reorthogonalization; the sweep is exact once the Krylov space closes, so at
// most size() matvec rounds run. Throws NoConvergenceError only if the Ritz
// value fails to settle within the iteration budget on spaces too large to
// exhaust. pre: half_width >= max(degree, backward_degree).
OpNormResult op_norm_truncated(const WeightSequence& w, const ShiftPolynomial& p,
                               index_t half_width, double tol);

struct OpNormBound {
  double value = 0.0;
  bool exact = false;  // true when the window extremes are rule-exact
};

// Triangle-inequality bound sum |a_n| ||W^n|| + sum |b_n| ||W^{-n}|| with the
// shift-power norms taken from the exact rule-level window extremes. Always
// an upper bound for ||p(W)||, hence for any compression of it.
OpNormBound op_norm_upper_bound(const WeightSequence& w, const ShiftPolynomial& p);

// p scaled so that op_norm_upper_bound becomes 1 (guaranteeing ||p(W)|| <= 1).
ShiftPolynomial normalize_by_upper_bound(const WeightSequence& w, const ShiftPolynomial& p);

}  // namespace shiftscope
