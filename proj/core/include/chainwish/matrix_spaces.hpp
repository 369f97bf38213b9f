#pragma once

// Band-stored symmetric matrices attached to the chain.
//
//   TridiagSym     elements of Z_G: symmetric tridiagonal, zero off the band.
//   IncompleteSym  elements of I_G: only the band is specified; entries off
//                  the band are "unknown", not zero.
//
// Both keep diag (length n) and off (length n-1, entry (i, i+1)). Matrix
// indices in this header are 0-based; clique and minor numbers reported in
// errors are 1-based.

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "chainwish/errors.hpp"

namespace chainwish {

using DenseSym = Eigen::MatrixXd;

template <class Tag>
class BandSym {
 public:
  BandSym() = default;
  explicit BandSym(int n) : diag_(Eigen::VectorXd::Zero(n)), off_(Eigen::VectorXd::Zero(n > 0 ? n - 1 : 0)) {
    if (n < 1) throw DimensionError("band matrix needs n >= 1");
  }
  BandSym(Eigen::VectorXd diag, Eigen::VectorXd off) : diag_(std::move(diag)), off_(std::move(off)) {
    if (diag_.size() < 1 || off_.size() != diag_.size() - 1)
      throw DimensionError("band matrix needs diag of length n >= 1 and off of length n-1");
  }

  static BandSym identity(int n) {
    BandSym b(n);
    b.diag_.setOnes();
    return b;
  }
  // Coordinates are diag followed by off, 2n-1 numbers.
  static BandSym from_coords(const Eigen::VectorXd& c) {
    if (c.size() < 1 || c.size() % 2 == 0) throw DimensionError("band coordinates must have odd length 2n-1");
    const Eigen::Index n = (c.size() + 1) / 2;
    return BandSym(c.head(n), c.tail(n - 1));
  }

  int size() const { return static_cast<int>(diag_.size()); }
  const Eigen::VectorXd& diag() const { return diag_; }
  const Eigen::VectorXd& off() const { return off_; }
  Eigen::VectorXd& diag() { return diag_; }
  Eigen::VectorXd& off() { return off_; }
  double diag(int i) const { return diag_[i]; }
  double off(int i) const { return off_[i]; }

  Eigen::VectorXd coords() const {
    Eigen::VectorXd c(2 * diag_.size() - 1);
    c << diag_, off_;
    return c;
  }

  // Dense matrix with zeros off the band. For IncompleteSym this is only a
  // carrier for the specified entries, not a completion.
  DenseSym dense() const {
    const int n = size();
    DenseSym d = DenseSym::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = diag_[i];
    for (int i = 0; i + 1 < n; ++i) d(i, i + 1) = d(i + 1, i) = off_[i];
    return d;
  }

  // Principal block on the contiguous index range [first, last].
  BandSym block(int first, int last) const {
    if (first < 0 || last >= size() || first > last) throw DimensionError("block range out of bounds");
    return BandSym(diag_.segment(first, last - first + 1), off_.segment(first, last - first));
  }

  BandSym& operator+=(const BandSym& o) { check_same(o); diag_ += o.diag_; off_ += o.off_; return *this; }
  BandSym& operator-=(const BandSym& o) { check_same(o); diag_ -= o.diag_; off_ -= o.off_; return *this; }
  BandSym& operator*=(double c) { diag_ *= c; off_ *= c; return *this; }
  friend BandSym operator+(BandSym a, const BandSym& b) { return a += b; }
  friend BandSym operator-(BandSym a, const BandSym& b) { return a -= b; }
  friend BandSym operator*(double c, BandSym a) { return a *= c; }
  friend BandSym operator-(BandSym a) { return a *= -1.0; }

 private:
  void check_same(const BandSym& o) const {
    if (o.size() != size()) throw DimensionError("band matrices differ in size");
  }

  Eigen::VectorXd diag_;
  Eigen::VectorXd off_;
};

struct TridiagTag {};
struct IncompleteTag {};
using TridiagSym = BandSym<TridiagTag>;
using IncompleteSym = BandSym<IncompleteTag>;

// Scalar kept as log|v| and sign(v), so products of many minors stay finite.
struct SignedLog {
  double log_abs;
  int sign;

  double value() const;
};

// Projection pi onto the band entries.
IncompleteSym project_pi(const DenseSym& a);
// Band part of a dense matrix that is known to lie in Z_G.
TridiagSym band_part(const DenseSym& a);

// Positive definiteness by the leading-minor criterion. A pivot counts as
// positive only above 1e-12 times the largest diagonal magnitude, so points
// on the cone boundary are reported as outside. Returns the 1-based index of
// the first failing leading minor.
std::optional<int> find_P_violation(const TridiagSym& y);
bool is_in_P(const TridiagSym& y);
// Every 2x2 clique block positive definite (n == 1: x > 0). Returns the
// 1-based index of the first failing clique.
std::optional<int> find_Q_violation(const IncompleteSym& x);
bool is_in_Q(const IncompleteSym& x);
// Throw DomainError naming the failing minor or clique; `what` prefixes the message.
void require_P(const TridiagSym& y, const char* what);
void require_Q(const IncompleteSym& x, const char* what);

// <y, x> = sum_i y_ii x_ii + 2 sum_i y_{i,i+1} x_{i,i+1}.
double pairing(const TridiagSym& y, const IncompleteSym& x);

// Determinant of the block [first, last] via the three-term continuant
// recurrence, kept in rescaled form. Valid for any symmetric tridiagonal data.
SignedLog log_det_block(const TridiagSym& y, int first, int last);
// Determinant of the principal submatrix on a sorted vertex subset. Gaps
// split the subset into contiguous runs, whose determinants multiply.
SignedLog log_det_subset(const TridiagSym& y, const std::vector<int>& sorted_vertices);
// |y_{1:i}| for i = 1..n, and |y_{i:n}| for i = 1..n.
std::vector<SignedLog> log_leading_minors(const TridiagSym& y);
std::vector<SignedLog> log_trailing_minors(const TridiagSym& y);
Eigen::VectorXd leading_minors(const TridiagSym& y);
Eigen::VectorXd trailing_minors(const TridiagSym& y);

// Band of (y_{first:last})^{-1}, computed from minors in O(length).
// Requires the block to be positive definite.
IncompleteSym inverse_image_block(const TridiagSym& y, int first, int last);
// pi(y^{-1}); requires y in P_G.
IncompleteSym inverse_image(const TridiagSym& y);
// [(y_{first:last})^{-1}]^0 as an n x n dense matrix.
DenseSym padded_inverse(const TridiagSym& y, int first, int last);
// Same for an arbitrary dense symmetric positive definite matrix.
DenseSym padded_inverse(const DenseSym& a, int first, int last);

// The inverse of inverse_image: the y in P_G with pi(y^{-1}) = x, given as
// the sum of clique-block inverses minus separator inverses. Requires x in Q_G.
TridiagSym lauritzen_map(const IncompleteSym& x);
// Positive definite completion of x whose inverse lies in Z_G.
DenseSym hat_completion(const IncompleteSym& x);

// P(A)u = pi(A u A) for A dense symmetric, u in Z_G.
IncompleteSym quadratic_apply(const DenseSym& a, const TridiagSym& u);

// log |x_{i,i+1}| for the clique starting at 0-based index i.
double clique_log_det(const IncompleteSym& x, int i);

// Linear map between the two band spaces in (diag, off) coordinates. Column
// j is the image of basis element j: E_jj for j < n, and E_{k,k+1} + E_{k+1,k}
// for j = n + k.
struct BandOperator {
  int n = 0;
  Eigen::MatrixXd matrix;

  Eigen::VectorXd apply(const Eigen::VectorXd& coords) const { return matrix * coords; }
};

template <class In, class F>
BandOperator assemble_operator(int n, F&& image) {
  BandOperator op{n, Eigen::MatrixXd(2 * n - 1, 2 * n - 1)};
  for (int j = 0; j < 2 * n - 1; ++j)
    op.matrix.col(j) = image(In::from_coords(Eigen::VectorXd::Unit(2 * n - 1, j))).coords();
  return op;
}

// Covariance between coordinates of a random band matrix X when op is its
// covariance operator, i.e. Cov(<X, u>, <X, u'>) = <op u, u'>. Off-diagonal
// coordinates pair with weight 2, hence the column rescaling.
Eigen::MatrixXd coordinate_covariance(const BandOperator& op);

}  // namespace chainwish
