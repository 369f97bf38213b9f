#include "chainwish/matrix_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>

namespace chainwish {

namespace {

constexpr double kRelTol = 1e-12;

double diag_scale(const Eigen::VectorXd& d) {
  return d.size() == 0 ? 0.0 : d.cwiseAbs().maxCoeff();
}

// Continuant recurrence D_k = y_kk D_{k-1} - y_{k-1,k}^2 D_{k-2}, with the
// pair (D_{k-1}, D_k) rescaled every step and the scale kept as a log.
class Continuant {
 public:
  void push(double diag, double off_sq) {
    const double next = diag * cur_ - off_sq * prev_;
    prev_ = cur_;
    cur_ = next;
    const double s = std::max(std::abs(prev_), std::abs(cur_));
    if (s > 0.0 && std::isfinite(s)) {
      prev_ /= s;
      cur_ /= s;
      log_scale_ += std::log(s);
    }
  }
  SignedLog value() const {
    if (cur_ == 0.0 || !std::isfinite(cur_))
      return {cur_ == 0.0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN(), 0};
    return {log_scale_ + std::log(std::abs(cur_)), cur_ > 0.0 ? 1 : -1};
  }

 private:
  double prev_ = 0.0;
  double cur_ = 1.0;
  double log_scale_ = 0.0;
};

double log_positive(const SignedLog& v, const char* what) {
  if (v.sign <= 0) throw DomainError(std::string(what) + ": block is not positive definite");
  return v.log_abs;
}

}  // namespace

double SignedLog::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

IncompleteSym project_pi(const DenseSym& a) {
  if (a.rows() != a.cols() || a.rows() < 1) throw DimensionError("project_pi needs a square matrix");
  const int n = static_cast<int>(a.rows());
  IncompleteSym x(n);
  for (int i = 0; i < n; ++i) x.diag()[i] = a(i, i);
  for (int i = 0; i + 1 < n; ++i) x.off()[i] = 0.5 * (a(i, i + 1) + a(i + 1, i));
  return x;
}

TridiagSym band_part(const DenseSym& a) {
  const IncompleteSym x = project_pi(a);
  return TridiagSym(x.diag(), x.off());
}

std::optional<int> find_P_violation(const TridiagSym& y) {
  const double tol = kRelTol * diag_scale(y.diag());
  double pivot = 0.0;
  for (int i = 0; i < y.size(); ++i) {
    pivot = i == 0 ? y.diag(0) : y.diag(i) - y.off(i - 1) * y.off(i - 1) / pivot;
    if (!std::isfinite(pivot) || !(pivot > tol)) return i + 1;
  }
  return std::nullopt;
}

bool is_in_P(const TridiagSym& y) { return !find_P_violation(y); }

std::optional<int> find_Q_violation(const IncompleteSym& x) {
  const int n = x.size();
  const double tol = kRelTol * diag_scale(x.diag());
  if (n == 1) {
    if (!std::isfinite(x.diag(0)) || !(x.diag(0) > tol)) return 1;
    return std::nullopt;
  }
  for (int i = 0; i + 1 < n; ++i) {
    const double a = x.diag(i), d = x.diag(i + 1), b = x.off(i);
    const double det = a * d - b * b;
    if (!std::isfinite(det) || !(a > tol) || !(d > tol) || !(det > kRelTol * a * d)) return i + 1;
  }
  return std::nullopt;
}

bool is_in_Q(const IncompleteSym& x) { return !find_Q_violation(x); }

void require_P(const TridiagSym& y, const char* what) {
  if (auto k = find_P_violation(y))
    throw DomainError(std::string(what) + ": not in P_G, leading minor " + std::to_string(*k) +
                          " is not positive",
                      *k);
}

void require_Q(const IncompleteSym& x, const char* what) {
  if (auto k = find_Q_violation(x))
    throw DomainError(std::string(what) + ": not in Q_G, clique block " + std::to_string(*k) +
                          " is not positive definite",
                      *k);
}

double pairing(const TridiagSym& y, const IncompleteSym& x) {
  if (y.size() != x.size()) throw DimensionError("pairing of matrices of different size");
  return y.diag().dot(x.diag()) + 2.0 * y.off().dot(x.off());
}

SignedLog log_det_block(const TridiagSym& y, int first, int last) {
  if (first < 0 || last >= y.size()) throw DimensionError("determinant block out of range");
  if (first > last) return {0.0, 1};
  Continuant c;
  for (int k = first; k <= last; ++k) c.push(y.diag(k), k > first ? y.off(k - 1) * y.off(k - 1) : 0.0);
  return c.value();
}

SignedLog log_det_subset(const TridiagSym& y, const std::vector<int>& v) {
  SignedLog total{0.0, 1};
  std::size_t k = 0;
  while (k < v.size()) {
    std::size_t end = k;
    while (end + 1 < v.size() && v[end + 1] == v[end] + 1) ++end;
    const SignedLog run = log_det_block(y, v[k], v[end]);
    total.log_abs += run.log_abs;
    total.sign *= run.sign;
    k = end + 1;
  }
  return total;
}

std::vector<SignedLog> log_leading_minors(const TridiagSym& y) {
  std::vector<SignedLog> out;
  out.reserve(static_cast<std::size_t>(y.size()));
  Continuant c;
  for (int k = 0; k < y.size(); ++k) {
    c.push(y.diag(k), k > 0 ? y.off(k - 1) * y.off(k - 1) : 0.0);
    out.push_back(c.value());
  }
  return out;
}

std::vector<SignedLog> log_trailing_minors(const TridiagSym& y) {
  const int n = y.size();
  std::vector<SignedLog> out(static_cast<std::size_t>(n));
  Continuant c;
  for (int k = n - 1; k >= 0; --k) {
    c.push(y.diag(k), k + 1 < n ? y.off(k) * y.off(k) : 0.0);
    out[static_cast<std::size_t>(k)] = c.value();
  }
  return out;
}

Eigen::VectorXd leading_minors(const TridiagSym& y) {
  const auto l = log_leading_minors(y);
  Eigen::VectorXd out(y.size());
  for (int i = 0; i < y.size(); ++i) out[i] = l[static_cast<std::size_t>(i)].value();
  return out;
}

Eigen::VectorXd trailing_minors(const TridiagSym& y) {
  const auto t = log_trailing_minors(y);
  Eigen::VectorXd out(y.size());
  for (int i = 0; i < y.size(); ++i) out[i] = t[static_cast<std::size_t>(i)].value();
  return out;
}

IncompleteSym inverse_image_block(const TridiagSym& y, int first, int last) {
  const TridiagSym b = y.block(first, last);
  const int len = b.size();
  const auto lead_minors = log_leading_minors(b);
  const auto trail_minors = log_trailing_minors(b);
  // lead[j] = log|rows 0..j-1|, trail[j] = log|rows j..len-1|, empty = 0.
  std::vector<double> lead(static_cast<std::size_t>(len + 1), 0.0), trail(static_cast<std::size_t>(len + 2), 0.0);
  for (int j = 0; j < len; ++j) {
    lead[static_cast<std::size_t>(j + 1)] = log_positive(lead_minors[static_cast<std::size_t>(j)], "inverse_image");
    trail[static_cast<std::size_t>(j)] = log_positive(trail_minors[static_cast<std::size_t>(j)], "inverse_image");
  }
  const double log_det = lead[static_cast<std::size_t>(len)];
  IncompleteSym x(len);
  for (int k = 0; k < len; ++k)
    x.diag()[k] = std::exp(lead[static_cast<std::size_t>(k)] + trail[static_cast<std::size_t>(k + 1)] - log_det);
  for (int k = 0; k + 1 < len; ++k)
    x.off()[k] = -b.off(k) * std::exp(lead[static_cast<std::size_t>(k)] + trail[static_cast<std::size_t>(k + 2)] - log_det);
  return x;
}

IncompleteSym inverse_image(const TridiagSym& y) {
  require_P(y, "inverse_image");
  return inverse_image_block(y, 0, y.size() - 1);
}

DenseSym padded_inverse(const DenseSym& a, int first, int last) {
  const Eigen::Index n = a.rows();
  const Eigen::Index len = last - first + 1;
  if (first < 0 || last >= n || len < 1) throw DimensionError("padded_inverse range out of bounds");
  Eigen::LLT<DenseSym> llt(a.block(first, first, len, len));
  if (llt.info() != Eigen::Success) throw DomainError("padded_inverse: block is not positive definite");
  DenseSym out = DenseSym::Zero(n, n);
  out.block(first, first, len, len) = llt.solve(DenseSym::Identity(len, len));
  return out;
}

DenseSym padded_inverse(const TridiagSym& y, int first, int last) {
  return padded_inverse(y.dense(), first, last);
}

TridiagSym lauritzen_map(const IncompleteSym& x) {
  require_Q(x, "lauritzen_map");
  const int n = x.size();
  TridiagSym y(n);
  if (n == 1) {
    y.diag()[0] = 1.0 / x.diag(0);
    return y;
  }
  for (int i = 0; i + 1 < n; ++i) {
    const double a = x.diag(i), d = x.diag(i + 1), b = x.off(i);
    const double det = a * d - b * b;
    y.diag()[i] += d / det;
    y.diag()[i + 1] += a / det;
    y.off()[i] = -b / det;
  }
  for (int i = 1; i + 1 < n; ++i) y.diag()[i] -= 1.0 / x.diag(i);
  return y;
}

DenseSym hat_completion(const IncompleteSym& x) {
  const TridiagSym y = lauritzen_map(x);
  Eigen::LLT<DenseSym> llt(y.dense());
  if (llt.info() != Eigen::Success) throw DomainError("hat_completion: Lauritzen image is not positive definite");
  return llt.solve(DenseSym::Identity(x.size(), x.size()));
}

IncompleteSym quadratic_apply(const DenseSym& a, const TridiagSym& u) {
  if (a.rows() != u.size()) throw DimensionError("quadratic_apply size mismatch");
  return project_pi(a * u.dense() * a);
}

double clique_log_det(const IncompleteSym& x, int i) {
  const double det = x.diag(i) * x.diag(i + 1) - x.off(i) * x.off(i);
  return std::log(det);
}

Eigen::MatrixXd coordinate_covariance(const BandOperator& op) {
  Eigen::MatrixXd c = op.matrix;
  for (int j = op.n; j < 2 * op.n - 1; ++j) c.col(j) *= 0.5;
  return c;
}

}  // namespace chainwish
