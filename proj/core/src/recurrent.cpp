#include "chainwish/recurrent.hpp"

#include <string>

namespace chainwish {

namespace {

template <class Band>
Band grow_front(const Band& inner) {
  const int n = inner.size() + 1;
  Band out(n);
  out.diag().tail(n - 1) = inner.diag();
  out.off().tail(n - 2) = inner.off();
  return out;
}

template <class Band>
Band grow_back(const Band& inner) {
  const int n = inner.size() + 1;
  Band out(n);
  out.diag().head(n - 1) = inner.diag();
  out.off().head(n - 2) = inner.off();
  return out;
}

void require_split(int n, const char* what) {
  if (n < 2) throw DimensionError(std::string(what) + " needs n >= 2");
}

}  // namespace

TridiagSym join_left_p(double a, double b, const TridiagSym& z) {
  if (!(a > 0.0)) throw DomainError("join_left_p: a must be positive");
  TridiagSym y = grow_front(z);
  y.diag()[0] = a;
  y.off()[0] = a * b;
  y.diag()[1] += a * b * b;
  return y;
}

Peel<TridiagSym> split_left_p(const TridiagSym& y) {
  require_split(y.size(), "split_left_p");
  const double a = y.diag(0);
  if (!(a > 0.0)) throw DomainError("split_left_p: y11 must be positive", 1);
  const double b = y.off(0) / a;
  TridiagSym z = y.block(1, y.size() - 1);
  z.diag()[0] -= y.off(0) * y.off(0) / a;
  return {a, b, std::move(z)};
}

IncompleteSym join_left_q(double alpha, double beta, const IncompleteSym& x) {
  if (!(alpha > 0.0)) throw DomainError("join_left_q: alpha must be positive");
  IncompleteSym eta = grow_front(x);
  eta.diag()[0] = alpha + beta * beta * x.diag(0);
  eta.off()[0] = beta * x.diag(0);
  return eta;
}

Peel<IncompleteSym> split_left_q(const IncompleteSym& eta) {
  require_split(eta.size(), "split_left_q");
  const double beta = eta.off(0) / eta.diag(1);
  const double alpha = eta.diag(0) - eta.off(0) * eta.off(0) / eta.diag(1);
  return {alpha, beta, eta.block(1, eta.size() - 1)};
}

TridiagSym join_right_p(double a, double b, const TridiagSym& z) {
  if (!(a > 0.0)) throw DomainError("join_right_p: a must be positive");
  TridiagSym y = grow_back(z);
  const int n = y.size();
  y.diag()[n - 1] = a;
  y.off()[n - 2] = a * b;
  y.diag()[n - 2] += a * b * b;
  return y;
}

Peel<TridiagSym> split_right_p(const TridiagSym& y) {
  const int n = y.size();
  require_split(n, "split_right_p");
  const double a = y.diag(n - 1);
  if (!(a > 0.0)) throw DomainError("split_right_p: y_nn must be positive", n);
  const double b = y.off(n - 2) / a;
  TridiagSym z = y.block(0, n - 2);
  z.diag()[n - 2] -= y.off(n - 2) * y.off(n - 2) / a;
  return {a, b, std::move(z)};
}

IncompleteSym join_right_q(double alpha, double beta, const IncompleteSym& x) {
  if (!(alpha > 0.0)) throw DomainError("join_right_q: alpha must be positive");
  IncompleteSym eta = grow_back(x);
  const int n = eta.size();
  const double nb = x.diag(n - 2);
  eta.diag()[n - 1] = alpha + beta * beta * nb;
  eta.off()[n - 2] = beta * nb;
  return eta;
}

Peel<IncompleteSym> split_right_q(const IncompleteSym& eta) {
  const int n = eta.size();
  require_split(n, "split_right_q");
  const double nb = eta.diag(n - 2);
  const double beta = eta.off(n - 2) / nb;
  const double alpha = eta.diag(n - 1) - eta.off(n - 2) * eta.off(n - 2) / nb;
  return {alpha, beta, eta.block(0, n - 2)};
}

TraceSplit trace_decomposition(double a, double b, const TridiagSym& z, double alpha, double beta,
                               const IncompleteSym& x) {
  const double lhs = pairing(join_left_p(a, b, z), join_left_q(alpha, beta, x));
  const double c = b + beta;
  const double rhs = a * alpha + a * x.diag(0) * c * c + pairing(z, x);
  return {lhs, rhs};
}

}  // namespace chainwish
