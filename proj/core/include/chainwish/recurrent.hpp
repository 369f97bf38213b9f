#pragma once

// Bijections that attach or remove an end vertex of the chain.
//
// join_left_p(a, b, z)      P_{n-1} x R x R+ -> P_n, vertex 1 in front of z:
//                           y11 = a, y12 = a b, y22 = a b^2 + z11.
// join_left_q(alpha, beta, x) Q_{n-1} x R x R+ -> Q_n:
//                           x11 = alpha + beta^2 x11', x12 = beta x11'.
// The *_right_* versions attach vertex n behind the smaller matrix instead.
// split_* are the inverses. In the pairing,
//   <join_p(a, b, z), join_q(alpha, beta, x)>
//     = a alpha + a x_nb (b + beta)^2 + <z, x>,
// where x_nb is the diagonal entry of x next to the attached vertex.

#include "chainwish/matrix_spaces.hpp"

namespace chainwish {

template <class Rest>
struct Peel {
  double head;   // a on the P side, alpha on the Q side
  double slope;  // b on the P side, beta on the Q side
  Rest rest;
};

TridiagSym join_left_p(double a, double b, const TridiagSym& z);
Peel<TridiagSym> split_left_p(const TridiagSym& y);
IncompleteSym join_left_q(double alpha, double beta, const IncompleteSym& x);
Peel<IncompleteSym> split_left_q(const IncompleteSym& x);

TridiagSym join_right_p(double a, double b, const TridiagSym& z);
Peel<TridiagSym> split_right_p(const TridiagSym& y);
IncompleteSym join_right_q(double alpha, double beta, const IncompleteSym& x);
Peel<IncompleteSym> split_right_q(const IncompleteSym& x);

// Jacobian determinants in (diag, off) coordinates.
inline double jacobian_join_p(double a) { return a; }
inline double jacobian_join_left_q(const IncompleteSym& x) { return x.diag(0); }
inline double jacobian_join_right_q(const IncompleteSym& x) { return x.diag(x.size() - 1); }

struct TraceSplit {
  double lhs;
  double rhs;
};
// Both sides of the pairing identity above for left joins.
TraceSplit trace_decomposition(double a, double b, const TridiagSym& z, double alpha, double beta,
                               const IncompleteSym& x);

}  // namespace chainwish
