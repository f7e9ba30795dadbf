#pragma once

#include <string>

#include "qlab/bqa/algebra.hpp"

namespace qlab {

// DSL text for the built-in families. Vertices are named 1..k.
//   A(n), n >= 1: alpha-cycle 1 -> 2 -> ... -> n+1 -> 1 plus a gamma 2-cycle between n and n+1;
//                 relations alpha*gamma, gamma*alpha, alpha^{n+1} - gamma^2 where composable.
//   B(n), n >= 3: alpha/beta double arrows along 1..n-1, gamma-cycle n-1 -> n -> n+1 -> n-1,
//                 delta 2-cycle between n and n+1.
//   kronecker_trivext: A(1).
//   nakayama(m, l): cyclic quiver on m vertices with rad^l = 0.
//   local(t): one loop x with x^t = 0.
std::string family_A_dsl(int n, std::uint32_t p = 101);
std::string family_B_dsl(int n, std::uint32_t p = 101);
std::string kronecker_trivext_dsl(std::uint32_t p = 101);
std::string nakayama_dsl(int m, int l, std::uint32_t p = 101);
std::string local_dsl(int t, std::uint32_t p = 101);

AlgebraPtr family_A(int n, std::uint32_t p = 101);
AlgebraPtr family_B(int n, std::uint32_t p = 101);
AlgebraPtr kronecker_trivext(std::uint32_t p = 101);
AlgebraPtr nakayama(int m, int l, std::uint32_t p = 101);
AlgebraPtr local_algebra(int t, std::uint32_t p = 101);

// By name: "A", "B", "kronecker_trivext", "nakayama", "local". `a`, `b` are the parameters
// (n; n; unused; m and l; t). Throws BadParameter.
std::string family_dsl(const std::string& name, int a, int b, std::uint32_t p = 101);

}  // namespace qlab
