#include "qlab/bqa/families.hpp"

#include <sstream>

#include "qlab/bqa/dsl.hpp"
#include "qlab/error.hpp"

namespace qlab {

namespace {

struct Gen {
  struct A {
    std::string id, s, t, type;
  };
  std::vector<A> arrows;

  // Emits every composable pair x*y with type(x) = tx and type(y) = ty.
  void pairs(std::ostream& out, const std::string& tx, const std::string& ty) const {
    for (const auto& x : arrows)
      for (const auto& y : arrows)
        if (x.type == tx && y.type == ty && x.t == y.s) out << "  rel " << x.id << "*" << y.id << " = 0;\n";
  }

  // Paths of `len` arrows of type `ty` starting at vertex v; empty if none or ambiguous.
  std::vector<std::string> walk(const std::string& v, const std::string& ty, int len) const {
    std::vector<std::string> ids;
    std::string cur = v;
    for (int k = 0; k < len; ++k) {
      const A* next = nullptr;
      for (const auto& a : arrows)
        if (a.type == ty && a.s == cur) {
          if (next) return {};
          next = &a;
        }
      if (!next) return {};
      ids.push_back(next->id);
      cur = next->t;
    }
    return ids;
  }
};

std::string join(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t k = 0; k < ids.size(); ++k) out += (k ? "*" : "") + ids[k];
  return out;
}

std::string header(std::ostream& out, const std::string& name, std::uint32_t p, int nv) {
  out << "algebra " << name << " {\n  field " << p << ";\n  vertices";
  for (int v = 1; v <= nv; ++v) out << ' ' << v;
  out << ";\n";
  return {};
}

void emit_arrows(std::ostream& out, const Gen& g) {
  for (const auto& a : g.arrows) out << "  arrow " << a.id << ": " << a.s << " -> " << a.t << ";\n";
}

// Binomial lhs - rhs at vertex v when both sides compose and end at the same vertex.
void binomial(std::ostream& out, const Gen& g, const std::string& v, const std::string& t1, int l1,
              const std::string& t2, int l2) {
  const auto p1 = g.walk(v, t1, l1);
  const auto p2 = g.walk(v, t2, l2);
  if (p1.empty() || p2.empty()) return;
  out << "  rel " << join(p1) << " - " << join(p2) << " = 0;\n";
}

}  // namespace

std::string family_A_dsl(int n, std::uint32_t p) {
  if (n < 1) fail(ErrorKind::BadParameter, "A(n) needs n >= 1");
  Gen g;
  const auto v = [](int i) { return std::to_string(i); };
  for (int i = 1; i <= n; ++i) g.arrows.push_back({"a" + v(i), v(i), v(i + 1), "alpha"});
  g.arrows.push_back({"a" + v(n + 1), v(n + 1), v(1), "alpha"});
  g.arrows.push_back({"g1", v(n), v(n + 1), "gamma"});
  g.arrows.push_back({"g2", v(n + 1), v(n), "gamma"});
  std::ostringstream out;
  header(out, n == 1 ? "kronecker_trivext" : "A" + v(n), p, n + 1);
  emit_arrows(out, g);
  g.pairs(out, "alpha", "gamma");
  g.pairs(out, "gamma", "alpha");
  for (int w = 1; w <= n + 1; ++w) binomial(out, g, v(w), "alpha", n + 1, "gamma", 2);
  // Vertices away from the gamma loop need alpha^{n+2} = 0 spelled out once n >= 3.
  for (int w = 1; w <= n - 2; ++w) out << "  rel " << join(g.walk(v(w), "alpha", n + 2)) << " = 0;\n";
  out << "}\n";
  return out.str();
}

std::string family_B_dsl(int n, std::uint32_t p) {
  if (n < 3) fail(ErrorKind::BadParameter, "B(n) needs n >= 3");
  Gen g;
  const auto v = [](int i) { return std::to_string(i); };
  for (int i = 1; i <= n - 2; ++i) g.arrows.push_back({"a" + v(i), v(i), v(i + 1), "alpha"});
  for (int i = 1; i <= n - 2; ++i) g.arrows.push_back({"b" + v(i), v(i + 1), v(i), "beta"});
  g.arrows.push_back({"c1", v(n - 1), v(n), "gamma"});
  g.arrows.push_back({"c2", v(n), v(n + 1), "gamma"});
  g.arrows.push_back({"c3", v(n + 1), v(n - 1), "gamma"});
  g.arrows.push_back({"d1", v(n), v(n + 1), "delta"});
  g.arrows.push_back({"d2", v(n + 1), v(n), "delta"});
  std::ostringstream out;
  header(out, "B" + v(n), p, n + 1);
  emit_arrows(out, g);
  g.pairs(out, "alpha", "alpha");
  g.pairs(out, "beta", "beta");
  g.pairs(out, "alpha", "gamma");
  g.pairs(out, "gamma", "beta");
  g.pairs(out, "delta", "gamma");
  g.pairs(out, "gamma", "delta");
  // Mixed binomials: alpha*beta - beta*alpha needs a path of each kind at the same vertex.
  for (int w = 1; w <= n + 1; ++w) {
    const auto ab = g.walk(v(w), "alpha", 1);
    const auto ba = g.walk(v(w), "beta", 1);
    std::vector<std::string> p_ab, p_ba;
    if (!ab.empty()) {
      const auto back = g.walk(v(w + 1), "beta", 1);
      if (!back.empty()) p_ab = {ab[0], back[0]};
    }
    if (!ba.empty()) {
      const auto fwd = g.walk(v(w - 1), "alpha", 1);
      if (!fwd.empty()) p_ba = {ba[0], fwd[0]};
    }
    const auto c3 = g.walk(v(w), "gamma", 3);
    const auto d2 = g.walk(v(w), "delta", 2);
    if (!p_ab.empty() && !p_ba.empty()) out << "  rel " << join(p_ab) << " - " << join(p_ba) << " = 0;\n";
    if (!p_ba.empty() && !c3.empty()) out << "  rel " << join(p_ba) << " - " << join(c3) << " = 0;\n";
    if (!d2.empty() && !c3.empty()) out << "  rel " << join(d2) << " - " << join(c3) << " = 0;\n";
  }
  out << "}\n";
  return out.str();
}

std::string kronecker_trivext_dsl(std::uint32_t p) { return family_A_dsl(1, p); }

std::string nakayama_dsl(int m, int l, std::uint32_t p) {
  if (m < 1 || l < 1) fail(ErrorKind::BadParameter, "nakayama(m, l) needs m, l >= 1");
  std::ostringstream out;
  header(out, "nakayama_" + std::to_string(m) + "_" + std::to_string(l), p, m);
  for (int i = 1; i <= m; ++i)
    out << "  arrow x" << i << ": " << i << " -> " << (i % m) + 1 << ";\n";
  if (l == 1) fail(ErrorKind::BadParameter, "nakayama(m, l) needs l >= 2");
  for (int i = 1; i <= m; ++i) {
    out << "  rel ";
    for (int k = 0; k < l; ++k) out << (k ? "*" : "") << "x" << ((i - 1 + k) % m) + 1;
    out << " = 0;\n";
  }
  out << "}\n";
  return out.str();
}

std::string local_dsl(int t, std::uint32_t p) {
  if (t < 2) fail(ErrorKind::BadParameter, "local(t) needs t >= 2");
  std::ostringstream out;
  header(out, "local_" + std::to_string(t), p, 1);
  out << "  arrow x: 1 -> 1;\n  rel ";
  for (int k = 0; k < t; ++k) out << (k ? "*" : "") << "x";
  out << " = 0;\n}\n";
  return out.str();
}

AlgebraPtr family_A(int n, std::uint32_t p) { return parse_algebra(family_A_dsl(n, p)); }
AlgebraPtr family_B(int n, std::uint32_t p) { return parse_algebra(family_B_dsl(n, p)); }
AlgebraPtr kronecker_trivext(std::uint32_t p) { return parse_algebra(kronecker_trivext_dsl(p)); }
AlgebraPtr nakayama(int m, int l, std::uint32_t p) { return parse_algebra(nakayama_dsl(m, l, p)); }
AlgebraPtr local_algebra(int t, std::uint32_t p) { return parse_algebra(local_dsl(t, p)); }

std::string family_dsl(const std::string& name, int a, int b, std::uint32_t p) {
  if (name == "A") return family_A_dsl(a, p);
  if (name == "B") return family_B_dsl(a, p);
  if (name == "kronecker_trivext") return kronecker_trivext_dsl(p);
  if (name == "nakayama") return nakayama_dsl(a, b, p);
  if (name == "local") return local_dsl(a, p);
  fail(ErrorKind::BadParameter, "unknown family '" + name + "'");
}

}  // namespace qlab
