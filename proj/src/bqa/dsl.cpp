#include "qlab/bqa/dsl.hpp"

#include <cctype>
#include <sstream>

#include "qlab/error.hpp"

namespace qlab {

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Int: return "integer '" + t.text + "'";
    case Tok::Ident: return "identifier '" + t.text + "'";
    case Tok::Sym: return "'" + t.text + "'";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      // "12abc" is a vertex-style identifier; keep it together.
      if (j < src.size() && (std::isalpha(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
        t.kind = Tok::Ident;
      } else {
        t.kind = Tok::Int;
      }
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Tok::Sym;
      t.text = "->";
      advance(2);
    } else if (std::string_view("{};:*+-=").find(c) != std::string_view::npos) {
      t.kind = Tok::Sym;
      t.text = std::string(1, c);
      advance(1);
    } else {
      fail(ErrorKind::SyntaxError, std::to_string(line) + ":" + std::to_string(col) +
                                       ": unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

struct RawTerm {
  std::int64_t coeff = 1;
  std::vector<std::string> arrows;
  Token at;
};

class Parser {
 public:
  Parser(std::string_view src, std::uint32_t default_field) : toks_(tokenize(src)) {
    spec_.field = default_field;
  }

  AlgebraSpec run() {
    expect_word("algebra");
    spec_.name = name_token("algebra name");
    expect_sym("{");
    while (!peek_sym("}")) statement();
    expect_sym("}");
    if (peek().kind != Tok::End) error({"end of input"});
    finish();
    return std::move(spec_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool peek_sym(std::string_view s) const { return peek().kind == Tok::Sym && peek().text == s; }

  [[noreturn]] void error(const std::vector<std::string>& expected) const {
    const auto& t = peek();
    std::string msg = std::to_string(t.line) + ":" + std::to_string(t.col) + ": expected ";
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (k) msg += k + 1 == expected.size() ? " or " : ", ";
      msg += expected[k];
    }
    msg += ", got " + describe(t);
    fail(ErrorKind::SyntaxError, msg);
  }

  void expect_sym(std::string_view s) {
    if (!peek_sym(s)) error({"'" + std::string(s) + "'"});
    ++pos_;
  }
  void expect_word(std::string_view w) {
    if (peek().kind != Tok::Ident || peek().text != w) error({"'" + std::string(w) + "'"});
    ++pos_;
  }
  std::string name_token(const std::string& what) {
    if (peek().kind != Tok::Ident && peek().kind != Tok::Int) error({what});
    return take().text;
  }
  std::int64_t integer(const std::string& what) {
    if (peek().kind != Tok::Int) error({what});
    const auto t = take();
    if (t.text.size() > 12) fail(ErrorKind::SyntaxError, std::to_string(t.line) + ":" +
                                                           std::to_string(t.col) + ": integer too large");
    return std::stoll(t.text);
  }

  void statement() {
    if (peek().kind != Tok::Ident)
      error({"'field'", "'composition'", "'vertices'", "'arrow'", "'rel'", "'nilpotency'", "'}'"});
    const Token kw = peek();
    if (kw.text == "field") {
      ++pos_;
      const auto p = integer("field characteristic");
      if (p < 2 || p >= (1LL << 31) || !ff::is_prime(static_cast<std::uint64_t>(p)))
        fail(ErrorKind::BadParameter, std::to_string(kw.line) + ":" + std::to_string(kw.col) +
                                          ": field characteristic " + std::to_string(p) + " is not a prime < 2^31");
      spec_.field = static_cast<std::uint32_t>(p);
    } else if (kw.text == "composition") {
      ++pos_;
      if (peek().kind == Tok::Ident && peek().text == "left_to_right") {
        spec_.composition = Composition::LeftToRight;
      } else if (peek().kind == Tok::Ident && peek().text == "right_to_left") {
        spec_.composition = Composition::RightToLeft;
      } else {
        error({"'left_to_right'", "'right_to_left'"});
      }
      ++pos_;
    } else if (kw.text == "vertices") {
      ++pos_;
      if (peek_sym(";")) error({"vertex name"});
      while (!peek_sym(";")) vertices_.push_back(name_token("vertex name"));
    } else if (kw.text == "arrow") {
      ++pos_;
      if (peek().kind != Tok::Ident) error({"arrow id"});
      Token id = take();
      expect_sym(":");
      const auto s = name_token("source vertex");
      expect_sym("->");
      const auto t = name_token("target vertex");
      arrows_.push_back({id, s, t});
    } else if (kw.text == "rel") {
      ++pos_;
      relation();
    } else if (kw.text == "nilpotency") {
      ++pos_;
      const auto n = integer("nilpotency bound");
      if (n < 1 || n > 1000) fail(ErrorKind::BadParameter, "nilpotency bound out of range");
      spec_.nilpotency = static_cast<int>(n);
    } else {
      error({"'field'", "'composition'", "'vertices'", "'arrow'", "'rel'", "'nilpotency'", "'}'"});
    }
    expect_sym(";");
  }

  RawTerm term(std::int64_t sign) {
    RawTerm t;
    t.at = peek();
    t.coeff = sign;
    if (peek().kind == Tok::Int) {
      t.coeff *= integer("coefficient");
      expect_sym("*");
    }
    if (peek().kind != Tok::Ident) error({"arrow id"});
    t.arrows.push_back(take().text);
    while (peek_sym("*")) {
      ++pos_;
      if (peek().kind != Tok::Ident) error({"arrow id"});
      t.arrows.push_back(take().text);
    }
    return t;
  }

  void relation() {
    std::vector<RawTerm> terms;
    std::int64_t sign = 1;
    if (peek_sym("-")) {
      ++pos_;
      sign = -1;
    }
    terms.push_back(term(sign));
    while (peek_sym("+") || peek_sym("-")) {
      sign = take().text == "+" ? 1 : -1;
      terms.push_back(term(sign));
    }
    expect_sym("=");
    if (peek().kind != Tok::Int || peek().text != "0") error({"'0'"});
    ++pos_;
    if (terms.size() > 2)
      fail(ErrorKind::NonAdmissible, std::to_string(terms[0].at.line) + ":" +
                                         std::to_string(terms[0].at.col) +
                                         ": only monomial and binomial relations are supported");
    rels_.push_back(std::move(terms));
  }

  void finish() {
    std::vector<Arrow> arrows;
    {
      Quiver vq(vertices_, {});
      for (const auto& [id, s, t] : arrows_) {
        arrows.push_back({id.text, vq.vertex_index(s), vq.vertex_index(t)});
      }
    }
    spec_.quiver = Quiver(vertices_, std::move(arrows));
    const ff::Field f(spec_.field);
    for (auto& terms : rels_) {
      struct Resolved {
        Path path;
        std::uint32_t coeff;
      };
      std::vector<Resolved> res;
      for (auto& t : terms) {
        if (spec_.composition == Composition::RightToLeft) std::reverse(t.arrows.begin(), t.arrows.end());
        for (const auto& a : t.arrows)
          if (!spec_.quiver.find_arrow(a))
            fail(ErrorKind::NonComposable, std::to_string(t.at.line) + ":" + std::to_string(t.at.col) +
                                               ": unknown arrow '" + a + "'");
        Path p = make_path(spec_.quiver, t.arrows);
        if (p.length() < 2)
          fail(ErrorKind::NonAdmissible, std::to_string(t.at.line) + ":" + std::to_string(t.at.col) +
                                             ": relation path of length < 2");
        const auto c = f.reduce(t.coeff);
        // merge repeated paths
        bool merged = false;
        for (auto& r : res) {
          if (r.path == p) {
            r.coeff = f.add(r.coeff, c);
            merged = true;
          }
        }
        if (!merged) res.push_back({p, c});
      }
      if (res.size() == 2 &&
          (res[0].path.source != res[1].path.source || res[0].path.target != res[1].path.target))
        fail(ErrorKind::NonComposable, "binomial paths '" + path_to_string(spec_.quiver, res[0].path) +
                                           "' and '" + path_to_string(spec_.quiver, res[1].path) +
                                           "' are not parallel");
      std::erase_if(res, [](const Resolved& r) { return r.coeff == 0; });
      if (res.empty()) continue;
      if (res.size() == 1) {
        spec_.relations.monomials.push_back(res[0].path);
        continue;
      }
      if (path_less(spec_.quiver, res[0].path, res[1].path)) std::swap(res[0], res[1]);
      spec_.relations.binomials.push_back(
          {res[0].path, res[1].path, f.mul(res[1].coeff, f.inv(res[0].coeff))});
    }
  }

  struct RawArrow {
    Token id;
    std::string source;
    std::string target;
  };

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  AlgebraSpec spec_;
  std::vector<std::string> vertices_;
  std::vector<RawArrow> arrows_;
  std::vector<std::vector<RawTerm>> rels_;
};

std::string print_path(const AlgebraSpec& spec, const Path& p) {
  std::vector<int> arrows = p.arrows;
  if (spec.composition == Composition::RightToLeft) std::reverse(arrows.begin(), arrows.end());
  std::string out;
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    if (k) out += '*';
    out += spec.quiver.arrow(arrows[k]).id;
  }
  return out;
}

}  // namespace

AlgebraSpec parse_spec(std::string_view text, std::uint32_t default_field) {
  return Parser(text, default_field).run();
}

AlgebraPtr parse_algebra(std::string_view text, std::uint32_t default_field) {
  return Algebra::build(parse_spec(text, default_field));
}

std::string print_algebra(const Algebra& alg) {
  const auto& spec = alg.spec();
  const auto& q = spec.quiver;
  std::ostringstream out;
  out << "algebra " << spec.name << " {\n";
  out << "  field " << spec.field << ";\n";
  out << "  composition "
      << (spec.composition == Composition::LeftToRight ? "left_to_right" : "right_to_left") << ";\n";
  out << "  vertices";
  for (const auto& v : q.vertex_names()) out << ' ' << v;
  out << ";\n";
  for (const auto& a : q.arrows())
    out << "  arrow " << a.id << ": " << q.vertex_name(a.source) << " -> " << q.vertex_name(a.target) << ";\n";
  for (const auto& m : spec.relations.monomials) out << "  rel " << print_path(spec, m) << " = 0;\n";
  for (const auto& b : spec.relations.binomials)
    out << "  rel 1*" << print_path(spec, b.lead) << " + " << b.coeff << "*" << print_path(spec, b.other)
        << " = 0;\n";
  out << "  nilpotency " << alg.nilpotency() << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace qlab
