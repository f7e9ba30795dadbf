#include "qlab/bqa/strings.hpp"

#include <algorithm>
#include <sstream>

#include "qlab/error.hpp"

namespace qlab {

namespace {

int letter_from(const Quiver& q, const Letter& l) {
  return l.inverse ? q.arrow(l.arrow).target : q.arrow(l.arrow).source;
}
int letter_to(const Quiver& q, const Letter& l) {
  return l.inverse ? q.arrow(l.arrow).source : q.arrow(l.arrow).target;
}

// Vertex at every position 0..L of the walk.
std::vector<int> walk(const Quiver& q, const StringWord& w) {
  std::vector<int> v{w.letters.empty() ? w.start : letter_from(q, w.letters.front())};
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    const auto& l = w.letters[k];
    if (letter_from(q, l) != v.back())
      fail(ErrorKind::InvalidWord, "letter " + std::to_string(k + 1) + " does not continue the walk");
    if (k > 0 && w.letters[k - 1].arrow == l.arrow && w.letters[k - 1].inverse != l.inverse)
      fail(ErrorKind::InvalidWord, "letter " + std::to_string(k + 1) + " cancels its predecessor");
    v.push_back(letter_to(q, l));
  }
  return v;
}

void require_special_biserial(const Algebra& alg) {
  if (!is_special_biserial(alg))
    fail(ErrorKind::NotSpecialBiserial, "algebra '" + alg.name() + "' is not special biserial");
}

void require_relations(const Rep& m) {
  if (!m.satisfies_relations()) fail(ErrorKind::InvalidWord, "word passes through a relation");
}

}  // namespace

StringWord parse_word(const Algebra& alg, const std::string& text, const std::string& start_vertex) {
  const auto& q = alg.quiver();
  StringWord w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    Letter l;
    if (tok.size() > 1 && tok.back() == '-') {
      l.inverse = true;
      tok.pop_back();
    }
    const auto a = q.find_arrow(tok);
    if (!a) fail(ErrorKind::InvalidWord, "unknown arrow '" + tok + "'");
    l.arrow = *a;
    w.letters.push_back(l);
  }
  if (!start_vertex.empty()) {
    const auto v = q.find_vertex(start_vertex);
    if (!v) fail(ErrorKind::UnknownVertex, "unknown vertex '" + start_vertex + "'");
    w.start = *v;
    if (!w.letters.empty() && letter_from(q, w.letters.front()) != w.start)
      fail(ErrorKind::InvalidWord, "word does not start at vertex " + start_vertex);
  } else if (w.letters.empty()) {
    fail(ErrorKind::InvalidWord, "empty word needs a start vertex");
  } else {
    w.start = letter_from(q, w.letters.front());
  }
  walk(q, w);
  return w;
}

std::string word_to_string(const Algebra& alg, const StringWord& w) {
  if (w.letters.empty()) return "e_" + alg.quiver().vertex_name(w.start);
  std::string s;
  for (const auto& l : w.letters) {
    if (!s.empty()) s += ' ';
    s += alg.quiver().arrow(l.arrow).id;
    if (l.inverse) s += '-';
  }
  return s;
}

StringWord inverse_word(const Algebra& alg, const StringWord& w) {
  StringWord out;
  const auto v = walk(alg.quiver(), w);
  out.start = v.back();
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back({it->arrow, !it->inverse});
  return out;
}

bool is_special_biserial(const Algebra& alg) {
  const auto& q = alg.quiver();
  for (int v = 0; v < q.num_vertices(); ++v)
    if (q.out_arrows(v).size() > 2 || q.in_arrows(v).size() > 2) return false;
  for (int b = 0; b < q.num_arrows(); ++b) {
    const auto& ab = q.arrow(b);
    int before = 0, after = 0;
    for (int a : q.in_arrows(ab.source))
      if (!alg.normal_form(Path{q.arrow(a).source, ab.target, {a, b}}).empty()) ++before;
    for (int c : q.out_arrows(ab.target))
      if (!alg.normal_form(Path{ab.source, q.arrow(c).target, {b, c}}).empty()) ++after;
    if (before > 1 || after > 1) return false;
  }
  return true;
}

Rep string_module(const AlgebraPtr& alg, const StringWord& w) {
  require_special_biserial(*alg);
  const auto& q = alg->quiver();
  const auto v = walk(q, w);
  std::vector<std::size_t> dims(static_cast<std::size_t>(q.num_vertices()), 0);
  std::vector<std::size_t> slot;  // coordinate of position k inside its vertex space
  for (int x : v) slot.push_back(dims[static_cast<std::size_t>(x)]++);
  std::vector<Matrix> mats;
  for (int a = 0; a < q.num_arrows(); ++a)
    mats.emplace_back(dims[static_cast<std::size_t>(q.arrow(a).target)], dims[static_cast<std::size_t>(q.arrow(a).source)],
                      alg->prime());
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    const auto& l = w.letters[k];
    auto& m = mats[static_cast<std::size_t>(l.arrow)];
    if (l.inverse)
      m(slot[k], slot[k + 1]) = 1;
    else
      m(slot[k + 1], slot[k]) = 1;
  }
  Rep out(alg, std::move(dims), std::move(mats));
  require_relations(out);
  return out;
}

StringWord canonical_rotation(const Algebra& alg, const StringWord& band) {
  const auto& q = alg.quiver();
  const auto L = band.letters.size();
  if (L == 0) fail(ErrorKind::InvalidWord, "empty band");
  std::vector<Letter> best = band.letters;
  for (std::size_t s = 1; s < L; ++s) {
    std::vector<Letter> r(band.letters.begin() + static_cast<std::ptrdiff_t>(s), band.letters.end());
    r.insert(r.end(), band.letters.begin(), band.letters.begin() + static_cast<std::ptrdiff_t>(s));
    best = std::min(best, r);
  }
  StringWord out;
  out.letters = std::move(best);
  out.start = letter_from(q, out.letters.front());
  return out;
}

Rep band_module(const AlgebraPtr& alg, const StringWord& band, std::uint32_t lambda, int m) {
  require_special_biserial(*alg);
  const auto& q = alg->quiver();
  const auto p = alg->prime();
  if (lambda % p == 0) fail(ErrorKind::ZeroParameter, "band parameter must be nonzero");
  if (m < 1) fail(ErrorKind::BadParameter, "band multiplicity must be positive");
  const auto v = walk(q, band);
  const auto L = band.letters.size();
  if (v.back() != v.front()) fail(ErrorKind::InvalidWord, "band is not closed");
  const auto& first = band.letters.front();
  const auto& last = band.letters.back();
  if (L > 1 && first.arrow == last.arrow && first.inverse != last.inverse)
    fail(ErrorKind::InvalidWord, "band is not cyclically reduced");
  const bool direct = std::any_of(band.letters.begin(), band.letters.end(), [](auto& l) { return !l.inverse; });
  const bool inverse = std::any_of(band.letters.begin(), band.letters.end(), [](auto& l) { return l.inverse; });
  if (!direct || !inverse) fail(ErrorKind::InvalidWord, "band needs direct and inverse letters");
  for (std::size_t d = 1; d < L; ++d) {
    if (L % d) continue;
    bool periodic = true;
    for (std::size_t k = 0; k < L && periodic; ++k) periodic = band.letters[k] == band.letters[(k + d) % L];
    if (periodic) fail(ErrorKind::InvalidWord, "band is a proper power");
  }

  const StringWord c = canonical_rotation(*alg, band);
  const auto cv = walk(q, c);
  std::size_t closing = L;
  for (std::size_t k = 0; k < L; ++k)
    if (!c.letters[k].inverse) closing = k;

  const auto mm = static_cast<std::size_t>(m);
  std::vector<std::size_t> dims(static_cast<std::size_t>(q.num_vertices()), 0);
  std::vector<std::size_t> slot;
  for (std::size_t k = 0; k < L; ++k) {
    slot.push_back(dims[static_cast<std::size_t>(cv[k])]);
    dims[static_cast<std::size_t>(cv[k])] += mm;
  }
  std::vector<Matrix> mats;
  for (int a = 0; a < q.num_arrows(); ++a)
    mats.emplace_back(dims[static_cast<std::size_t>(q.arrow(a).target)], dims[static_cast<std::size_t>(q.arrow(a).source)], p);
  Matrix jordan = Matrix::identity(mm, p);
  for (std::size_t i = 0; i < mm; ++i) {
    jordan(i, i) = lambda % p;
    if (i + 1 < mm) jordan(i, i + 1) = 1;
  }
  for (std::size_t k = 0; k < L; ++k) {
    const auto& l = c.letters[k];
    const std::size_t here = slot[k], next = slot[(k + 1) % L];
    const Matrix block = k == closing ? jordan : Matrix::identity(mm, p);
    auto& mat = mats[static_cast<std::size_t>(l.arrow)];
    if (l.inverse)
      mat.set_block(here, next, block);
    else
      mat.set_block(next, here, block);
  }
  Rep out(alg, std::move(dims), std::move(mats));
  require_relations(out);
  return out;
}

}  // namespace qlab
