#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlab/ar/ar.hpp"
#include "qlab/io/json_io.hpp"

namespace qlab {

// Iso classes of indecomposables, deduplicated by fingerprint and isomorphism test.
class IsoSet {
 public:
  // Returns the index of the class (new or existing).
  std::size_t insert(const Rep& m, bool* fresh = nullptr);
  std::optional<std::size_t> find(const Rep& m) const;
  bool contains(const Rep& m) const { return find(m).has_value(); }
  const std::vector<Rep>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }

 private:
  std::vector<Rep> items_;
  std::vector<Fingerprint> fps_;
};

// Non-projective indecomposables of a representation-finite algebra, gathered by knitting
// from every simple module. `complete` certifies that all knitted components closed up.
struct Universe {
  std::vector<Rep> modules;
  bool complete = false;
};
Universe knit_universe(const AlgebraPtr& alg, const KnitBounds& bounds = {});

// Middles (projectives stripped) of the triangles X -> Y -> Z -> over all classes
// in stHom(Omega Z, X), split class included. Errors: CapExceeded (p^d > sweep_cap).
std::vector<Rep> cone_middles(const Rep& z, const Rep& x, std::size_t sweep_cap = 1000000);

struct ClosureState {
  std::vector<Rep> generators;
  std::vector<std::vector<Rep>> levels;  // levels[n-1] = indecomposables of (S)_n
  std::size_t cap = 0;
  bool saturated = false;
  // Least level containing m, if any.
  std::optional<std::size_t> level_of(const Rep& m) const;
};

// (S)_n = (S)_{n-1} * (S u {0}); the left term ranges over level members and sums of two.
ClosureState closure(const std::vector<Rep>& s, std::size_t cap, const Universe* universe = nullptr,
                     std::size_t sweep_cap = 1000000);

struct Ell {
  std::optional<std::size_t> value;  // empty: diverges beyond cap
  std::size_t cap = 0;
  bool diverges() const noexcept { return !value.has_value(); }
};
Ell ell(const std::vector<Rep>& s, const Rep& x, std::size_t cap, const Universe* universe = nullptr);

struct SystemFlags {
  bool semibrick = false;
  std::optional<bool> wsms;                // needs a universe
  std::optional<bool> sms;                 // needs a complete universe
  std::optional<bool> maximal_orthogonal;  // wsms and no tau-fixed member
  std::vector<std::string> notes;
};
// sms_required: raise UniverseIncomplete instead of leaving the sms flag empty.
SystemFlags classify_system(const std::vector<Rep>& s, const Universe* universe, bool sms_required = false);

// All sms of a certified representation-finite algebra, members sorted by fingerprint,
// systems in lexicographic order. Errors: UniverseIncomplete.
std::vector<std::vector<Rep>> enumerate_sms(const Universe& universe, std::size_t cap = 16);

// ---- ladders and certificates ----

enum class LadderMode { Theorem1, Theorem2 };
std::string to_string(LadderMode m);

struct StratLadder {
  const TubeInfo* tube = nullptr;
  LadderMode mode = LadderMode::Theorem1;
  int base = 1;                 // i
  std::vector<int> descent;     // j_0 = n > j_1 > ... > j_a (theorem2)
  // Quasi-length data of M_l: M_l = Omega(X_{ladder_index(l)}(ladder_length(l))).
  int index_of(int l) const;
  int length_of(int l) const;
  int first() const { return mode == LadderMode::Theorem1 ? 1 : 0; }
};

// Descent recovered from s by the wing scan. Errors: HypothesisUnmet (X_i(n) not in s).
std::vector<int> recover_descent(const TubeInfo& t, int i, const std::vector<Rep>& s);

struct CertificateEntry {
  int l = 0;
  std::size_t member = 0;  // index into the system
  std::size_t stable_dim = 0;
  std::vector<int> cocone;  // ladder indices l' of the summands of N (when stable_dim == 1)
};

struct Certificate {
  std::string algebra_dsl;
  LadderMode mode = LadderMode::Theorem1;
  int base = 1;
  int rank = 0;
  int depth = 0;
  std::vector<int> descent;
  std::vector<Rep> system;
  std::vector<std::pair<int, Rep>> ladder;  // (l, M_l)
  std::vector<CertificateEntry> entries;
  std::string conclusion;
};

// Errors: DepthExceeded, ConditionFailed.
Certificate main_strat_certify(const StratLadder& ladder, const std::vector<Rep>& s, int depth);

// Canonical JSON with the SHA-256 of the body under "sha256".
std::string certificate_to_json(const Certificate& c);

struct ReplayResult {
  bool ok = false;
  std::string reason;
};
// Rebuilds algebra and modules from the text alone and re-verifies every claim.
ReplayResult replay_certificate(const std::string& text);

// ---- lemma registry ----

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct LemmaRow {
  std::string what;
  long expected = 0;
  long got = 0;
  bool ok = true;
};

struct LemmaReport {
  std::string id;
  std::string range;
  Verdict verdict = Verdict::Inconclusive;
  int depth = 0;
  std::size_t checked = 0;
  std::size_t hypothesis_unmet = 0;
  std::vector<LemmaRow> rows;
  std::string note;
  Json to_json() const;
};

struct LemmaBounds {
  int max_r = 0;  // 0: 2n + 2
  int min_r = 1;
};

const std::vector<std::string>& lemma_ids();
// Errors: NotFound (unknown id), DepthExceeded.
LemmaReport verify_lemma(const TubeInfo& t, const std::string& id, const LemmaBounds& bounds = {});

struct TheoremReport {
  std::size_t in_tube = 0;
  std::vector<int> quasi_lengths;  // of the members lying in the tube
  bool certified_sms = false;
  bool conclusion_holds = true;  // both theorems' conclusions on this data
  std::optional<Certificate> certificate;
  std::string summary;
};
TheoremReport theorem_check(const std::vector<Rep>& s, const TubeInfo& t, const Universe* universe = nullptr,
                            int depth = 6);

}  // namespace qlab
