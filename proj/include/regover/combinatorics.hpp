#pragma once

// Explicit overpartitions, constrained enumeration, and the injections used
// to prove strict log-subadditivity of p̄ₖ(n).

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace regover {

struct Part {
  unsigned size;
  bool overlined;
  friend bool operator==(const Part&, const Part&) = default;
};

/// An overpartition in canonical order: sizes non-increasing, and among
/// equal sizes the (single) overlined copy comes first.
class Overpartition {
 public:
  Overpartition() = default;

  /// Sorts into canonical order. Throws std::invalid_argument on a zero part
  /// or two overlined copies of one size.
  static Overpartition from_parts(std::vector<Part> parts);

  const std::vector<Part>& parts() const { return parts_; }
  unsigned weight() const { return weight_; }
  bool empty() const { return parts_.empty(); }

  /// Number of copies of `size` with the given overline flag.
  unsigned multiplicity(unsigned size, bool overlined) const;

  /// Human-readable form, e.g. "(3̄,1,1)"; overlined parts use a combining macron.
  std::string to_string() const;

  friend bool operator==(const Overpartition& a, const Overpartition& b) { return a.parts_ == b.parts_; }
  friend std::strong_ordering operator<=>(const Overpartition& a, const Overpartition& b);

 private:
  std::vector<Part> parts_;
  unsigned weight_ = 0;
};

/// Membership filter for restricted overpartition sets. forbid_ones and
/// forbid_twos exclude NON-overlined copies only; 1̄ and 2̄ remain allowed.
struct Constraint {
  std::optional<unsigned> k_regular;  // no part divisible by k
  bool forbid_ones = false;
  bool forbid_twos = false;

  static Constraint regular(unsigned k, bool no_ones = false, bool no_twos = false);
  bool admits(const Overpartition& p) const;
};

/// Calls `visit` once per overpartition of n satisfying c, largest parts
/// chosen first. Only the object currently visited is alive.
void for_each_overpartition(unsigned n, const Constraint& c,
                            const std::function<void(const Overpartition&)>& visit);

/// Brute-force count by enumeration (no generating function involved).
std::uint64_t count_overpartitions(unsigned n, const Constraint& c);

/// All overpartitions of n satisfying c, sorted ascending by operator<=>
/// (lexicographic over parts, each part ordered by size then overline flag).
std::vector<Overpartition> enumerate(unsigned n, const Constraint& c);

struct SplitPair {
  Overpartition left;
  Overpartition right;
  friend bool operator==(const SplitPair&, const SplitPair&) = default;
  friend auto operator<=>(const SplitPair& a, const SplitPair& b) {
    if (auto c = a.left <=> b.left; c != 0) return c;
    return a.right <=> b.right;
  }
  std::string to_string() const { return left.to_string() + ";" + right.to_string(); }
};

/// Raised when an input lies outside the region where a map is defined.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for inputs the printed case analysis does not cover.
class UnsupportedCase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// P̄ₖ(a+b | no 1's, no 2's) -> P̄ₖ(a | no 1's) x P̄ₖ(b | no 2's).
/// Odd k >= 5 uses the six-case map; even k >= 6 applies the even-k
/// overrides first. k in {2, 3, 4} and a = 1 throw UnsupportedCase.
SplitPair f1_map(const Overpartition& lambda, unsigned k, unsigned a, unsigned b);

/// P̄ₖ(a+1 | no 2's) -> P̄ₖ(a | no 2's) x P̄ₖ(1).
SplitPair f2_map(const Overpartition& lambda, unsigned k);

/// P̄ₖ(a+2 | no 2's) -> P̄ₖ(a | no 2's) x P̄ₖ(2).
SplitPair f3_map(const Overpartition& lambda, unsigned k);

enum class Lemma {
  split_no_ones_no_twos,  // "2.1": |P̄ₖ(a|no 1's)| |P̄ₖ(b|no 2's)| >= |P̄ₖ(a+b|no 1's, no 2's)|
  add_one,                // "2.2": |P̄ₖ(a|no 2's)| p̄ₖ(1) > |P̄ₖ(a+1|no 2's)|
  add_two,                // "2.3": |P̄ₖ(a|no 2's)| p̄ₖ(2) > |P̄ₖ(a+2|no 2's)|
  add_general,            // "2.4": |P̄ₖ(a|no 2's)| p̄ₖ(b) > |P̄ₖ(a+b|no 2's)|
};

/// Parses "2.1".."2.4" (also accepts the enumerator names).
Lemma parse_lemma(const std::string& id);
std::string lemma_id(Lemma l);

enum class VerificationMode { injection, cardinality };

struct VerificationReport {
  Lemma lemma;
  unsigned k = 0, a = 0, b = 0;
  std::uint64_t lhs = 0;  // size of the product side
  std::uint64_t rhs = 0;  // size of the single side
  bool strict = false;    // the lemma claims a strict inequality
  bool holds = false;     // the claimed (strict or weak) inequality holds
  VerificationMode mode = VerificationMode::cardinality;
  std::optional<bool> injective;     // set in injection mode
  std::optional<bool> in_codomain;   // every image satisfies the codomain constraints
  std::optional<SplitPair> unattained_witness;
  std::string witness_form;          // "stated" or "search" when a witness exists
  std::vector<std::string> notes;

  /// Everything the lemma and its map claim was confirmed.
  bool passed() const;
};

/// Exhaustively checks one lemma instance. Throws PreconditionError when
/// (k, a, b) lies outside the lemma's stated range.
VerificationReport verify_lemma(Lemma lemma, unsigned k, unsigned a, unsigned b);

nlohmann::json to_json(const VerificationReport& r);

}  // namespace regover
