#include "regover/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace regover {

// ---------------------------------------------------------------------------
// Overpartition

namespace {

bool canonical_less(const Part& x, const Part& y) {
  if (x.size != y.size) return x.size > y.size;
  return x.overlined && !y.overlined;
}

std::strong_ordering compare_parts(const Part& x, const Part& y) {
  if (auto c = x.size <=> y.size; c != 0) return c;
  return x.overlined <=> y.overlined;
}

}  // namespace

Overpartition Overpartition::from_parts(std::vector<Part> parts) {
  std::stable_sort(parts.begin(), parts.end(), canonical_less);
  Overpartition p;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].size == 0) throw std::invalid_argument("overpartition parts must be positive");
    if (parts[i].overlined && i > 0 && parts[i - 1].size == parts[i].size)
      throw std::invalid_argument("at most one overlined copy per part size (size " +
                                  std::to_string(parts[i].size) + ")");
    p.weight_ += parts[i].size;
  }
  p.parts_ = std::move(parts);
  return p;
}

unsigned Overpartition::multiplicity(unsigned size, bool overlined) const {
  return static_cast<unsigned>(std::count(parts_.begin(), parts_.end(), Part{size, overlined}));
}

std::string Overpartition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ',';
    os << parts_[i].size;
    if (parts_[i].overlined) os << "̄";
  }
  os << ')';
  return os.str();
}

std::strong_ordering operator<=>(const Overpartition& a, const Overpartition& b) {
  return std::lexicographical_compare_three_way(a.parts_.begin(), a.parts_.end(), b.parts_.begin(),
                                                b.parts_.end(), compare_parts);
}

// ---------------------------------------------------------------------------
// Constraints and enumeration

Constraint Constraint::regular(unsigned k, bool no_ones, bool no_twos) {
  if (k < 2) throw std::invalid_argument("k-regular constraint needs k >= 2");
  return Constraint{k, no_ones, no_twos};
}

bool Constraint::admits(const Overpartition& p) const {
  for (const Part& part : p.parts()) {
    if (k_regular && part.size % *k_regular == 0) return false;
    if (!part.overlined && forbid_ones && part.size == 1) return false;
    if (!part.overlined && forbid_twos && part.size == 2) return false;
  }
  return true;
}

namespace {

bool size_allowed(unsigned s, const Constraint& c) { return !(c.k_regular && s % *c.k_regular == 0); }

bool plain_forbidden(unsigned s, const Constraint& c) {
  return (s == 1 && c.forbid_ones) || (s == 2 && c.forbid_twos);
}

// Recursion over part sizes in decreasing order. For each size the choices
// are: skip it, or take `mult` copies with or without the overline.
struct Enumerator {
  const Constraint& c;
  const std::function<void(const Overpartition&)>* visit = nullptr;
  std::vector<Part> buf;
  std::uint64_t count = 0;

  void run(unsigned remaining, unsigned max_size) {
    if (remaining == 0) {
      ++count;
      if (visit) (*visit)(Overpartition::from_parts(buf));
      return;
    }
    for (unsigned s = std::min(remaining, max_size); s >= 1; --s) {
      if (!size_allowed(s, c)) continue;
      const bool no_plain = plain_forbidden(s, c);
      for (unsigned mult = remaining / s; mult >= 1; --mult) {
        for (bool over : {true, false}) {
          const unsigned plain = over ? mult - 1 : mult;
          if (no_plain && plain > 0) continue;
          const std::size_t mark = buf.size();
          if (over) buf.push_back({s, true});
          buf.insert(buf.end(), plain, Part{s, false});
          run(remaining - s * mult, s - 1);
          buf.resize(mark);
        }
      }
    }
  }
};

}  // namespace

void for_each_overpartition(unsigned n, const Constraint& c,
                            const std::function<void(const Overpartition&)>& visit) {
  Enumerator e{c, &visit, {}, 0};
  e.run(n, n);
}

std::uint64_t count_overpartitions(unsigned n, const Constraint& c) {
  Enumerator e{c, nullptr, {}, 0};
  e.run(n, n);
  return e.count;
}

std::vector<Overpartition> enumerate(unsigned n, const Constraint& c) {
  std::vector<Overpartition> out;
  for_each_overpartition(n, c, [&](const Overpartition& p) { out.push_back(p); });
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// The injections. Notation: 1^x appends x non-overlined 1's.

namespace {

void append_copies(std::vector<Part>& v, unsigned size, unsigned count, bool first_overlined = false) {
  for (unsigned i = 0; i < count; ++i) v.push_back({size, first_overlined && i == 0});
}

Overpartition make(std::vector<Part> parts) { return Overpartition::from_parts(std::move(parts)); }

void require_domain(const Overpartition& lambda, const Constraint& c, unsigned weight, const char* map) {
  if (lambda.weight() != weight || !c.admits(lambda))
    throw PreconditionError(std::string(map) + ": " + lambda.to_string() + " is not in the domain");
}

// lambda = (lambda_1..lambda_t, 1̄^r, 1^s) with every lambda_j > 1.
struct TrailingOnes {
  std::vector<Part> body;
  unsigned r = 0;
  unsigned s = 0;
};

TrailingOnes split_ones(const Overpartition& lambda) {
  TrailingOnes t;
  for (const Part& p : lambda.parts()) {
    if (p.size > 1)
      t.body.push_back(p);
    else if (p.overlined)
      ++t.r;
    else
      ++t.s;
  }
  return t;
}

}  // namespace

SplitPair f2_map(const Overpartition& lambda, unsigned k) {
  if (k < 2) throw PreconditionError("f2_map: k must be >= 2");
  const unsigned n = lambda.weight();
  if (n < 2) throw PreconditionError("f2_map: weight must be a+1 with a >= 1");
  require_domain(lambda, Constraint::regular(k, false, true), n, "f2_map");

  auto [body, r, s] = split_ones(lambda);
  const Overpartition one = make({{1, false}});
  const Overpartition one_bar = make({{1, true}});

  if (s >= 1) {
    append_copies(body, 1, r, true);
    append_copies(body, 1, s - 1);
    return {make(std::move(body)), one};
  }
  if (r == 1) return {make(std::move(body)), one_bar};

  // s = 0, r = 0: the smallest part lambda_t > 1 is broken into 1's.
  const Part last = body.back();
  body.pop_back();
  if (last.overlined) {
    append_copies(body, 1, 1, true);
    append_copies(body, 1, last.size - 2);
  } else {
    append_copies(body, 1, last.size - 1);
  }
  return {make(std::move(body)), one_bar};
}

SplitPair f3_map(const Overpartition& lambda, unsigned k) {
  if (k < 2) throw PreconditionError("f3_map: k must be >= 2");
  const unsigned n = lambda.weight();
  if (n < 3) throw PreconditionError("f3_map: weight must be a+2 with a >= 1");
  require_domain(lambda, Constraint::regular(k, false, true), n, "f3_map");

  auto [body, r, s] = split_ones(lambda);
  const Overpartition two = make({{2, false}});
  const Overpartition two_bar = make({{2, true}});
  const Overpartition one_one = make({{1, false}, {1, false}});
  const Overpartition one_bar_one = make({{1, true}, {1, false}});

  if (s >= 2) {
    append_copies(body, 1, r, true);
    append_copies(body, 1, s - 2);
    return {make(std::move(body)), two};
  }
  if (s == 1 && r == 1) return {make(std::move(body)), two_bar};

  // Remaining cases break up lambda_t.
  const Part last = body.back();
  body.pop_back();
  if (s == 1) {  // r = 0
    if (last.overlined) {
      append_copies(body, 1, 1, true);
      append_copies(body, 1, last.size - 2);
    } else {
      append_copies(body, 1, last.size - 1);
    }
    return {make(std::move(body)), one_one};
  }
  if (r == 0) {  // s = 0
    if (last == Part{2, true}) return {make(std::move(body)), one_one};
    if (last.overlined) {
      append_copies(body, 1, 1, true);
      append_copies(body, 1, last.size - 3);
    } else {
      // Printed with "s = 1"; only s = 0 balances the weights.
      append_copies(body, 1, last.size - 2);
    }
    return {make(std::move(body)), one_bar_one};
  }
  // s = 0, r = 1
  if (last.overlined) {
    append_copies(body, 1, 1, true);
    append_copies(body, 1, last.size - 2);
  } else {
    append_copies(body, 1, last.size - 1);
  }
  return {make(std::move(body)), two_bar};
}

SplitPair f1_map(const Overpartition& lambda, unsigned k, unsigned a, unsigned b) {
  if (k < 2) throw PreconditionError("f1_map: k must be >= 2");
  if (a < 1 || b < 1) throw PreconditionError("f1_map: a, b must be >= 1");
  require_domain(lambda, Constraint::regular(k, true, true), a + b, "f1_map");
  if (k < 5) throw UnsupportedCase("f1_map: no explicit map for k = " + std::to_string(k));

  const auto& parts = lambda.parts();
  const std::size_t t = parts.size();

  // i = max{ j : lambda_j + ... + lambda_t >= b } (1-based).
  std::size_t i = 0;
  unsigned suffix = 0;
  for (std::size_t j = t; j >= 1; --j) {
    suffix += parts[j - 1].size;
    if (suffix >= b) {
      i = j;
      break;
    }
  }
  const unsigned tail = suffix - parts[i - 1].size;  // lambda_{i+1} + ... + lambda_t
  const unsigned x = b - tail;
  const Part li = parts[i - 1];
  const unsigned y = li.size - x;

  std::vector<Part> head(parts.begin(), parts.begin() + static_cast<std::ptrdiff_t>(i - 1));
  std::vector<Part> right(parts.begin() + static_cast<std::ptrdiff_t>(i), parts.end());
  append_copies(right, 1, x);

  const bool even = k % 2 == 0;
  const unsigned m = k / 2;
  auto result = [&](std::vector<Part> left) -> SplitPair { return {make(std::move(left)), make(right)}; };

  if (y == 0) {
    std::vector<Part> whole_tail(parts.begin() + static_cast<std::ptrdiff_t>(i - 1), parts.end());
    return {make(std::move(head)), make(std::move(whole_tail))};
  }

  if (y == 1) {
    if (li.overlined) {
      head.push_back({1, true});
      return result(std::move(head));
    }
    if (i < 2) throw UnsupportedCase("f1_map: case y = 1 needs lambda_{i-1}, but i = 1");
    const Part prev = head.back();
    head.pop_back();
    if (prev.size >= k + 2) {
      head.push_back({prev.size - k, prev.overlined});
      if (even) {
        append_copies(head, 2, m);
        head.push_back({1, true});
      } else {
        append_copies(head, 2, m + 1);
      }
      return result(std::move(head));
    }
    if (prev.size < 3 || prev.size > k + 1)
      throw UnsupportedCase("f1_map: lambda_{i-1} = " + std::to_string(prev.size) + " outside the case table");
    const unsigned c = prev.size / 2;
    if (prev.size % 2 == 1) {
      // 2c + 1 -> 2̄, 2^c   or   2^{c+1}
      append_copies(head, 2, c + 1, prev.overlined);
    } else {
      // 2c -> 2̄, 2^{c-1}, 1̄   or   2^c, 1̄
      append_copies(head, 2, c, prev.overlined);
      head.push_back({1, true});
    }
    return result(std::move(head));
  }

  if (y == k) {
    if (even) {
      append_copies(head, m, 2, li.overlined);
      return result(std::move(head));
    }
    if (li.size >= k + 2) {
      head.push_back({m + 1, li.overlined});
      head.push_back({m, false});
      return result(std::move(head));
    }
    // lambda_i = k + 1 forces x = 1 and the right side ends with a single 1.
    if (x != 1) throw std::logic_error("f1_map: y = k with lambda_i = k+1 must have x = 1");
    append_copies(head, 2, m, li.overlined);
    head.push_back({1, true});
    return result(std::move(head));
  }

  if (y % k != 0) {
    // y = j (mod k), 2 <= j <= k-1, or y = 1 (mod k) with y >= k+1.
    head.push_back({y, li.overlined});
    return result(std::move(head));
  }

  // y = 0 (mod k), y >= 2k; lambda_i = j (mod k).
  const unsigned j = li.size % k;
  if (j <= k - 2) {
    head.push_back({y - (k - j), li.overlined});
    head.push_back({k - j, false});
  } else {
    head.push_back({y - 1, li.overlined});
    head.push_back({1, true});
  }
  return result(std::move(head));
}

// ---------------------------------------------------------------------------
// Lemma verification

Lemma parse_lemma(const std::string& id) {
  static const std::map<std::string, Lemma> names = {
      {"2.1", Lemma::split_no_ones_no_twos}, {"split_no_ones_no_twos", Lemma::split_no_ones_no_twos},
      {"2.2", Lemma::add_one},               {"add_one", Lemma::add_one},
      {"2.3", Lemma::add_two},               {"add_two", Lemma::add_two},
      {"2.4", Lemma::add_general},           {"add_general", Lemma::add_general},
  };
  auto it = names.find(id);
  if (it == names.end()) throw std::invalid_argument("unknown lemma id '" + id + "' (expected 2.1 .. 2.4)");
  return it->second;
}

std::string lemma_id(Lemma l) {
  switch (l) {
    case Lemma::split_no_ones_no_twos: return "2.1";
    case Lemma::add_one: return "2.2";
    case Lemma::add_two: return "2.3";
    case Lemma::add_general: return "2.4";
  }
  return "?";
}

bool VerificationReport::passed() const {
  if (!holds) return false;
  if (mode == VerificationMode::injection) {
    if (!injective.value_or(false) || !in_codomain.value_or(false)) return false;
    if (strict && !unattained_witness) return false;
  }
  return true;
}

namespace {

struct MapSpec {
  std::function<SplitPair(const Overpartition&)> map;
  Constraint domain;
  unsigned domain_weight;
  Constraint left, right;
  unsigned left_weight, right_weight;
  std::function<bool(const SplitPair&)> stated_form;  // shape of the stated unattained element
};

void check_injection(const MapSpec& spec, VerificationReport& rep) {
  std::set<SplitPair> image;
  bool injective = true, in_codomain = true;
  for_each_overpartition(spec.domain_weight, spec.domain, [&](const Overpartition& lam) {
    SplitPair out = spec.map(lam);
    const bool ok = out.left.weight() == spec.left_weight && spec.left.admits(out.left) &&
                    out.right.weight() == spec.right_weight && spec.right.admits(out.right);
    if (!ok && in_codomain) {
      in_codomain = false;
      rep.notes.push_back("image outside codomain: " + lam.to_string() + " -> " + out.to_string());
    }
    if (!image.insert(std::move(out)).second && injective) {
      injective = false;
      rep.notes.push_back("collision at " + lam.to_string());
    }
  });
  rep.injective = injective;
  rep.in_codomain = in_codomain;

  if (!spec.stated_form) return;
  std::optional<SplitPair> fallback;
  const auto lefts = enumerate(spec.left_weight, spec.left);
  const auto rights = enumerate(spec.right_weight, spec.right);
  for (const auto& l : lefts) {
    for (const auto& r : rights) {
      SplitPair cand{l, r};
      if (image.count(cand)) continue;
      if (spec.stated_form(cand)) {
        rep.unattained_witness = cand;
        rep.witness_form = "stated";
        return;
      }
      if (!fallback) fallback = cand;
    }
  }
  if (fallback) {
    rep.unattained_witness = fallback;
    rep.witness_form = "search";
  }
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw PreconditionError(msg);
}

}  // namespace

VerificationReport verify_lemma(Lemma lemma, unsigned k, unsigned a, unsigned b) {
  require(k >= 2, "verify_lemma: k must be >= 2");
  require(a >= 1, "verify_lemma: a must be >= 1");
  VerificationReport rep;
  rep.lemma = lemma;
  rep.k = k;
  rep.a = a;
  rep.b = b;

  const Constraint no_twos = Constraint::regular(k, false, true);
  const Constraint no_ones = Constraint::regular(k, true, false);
  const Constraint both = Constraint::regular(k, true, true);
  const Constraint plain = Constraint::regular(k);

  switch (lemma) {
    case Lemma::split_no_ones_no_twos: {
      require(b >= 1, "lemma 2.1 needs b >= 1");
      rep.strict = false;
      rep.lhs = count_overpartitions(a, no_ones) * count_overpartitions(b, no_twos);
      rep.rhs = count_overpartitions(a + b, both);
      rep.holds = rep.lhs >= rep.rhs;
      if (k < 5) {
        rep.notes.push_back("explicit map not available for k = " + std::to_string(k) +
                            "; verified by exhaustive cardinality comparison only");
      } else if (a == 1) {
        rep.notes.push_back("a = 1 forces i = 1, where the case table needs a missing lambda_{i-1}; "
                            "verified by exhaustive cardinality comparison only");
      } else {
        rep.mode = VerificationMode::injection;
        check_injection({[=](const Overpartition& l) { return f1_map(l, k, a, b); }, both, a + b, no_ones,
                         no_twos, a, b, nullptr},
                        rep);
      }
      break;
    }
    case Lemma::add_one: {
      require(b == 1, "lemma 2.2 has b = 1");
      rep.strict = true;
      rep.lhs = count_overpartitions(a, no_twos) * count_overpartitions(1, plain);
      rep.rhs = count_overpartitions(a + 1, no_twos);
      rep.holds = rep.lhs > rep.rhs;
      rep.mode = VerificationMode::injection;
      auto form = [](const SplitPair& p) {
        // (lambda_1..lambda_t, 1; 1̄) with lambda_t > 1
        return p.right.parts() == std::vector<Part>{{1, true}} && p.left.multiplicity(1, false) == 1 &&
               p.left.multiplicity(1, true) == 0;
      };
      check_injection({[=](const Overpartition& l) { return f2_map(l, k); }, no_twos, a + 1, no_twos, plain, a,
                       1, form},
                      rep);
      break;
    }
    case Lemma::add_two: {
      require(b == 2, "lemma 2.3 has b = 2");
      rep.strict = true;
      rep.lhs = count_overpartitions(a, no_twos) * count_overpartitions(2, plain);
      rep.rhs = count_overpartitions(a + 2, no_twos);
      rep.holds = rep.lhs > rep.rhs;
      rep.mode = VerificationMode::injection;
      auto form = [](const SplitPair& p) {
        // (lambda_1..lambda_t; 1̄, 1) with lambda_t > 1
        return p.right.parts() == std::vector<Part>{{1, true}, {1, false}} && !p.left.empty() &&
               p.left.parts().back().size > 1;
      };
      check_injection({[=](const Overpartition& l) { return f3_map(l, k); }, no_twos, a + 2, no_twos, plain, a,
                       2, form},
                      rep);
      break;
    }
    case Lemma::add_general: {
      require(b >= 3, "lemma 2.4 needs b >= 3");
      require(a + b >= k + 1, "lemma 2.4 needs a + b >= k + 1");
      rep.strict = true;
      rep.lhs = count_overpartitions(a, no_twos) * count_overpartitions(b, plain);
      rep.rhs = count_overpartitions(a + b, no_twos);
      rep.holds = rep.lhs > rep.rhs;
      rep.notes.push_back("no explicit map; verified by exhaustive cardinality comparison");
      break;
    }
  }
  if (!rep.holds) rep.notes.push_back("claimed inequality fails");
  return rep;
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["lemma"] = lemma_id(r.lemma);
  j["k"] = r.k;
  j["a"] = r.a;
  j["b"] = r.b;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["strict"] = r.strict;
  j["holds"] = r.holds;
  j["mode"] = r.mode == VerificationMode::injection ? "injection" : "cardinality";
  j["injective"] = r.injective ? nlohmann::json(*r.injective) : nlohmann::json(nullptr);
  j["in_codomain"] = r.in_codomain ? nlohmann::json(*r.in_codomain) : nlohmann::json(nullptr);
  if (r.unattained_witness) {
    j["unattained_witness"] = {{"left", r.unattained_witness->left.to_string()},
                               {"right", r.unattained_witness->right.to_string()},
                               {"form", r.witness_form}};
  } else {
    j["unattained_witness"] = nullptr;
  }
  j["passed"] = r.passed();
  j["notes"] = r.notes;
  return j;
}

}  // namespace regover
