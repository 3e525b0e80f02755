#include <set>

#include "doctest.h"
#include "regover/combinatorics.hpp"
#include "regover/qseries.hpp"

using namespace regover;

namespace {

Overpartition op(std::vector<Part> parts) { return Overpartition::from_parts(std::move(parts)); }
Part p(unsigned s) { return {s, false}; }
Part o(unsigned s) { return {s, true}; }

}  // namespace

TEST_CASE("Overpartition canonical form") {
  const auto x = op({p(1), o(3), p(3), o(1)});
  CHECK(x.parts() == std::vector<Part>{o(3), p(3), o(1), p(1)});
  CHECK(x.weight() == 8);
  CHECK(x.multiplicity(3, false) == 1);
  CHECK(x.to_string() == "(3̄,3,1̄,1)");
  CHECK_THROWS_AS(op({o(2), o(2)}), std::invalid_argument);
  CHECK_THROWS_AS(op({p(0)}), std::invalid_argument);
  CHECK(Overpartition().weight() == 0);
}

TEST_CASE("enumerate small cases") {
  const auto e0 = enumerate(0, Constraint{});
  REQUIRE(e0.size() == 1);
  CHECK(e0[0].empty());
  const auto e1 = enumerate(1, Constraint{});
  REQUIRE(e1.size() == 2);
  CHECK(e1[0] == op({p(1)}));
  CHECK(e1[1] == op({o(1)}));
  // overpartitions of 3: 8 in total
  CHECK(enumerate(3, Constraint{}).size() == 8);
  // duplicate-free and constraint-respecting
  for (int k = 2; k <= 5; ++k) {
    const auto c = Constraint::regular(k, true, true);
    const auto all = enumerate(12, c);
    std::set<std::string> seen;
    for (const auto& x : all) {
      CHECK(c.admits(x));
      CHECK(x.weight() == 12);
      CHECK(seen.insert(x.to_string()).second);
    }
    CHECK(std::is_sorted(all.begin(), all.end()));
  }
  CHECK(Constraint::regular(3, true, true).admits(op({o(1), o(2), p(4)})));
  CHECK_FALSE(Constraint::regular(2, false, true).admits(op({p(2)})));
  CHECK_FALSE(Constraint::regular(3, false, false).admits(op({o(3)})));
}

TEST_CASE("enumeration counts agree with the series for k = 2..9, n <= 25") {
  for (int k = 2; k <= 9; ++k) {
    const auto s = pk_series(k, 25);
    for (unsigned n = 0; n <= 25; ++n) CHECK(s[n] == count_overpartitions(n, Constraint::regular(k)));
  }
}

TEST_CASE("f2 cases") {
  // s >= 1
  auto r = f2_map(op({p(1), p(1)}), 2);
  CHECK(r.left == op({p(1)}));
  CHECK(r.right == op({p(1)}));
  r = f2_map(op({p(5), o(1), p(1), p(1)}), 2);
  CHECK(r.left == op({p(5), o(1), p(1)}));
  CHECK(r.right == op({p(1)}));
  // s = 0, r = 0, last part overlined
  r = f2_map(op({o(3)}), 2);
  CHECK(r.left == op({o(1), p(1)}));
  CHECK(r.right == op({o(1)}));
  // s = 0, r = 0, last part plain
  r = f2_map(op({p(5), p(3)}), 2);
  CHECK(r.left == op({p(5), p(1), p(1)}));
  CHECK(r.right == op({o(1)}));
  // s = 0, r = 1
  r = f2_map(op({p(5), o(1)}), 2);
  CHECK(r.left == op({p(5)}));
  CHECK(r.right == op({o(1)}));
  CHECK_THROWS_AS(f2_map(op({p(2), p(1)}), 3), PreconditionError);
  CHECK_THROWS_AS(f2_map(op({p(4)}), 2), PreconditionError);
}

TEST_CASE("f3 cases") {
  auto r = f3_map(op({p(3), p(1), p(1)}), 2);
  CHECK(r.left == op({p(3)}));
  CHECK(r.right == op({p(2)}));
  r = f3_map(op({p(5), o(1), p(1)}), 2);
  CHECK(r.left == op({p(5)}));
  CHECK(r.right == op({o(2)}));
  r = f3_map(op({o(3), o(1), p(1)}), 4);
  CHECK(r.left == op({o(3)}));
  CHECK(r.right == op({o(2)}));
  // s = 0, r = 0, plain last part: λ_t - 2 ones remain
  r = f3_map(op({p(5)}), 3);
  CHECK(r.left == op({p(1), p(1), p(1)}));
  CHECK(r.right == op({o(1), p(1)}));
}

TEST_CASE("f1 printed cases") {
  // y = 0: lambda_i .. lambda_t moves right unchanged
  auto r = f1_map(op({p(7), p(5), p(3)}), 9, 7, 8);
  CHECK(r.left == op({p(7)}));
  CHECK(r.right == op({p(5), p(3)}));
  // y = k = 7 with lambda_i = 11 >= k+2 overlined: left ends (4̄, 3)
  r = f1_map(op({o(11)}), 7, 7, 4);
  CHECK(r.left == op({o(4), p(3)}));
  CHECK(r.right == op({p(1), p(1), p(1), p(1)}));
  // even k: y = k gives (m̄, m)
  r = f1_map(op({o(9), p(3)}), 6, 6, 6);
  CHECK(r.left == op({o(3), p(3)}));
  CHECK_THROWS_AS(f1_map(op({p(5)}), 3, 2, 3), UnsupportedCase);
  CHECK_THROWS_AS(f1_map(op({p(1), p(4)}), 5, 2, 3), PreconditionError);
}

TEST_CASE("injectivity on small horizons") {
  for (unsigned k = 2; k <= 9; ++k)
    for (unsigned a = 1; a <= 10; ++a) {
      auto r2 = verify_lemma(Lemma::add_one, k, a, 1);
      CHECK(r2.injective.value());
      CHECK(r2.in_codomain.value());
      auto r3 = verify_lemma(Lemma::add_two, k, a, 2);
      CHECK(r3.injective.value());
    }
  for (unsigned k = 5; k <= 9; ++k)
    for (unsigned a = 2; a <= 8; ++a)
      for (unsigned b = 1; a + b <= 12; ++b) {
        auto r = verify_lemma(Lemma::split_no_ones_no_twos, k, a, b);
        CHECK(r.mode == VerificationMode::injection);
        CHECK(r.passed());
      }
}

TEST_CASE("verify_lemma reports") {
  // a = 6 admits a left side (5,1) of the unattained form
  const auto r = verify_lemma(Lemma::add_one, 2, 6, 1);
  CHECK(r.lhs > r.rhs);
  CHECK(r.passed());
  CHECK(r.witness_form == "stated");
  // weak inequality at a = b = 1 for k = 2
  const auto w = verify_lemma(Lemma::split_no_ones_no_twos, 2, 1, 1);
  CHECK_FALSE(w.strict);
  CHECK(w.lhs >= w.rhs);
  CHECK(w.mode == VerificationMode::cardinality);
  // cardinality-only route for k = 3 carries a note
  const auto c3 = verify_lemma(Lemma::split_no_ones_no_twos, 3, 2, 2);
  CHECK(c3.mode == VerificationMode::cardinality);
  CHECK_FALSE(c3.notes.empty());
  // p̄₃(2)·p̄₃(1) > p̄₃(3)
  CHECK(pk(3, 2) * pk(3, 1) > pk(3, 3));
  CHECK_THROWS_AS(verify_lemma(Lemma::add_one, 2, 3, 2), PreconditionError);
  CHECK_THROWS_AS(verify_lemma(Lemma::add_general, 5, 1, 3), PreconditionError);
  CHECK(parse_lemma("2.3") == Lemma::add_two);
  CHECK_THROWS_AS(parse_lemma("3.1"), std::invalid_argument);
  const auto j = to_json(r);
  for (const char* key : {"lemma", "k", "a", "b", "lhs", "rhs", "strict", "injective", "unattained_witness"})
    CHECK(j.contains(key));
}

TEST_CASE("known failures of the printed claims are reported, not hidden") {
  // k = 2: the set of weight-2 overpartitions with no plain 1's and no plain 2's
  // is {2̄, 1̄+?}: only 2̄ is 2-divisible, so |P̄₂(2|no 1's)| = 0.
  const auto z = verify_lemma(Lemma::split_no_ones_no_twos, 2, 2, 1);
  CHECK(z.lhs == 0);
  CHECK_FALSE(z.holds);
  // equality at a = 2 for add_one when k != 3
  const auto e = verify_lemma(Lemma::add_one, 5, 2, 1);
  CHECK(e.lhs == e.rhs);
  CHECK_FALSE(e.passed());
  // f3 emits 2̄ on the right for k = 2, outside the 2-regular codomain
  const auto f = verify_lemma(Lemma::add_two, 2, 7, 2);
  CHECK_FALSE(f.in_codomain.value());
}
