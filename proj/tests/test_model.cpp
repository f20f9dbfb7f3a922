#include <doctest.h>

#include <algorithm>

#include "ikep/fixtures.hpp"
#include "ikep/model.hpp"
#include "ikep/rng.hpp"
#include "ikep/solver.hpp"

using namespace ikep;

TEST_SUITE_BEGIN("model");

TEST_CASE("bounds order totally with unbounded on top") {
  CHECK(Bound::finite(3) < Bound::unbounded());
  CHECK(Bound::finite(0) < Bound::finite(1));
  CHECK(Bound::unbounded() == Bound::unbounded());
  CHECK(Bound::unbounded().allows(1'000'000));
  CHECK_FALSE(Bound::finite(2).allows(3));
  CHECK(Bound::finite(7).finite_or(99) == 7);
  CHECK(Bound::unbounded().finite_or(99) == 99);
  CHECK(Bound::unbounded().to_string() == "inf");
  CHECK_THROWS_AS(Bound::unbounded().value(), PreconditionError);
  CHECK_THROWS_AS(Bound::finite(-1), ValidationError);
}

TEST_CASE("cycle canonicalization") {
  CHECK(canonicalize_cycle({2, 0, 1}).vertices() == std::vector<VertexId>{0, 1, 2});
  CHECK(canonicalize_cycle({0, 1}).vertices() == std::vector<VertexId>{0, 1});
  CHECK(canonicalize_cycle({5, 3, 4}).vertices() == std::vector<VertexId>{3, 4, 5});
  CHECK_THROWS_AS(canonicalize_cycle({1, 1, 2}), ValidationError);
  CHECK_THROWS_AS(canonicalize_cycle({4}), ValidationError);
}

TEST_CASE("canonicalization is idempotent and rotation invariant") {
  DetRng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int len = 2 + static_cast<int>(rng.below(6));
    std::vector<VertexId> seq;
    while (static_cast<int>(seq.size()) < len) {
      VertexId v = static_cast<VertexId>(rng.below(50));
      bool fresh = true;
      for (VertexId u : seq) fresh = fresh && u != v;
      if (fresh) seq.push_back(v);
    }
    Cycle base(seq);
    std::rotate(seq.begin(), seq.begin() + rng.below(seq.size()), seq.end());
    CHECK(Cycle(seq) == base);
    CHECK(Cycle(base.vertices()) == base);
  }
}

TEST_CASE("gamma parameter validation") {
  CHECK_THROWS_AS(GammaParams(2, Bound::finite(1), {Bound::finite(2), Bound::finite(2)},
                              {Bound::finite(1), Bound::finite(1)},
                              {Bound::finite(1), Bound::finite(1)}),
                  ValidationError);
  CHECK_THROWS_AS(GammaParams(1, Bound::finite(3), {Bound::finite(1)}, {Bound::finite(1)},
                              {Bound::finite(1)}),
                  ValidationError);
  // iss = 0 is representable (a country may decline international exchange);
  // validate() flags it instead of rejecting.
  GammaParams declined(1, Bound::finite(3), {Bound::finite(2)}, {Bound::finite(0)},
                       {Bound::finite(1)});
  CHECK(declined.validate().size() == 1);
}

TEST_CASE("instance construction rejects structural defects") {
  GammaParams g(1, Bound::finite(0), {Bound::finite(2)}, {Bound::finite(1)}, {Bound::finite(1)});
  CHECK_THROWS_AS(Instance(2, {0, 0}, {{0, 0}}, g), ValidationError);          // self-loop
  CHECK_THROWS_AS(Instance(2, {0, 0}, {{0, 1}, {0, 1}}, g), ValidationError);  // duplicate
  CHECK_THROWS_AS(Instance(2, {0, 1}, {}, g), ValidationError);                // bad country
  Instance ok(2, {0, 0}, {{0, 1}, {1, 0}}, g);
  CHECK(ok.has_arc(0, 1));
  CHECK_FALSE(ok.has_arc(1, 2));
}

TEST_CASE("empty countries warn but are permitted") {
  GammaParams g(2, Bound::finite(3), {Bound::finite(2), Bound::finite(2)},
                {Bound::finite(1), Bound::finite(1)}, {Bound::finite(1), Bound::finite(1)});
  Instance inst(2, {0, 0}, {{0, 1}, {1, 0}}, g);
  CHECK(inst.validate().size() == 1);
}

TEST_CASE("segment decomposition") {
  Instance fig1 = build_fixture("fig1");
  Cycle c({0, 2, 3});  // h1, j1, j2
  auto segs = segment_decomposition(c, fig1);
  REQUIRE(segs.size() == 2);
  CHECK(segs[0] == Segment{0, 1});
  CHECK(segs[1] == Segment{1, 2});

  auto national = segment_decomposition(Cycle({0, 1}), fig1);
  REQUIRE(national.size() == 1);
  CHECK(national[0] == Segment{0, 2});

  // Alternating 4-cycle A,B,A,B keeps four unit segments.
  GammaParams g(2, Bound::finite(4), {Bound::finite(0), Bound::finite(0)},
                {Bound::finite(1), Bound::finite(1)}, {Bound::finite(2), Bound::finite(2)});
  Instance alt(4, {0, 1, 0, 1}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, g);
  auto segs4 = segment_decomposition(Cycle({0, 1, 2, 3}), alt);
  CHECK(segs4.size() == 4);
  for (const Segment& s : segs4) CHECK(s.size == 1);

  // The wrap-around merges first and last runs of the same country.
  Instance wrap(4, {0, 0, 1, 0}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, g);
  auto merged = segment_decomposition(Cycle({0, 1, 2, 3}), wrap);
  REQUIRE(merged.size() == 2);
  CHECK(merged[0] == Segment{0, 3});
  CHECK(merged[1] == Segment{1, 1});

  CHECK_THROWS_AS(segment_decomposition(Cycle({0, 99}), fig1), ValidationError);
}

TEST_CASE("gamma cycle checks on the two-country pool") {
  Instance fig1 = build_fixture("fig1");
  CHECK(is_gamma_cycle(Cycle({0, 2, 3}), fig1));  // <h1,j1,j2>
  CHECK(is_gamma_cycle(Cycle({0, 1}), fig1));     // <h1,h2> with ncl = 2

  Instance declined = fig1.with_gamma(fig1.gamma().with_iss(0, Bound::finite(0)));
  GammaCheck check = check_gamma_cycle(Cycle({0, 2, 3}), declined);
  CHECK_FALSE(check.ok);
  CHECK(check.violation == GammaViolation::SegmentSize);

  Instance tight = fig1.with_gamma(fig1.gamma().with_icl(Bound::finite(2)));
  CHECK(check_gamma_cycle(Cycle({0, 2, 3}), tight).violation == GammaViolation::Length);

  Instance one_each = fig1.with_gamma(fig1.gamma().with_ncl(0, Bound::finite(0)));
  CHECK(check_gamma_cycle(Cycle({0, 1}), one_each).violation == GammaViolation::Length);
}

TEST_CASE("violation order is length, segment size, segment count") {
  // An alternating 4-cycle violating everything reports the length first.
  GammaParams g(2, Bound::finite(2), {Bound::finite(0), Bound::finite(0)},
                {Bound::finite(0), Bound::finite(0)}, {Bound::finite(1), Bound::finite(1)});
  Instance alt(4, {0, 1, 0, 1}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, g);
  CHECK(check_gamma_cycle(Cycle({0, 1, 2, 3}), alt).violation == GammaViolation::Length);
  Instance longer = alt.with_gamma(g.with_icl(Bound::finite(4)));
  CHECK(check_gamma_cycle(Cycle({0, 1, 2, 3}), longer).violation == GammaViolation::SegmentSize);
  Instance fat = longer.with_gamma(
      longer.gamma().with_iss(0, Bound::finite(1)).with_iss(1, Bound::finite(1)));
  CHECK(check_gamma_cycle(Cycle({0, 1, 2, 3}), fat).violation == GammaViolation::SegmentCount);
}

TEST_CASE("utility counts arcs into a country") {
  Instance fig1 = build_fixture("fig1");
  CyclePacking merged({Cycle({0, 2, 3})});
  CHECK(utility(merged, 0, fig1) == 1);
  CHECK(utility(merged, 1, fig1) == 2);
  CHECK(utility(CyclePacking{}, 0, fig1) == 0);
  CHECK(utility(CyclePacking{}, 1, fig1) == 0);
  CHECK_THROWS_AS(utility(merged, 9, fig1), ValidationError);

  Instance fig2b = build_fixture("fig2b");
  Cycle c({0, 1, 2, 3, 6, 7});
  CHECK(utility(c, 0, fig2b) == 4);
  CHECK(utility(c, 1, fig2b) == 2);
}

TEST_CASE("utilities over all countries sum to the size") {
  for (const char* name : {"fig1", "fig2a", "fig2b", "ex3", "fig7", "thm7b"}) {
    Instance inst = build_fixture(name);
    CyclePacking best = max_gamma_packing_exact(inst).packing;
    int total = 0;
    for (int i = 0; i < inst.country_count(); ++i) total += utility(best, i, inst);
    CHECK(total == best.size());
  }
}

TEST_CASE("gamma feasibility is monotone in the parameters") {
  Instance fig2b = build_fixture("fig2b");
  std::vector<Cycle> cycles{Cycle({0, 1, 2, 3, 6, 7}), Cycle({0, 8, 4, 9, 5, 10})};
  DetRng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    GammaParams loose(2, Bound::finite(4 + rng.below(4)),
                      {Bound::finite(0), Bound::finite(0)},
                      {Bound::finite(1 + rng.below(5)), Bound::finite(1 + rng.below(5))},
                      {Bound::finite(1 + rng.below(4)), Bound::finite(1 + rng.below(4))});
    int who = static_cast<int>(rng.below(2));
    GammaParams tight = loose;
    switch (rng.below(3)) {
      case 0: tight = loose.with_icl(Bound::finite(loose.icl.value() - 1)); break;
      case 1:
        tight = loose.with_iss(
            who, Bound::finite(std::max<std::int64_t>(0, loose.iss[who].value() - 1)));
        break;
      default:
        tight = loose.with_isn(
            who, Bound::finite(std::max<std::int64_t>(1, loose.isn[who].value() - 1)));
        break;
    }
    for (const Cycle& c : cycles) {
      bool was = is_gamma_cycle(c, fig2b.with_gamma(loose));
      bool now = is_gamma_cycle(c, fig2b.with_gamma(tight));
      if (now) CHECK(was);  // tightening never turns false into true
    }
  }
}

TEST_CASE("packings reject overlaps and report size") {
  CHECK_THROWS_AS(CyclePacking({Cycle({0, 1}), Cycle({1, 2})}), ValidationError);
  CyclePacking p({Cycle({4, 5}), Cycle({0, 1, 2})});
  CHECK(p.size() == 5);
  CHECK(p.covers(4));
  CHECK_FALSE(p.covers(3));
  CHECK(p.cycles().front().vertices().front() == 0);  // sorted canonically
}

TEST_SUITE_END();
