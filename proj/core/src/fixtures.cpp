#include "ikep/fixtures.hpp"

#include <algorithm>

namespace ikep {

namespace {

Bound fin(long long v) { return Bound::finite(v); }

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError("fixture: " + message);
}

Instance make_fig1() {
  // h1,h2 | j1,j2 = 0,1 | 2,3
  std::vector<Arc> arcs{{0, 1}, {1, 0}, {2, 3}, {0, 2}, {3, 0}};
  GammaParams g(2, fin(3), {fin(2), fin(2)}, {fin(1), fin(2)}, {fin(1), fin(1)});
  return Instance(4, {0, 0, 1, 1}, std::move(arcs), std::move(g));
}

Instance make_fig2a() {
  // u1,u2 | v1,v2 = 0,1 | 2,3; cycles <u1,u2,v1> and <v1,v2>
  std::vector<Arc> arcs{{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 2}};
  GammaParams g(2, fin(3), {fin(0), fin(2)}, {fin(2), fin(1)}, {fin(1), fin(1)});
  return Instance(4, {0, 0, 1, 1}, std::move(arcs), std::move(g));
}

Instance make_fig2b() {
  // u1..u6 = 0..5, v1..v5 = 6..10; C = <u1,u2,u3,u4,v1,v2>, D = <u1,v3,u5,v4,u6,v5>
  std::vector<Arc> arcs{{0, 1}, {1, 2}, {2, 3}, {3, 6}, {6, 7}, {7, 0},
                        {0, 8}, {8, 4}, {4, 9}, {9, 5}, {5, 10}, {10, 0}};
  GammaParams g(2, fin(6), {fin(0), fin(0)}, {fin(4), fin(2)}, {fin(3), fin(3)});
  return Instance(11, {0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1}, std::move(arcs), std::move(g));
}

Instance make_fig2c(long long r, long long icl) {
  require(r >= 2, "fig2c needs r >= 2");
  require(icl >= 2, "fig2c needs icl >= 2");
  // National cycle u1..ur; u_i (i < r) also sits on a private international
  // cycle of length icl through icl-1 country-1 vertices.
  std::vector<Arc> arcs;
  std::vector<int> countries(r, 0);
  for (long long i = 0; i < r; ++i) arcs.push_back({static_cast<int>(i), static_cast<int>((i + 1) % r)});
  int next = static_cast<int>(r);
  for (long long i = 0; i < r - 1; ++i) {
    int prev = static_cast<int>(i);
    for (long long k = 0; k < icl - 1; ++k) {
      countries.push_back(1);
      arcs.push_back({prev, next});
      prev = next++;
    }
    arcs.push_back({prev, static_cast<int>(i)});
  }
  GammaParams g(2, fin(icl), {fin(r), fin(0)}, {fin(1), fin(icl - 1)}, {fin(1), fin(1)});
  return Instance(next, std::move(countries), std::move(arcs), std::move(g));
}

Instance make_thm5(long long n, long long L) {
  require(n >= 1, "thm5 needs n >= 1");
  require(L >= 3, "thm5 needs L >= 3");
  // n international cycles sharing only the country-n vertex x (= vertex 0).
  // Cycle i: x, L vertices of country i-1, then twice one vertex from every
  // other inner country.
  std::vector<int> countries{static_cast<int>(n)};
  std::vector<Arc> arcs;
  int next = 1;
  for (long long i = 0; i < n; ++i) {
    std::vector<int> run_countries;
    for (long long k = 0; k < L; ++k) run_countries.push_back(static_cast<int>(i));
    for (int pass = 0; pass < 2; ++pass) {
      for (long long j = 0; j < n; ++j) {
        if (j != i) run_countries.push_back(static_cast<int>(j));
      }
    }
    int prev = 0;
    for (int country : run_countries) {
      countries.push_back(country);
      arcs.push_back({prev, next});
      prev = next++;
    }
    arcs.push_back({prev, 0});
  }
  long long icl = 1 + L + 2 * (n - 1);
  std::vector<Bound> ncl(n + 1, fin(0)), iss(n + 1, fin(L)), isn(n + 1, fin(2));
  GammaParams g(static_cast<int>(n) + 1, fin(icl), std::move(ncl), std::move(iss),
                std::move(isn));
  return Instance(next, std::move(countries), std::move(arcs), std::move(g));
}

Instance make_ex3(long long L) {
  require(L >= 2, "ex3 needs L >= 2");
  // u1..uL = 0..L-1, v1 = L, u_{L+1} = L+1, v2 = L+2, u_{L+2} = L+3.
  int v1 = static_cast<int>(L), uL1 = v1 + 1, v2 = v1 + 2, uL2 = v1 + 3;
  std::vector<int> countries(L + 4, 0);
  countries[v1] = countries[v2] = 1;
  std::vector<Arc> arcs;
  for (long long i = 0; i + 1 < L; ++i) arcs.push_back({static_cast<int>(i), static_cast<int>(i + 1)});
  arcs.push_back({static_cast<int>(L - 1), v1});
  arcs.push_back({v1, uL1});
  arcs.push_back({uL1, v2});
  arcs.push_back({v2, uL2});
  arcs.push_back({uL2, 0});
  arcs.push_back({v1, 0});
  arcs.push_back({uL2, v1});
  GammaParams g(2, fin(L + 4), {fin(0), fin(0)}, {fin(L), fin(1)}, {fin(2), fin(2)});
  return Instance(static_cast<int>(L) + 4, std::move(countries), std::move(arcs), std::move(g));
}

Instance make_fig5b() {
  // u1..u4 = 0..3, v1..v3 = 4..6; 6-cycle plus chords so that exactly one
  // other 6-cycle exists.
  std::vector<Arc> arcs{{0, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 6}, {6, 0},
                        {5, 1}, {1, 6}, {0, 4}, {4, 3}};
  GammaParams g(2, fin(6), {fin(0), fin(0)}, {fin(4), fin(2)}, {fin(3), fin(3)});
  return Instance(7, {0, 0, 0, 0, 1, 1, 1}, std::move(arcs), std::move(g));
}

Instance make_fig7() {
  // h1..h4 = 0..3 (country H), j1..j6 = 4..9 (country J).
  std::vector<Arc> arcs{
      {5, 4},  // j2 -> j1
      {4, 7},  // j1 -> j4
      {7, 6},  // j4 -> j3
      {6, 5},  // j3 -> j2
      {8, 7},  // j5 -> j4
      {9, 8},  // j6 -> j5
      {7, 9},  // j4 -> j6
      {2, 3},  // h3 -> h4
      {3, 1},  // h4 -> h2
      {9, 2},  // j6 -> h3
      {1, 9},  // h2 -> j6
      {4, 0},  // j1 -> h1
      {0, 6},  // h1 -> j3
  };
  GammaParams g(2, fin(4), {fin(0), fin(4)}, {fin(3), fin(3)}, {fin(1), fin(1)});
  return Instance(10, {0, 0, 0, 0, 1, 1, 1, 1, 1, 1}, std::move(arcs), std::move(g));
}

Instance make_thm7a(long long r, long long cint) {
  require(r >= 2, "thm7a needs r >= 2");
  require(cint >= 2, "thm7a needs cint >= 2");
  // National r-cycle; every one of its vertices also sits on a private
  // international cycle of length cint.
  std::vector<Arc> arcs;
  std::vector<int> countries(r, 0);
  for (long long i = 0; i < r; ++i) arcs.push_back({static_cast<int>(i), static_cast<int>((i + 1) % r)});
  int next = static_cast<int>(r);
  for (long long i = 0; i < r; ++i) {
    int prev = static_cast<int>(i);
    for (long long k = 0; k < cint - 1; ++k) {
      countries.push_back(1);
      arcs.push_back({prev, next});
      prev = next++;
    }
    arcs.push_back({prev, static_cast<int>(i)});
  }
  GammaParams g(2, fin(cint), {fin(r), fin(0)}, {fin(1), fin(cint - 1)}, {fin(1), fin(1)});
  return Instance(next, std::move(countries), std::move(arcs), std::move(g));
}

Instance make_thm7b(long long dstar) {
  require(dstar >= 2, "thm7b needs dstar >= 2");
  // C0 = <u1,u2,u3,v>; dstar-1 alternating 4-cycles through v.
  std::vector<int> countries{0, 0, 0, 1};
  std::vector<Arc> arcs{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  int next = 4;
  for (long long k = 0; k < dstar - 1; ++k) {
    int a = next++, b = next++, c = next++;
    countries.push_back(0);
    countries.push_back(1);
    countries.push_back(0);
    arcs.push_back({3, a});
    arcs.push_back({a, b});
    arcs.push_back({b, c});
    arcs.push_back({c, 3});
  }
  GammaParams g(2, fin(4), {fin(0), fin(0)}, {fin(3), fin(1)}, {fin(2), fin(2)});
  return Instance(next, std::move(countries), std::move(arcs), std::move(g));
}

}  // namespace

Instance build_fixture(const std::string& name, const FixtureParams& params) {
  if (name == "fig1") return make_fig1();
  if (name == "fig2a") return make_fig2a();
  if (name == "fig2b") return make_fig2b();
  if (name == "fig2c") return make_fig2c(params.get("r", 3), params.get("icl", 3));
  if (name == "thm5") return make_thm5(params.get("n", 3), params.get("L", 10));
  if (name == "ex3") return make_ex3(params.get("L", 5));
  if (name == "fig5b") return make_fig5b();
  if (name == "fig7") return make_fig7();
  if (name == "thm7a") return make_thm7a(params.get("r", 2), params.get("cint", 4));
  if (name == "thm7b") return make_thm7b(params.get("dstar", 4));
  throw ValidationError("unknown fixture: " + name);
}

std::vector<std::string> fixture_names() {
  return {"fig1", "fig2a", "fig2b", "fig2c", "thm5", "ex3", "fig5b", "fig7", "thm7a", "thm7b"};
}

}  // namespace ikep
