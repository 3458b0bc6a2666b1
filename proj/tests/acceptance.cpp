// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "family.hpp"
#include "generators.hpp"
#include "laws.hpp"
#include "qmmp/classifier.hpp"
#include "qmmp/geometry.hpp"
#include "qmmp/series.hpp"
#include "qmmp/simples.hpp"
#include "qmmp/stability.hpp"

using namespace qmmp;

namespace {

// Wall-clock limits, seconds.
constexpr double kWallCountLimit = 5.0;
constexpr double kOracleLimit = 120.0;
constexpr double kExampleLimit = 1.0;  // per example
constexpr double kIdentityLimit = 5.0;
constexpr double kEllipticLimit = 1.0;
constexpr double kSeriesLimit = 5.0;
constexpr double kLawsLimit = 600.0;

// Series window.
constexpr std::int64_t kQMin = -8;
constexpr std::int64_t kQMax = 8;
constexpr std::int64_t kTCap = 2;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void report(int id, const std::string& name, double limit, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double dt = seconds_since(t0);
  if (dt >= limit) o.fail("took " + std::to_string(dt) + " s, limit " + std::to_string(limit) + " s");
  if (!o.ok) ++failures;
  std::printf("%s %d %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), dt, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
  std::fflush(stdout);
}

Outcome wall_count() {
  Outcome o;
  testgen::Rng rng(50);
  for (int c = 0; c < 50; ++c) {
    const auto n = static_cast<std::size_t>(testgen::uniform(rng, 1, 4));
    const Quiver q = testgen::random_quiver(rng, n, 2, 1);
    const DimVector m = testgen::random_primitive(rng, q.size(), 4);
    std::uint64_t prod = 1;
    for (std::size_t i = 0; i < m.size(); ++i) prod *= static_cast<std::uint64_t>(m[i] + 1);
    const auto got = enumerate_walls(m).size();
    if (got != (prod - 2) / 2) o.fail("m=" + to_string(m) + " gave " + std::to_string(got));
  }
  return o;
}

Outcome oracle_family() {
  Outcome o;
  const auto t = testgen::run_family(testgen::family_quivers(60, 7), {2, 3});
  if (t.soundness_violations) o.fail(std::to_string(t.soundness_violations) + " soundness violations: " + t.first_problem);
  if (t.certificate_failures) o.fail(std::to_string(t.certificate_failures) + " certificate failures: " + t.first_problem);
  if (t.instances == 0) o.fail("no instances enumerated");
  o.detail = o.ok ? std::to_string(t.instances) + " instances, " + std::to_string(t.representations) +
                        " representations, " + std::to_string(t.skipped) + " over cap, " +
                        std::to_string(t.positives_witnessed) + "/" + std::to_string(t.positives) + " positives witnessed"
                  : o.detail;
  return o;
}

Quiver elliptic_fiber(int r) {
  std::vector<std::pair<VertexId, VertexId>> e{{"1", "1"}, {"1", "1"}, {"1", "1"}, {"2", "2"}, {"2", "2"}};
  for (int k = 0; k < r; ++k) {
    e.emplace_back("1", "2");
    e.emplace_back("2", "1");
  }
  return Quiver({"1", "2"}, e);
}

Outcome worked_examples() {
  Outcome o;
  auto timed = [&](const std::string& name, const std::function<bool()>& f) {
    const auto t0 = Clock::now();
    const bool ok = f();
    const double dt = seconds_since(t0);
    if (!ok) o.fail(name);
    if (dt >= kExampleLimit) o.fail(name + " over " + std::to_string(kExampleLimit) + " s");
  };
  const Quiver cycle({"1", "2"}, {{"1", "2"}, {"2", "1"}});
  timed("cyclic (1,1) has a simple", [&] { return has_simple(cycle, DimVector({1, 1})).exists; });
  timed("cyclic (2,2) has none", [&] { return !has_simple(cycle, DimVector({2, 2})).exists; });
  timed("(4,1) divisorial", [] { return classify_two_vertex(4, 1).kind == DiagramKind::DivisorialContraction; });
  timed("elliptic fiber flop", [] {
    for (int r = 1; r <= 3; ++r)
      if (classify_symmetric_flop(elliptic_fiber(r), DimVector({1, 1})).kind != DiagramKind::GeneralizedFlop) return false;
    return true;
  });
  timed("grassmannian (4,2) m=3 MFS", [] {
    const auto c = classify_extended_flip({Quiver({"1"}, {}), {4}, {2}, 0, "0"}, DimVector({3}));
    return c.kind == DiagramKind::GeneralizedMFS && c.dims && !c.dims->second && c.find("minus_side") == "empty";
  });
  return o;
}

Outcome dimension_identities() {
  Outcome o;
  for (std::int64_t a = 0; a <= 8; ++a)
    for (std::int64_t b = 0; b <= 8; ++b)
      for (std::int64_t c = 0; c <= 12; ++c) {
        const auto [p, m] = local_model_dims(a, b, c);
        if (p - m != 2 * (a - b) || p + m != 2 * (c - 1))
          o.fail("local model (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
      }
  for (std::int64_t g = 0; g <= 10; ++g)
    for (std::int64_t n = -5; n <= 5; ++n) {
      const auto r = abel_jacobi_model(g, n, std::max<std::int64_t>(0, -n));
      if (r.dims != std::pair<std::int64_t, std::int64_t>{n + g - 1, -n + g - 1})
        o.fail("abel-jacobi g=" + std::to_string(g) + " n=" + std::to_string(n));
    }
  return o;
}

Outcome elliptic() {
  Outcome o;
  const auto lines = elliptic_walls(1, 1, 1, 1, -10, 10);
  bool found = false;
  for (const auto& l : lines) {
    // proportional to 4x - y = 1
    if (l.coef_x == 4 * l.rhs && l.coef_y == -l.rhs && l.rhs != 0) found = true;
    const auto [dx, dy] = l.direction();
    if (dx * 4 != dy * 1) o.fail("line n1=" + std::to_string(l.n1) + " not along (1, 4)");
  }
  if (lines.empty()) o.fail("no lines");
  if (!found) o.fail("4x - y = 1 missing");
  return o;
}

Outcome series() {
  Outcome o;
  const std::vector<Integer> expect{1, 1, 3, 6, 13, 24, 48, 86, 160, 282};
  if (mac_mahon_coefficients(1, 9) != expect) o.fail("MacMahon coefficients");

  const ClassSet one{{"C"}, {Rational(1)}};
  SeriesTable nt;
  std::vector<WallDatum> walls;
  for (std::int64_t n = kQMax; n >= 1; --n) {
    nt.push_back({Weight{1}, n, n - 3});
    nt.push_back({Weight{1}, -n, n - 3});
    walls.push_back(WallDatum{Rational(n), {{Weight{1}, n, Rational(n - 3)}}});
  }
  if (!telescope_check(one, nt, {}, walls, kQMin, kQMax, kTCap).ok) o.fail("telescope on consistent data");
  auto bad = walls;
  bad[kQMax - 5].contributions[0].value += 1;  // the wall at n = 5
  const auto r = telescope_check(one, nt, {}, bad, kQMin, kQMax, kTCap);
  if (r.ok || !r.first || r.first->n != 5 || r.first->beta != Weight{1}) o.fail("corruption not localized at q^5");

  const auto unit = TruncatedSeries::one(1, kQMin, kQMax, kTCap);
  for (const auto& w : walls)
    if (series_mul(wall_factor(w, one, kQMin, kQMax, kTCap), wall_factor(inverse_wall(w), one, kQMin, kQMax, kTCap)) != unit)
      o.fail("wall factor at t=" + to_string(w.t) + " does not invert");

  TruncatedSeries p(1, kQMin, kQMax, kTCap);
  p.add(Weight{0}, 0, 1);
  p.add(Weight{1}, 1, 2);
  p.add(Weight{1}, -3, -1);
  p.add(Weight{2}, 2, 5);
  if (dtpt_transform(p, 0) != p) o.fail("dtpt with e=0");
  return o;
}

Outcome invariant_laws() {
  Outcome o;
  int count = 0;
  for (const auto& law : laws::all_laws()) {
    const auto r = laws::run_law(law);
    ++count;
    if (!r.passed())
      o.fail(law.module + ": " + law.name + " (" + std::to_string(r.failures) + "/" + std::to_string(r.cases) +
             ") " + r.first_failure);
  }
  if (o.ok) o.detail = std::to_string(count) + " laws";
  return o;
}

}  // namespace

int main() {
  report(1, "wall-count law on 50 generated pairs", kWallCountLimit, wall_count);
  report(2, "simple criterion against the finite-field oracle", kOracleLimit, oracle_family);
  report(3, "worked example classifications", kExampleLimit * 5, worked_examples);
  report(4, "dimension identities", kIdentityLimit, dimension_identities);
  report(5, "elliptic wall lines", kEllipticLimit, elliptic);
  report(6, "series engine checks on [-8,8], t_cap 2", kSeriesLimit, series);
  report(7, "invariant laws", kLawsLimit, invariant_laws);
  return failures == 0 ? 0 : 1;
}
