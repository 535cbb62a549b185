#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/errors.hpp"
#include "rmtlab/stats.hpp"

using namespace rmtlab;

namespace {

double invert(const std::function<double(double)>& cdf, double p, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("KS statistic of exact quantiles is half a step") {
  for (int n : {1, 7, 100, 1000}) {
    std::vector<double> u;
    for (int i = 1; i <= n; ++i) {
      u.push_back((i - 0.5) / n);
    }
    CHECK(ks_statistic(u, [](double x) { return x; }) == doctest::Approx(0.5 / n).epsilon(1e-12));
  }
  const int n = 500;
  std::vector<double> q;
  for (int i = 1; i <= n; ++i) {
    q.push_back(invert(oracle::gue_cdf, (i - 0.5) / n, 0.0, 10.0));
  }
  CHECK(ks_statistic(q, oracle::gue_cdf) == doctest::Approx(0.5 / n).epsilon(1e-9));
}

TEST_CASE("KS statistic single sample") {
  const double x[] = {0.3};
  CHECK(ks_statistic(x, [](double t) { return t; }) == doctest::Approx(0.7));
}

TEST_CASE("KS statistic input validation") {
  const std::vector<double> empty;
  CHECK_THROWS_AS(ks_statistic(empty, [](double t) { return t; }), InvalidArgument);
  const std::vector<double> unsorted{0.1, 0.5, 0.2};
  CHECK_THROWS_AS(ks_statistic(unsorted, [](double t) { return t; }), InvalidArgument);
}

TEST_CASE("KS accepts the right law and rejects the wrong one") {
  const SpacingLaw gue(EnsembleKind::Gue);
  auto cdf = [&](double s) { return gue.cdf(s); };
  const auto g = sorted(spacing_stream({EnsembleKind::Gue}, 100000, 42));
  CHECK(ks_statistic(g, cdf) * std::sqrt(1e5) < kKsCritical);

  const auto o = sorted(spacing_stream({EnsembleKind::Goe}, 10000, 42));
  CHECK(ks_statistic(o, cdf) * std::sqrt(1e4) > kKsCritical1Percent);

  // the population gap between the two CDFs, found on a fine grid
  const SpacingLaw goe(EnsembleKind::Goe);
  double gap = 0.0;
  for (double s = 0.0; s < 6.0; s += 1e-4) {
    gap = std::max(gap, std::abs(goe.cdf(s) - gue.cdf(s)));
  }
  CHECK(gap * std::sqrt(1e4) > 5 * kKsCritical1Percent);
}

TEST_CASE("KS statistic is invariant under monotone reparametrization") {
  const SpacingLaw goe(EnsembleKind::Goe);
  const auto s = sorted(spacing_stream({EnsembleKind::Goe}, 5000, 3));
  const double d0 = ks_statistic(s, [&](double t) { return goe.cdf(t); });

  struct Map {
    std::function<double(double)> g, ginv;
  };
  const Map maps[] = {
      {[](double t) { return std::exp(t); }, [](double t) { return std::log(t); }},
      {[](double t) { return t * t * t; }, [](double t) { return std::cbrt(t); }},
      {[](double t) { return 1.0 / (1.0 + std::exp(-t)); },
       [](double t) { return std::log(t / (1.0 - t)); }},
  };
  for (const Map& m : maps) {
    std::vector<double> mapped;
    for (double t : s) {
      mapped.push_back(m.g(t));
    }
    const double d = ks_statistic(mapped, [&](double t) { return goe.cdf(std::max(0.0, m.ginv(t))); });
    CHECK(std::abs(d - d0) < 1e-12);
  }
}

TEST_CASE("histogram conserves the total") {
  Histogram h = Histogram::uniform(0.0, 1.0, 10);
  CHECK(h.bins() == 10);
  CHECK(h.edges().size() == 11);
  Rng rng(4);
  std::vector<double> xs;
  for (int i = 0; i < 10007; ++i) {
    xs.push_back(3.0 * rng.uniform() - 1.0);
  }
  h.add(xs);
  h.add(1.0);   // upper edge is exclusive
  h.add(0.0);   // lower edge is inclusive
  std::uint64_t sum = 0;
  for (auto c : h.counts()) {
    sum += c;
  }
  CHECK(sum + h.underflow() + h.overflow() == h.total());
  CHECK(h.total() == 10009);
  CHECK(h.underflow() > 0);
  CHECK(h.overflow() > 0);
}

TEST_CASE("histogram bin placement") {
  Histogram h({0.0, 1.0, 3.0});
  h.add(0.5);
  h.add(1.0);
  h.add(2.999);
  h.add(-0.1);
  h.add(3.0);
  CHECK(h.counts() == std::vector<std::uint64_t>{1, 2});
  CHECK(h.underflow() == 1);
  CHECK(h.overflow() == 1);
  CHECK_THROWS_AS(Histogram({0.0, 0.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(Histogram({1.0}), InvalidArgument);
}

TEST_CASE("default histogram layout") {
  const SpacingLaw planar({EnsembleKind::Planar, {{"y0", 1.0}}});
  const Histogram h = default_histogram(planar);
  CHECK(h.bins() == 64);
  CHECK(h.edges().front() == 2.0);
  CHECK(h.edges().back() == doctest::Approx(8.0));
  const Histogram t = default_histogram(SpacingLaw({EnsembleKind::PtGammaSlice, {{"gamma0", 1.0}}}));
  CHECK(t.edges().front() == 0.0);
  CHECK(t.edges().back() == 2.0);
}

TEST_CASE("chi-square of a law against its own samples") {
  for (const EnsembleSpec& spec : {EnsembleSpec{EnsembleKind::Gue}, EnsembleSpec{EnsembleKind::Cylinder, {{"rho0", 1.0}}},
                                   EnsembleSpec{EnsembleKind::Quartic, {{"q_curv", 1.0}}}}) {
    CAPTURE(spec.describe());
    const SpacingLaw law(spec);
    Histogram h = default_histogram(law);
    h.add(spacing_stream(spec, 100000, 9));
    const ChiSquareResult r = chi_square(h, law);
    CHECK(r.dof == static_cast<int>(r.merged_bins) - 1);
    CHECK(r.dof > 10);
    const double band = 4.0 * std::sqrt(2.0 * r.dof);
    CHECK(r.statistic > r.dof - band);
    CHECK(r.statistic < r.dof + band);
    CHECK(r.statistic <= chi_square_threshold(r.dof));
  }
}

TEST_CASE("chi-square flags the wrong law") {
  const SpacingLaw goe(EnsembleKind::Goe);
  Histogram h = default_histogram(goe);
  h.add(spacing_stream({EnsembleKind::Gue}, 100000, 10));
  const ChiSquareResult r = chi_square(h, goe);
  CHECK(r.statistic > 10.0 * r.dof);
}

TEST_CASE("chi-square degenerate inputs") {
  const SpacingLaw gue(EnsembleKind::Gue);
  CHECK_THROWS_AS(chi_square(default_histogram(gue), gue), InvalidArgument);
  Histogram tiny = default_histogram(gue);
  tiny.add(std::vector<double>{1.0, 1.1, 1.2});  // too few counts to leave two merged cells
  CHECK_THROWS_AS(chi_square(tiny, gue), InvalidArgument);
}

TEST_CASE("chi-square matches a hand computation") {
  // three cells of a uniform-like split of GOE: [0, a), [a, b), [b, inf)
  const SpacingLaw goe(EnsembleKind::Goe);
  const double a = std::sqrt(4.0 * std::log(2.0) / oracle::pi);  // median of GOE
  Histogram h({0.0, a, 100.0});
  for (int i = 0; i < 60; ++i) h.add(0.5 * a);
  for (int i = 0; i < 40; ++i) h.add(2.0 * a);
  const ChiSquareResult r = chi_square(h, goe);
  const double expected = 50.0;
  const double stat = (60 - expected) * (60 - expected) / expected + (40 - expected) * (40 - expected) / expected;
  CHECK(r.statistic == doctest::Approx(stat).epsilon(1e-9));
  CHECK(r.dof == 1);
}

TEST_CASE("chi-square threshold") {
  CHECK(chi_square_threshold(32) == doctest::Approx(32 + 4 * std::sqrt(64.0)));
}

TEST_CASE("moments") {
  const std::vector<double> c(1000, 2.5);
  const Moments m = moments(c);
  CHECK(m.mean == 2.5);
  CHECK(m.variance == 0.0);

  const std::vector<double> small{1.0, 2.0, 3.0, 4.0};
  CHECK(moments(small).mean == 2.5);
  CHECK(moments(small).variance == doctest::Approx(5.0 / 3.0).epsilon(1e-15));

  const std::vector<double> cancel{1e16, 1.0, 1.0, -1e16};
  CHECK(moments(cancel).mean == 0.5);

  CHECK_THROWS_AS(moments(std::vector<double>{1.0}), InvalidArgument);
  CHECK_THROWS_AS(moments(std::vector<double>{}), InvalidArgument);
}

TEST_CASE("moments of spacing streams") {
  CHECK(std::abs(moments(spacing_stream({EnsembleKind::Goe}, 100000, 1)).mean - 1.0) < 0.01);
  CHECK(std::abs(moments(spacing_stream({EnsembleKind::Gue}, 100000, 1)).mean - 4.0 / oracle::pi) < 0.02);
}

TEST_CASE("moments are permutation invariant") {
  auto xs = spacing_stream({EnsembleKind::Quartic, {{"q_curv", 0.5}}}, 20000, 2);
  const Moments a = moments(xs);
  std::mt19937_64 g(7);
  std::shuffle(xs.begin(), xs.end(), g);
  const Moments b = moments(xs);
  CHECK(oracle::rel_diff(a.mean, b.mean) < 1e-12);
  CHECK(oracle::rel_diff(a.variance, b.variance) < 1e-12);
}
