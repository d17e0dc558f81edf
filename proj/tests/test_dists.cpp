#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stochorder/dists.hpp"
#include "stochorder/json_io.hpp"
#include "stochorder/quadrature.hpp"
#include "stochorder/rng.hpp"

using namespace stochorder;

namespace {

// independent CDF oracle: integrate the density over [0, x]. The density
// behaves like t^ceff at the origin, so that power is absorbed when negative.
double cdf_by_quadrature(const ComponentSpec& c, double x) {
  const double ceff = c.shape_exp * (1.0 + w_exponent(c.family)) - 1.0;
  if (ceff >= 0.0) {
    auto scaled = [&](double u) { return u > 0.0 ? pdf(c, x * u) * x : 0.0; };
    return integrate_adaptive(scaled, 0.0, 1.0, 1e-11).value;
  }
  auto regular = [&](double u) {
    return u > 0.0 ? pdf(c, x * u) * x * std::pow(u, -ceff) : 0.0;
  };
  return integrate_power_weighted_01(ceff, regular, 1e-11).value;
}

const BaselineFamily kExp = BaselineFamily::pgw(1.0, 1.0);

}  // namespace

TEST_CASE("family construction validates shapes") {
  CHECK_THROWS_AS(BaselineFamily::pgw(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(BaselineFamily::pgw(1.0, -2.0), std::domain_error);
  CHECK_THROWS_AS(BaselineFamily::gg(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(ComponentSpec(kExp, 0.0), std::domain_error);
  CHECK_THROWS_AS(ComponentSpec(kExp, 1.0, -1.0), std::domain_error);
}

TEST_CASE("cdf anchors") {
  // PGW(1,1) at unit scale is the unit exponential
  CHECK(cdf(ComponentSpec(kExp, 1.0), 1.0) ==
        doctest::Approx(-std::expm1(-1.0)).epsilon(1e-14));
  CHECK(cdf(ComponentSpec(kExp, 1.0), 0.0) == 0.0);
  CHECK(cdf(ComponentSpec(BaselineFamily::gg(2.0, 2.0), 3.0, 1.7), 0.0) == 0.0);

  const ComponentSpec weib2(BaselineFamily::pgw(2.0, 1.0), 0.1);
  CHECK(cdf(weib2, 1.0) == doctest::Approx(-std::expm1(-0.01)).epsilon(1e-13));
  CHECK(cdf(weib2, 1.0) == doctest::Approx(0.00995017).epsilon(1e-5));
  // independent quadrature route
  CHECK(cdf_by_quadrature(weib2, 1.0) == doctest::Approx(cdf(weib2, 1.0)).epsilon(1e-9));

  CHECK_THROWS_AS(cdf(ComponentSpec(kExp, 1.0), -0.5), std::domain_error);
  CHECK_THROWS_AS(cdf(ComponentSpec(kExp, 1.0), std::nan("")), std::domain_error);
}

TEST_CASE("survival and log survival") {
  const ComponentSpec c(kExp, 1.0);
  CHECK(survival(c, 0.0) == 1.0);
  CHECK(log_survival(c, 0.0) == 0.0);

  // deep tail: PGW(2,1,9) at x=1.9 has survival e^-292.41
  const ComponentSpec tail(BaselineFamily::pgw(2.0, 1.0), 9.0);
  CHECK(log_survival(tail, 1.9) == doctest::Approx(-292.41).epsilon(1e-12));
  CHECK(survival(tail, 1.9) == doctest::Approx(std::exp(-292.41)).epsilon(1e-12));

  // log-space stays exact far below 1e-300
  const ComponentSpec deep(BaselineFamily::pgw(2.0, 1.0), 9.0, 2.0);
  const double ls = log_survival(deep, 4.0);  // base log-survival ~ -1295
  CHECK(ls == doctest::Approx(std::log(2.0) + (1.0 - (1.0 + std::pow(36.0, 2.0)))).epsilon(1e-12));

  // GG(1,1) is the unit exponential
  CHECK(survival(ComponentSpec(BaselineFamily::gg(1.0, 1.0), 1.0), 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-13));

  // moderate x: log path agrees with direct exponentiation
  CounterRng rng(3);
  for (int i = 0; i < 200; ++i) {
    const ComponentSpec r(BaselineFamily::pgw(rng.log_uniform(4 * i, 0.5, 3.0),
                                              rng.log_uniform(4 * i + 1, 0.2, 2.0)),
                          rng.log_uniform(4 * i + 2, 0.1, 10.0),
                          rng.log_uniform(4 * i + 3, 0.5, 4.0));
    const double x = rng.log_uniform(40000 + i, 0.01, 5.0);
    const double s = survival(r, x);
    if (s > 1e-12) {
      CHECK(std::abs(s + cdf(r, x) - 1.0) <= 1e-14);
      CHECK(std::exp(log_survival(r, x)) == doctest::Approx(s).epsilon(1e-12));
    }
  }
}

TEST_CASE("pdf anchors and chain rule") {
  CHECK(pdf(ComponentSpec(kExp, 1.0), 0.5) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-13));

  // GG(2,2) at x=1: (2/Gamma(1)) * 1 * e^-1
  CHECK(pdf(ComponentSpec(BaselineFamily::gg(2.0, 2.0), 1.0), 1.0) ==
        doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
  CHECK(pdf(ComponentSpec(BaselineFamily::gg(2.0, 2.0), 1.0), 1.0) ==
        doctest::Approx(0.735759).epsilon(1e-5));

  // exponentiated case: 2 F f at PGW(1,1), lambda=1, x=1
  const double expected = 2.0 * (-std::expm1(-1.0)) * std::exp(-1.0);
  CHECK(pdf(ComponentSpec(kExp, 1.0, 2.0), 1.0) ==
        doctest::Approx(expected).epsilon(1e-13));
  CHECK(expected == doctest::Approx(0.465088).epsilon(1e-5));
}

TEST_CASE("pdf matches finite differences of cdf") {
  CounterRng rng(11);
  for (int i = 0; i < 60; ++i) {
    const bool use_gg = rng.bits(5 * i) & 1;
    const BaselineFamily fam =
        use_gg ? BaselineFamily::gg(rng.log_uniform(5 * i + 1, 0.5, 3.0),
                                    rng.log_uniform(5 * i + 2, 0.5, 3.0))
               : BaselineFamily::pgw(rng.log_uniform(5 * i + 1, 0.5, 3.0),
                                     rng.log_uniform(5 * i + 2, 0.3, 2.0));
    const ComponentSpec c(fam, rng.log_uniform(5 * i + 3, 0.2, 5.0),
                          rng.log_uniform(5 * i + 4, 0.5, 3.0));
    for (double x : {0.01, 0.11, 0.9, 2.2, 7.5, 20.0}) {
      const double h = x * 1e-5;
      // skip points where the survival decays so fast across the step that
      // central-difference truncation alone exceeds the tolerance
      const double s = survival(c, x);
      if (s < 1e-280 || hazard(c, x) * h > 1e-3) continue;
      // difference whichever of cdf/survival is small there, so the
      // subtraction keeps its relative precision
      const double fd = cdf(c, x) < 0.5
                            ? (cdf(c, x + h) - cdf(c, x - h)) / (2.0 * h)
                            : (survival(c, x - h) - survival(c, x + h)) / (2.0 * h);
      const double v = pdf(c, x);
      if (fd > 1e-280)
        CHECK(std::abs(v - fd) <= 1e-6 * std::max(fd, v));
    }
  }
}

TEST_CASE("pdf at zero") {
  CHECK(pdf(ComponentSpec(kExp, 2.0), 0.0) == doctest::Approx(2.0));  // lambda * f(0)
  CHECK(pdf(ComponentSpec(BaselineFamily::pgw(2.0, 1.0), 1.0), 0.0) == 0.0);
  CHECK_THROWS_AS(pdf(ComponentSpec(BaselineFamily::pgw(0.8, 0.4), 1.0), 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(pdf(ComponentSpec(BaselineFamily::gg(1.0, 0.5), 1.0), 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(pdf(ComponentSpec(kExp, 1.0, 0.5), 0.0), std::domain_error);
}

TEST_CASE("reversed hazard") {
  const ComponentSpec c1(kExp, 1.0, 1.0);
  const ComponentSpec c2(kExp, 1.0, 2.0);
  // proportionality in the exponent
  for (double x : {0.2, 1.0, 3.0})
    CHECK(reversed_hazard(c2, x) ==
          doctest::Approx(2.0 * reversed_hazard(c1, x)).epsilon(1e-13));

  CHECK(reversed_hazard(c1, 1.0) ==
        doctest::Approx(std::exp(-1.0) / -std::expm1(-1.0)).epsilon(1e-13));
  CHECK(reversed_hazard(c1, 1.0) == doctest::Approx(0.581977).epsilon(1e-5));

  // x * rh(x) -> 1 + w'(1) as x -> 0 (p for pgw, beta for gg)
  const double x0 = 1e-8;
  CHECK(x0 * baseline_reversed_hazard(BaselineFamily::pgw(1.7, 0.6), x0) ==
        doctest::Approx(1.7).epsilon(1e-6));
  CHECK(x0 * baseline_reversed_hazard(BaselineFamily::gg(2.0, 2.6), x0) ==
        doctest::Approx(2.6).epsilon(1e-6));

  CHECK_THROWS_AS(reversed_hazard(c1, 0.0), std::domain_error);
}

TEST_CASE("hazard shapes") {
  // exponential: constant hazard lambda
  const ComponentSpec e2(kExp, 2.0);
  for (double x : {0.1, 1.0, 5.0, 15.0})
    CHECK(hazard(e2, x) == doctest::Approx(2.0).epsilon(1e-12));

  // PGW(1.5, 0.8): increasing failure rate (p >= q, p >= 1)
  const ComponentSpec ifr(BaselineFamily::pgw(1.5, 0.8), 1.0);
  double prev = 0.0;
  for (double x = 0.05; x < 30.0; x *= 1.3) {
    const double h = hazard(ifr, x);
    CHECK(h >= prev * (1.0 - 1e-9));
    prev = h;
  }

  // PGW(0.8, 0.4): bathtub on [0.01, 50]
  const ComponentSpec tub(BaselineFamily::pgw(0.8, 0.4), 1.0);
  std::vector<double> xs, hs;
  for (double x = 0.01; x <= 50.0; x *= 1.05) {
    xs.push_back(x);
    hs.push_back(hazard(tub, x));
  }
  std::size_t arg_min = 0;
  for (std::size_t i = 1; i < hs.size(); ++i)
    if (hs[i] < hs[arg_min]) arg_min = i;
  CHECK(arg_min > 0);
  CHECK(arg_min + 1 < hs.size());
  CHECK(hs.front() > hs[arg_min] * 1.1);
  CHECK(hs.back() > hs[arg_min] * 1.1);

  // underflow guard
  const ComponentSpec tail(BaselineFamily::pgw(2.0, 1.0), 9.0);
  CHECK(std::isinf(hazard(tail, 10.0)));
}

TEST_CASE("w/h decomposition") {
  CHECK(w_exponent(BaselineFamily::pgw(2.0, 0.7)) == doctest::Approx(1.0));
  CHECK(w_exponent(BaselineFamily::gg(2.0, 1.0)) == doctest::Approx(0.0));

  // multiplicativity of w on 1000 random pairs
  CounterRng rng(5);
  const BaselineFamily fam = BaselineFamily::pgw(1.7, 0.9);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.log_uniform(2 * i, 0.01, 100.0);
    const double y = rng.log_uniform(2 * i + 1, 0.01, 100.0);
    const double lhs = w_value(fam, x * y);
    const double rhs = w_value(fam, x) * w_value(fam, y);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * lhs);
  }

  // f = w * h to 1e-12 relative on a random grid, both families
  for (int i = 0; i < 200; ++i) {
    const BaselineFamily f2 = (i % 2) ? BaselineFamily::gg(2.3, 1.1)
                                       : BaselineFamily::pgw(1.5, 0.8);
    const double x = rng.log_uniform(5000 + i, 0.01, 20.0);
    const double lhs = w_value(f2, x) * h_value(f2, x);
    CHECK(std::abs(lhs - baseline_pdf(f2, x)) <= 1e-12 * lhs);
  }

  // h log-derivative anchors: both reductions give h(x) = e^-x
  CHECK(h_value(kExp, 0.7) == doctest::Approx(std::exp(-0.7)).epsilon(1e-13));
  CHECK(h_log_derivative(kExp, 0.7) == doctest::Approx(-1.0).epsilon(1e-13));
  const BaselineFamily gexp = BaselineFamily::gg(1.0, 1.0);
  CHECK(h_value(gexp, 0.7) == doctest::Approx(std::exp(-0.7)).epsilon(1e-13));
  CHECK(h_log_derivative(gexp, 0.7) == doctest::Approx(-1.0).epsilon(1e-13));

  // h'/h against finite differences
  for (int i = 0; i < 100; ++i) {
    const BaselineFamily f2 = (i % 2) ? BaselineFamily::gg(1.8, 2.4)
                                       : BaselineFamily::pgw(0.9, 1.3);
    const double x = rng.log_uniform(9000 + i, 0.05, 10.0);
    const double h = x * 1e-6;
    const double fd =
        (std::log(h_value(f2, x + h)) - std::log(h_value(f2, x - h))) / (2.0 * h);
    CHECK(h_log_derivative(f2, x) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("C-2 limit: h ratio tends to one") {
  CounterRng rng(17);
  for (int i = 0; i < 50; ++i) {
    const BaselineFamily fam = (i % 2) ? BaselineFamily::gg(2.0, 1.3)
                                        : BaselineFamily::pgw(1.4, 0.7);
    const double li = rng.log_uniform(2 * i, 0.1, 10.0);
    const double lj = rng.log_uniform(2 * i + 1, 0.1, 10.0);
    const double x = 1e-8;
    const double ratio = h_value(fam, li * x) / h_value(fam, lj * x);
    CHECK(std::abs(ratio - 1.0) <= 1e-6);
  }
}

TEST_CASE("exponential reductions agree pointwise") {
  const double lam = 2.7;
  const ComponentSpec a(BaselineFamily::pgw(1.0, 1.0), lam);
  const ComponentSpec b(BaselineFamily::gg(1.0, 1.0), lam);
  for (double x = 0.01; x < 50.0; x *= 1.7) {
    const double ref_cdf = -std::expm1(-lam * x);
    CHECK(std::abs(cdf(a, x) - ref_cdf) <= 1e-12 * std::max(ref_cdf, 1e-12));
    CHECK(std::abs(cdf(b, x) - ref_cdf) <= 1e-12 * std::max(ref_cdf, 1e-12));
    CHECK(hazard(a, x) == doctest::Approx(lam).epsilon(1e-12));
    CHECK(hazard(b, x) == doctest::Approx(lam).epsilon(1e-12));
  }
}

TEST_CASE("cdf monotonicity and range") {
  CounterRng rng(23);
  for (int i = 0; i < 40; ++i) {
    const BaselineFamily fam = (i % 2)
                                   ? BaselineFamily::gg(rng.log_uniform(3 * i, 0.5, 3.0),
                                                        rng.log_uniform(3 * i + 1, 0.5, 3.0))
                                   : BaselineFamily::pgw(rng.log_uniform(3 * i, 0.5, 3.0),
                                                         rng.log_uniform(3 * i + 1, 0.3, 2.0));
    const ComponentSpec c(fam, rng.log_uniform(3 * i + 2, 0.1, 10.0));
    double prev = 0.0;
    for (double x = 0.0; x < 40.0; x += 0.7) {
      const double v = cdf(c, x);
      CHECK(v >= prev);
      CHECK(v <= 1.0);
      prev = v;
    }
  }
}

TEST_CASE("component JSON round trip and schema rejection") {
  const ComponentSpec c(BaselineFamily::gg(2.0, 1.5), 3.25, 1.75);
  const auto j = component_to_json(c);
  const ComponentSpec back = component_from_json(j);
  CHECK(back.family == c.family);
  CHECK(back.lambda == c.lambda);
  CHECK(back.shape_exp == c.shape_exp);

  auto bad = j;
  bad["extra"] = 1.0;
  CHECK_THROWS_AS(component_from_json(bad), std::invalid_argument);

  // pgw component must not carry gg keys
  auto mixed = component_to_json(ComponentSpec(kExp, 1.0));
  mixed["alpha"] = 2.0;
  CHECK_THROWS_AS(component_from_json(mixed), std::invalid_argument);

  // shape_exp defaults to 1
  ordered_json minimal{{"family", "pgw"}, {"p", 1.0}, {"q", 1.0}, {"lambda", 2.0}};
  CHECK(component_from_json(minimal).shape_exp == 1.0);
}

TEST_CASE("system construction") {
  const ComponentSpec a(kExp, 1.0), b(kExp, 2.0);
  CHECK_THROWS_AS(ParallelSystem(std::vector<ComponentSpec>{}), std::invalid_argument);
  CHECK_THROWS_AS(
      ParallelSystem({a, ComponentSpec(BaselineFamily::pgw(2.0, 1.0), 1.0)}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      ParallelSystem({a, ComponentSpec(BaselineFamily::gg(1.0, 1.0), 1.0)}),
      std::invalid_argument);
  CHECK(ParallelSystem({a, b}).size() == 2);
}
