#include <catch2/catch.hpp>

#include <cmath>
#include <vector>

#include "nuht/explab.hpp"

using namespace nuht;

namespace {

const hypothesis_pair& bern57() {
  static const hypothesis_pair pair(make_distribution({0.5, 0.5}),
                                    make_distribution({0.3, 0.7}));
  return pair;
}

const hypothesis_pair& bern57u() {
  static const hypothesis_pair pair = bern57().with_prior(prior(0.5, 0.5));
  return pair;
}

}  // namespace

TEST_CASE("np trace on indistinguishable hypotheses", "[explab]") {
  const hypothesis_pair same(make_distribution({0.5, 0.5}),
                             make_distribution({0.5, 0.5}));
  const std::vector<int> ns{4, 8, 16};
  const auto tr = np_exponent_trace(nu_param::finite(2.0), 0.2, same, ns);
  CHECK(tr.reference == 0.0);  // D = 0
  REQUIRE(tr.rows.size() == 3);
  for (const auto& row : tr.rows) {
    CHECK(row.error > 0.3);  // beta stays bounded away from zero
    CHECK(row.estimate == -std::log2(row.error) / row.n);
  }
  // beta is a constant here (> 1, the soft loss of a coin-like test), so
  // the estimates approach D = 0 from below
  CHECK(std::abs(tr.rows.back().estimate) <
        std::abs(tr.rows.front().estimate));
  CHECK(std::abs(tr.rows.back().estimate) < 0.02);
}

TEST_CASE("np trace rows are sorted and consistent", "[explab]") {
  const std::vector<int> ns{100, 25, 50};  // deliberately unsorted
  const auto tr =
      np_exponent_trace(nu_param::infinity(), 0.1, bern57(), ns);
  REQUIRE(tr.rows.size() == 3);
  CHECK(tr.rows[0].n == 25);
  CHECK(tr.rows[1].n == 50);
  CHECK(tr.rows[2].n == 100);
  for (const auto& row : tr.rows)
    CHECK(row.estimate == -std::log2(row.error) / row.n);
}

TEST_CASE("np traces approach the KL divergence", "[explab]") {
  // frozen from exact binomial computation (independently cross-computed)
  const std::vector<int> ns{200, 800};
  const auto inf_tr =
      np_exponent_trace(nu_param::infinity(), 0.1, bern57(), ns);
  CHECK(inf_tr.rows[0].estimate == Approx(0.092355).margin(1e-4));
  CHECK(inf_tr.rows[1].estimate == Approx(0.105030).margin(1e-4));
  CHECK(inf_tr.rows[1].estimate > inf_tr.rows[0].estimate);
  CHECK(inf_tr.reference == Approx(0.1257694).margin(1e-6));

  const auto tr2 =
      np_exponent_trace(nu_param::finite(2.0), 0.1, bern57(), ns);
  CHECK(tr2.rows[1].estimate == Approx(0.098363).margin(1e-4));

  const auto tr1 = np_exponent_trace(nu_param::one(), 0.1, bern57(), ns);
  CHECK(tr1.rows[1].estimate == Approx(0.085314).margin(1e-4));

  // the three readings share a limit: final values are mutually close
  const double f1 = tr1.rows[1].estimate;
  const double f2 = tr2.rows[1].estimate;
  const double fi = inf_tr.rows[1].estimate;
  CHECK(std::abs(f1 - f2) <= 0.02);
  CHECK(std::abs(f1 - fi) <= 0.02);
  CHECK(std::abs(f2 - fi) <= 0.02);

  // classical reading of the same calibrated nu = 2 test
  const auto cl = np_exponent_trace(nu_param::finite(2.0), 0.1, bern57(), ns,
                                    log_base::bits, beta_reading::classical);
  CHECK(cl.rows[1].estimate == Approx(0.098872).margin(1e-4));
  CHECK(cl.rows[1].estimate >= tr2.rows[1].estimate);
}

TEST_CASE("bayes trace: degenerate and converging cases", "[explab]") {
  const hypothesis_pair same(make_distribution({0.5, 0.5}),
                             make_distribution({0.5, 0.5}),
                             prior(0.5, 0.5));
  const std::vector<int> ns{5, 10};
  const auto tr_same = bayes_exponent_trace(nu_param::infinity(), same, ns);
  for (const auto& row : tr_same.rows) {
    CHECK(row.error == Approx(0.5).margin(1e-12));
    CHECK(row.estimate == Approx(1.0 / row.n).margin(1e-9));
  }

  const std::vector<int> big{200, 800};
  const auto tr = bayes_exponent_trace(nu_param::infinity(), bern57u(), big);
  CHECK(tr.rows[0].estimate == Approx(0.045887).margin(1e-4));
  CHECK(tr.rows[1].estimate == Approx(0.035668).margin(1e-4));
  CHECK(tr.reference == Approx(0.0307638).margin(1e-6));  // C
  // approaches C from above
  CHECK(tr.rows[1].estimate > tr.reference);
  CHECK(tr.rows[1].estimate < tr.rows[0].estimate);

  // finite nu: estimates at n = 800 clear the D_B lower bound
  for (double v : {1.1, 1.5, 1.9}) {
    const auto trv =
        bayes_exponent_trace(nu_param::finite(v), bern57u(), big);
    CHECK(trv.reference ==
          Approx(d_b_nu(nu_param::finite(v), bern57u().p0(), bern57u().p1()))
              .margin(1e-12));
    CHECK(trv.rows[1].estimate >= trv.reference - 0.01);
  }
}

TEST_CASE("exponent sandwich at the largest computed n", "[explab]") {
  const auto& p0 = bern57u().p0();
  const auto& p1 = bern57u().p1();
  const double db1 = d_b_nu(nu_param::one(), p0, p1);
  const double c = chernoff_information(p0, p1).value;
  const double d01 = kl_divergence(p0, p1);
  const double d10 = kl_divergence(p1, p0);
  CHECK(db1 <= c + 1e-12);
  CHECK(c <= std::min(d01, d10) + 1e-12);

  const std::vector<int> ns{400, 800};
  const auto tr = bayes_exponent_trace(nu_param::infinity(), bern57u(), ns);
  const double est = tr.rows.back().estimate;
  CHECK(est >= db1);          // above the Bhattacharyya bound
  CHECK(est >= c - 1e-9);     // decreasing toward C from above
  CHECK(est <= c + 0.01);     // and already close at n = 800
}

TEST_CASE("calibrated tests close in on D at n = 800", "[explab]") {
  const std::vector<int> ns{800};
  const double d = kl_divergence(bern57().p0(), bern57().p1());
  for (const auto& nu : {nu_param::finite(2.0), nu_param::infinity()}) {
    const auto tr = np_exponent_trace(nu, 0.1, bern57(), ns);
    CHECK(tr.rows.back().estimate >= d - 0.25 * d);
  }
}

TEST_CASE("risk affinity bound check", "[explab]") {
  // nu = 2: BC at nu = 2 is 1, so the bound is just nu/(nu-1) = 2
  const auto at2 = risk_affinity_bound_check(nu_param::finite(2.0), bern57u(), 7);
  CHECK(at2.bound == Approx(2.0).margin(1e-9));
  CHECK(at2.holds);

  const auto at15 =
      risk_affinity_bound_check(nu_param::finite(1.5), bern57u(), 50);
  CHECK(at15.holds);
  CHECK(at15.risk <= at15.bound);

  const hypothesis_pair same(make_distribution({0.5, 0.5}),
                             make_distribution({0.5, 0.5}),
                             prior(0.5, 0.5));
  for (double v : {1.2, 3.0}) {
    const auto r = risk_affinity_bound_check(nu_param::finite(v), same, 9);
    CHECK(r.bound >= 1.0);
    CHECK(r.holds);
  }

  CHECK_THROWS_AS(risk_affinity_bound_check(nu_param::one(), bern57u(), 5),
                  validation_error);
  CHECK_THROWS_AS(risk_affinity_bound_check(nu_param::infinity(), bern57u(), 5),
                  validation_error);
}

TEST_CASE("D_B sweep reproduces the lower-bound curve", "[explab]") {
  const auto grid = linspace(1.0, 2.0, 101);
  const auto rows = sweep_d_b_nu(bern57(), grid);
  REQUIRE(rows.size() == 101);
  CHECK(rows.front().first == 1.0);
  CHECK(rows.back().first == 2.0);
  CHECK(rows.front().second == Approx(0.0307573).margin(1e-6));
  CHECK(std::abs(rows.back().second) <= 1e-12);
  for (const auto& [nu, v] : rows) CHECK(v >= -1e-12);
  for (std::size_t i = 1; i + 1 < rows.size(); ++i)
    CHECK(rows[i + 1].second - 2.0 * rows[i].second + rows[i - 1].second <=
          1e-9);
  CHECK_THROWS_AS(linspace(1.0, 2.0, 1), validation_error);
}
