#include <catch2/catch.hpp>

#include <cmath>
#include <vector>

#include "nuht/nu_loss.hpp"
#include "nuht/nu_param.hpp"

using namespace nuht;

TEST_CASE("nu_param validation and parsing", "[nu-loss]") {
  CHECK(nu_param::one().is_one());
  CHECK(nu_param::infinity().is_infinity());
  CHECK(nu_param::finite(2.5).value() == 2.5);
  CHECK(nu_param::finite(1.0).is_one());

  CHECK_THROWS_AS(nu_param::finite(0.99), validation_error);
  CHECK_THROWS_AS(nu_param::finite(-3.0), validation_error);
  CHECK_THROWS_AS(nu_param::finite(1.0 + 1e-10), validation_error);
  CHECK_THROWS_AS(nu_param::finite(std::nan("")), validation_error);

  CHECK(nu_param::parse("inf").is_infinity());
  CHECK(nu_param::parse("2").value() == 2.0);
  CHECK(nu_param::parse("1.5").value() == 1.5);
  CHECK_THROWS_AS(nu_param::parse("banana"), validation_error);
  CHECK_THROWS_AS(nu_param::parse("2x"), validation_error);

  CHECK(nu_param::finite(2.0).prefactor() == 2.0);
  CHECK(nu_param::finite(2.0).power_ratio() == 0.5);
  CHECK_THROWS_AS(nu_param::one().prefactor(), validation_error);
}

TEST_CASE("nu_loss closed-form values", "[nu-loss]") {
  for (const auto& nu : {nu_param::one(), nu_param::finite(2.0),
                         nu_param::finite(17.5), nu_param::infinity()})
    CHECK(nu_loss(nu, 1.0) == 0.0);

  CHECK(nu_loss(nu_param::infinity(), 0.3) == Approx(0.7).margin(1e-15));
  // nu = 2, p = 0.25: 2 (1 - sqrt(0.25)) = 1
  CHECK(nu_loss(nu_param::finite(2.0), 0.25) == Approx(1.0).margin(1e-15));

  CHECK(nu_loss(nu_param::one(), 0.0) == pos_inf);
  CHECK(nu_loss(nu_param::one(), 0.5) == Approx(std::log(2.0)).margin(1e-15));
  CHECK(nu_loss(nu_param::one(), 0.5, log_base::bits) ==
        Approx(1.0).margin(1e-15));
  CHECK(nu_loss(nu_param::one(), 0.5, log_base::nats) ==
        Approx(std::log(2.0)).margin(1e-15));
  // finite branches are base-free
  CHECK(nu_loss(nu_param::finite(3.0), 0.4, log_base::bits) ==
        nu_loss(nu_param::finite(3.0), 0.4));

  CHECK_THROWS_AS(nu_loss(nu_param::one(), -0.1), validation_error);
  CHECK_THROWS_AS(nu_loss(nu_param::one(), 1.1), validation_error);
}

TEST_CASE("nu_loss is continuous in nu at both ends", "[nu-loss]") {
  const struct {
    double h;
    double tol;
  } near_one[] = {{1e-3, 1e-2}, {1e-4, 1e-3}};
  const struct {
    double nu;
    double tol;
  } near_inf[] = {{1e3, 1e-2}, {1e4, 1e-3}};

  for (double p = 0.05; p <= 1.0 + 1e-12; p += 0.05) {
    const double pp = std::min(p, 1.0);
    for (const auto& c : near_one)
      CHECK(std::abs(nu_loss(nu_param::finite(1.0 + c.h), pp) -
                     nu_loss(nu_param::one(), pp)) <= c.tol);
    for (const auto& c : near_inf)
      CHECK(std::abs(nu_loss(nu_param::finite(c.nu), pp) -
                     nu_loss(nu_param::infinity(), pp)) <= c.tol);
  }
}

TEST_CASE("nu_loss decreases in p and is ordered in nu", "[nu-loss]") {
  const std::vector<nu_param> nus{nu_param::one(),      nu_param::finite(1.1),
                                  nu_param::finite(1.5), nu_param::finite(2.0),
                                  nu_param::finite(4.0), nu_param::finite(32.0),
                                  nu_param::finite(1e4), nu_param::infinity()};
  // strict decrease in p for each nu
  for (const auto& nu : nus) {
    double prev = pos_inf;
    for (double p = 0.01; p < 1.0; p += 0.01) {
      const double v = nu_loss(nu, p);
      CHECK(v < prev);
      prev = v;
    }
  }
  // non-increasing in nu for fixed p in (0,1)
  for (double p = 0.02; p < 1.0; p += 0.02) {
    for (std::size_t i = 0; i + 1 < nus.size(); ++i)
      CHECK(nu_loss(nus[i], p) >= nu_loss(nus[i + 1], p) - 1e-12);
  }
}

TEST_CASE("loss_curve tabulation", "[nu-loss]") {
  const std::vector<nu_param> nus{nu_param::infinity(), nu_param::one()};
  const auto rows = loss_curve(nus, 100);
  REQUIRE(rows.size() == 200);

  for (const auto& r : rows) {
    if (r.nu.is_infinity())
      CHECK(r.loss == Approx(1.0 - r.p).margin(1e-15));  // straight line
    if (r.p == 1.0) CHECK(r.loss == 0.0);                // common endpoint
  }
  // log-loss blows up toward p -> 0+
  const auto log_rows = loss_curve(std::vector<nu_param>{nu_param::one()}, 1000);
  CHECK(log_rows.front().loss > 9.0);  // -log2(0.001) ~ 9.97 bits

  CHECK_THROWS_AS(loss_curve(nus, 1), validation_error);
}
