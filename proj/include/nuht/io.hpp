#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 the nuht authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

// JSON and CSV serialization of the library's value types, plus atomic file
// output. Double formatting goes through %.17g (CSV) or nlohmann's
// shortest-round-trip printer (JSON), so identical inputs give byte
// identical artifacts.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nuht/distribution.hpp"
#include "nuht/error_rates.hpp"
#include "nuht/errors.hpp"
#include "nuht/explab.hpp"
#include "nuht/exponents.hpp"
#include "nuht/mp_test.hpp"
#include "nuht/nu_loss.hpp"
#include "nuht/randomized_test.hpp"

namespace nuht {

using json = nlohmann::json;

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline const char* to_string(log_base base) {
  return base == log_base::bits ? "bits" : "nats";
}

inline log_base parse_log_base(std::string_view s) {
  if (s == "bits") return log_base::bits;
  if (s == "nats") return log_base::nats;
  throw validation_error("base must be 'bits' or 'nats'");
}

// ---- distributions -------------------------------------------------------

inline json to_json(const distribution& d) {
  return json{{"probs", d.probs()}};
}

inline distribution distribution_from_json(const json& j) {
  if (!j.contains("probs") || !j["probs"].is_array())
    throw validation_error("distribution JSON needs a 'probs' array");
  const auto probs = j["probs"].get<std::vector<double>>();
  return make_distribution(probs);
}

// ---- tests ----------------------------------------------------------------

inline json to_json(const randomized_test& t) {
  json j{{"kind", to_string(t.kind())}, {"n", t.length()}};
  switch (t.kind()) {
    case test_kind::nu_mp:
      j["nu"] = t.nu().value();
      j["lambda"] = t.lambda();
      j["log2_lambda"] = t.log2_lambda();
      break;
    case test_kind::infty_mp:
      j["nu"] = "inf";
      j["lambda"] = t.lambda();
      j["log2_lambda"] = t.log2_lambda();
      break;
    case test_kind::nu_bayes:
      j["nu"] = t.nu().value();
      j["prior"] = {t.test_prior().pi0, t.test_prior().pi1};
      break;
    case test_kind::infty_bayes:
      j["nu"] = "inf";
      j["prior"] = {t.test_prior().pi0, t.test_prior().pi1};
      break;
    case test_kind::aep:
      j["epsilon_prime"] = t.epsilon_prime();
      j["center"] = t.center();
      break;
    case test_kind::table: {
      json entries = json::array();
      for (const auto& [counts, reject] : t.table())
        entries.push_back(json{{"counts", counts}, {"reject", reject}});
      j["entries"] = std::move(entries);
      break;
    }
  }
  return j;
}

inline randomized_test test_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int n = j.at("n").get<int>();
  if (kind == "nu-mp")
    return randomized_test::make_nu_mp(
        nu_param::finite(j.at("nu").get<double>()),
        j.contains("log2_lambda") ? j.at("log2_lambda").get<double>()
                                  : std::log2(j.at("lambda").get<double>()),
        n);
  if (kind == "infty-mp")
    return randomized_test::make_infty_mp(
        j.contains("log2_lambda") ? j.at("log2_lambda").get<double>()
                                  : std::log2(j.at("lambda").get<double>()),
        n);
  if (kind == "nu-bayes" || kind == "infty-bayes") {
    const auto pr = j.at("prior").get<std::vector<double>>();
    if (pr.size() != 2) throw validation_error("prior must have two entries");
    if (kind == "infty-bayes")
      return randomized_test::make_infty_bayes(prior(pr[0], pr[1]), n);
    return randomized_test::make_nu_bayes(
        nu_param::finite(j.at("nu").get<double>()), prior(pr[0], pr[1]), n);
  }
  if (kind == "aep")
    return randomized_test::make_aep(j.at("epsilon_prime").get<double>(),
                                     j.at("center").get<double>(), n);
  if (kind == "table") {
    std::map<std::vector<int>, double> table;
    for (const auto& entry : j.at("entries"))
      table[entry.at("counts").get<std::vector<int>>()] =
          entry.at("reject").get<double>();
    return randomized_test::from_table(n, std::move(table));
  }
  throw validation_error("unknown test kind '" + kind + "'");
}

// ---- reports ---------------------------------------------------------------

inline json to_json(const error_pair& e) {
  json j{{"alpha", e.alpha}, {"beta_bar", e.beta_bar}, {"n", e.n}};
  j["nu"] = e.nu.is_infinity() ? json("inf") : json(e.nu.value());
  return j;
}

inline json to_json(const bayes_risk_report& r) {
  return json{{"risk", r.risk},
              {"alpha", r.alpha},
              {"beta_bar", r.beta_bar},
              {"prior", {r.pr.pi0, r.pr.pi1}}};
}

inline json to_json(const exponent_report& r) {
  json bc = json::object();
  json db = json::object();
  for (const auto& [nu, v] : r.bc) bc[format_double(nu)] = v;
  for (const auto& [nu, v] : r.d_b) db[format_double(nu)] = v;
  return json{{"kl", r.kl},
              {"chernoff",
               {{"value", r.chernoff.value},
                {"lambda_star", r.chernoff.lambda_star}}},
              {"bc", std::move(bc)},
              {"d_b", std::move(db)},
              {"base", to_string(r.base)}};
}

// ---- CSV -------------------------------------------------------------------

inline std::string exponent_report_csv(const exponent_report& r) {
  std::string out = "quantity,nu,value,base\n";
  const char* base = to_string(r.base);
  out += "kl,," + format_double(r.kl) + "," + base + "\n";
  out += "chernoff,," + format_double(r.chernoff.value) + "," + base + "\n";
  for (const auto& [nu, v] : r.bc)
    out += "bc," + format_double(nu) + "," + format_double(v) + "," + base + "\n";
  for (const auto& [nu, v] : r.d_b)
    out += "d_b," + format_double(nu) + "," + format_double(v) + "," + base + "\n";
  return out;
}

inline std::string loss_curve_csv(std::span<const loss_curve_row> rows) {
  std::string out = "nu,p,loss\n";
  for (const auto& row : rows)
    out += row.nu.str() + "," + format_double(row.p) + "," +
           format_double(row.loss) + "\n";
  return out;
}

inline std::string sweep_csv(
    std::span<const std::pair<double, double>> rows) {
  std::string out = "nu,d_b_nu\n";
  for (const auto& [nu, v] : rows)
    out += format_double(nu) + "," + format_double(v) + "\n";
  return out;
}

inline std::string trace_csv(const exponent_trace& tr) {
  std::string out = "n,error,exponent_estimate,reference\n";
  for (const auto& row : tr.rows)
    out += std::to_string(row.n) + "," + format_double(row.error) + "," +
           format_double(row.estimate) + "," + format_double(tr.reference) +
           "\n";
  return out;
}

inline json trace_metadata(const exponent_trace& tr) {
  json j{{"base", to_string(tr.base)},
         {"reference", tr.reference},
         {"nu", tr.nu.is_infinity() ? json("inf") : json(tr.nu.value())}};
  if (tr.epsilon) {
    j["epsilon"] = *tr.epsilon;
    j["beta_reading"] =
        tr.reading == beta_reading::nu_loss ? "nu" : "classical";
  }
  if (tr.pr) j["prior"] = {tr.pr->pi0, tr.pr->pi1};
  return j;
}

// ---- files -----------------------------------------------------------------

/// Write via a temp file in the same directory, then rename into place.
inline void write_atomic(const std::filesystem::path& path,
                         std::string_view content) {
  const auto tmp = path.parent_path() /
                   (path.filename().string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw validation_error("cannot open " + tmp.string());
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw validation_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace nuht
