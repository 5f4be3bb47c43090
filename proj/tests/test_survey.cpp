#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "residua/survey.hpp"

using namespace residua;

TEST_CASE("survey config validation") {
  SurveyConfig cfg;
  cfg.validate();
  cfg.mod_start = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.mod_start = 10;
  cfg.mod_end = 5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.mod_end = 100;
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.epsilon = 0.1;
  cfg.k0 = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.k0 = 2;
  cfg.threads = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.threads = 1;
  cfg.kinds.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("survey rows match direct measurements") {
  SurveyConfig cfg;
  cfg.mod_start = 7;
  cfg.mod_end = 7;
  cfg.epsilon = 0.1;
  std::vector<SurveyRecord> rows = run_survey(cfg);
  REQUIRE(rows.size() == 5);  // phi(7) - 1 nontrivial characters, one kind each

  auto chars = enumerate_characters(7);
  std::size_t idx = 0;
  for (const auto& chi : chars) {
    if (chi.is_principal()) continue;
    const SurveyRecord& r = rows[idx++];
    CHECK(r.m == 7);
    CHECK(r.chi_label == chi.label());
    CHECK(r.k == chi.order());
    CHECK(r.threshold_kind == ThresholdKind::T11);
    CHECK(r.threshold_value ==
          Catch::Approx(theorem_threshold(ThresholdKind::T11, 7, 0.1)));
    REQUIRE(r.least_nonresidue.has_value());
    CHECK(*r.least_nonresidue == least_nonresidue(chi));
    double bound = r.threshold_value;
    if (bound >= 2.0) {
      CHECK(r.prime_nonresidue_count == prime_nonresidues_upto(chi, bound).size());
      CHECK(r.prime_residue_count == prime_residues_upto(chi, bound).size());
      CHECK(r.omega_q == r.prime_nonresidue_count);
    }
    CHECK(r.y == bound);
  }
}

TEST_CASE("survey output bytes are independent of thread count") {
  SurveyConfig one;
  one.mod_start = 3;
  one.mod_end = 120;
  one.kinds = {ThresholdKind::T11, ThresholdKind::T15};
  one.threads = 1;
  SurveyConfig eight = one;
  eight.threads = 8;

  std::ostringstream a, b;
  write_survey(a, run_survey(one), OutputFormat::Csv);
  write_survey(b, run_survey(eight), OutputFormat::Csv);
  REQUIRE(a.str() == b.str());
  CHECK(a.str().starts_with(survey_csv_header()));

  std::ostringstream ja, jb;
  write_survey(ja, run_survey(one), OutputFormat::Jsonl);
  write_survey(jb, run_survey(eight), OutputFormat::Jsonl);
  REQUIRE(ja.str() == jb.str());
}

TEST_CASE("survey filters") {
  SurveyConfig cfg;
  cfg.mod_start = 3;
  cfg.mod_end = 30;
  cfg.filter = ModulusFilter::Primes;
  for (const SurveyRecord& r : run_survey(cfg)) CHECK(is_prime(r.m));
  cfg.filter = ModulusFilter::Odd;
  for (const SurveyRecord& r : run_survey(cfg)) CHECK(r.m % 2 == 1);
}

TEST_CASE("survey B override replaces the counting bound") {
  SurveyConfig cfg;
  cfg.mod_start = 7;
  cfg.mod_end = 7;
  cfg.B_override = 10.0;
  std::vector<SurveyRecord> rows = run_survey(cfg);
  auto chars = enumerate_characters(7);
  const DirichletCharacter* quad = nullptr;
  for (const auto& chi : chars)
    if (chi.order() == 2) quad = &chi;
  REQUIRE(quad);
  bool found = false;
  for (const SurveyRecord& r : rows) {
    if (r.chi_label != quad->label()) continue;
    found = true;
    CHECK(r.y == 10.0);
    CHECK(r.prime_nonresidue_count == 2);  // {3, 5}
    CHECK(r.prime_residue_count == 1);     // {2}
    CHECK(r.omega_q == 2);
  }
  CHECK(found);
}

TEST_CASE("CSV row formats") {
  SurveyRecord r;
  r.m = 7;
  r.chi_label = "3";
  r.k = 2;
  r.epsilon = 0.1;
  r.k0 = 2;
  r.threshold_kind = ThresholdKind::T11;
  r.threshold_value = 1.63;
  r.least_nonresidue = 3;
  r.prime_nonresidue_count = 2;
  r.prime_residue_count = 1;
  r.omega_q = 2;
  r.y = 10;
  CHECK(to_csv_row(r) == "7,3,2,0.1,2,T11,1.63,3,2,1,2,10");
  CHECK(survey_csv_header() ==
        "m,chi_label,k,epsilon,k0,threshold_kind,threshold_value,least_nonresidue,"
        "prime_nonresidue_count,prime_residue_count,omega_q,y");

  r.least_nonresidue.reset();
  CHECK(to_csv_row(r) == "7,3,2,0.1,2,T11,1.63,,2,1,2,10");

  nlohmann::ordered_json j = to_jsonl(r);
  CHECK(j["m"] == 7);
  CHECK(j["least_nonresidue"].is_null());
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"m", "chi_label", "k", "epsilon", "k0",
                                         "threshold_kind", "threshold_value",
                                         "least_nonresidue", "prime_nonresidue_count",
                                         "prime_residue_count", "omega_q", "y"});
}

TEST_CASE("charsum grid rows") {
  auto chars = enumerate_characters(7);
  const DirichletCharacter* quad = nullptr;
  for (const auto& chi : chars)
    if (chi.order() == 2) quad = &chi;
  REQUIRE(quad);
  std::vector<CharSumRow> rows = charsum_grid(*quad, 7, 1, 0.01);
  REQUIRE(rows.size() == 7);
  CHECK(rows[2].x == 3);
  CHECK(rows[2].sum_re == Catch::Approx(1.0).margin(1e-9));  // 1 + 1 - 1
  CHECK(rows[6].abs_sum < 1e-9);                             // full period
  for (const CharSumRow& row : rows) {
    REQUIRE(row.shapes.size() == 5);
    REQUIRE(row.ratios.size() == 5);
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(row.ratios[i] == Catch::Approx(row.abs_sum / row.shapes[i]).margin(1e-12));
  }
  // header and row column counts line up
  std::string header = charsum_csv_header();
  std::string row = to_csv_row(rows[0]);
  auto count_commas = [](const std::string& s) {
    return std::count(s.begin(), s.end(), ',');
  };
  CHECK(count_commas(header) == count_commas(row));
}

TEST_CASE("smooth and lfunc row formats") {
  SmoothCountReport s;
  s.x = 100;
  s.y = 10;
  s.q = 6;
  s.exact_count = 14;
  s.rho_prediction = 30.5;
  s.tenenbaum_prediction = 15.25;
  s.rel_err_rho = 1.1785;
  s.rel_err_tenenbaum = 0.0892;
  s.hypothesis_ok = true;
  CHECK(to_csv_row(s) == "100,10,6,14,30.5,15.25,1.1785,0.0892,1");
  CHECK(smooth_csv_header() ==
        "x,y,q,exact,rho_pred,tenenbaum_pred,rel_err_rho,rel_err_ten,hypothesis_ok");

  LFuncRow l;
  l.m = 5;
  l.x = 100;
  l.upsilon = 0.5;
  l.term1 = 40;
  l.term2 = 2;
  l.term3 = 1;
  l.total = 41;
  l.direct_total = 41;
  CHECK(to_csv_row(l) == "5,100,0.5,40,2,1,41,41,,,,");
  l.l1_estimate = 0.43;
  CHECK(to_csv_row(l) == "5,100,0.5,40,2,1,41,41,0.43,,,");
}
