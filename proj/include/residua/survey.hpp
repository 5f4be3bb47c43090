// Survey orchestration and serialization: batch nonresidue/residue
// measurements over a modulus range, parallel over moduli with output bytes
// independent of the thread count, and RFC-4180-style CSV / JSON-lines
// writers for every report schema.
#pragma once

#include <atomic>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "residua/arithmetic.hpp"
#include "residua/characters.hpp"
#include "residua/charsums.hpp"
#include "residua/lfunc.hpp"
#include "residua/residues.hpp"
#include "residua/smooth.hpp"

namespace residua {

inline std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

enum class ModulusFilter { All, Primes, Odd };
enum class OutputFormat { Csv, Jsonl };

struct SurveyConfig {
  u64 mod_start = 3;
  u64 mod_end = 1000;
  ModulusFilter filter = ModulusFilter::All;
  double epsilon = 0.1;
  u64 k0 = 2;
  std::vector<ThresholdKind> kinds = {ThresholdKind::T11};
  std::optional<double> B_override;
  std::string output_path;  // empty = stdout
  OutputFormat format = OutputFormat::Csv;
  unsigned threads = 1;

  void validate() const {
    if (mod_start < 2 || mod_start > mod_end)
      throw std::invalid_argument("survey: need 2 <= mod_start <= mod_end");
    if (!(epsilon > 0.0)) throw std::invalid_argument("survey: epsilon must be positive");
    if (k0 < 2) throw std::invalid_argument("survey: k0 must be >= 2");
    if (threads < 1 || threads > 256) throw std::invalid_argument("survey: threads must be in [1,256]");
    if (kinds.empty()) throw std::invalid_argument("survey: at least one threshold kind");
  }
};

// One record per (modulus, nontrivial character, threshold kind). Rows are
// ordered by modulus, then character enumeration order, then kind order;
// the computation parallelizes over moduli without affecting the bytes.
inline std::vector<SurveyRecord> run_survey(const SurveyConfig& cfg) {
  cfg.validate();
  std::vector<u64> moduli;
  for (u64 m = cfg.mod_start; m <= cfg.mod_end; ++m) {
    if (cfg.filter == ModulusFilter::Primes && !is_prime(m)) continue;
    if (cfg.filter == ModulusFilter::Odd && m % 2 == 0) continue;
    moduli.push_back(m);
  }
  std::vector<std::vector<SurveyRecord>> per_modulus(moduli.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= moduli.size()) return;
      u64 m = moduli[i];
      std::vector<SurveyRecord>& rows = per_modulus[i];
      for (const DirichletCharacter& chi : enumerate_characters(m)) {
        if (chi.is_principal()) continue;
        u64 least = least_nonresidue(chi);
        for (ThresholdKind kind : cfg.kinds) {
          SurveyRecord rec;
          rec.m = m;
          rec.chi_label = chi.label();
          rec.k = chi.order();
          rec.epsilon = cfg.epsilon;
          rec.k0 = cfg.k0;
          rec.threshold_kind = kind;
          rec.threshold_value = theorem_threshold(kind, m, cfg.epsilon, cfg.k0, chi.order());
          rec.least_nonresidue = least;
          double bound = cfg.B_override.value_or(rec.threshold_value);
          rec.y = bound;
          if (bound >= 2.0) {
            std::vector<u64> nonres = prime_nonresidues_upto(chi, bound);
            rec.prime_nonresidue_count = nonres.size();
            rec.prime_residue_count = prime_residues_upto(chi, bound).size();
            rec.omega_q = nonres.size();
          }
          rows.push_back(std::move(rec));
        }
      }
    }
  };
  unsigned nthreads = std::min<std::size_t>(cfg.threads, std::max<std::size_t>(moduli.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  std::vector<SurveyRecord> out;
  for (auto& rows : per_modulus)
    for (auto& r : rows) out.push_back(std::move(r));
  return out;
}

inline std::string survey_csv_header() {
  return "m,chi_label,k,epsilon,k0,threshold_kind,threshold_value,least_nonresidue,"
         "prime_nonresidue_count,prime_residue_count,omega_q,y";
}

inline std::string to_csv_row(const SurveyRecord& r) {
  std::string s;
  s += std::to_string(r.m);
  s += ',';
  s += r.chi_label;
  s += ',';
  s += std::to_string(r.k);
  s += ',';
  s += fmt_double(r.epsilon);
  s += ',';
  s += std::to_string(r.k0);
  s += ',';
  s += to_string(r.threshold_kind);
  s += ',';
  s += fmt_double(r.threshold_value);
  s += ',';
  if (r.least_nonresidue) s += std::to_string(*r.least_nonresidue);
  s += ',';
  s += std::to_string(r.prime_nonresidue_count);
  s += ',';
  s += std::to_string(r.prime_residue_count);
  s += ',';
  s += std::to_string(r.omega_q);
  s += ',';
  s += fmt_double(r.y);
  return s;
}

inline nlohmann::ordered_json to_jsonl(const SurveyRecord& r) {
  nlohmann::ordered_json j;
  j["m"] = r.m;
  j["chi_label"] = r.chi_label;
  j["k"] = r.k;
  j["epsilon"] = r.epsilon;
  j["k0"] = r.k0;
  j["threshold_kind"] = to_string(r.threshold_kind);
  j["threshold_value"] = r.threshold_value;
  if (r.least_nonresidue)
    j["least_nonresidue"] = *r.least_nonresidue;
  else
    j["least_nonresidue"] = nullptr;
  j["prime_nonresidue_count"] = r.prime_nonresidue_count;
  j["prime_residue_count"] = r.prime_residue_count;
  j["omega_q"] = r.omega_q;
  j["y"] = r.y;
  return j;
}

inline void write_survey(std::ostream& os, const std::vector<SurveyRecord>& records,
                         OutputFormat format) {
  if (format == OutputFormat::Csv) {
    os << survey_csv_header() << '\n';
    for (const SurveyRecord& r : records) os << to_csv_row(r) << '\n';
  } else {
    for (const SurveyRecord& r : records) os << to_jsonl(r).dump() << '\n';
  }
}

// ---- smooth-count reports -------------------------------------------------

inline std::string smooth_csv_header() {
  return "x,y,q,exact,rho_pred,tenenbaum_pred,rel_err_rho,rel_err_ten,hypothesis_ok";
}

inline std::string to_csv_row(const SmoothCountReport& r) {
  std::string s;
  s += fmt_double(r.x);
  s += ',';
  s += fmt_double(r.y);
  s += ',';
  s += std::to_string(r.q);
  s += ',';
  s += std::to_string(r.exact_count);
  s += ',';
  s += fmt_double(r.rho_prediction);
  s += ',';
  s += fmt_double(r.tenenbaum_prediction);
  s += ',';
  s += fmt_double(r.rel_err_rho);
  s += ',';
  s += fmt_double(r.rel_err_tenenbaum);
  s += ',';
  s += r.hypothesis_ok ? "1" : "0";
  return s;
}

inline nlohmann::ordered_json to_jsonl(const SmoothCountReport& r) {
  nlohmann::ordered_json j;
  j["x"] = r.x;
  j["y"] = r.y;
  j["q"] = r.q;
  j["exact"] = r.exact_count;
  j["rho_pred"] = r.rho_prediction;
  j["tenenbaum_pred"] = r.tenenbaum_prediction;
  j["rel_err_rho"] = r.rel_err_rho;
  j["rel_err_ten"] = r.rel_err_tenenbaum;
  j["hypothesis_ok"] = r.hypothesis_ok;
  return j;
}

// ---- character sums over an x grid ----------------------------------------

struct CharSumRow {
  u64 m = 0;
  std::string chi_label;
  u64 k = 0;
  u64 x = 0;
  double sum_re = 0;
  double sum_im = 0;
  double abs_sum = 0;
  double pv_bound = 0;
  std::vector<double> shapes;  // burgess shape for r = 2..6
  std::vector<double> ratios;  // abs_sum / shape
};

inline std::string charsum_csv_header() {
  std::string s = "m,chi_label,k,x,sum_re,sum_im,abs_sum,pv_bound";
  for (int r = 2; r <= 6; ++r) s += ",shape_r" + std::to_string(r);
  for (int r = 2; r <= 6; ++r) s += ",ratio_r" + std::to_string(r);
  return s;
}

inline std::string to_csv_row(const CharSumRow& r) {
  std::string s;
  s += std::to_string(r.m);
  s += ',';
  s += r.chi_label;
  s += ',';
  s += std::to_string(r.k);
  s += ',';
  s += std::to_string(r.x);
  s += ',';
  s += fmt_double(r.sum_re);
  s += ',';
  s += fmt_double(r.sum_im);
  s += ',';
  s += fmt_double(r.abs_sum);
  s += ',';
  s += fmt_double(r.pv_bound);
  for (double v : r.shapes) {
    s += ',';
    s += fmt_double(v);
  }
  for (double v : r.ratios) {
    s += ',';
    s += fmt_double(v);
  }
  return s;
}

// Exact-prefix character sums over x = step, 2*step, ..., x_max.
inline std::vector<CharSumRow> charsum_grid(const DirichletCharacter& chi, u64 x_max,
                                            u64 x_step, double eps) {
  if (x_step < 1 || x_max < 1) throw std::invalid_argument("charsum_grid: bad grid");
  u64 m = chi.modulus();
  double pv = std::sqrt(static_cast<double>(m)) * std::log(static_cast<double>(m));
  std::vector<CharSumRow> rows;
  std::complex<double> s = 0;
  u64 n = 0;
  for (u64 x = x_step; x <= x_max; x += x_step) {
    for (; n < x;) {
      ++n;
      s += chi(static_cast<i64>(n)).to_complex();
    }
    CharSumRow row;
    row.m = m;
    row.chi_label = chi.label();
    row.k = chi.order();
    row.x = x;
    row.sum_re = s.real();
    row.sum_im = s.imag();
    row.abs_sum = std::abs(s);
    row.pv_bound = pv;
    for (unsigned r = 2; r <= 6; ++r) {
      double shape = burgess_bound_shape(m, chi.order(), r, eps, static_cast<double>(x));
      row.shapes.push_back(shape);
      row.ratios.push_back(row.abs_sum / shape);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---- hyperbola / L(1,chi) / reciprocal-sum rows ----------------------------

struct LFuncRow {
  u64 m = 0;
  std::optional<u64> x;
  std::optional<double> upsilon;
  std::optional<i64> term1, term2, term3, total, direct_total;
  std::optional<double> l1_estimate, tail_bound, wolke_lhs, wolke_rhs;
};

inline std::string lfunc_csv_header() {
  return "m,x,upsilon,term1,term2,term3,total,direct_total,l1_estimate,tail_bound,"
         "wolke_lhs,wolke_rhs";
}

inline std::string to_csv_row(const LFuncRow& r) {
  auto opt_i = [](const std::optional<i64>& v) { return v ? std::to_string(*v) : std::string(); };
  auto opt_u = [](const std::optional<u64>& v) { return v ? std::to_string(*v) : std::string(); };
  auto opt_d = [](const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); };
  std::string s;
  s += std::to_string(r.m);
  s += ',' + opt_u(r.x);
  s += ',' + opt_d(r.upsilon);
  s += ',' + opt_i(r.term1);
  s += ',' + opt_i(r.term2);
  s += ',' + opt_i(r.term3);
  s += ',' + opt_i(r.total);
  s += ',' + opt_i(r.direct_total);
  s += ',' + opt_d(r.l1_estimate);
  s += ',' + opt_d(r.tail_bound);
  s += ',' + opt_d(r.wolke_lhs);
  s += ',' + opt_d(r.wolke_rhs);
  return s;
}

}  // namespace residua
