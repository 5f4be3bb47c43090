// residua: desk-scale measurements of Dirichlet characters, smooth numbers,
// character sums, nonresidue surveys, and L(1,chi) estimates. Subcommands
// write CSV or JSON-lines to stdout (or --output); progress goes to stderr.
#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "residua/character_json.hpp"
#include "residua/residua.hpp"

using namespace residua;

namespace {

struct GlobalOpts {
  std::string output_path;
  std::string format = "csv";
  bool no_header = false;
  unsigned threads = 1;
};

std::string timestamp_utc() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Output {
 public:
  Output(const GlobalOpts& g, const std::string& subcommand) {
    if (!g.output_path.empty()) {
      file_.open(g.output_path);
      if (!file_) throw std::runtime_error("cannot open output file: " + g.output_path);
    }
    if (!g.no_header) stream() << "# residua " << subcommand << " generated=" << timestamp_utc() << "\n";
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<u64> parse_exponents(const std::string& s) {
  std::vector<u64> out;
  std::string cur;
  for (char c : s + ".") {
    if (c == '.' || c == ',') {
      if (!cur.empty()) out.push_back(std::stoull(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

DirichletCharacter select_character(u64 m, const std::string& chi_spec, bool want_quadratic) {
  auto group = unit_group(m);
  if (!chi_spec.empty() && chi_spec != "-")
    return DirichletCharacter(group, parse_exponents(chi_spec));
  if (chi_spec == "-") return DirichletCharacter(group, std::vector<u64>(group->components().size(), 0));
  auto chars = enumerate_characters(group);
  if (want_quadratic) {
    std::vector<std::size_t> quads;
    for (std::size_t i = 0; i < chars.size(); ++i)
      if (chars[i].order() == 2) quads.push_back(i);
    if (quads.empty()) throw std::invalid_argument("no quadratic character mod " + std::to_string(m));
    if (quads.size() > 1)
      throw std::invalid_argument("several quadratic characters mod " + std::to_string(m) +
                                  "; pick one with --chi");
    return chars[quads[0]];
  }
  for (const auto& chi : chars)
    if (!chi.is_principal()) return chi;
  throw std::invalid_argument("no nontrivial character mod " + std::to_string(m));
}

unsigned env_threads() {
  if (const char* v = std::getenv("RESIDUA_THREADS")) {
    int n = std::atoi(v);
    if (n >= 1 && n <= 256) return static_cast<unsigned>(n);
  }
  return 1;
}

void emit_smooth_report(const GlobalOpts& g, const char* cmd, const SmoothCountReport& rep) {
  Output out(g, cmd);
  if (g.format == "jsonl") {
    out.stream() << to_jsonl(rep).dump() << "\n";
  } else {
    out.stream() << smooth_csv_header() << "\n" << to_csv_row(rep) << "\n";
  }
}

void emit_lfunc_rows(const GlobalOpts& g, const char* cmd, const std::vector<LFuncRow>& rows) {
  Output out(g, cmd);
  out.stream() << lfunc_csv_header() << "\n";
  for (const LFuncRow& r : rows) out.stream() << to_csv_row(r) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale Dirichlet character and smooth-number toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; flags take precedence");

  GlobalOpts g;
  g.threads = env_threads();
  app.add_option("--output", g.output_path, "write data here instead of stdout");
  app.add_option("--format", g.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_flag("--no-header", g.no_header, "suppress the timestamp header line");
  app.add_option("--threads", g.threads, "worker threads (env RESIDUA_THREADS)");

  auto* c_rho = app.add_subcommand("rho", "evaluate Dickman's rho");
  double rho_u = 0, rho_tol = 1e-12, rho_max = 10.0, rho_step = 1.0 / 64;
  bool rho_dump = false;
  c_rho->add_option("--u", rho_u, "evaluation point");
  c_rho->add_option("--tol", rho_tol, "absolute tolerance (>= 1e-12)");
  c_rho->add_flag("--dump", rho_dump, "emit a CSV table instead of one value");
  c_rho->add_option("--max-u", rho_max, "table dump upper end");
  c_rho->add_option("--step", rho_step, "table dump step");

  auto* c_uk = app.add_subcommand("uk", "solve rho(u) = 1/k");
  double uk_k = 2.0, uk_tol = 1e-12;
  c_uk->add_option("--k", uk_k, "k > 1")->required();
  c_uk->add_option("--tol", uk_tol, "tolerance on rho at the root");

  auto* c_psi = app.add_subcommand("psi", "count y-smooth n <= x");
  auto* c_psiq = app.add_subcommand("psiq", "count y-smooth n <= x coprime to q");
  double sm_x = 0, sm_y = 0;
  u64 sm_q = 1, sm_limit = 0;
  for (CLI::App* c : {c_psi, c_psiq}) {
    c->add_option("--x", sm_x)->required();
    c->add_option("--y", sm_y)->required();
    c->add_option("--limit", sm_limit, "sieve table size (default: x)");
  }
  c_psiq->add_option("--q", sm_q)->required();

  auto* c_charsum = app.add_subcommand("charsum", "partial character sums over an x grid");
  u64 cs_m = 0, cs_xmax = 0, cs_xstep = 1;
  std::string cs_chi, cs_emit_chi;
  double cs_eps = 0.01;
  c_charsum->add_option("--m", cs_m)->required();
  c_charsum->add_option("--chi", cs_chi, "exponent vector like 1.0.2 (default: all characters)");
  c_charsum->add_option("--x-max", cs_xmax, "grid end (default m)");
  c_charsum->add_option("--x-step", cs_xstep, "grid step");
  c_charsum->add_option("--eps", cs_eps, "epsilon in the bound shape");
  c_charsum->add_option("--emit-chi", cs_emit_chi, "also write the characters as JSON here");

  auto* c_burgess = app.add_subcommand("burgess", "bound factors M, Q, R and shapes");
  u64 bg_m = 0, bg_k = 0;
  double bg_eps = 0.01, bg_x = 0;
  c_burgess->add_option("--m", bg_m)->required();
  c_burgess->add_option("--k", bg_k)->required();
  c_burgess->add_option("--eps", bg_eps);
  c_burgess->add_option("--x", bg_x, "include shape columns at this x");

  auto* c_nonres = app.add_subcommand("nonres-survey", "nonresidue counts against thresholds");
  auto* c_res = app.add_subcommand("residue-survey", "residue counts against thresholds");
  SurveyConfig survey;
  std::string kinds_csv;
  double b_override = -1;
  bool filter_primes = false, filter_odd = false;
  for (CLI::App* c : {c_nonres, c_res}) {
    c->add_option("--mod-start", survey.mod_start)->required();
    c->add_option("--mod-end", survey.mod_end)->required();
    c->add_flag("--primes", filter_primes, "prime moduli only");
    c->add_flag("--odd", filter_odd, "odd moduli only");
    c->add_option("--epsilon", survey.epsilon);
    c->add_option("--k0", survey.k0);
    c->add_option("--kinds", kinds_csv, "comma list of T11,T12,T23,T24,T15,GAUSS");
    c->add_option("--b-override", b_override, "fixed counting bound instead of the threshold");
  }

  auto* c_hyp = app.add_subcommand("hyperbola", "three-term divisor-sum split");
  u64 hy_m = 0, hy_x = 10000;
  double hy_upsilon = 0.5;
  std::string hy_chi;
  c_hyp->add_option("--m", hy_m)->required();
  c_hyp->add_option("--chi", hy_chi);
  c_hyp->add_option("--x", hy_x);
  c_hyp->add_option("--upsilon", hy_upsilon);

  auto* c_l1 = app.add_subcommand("l1", "L(1,chi) by truncated series with tail bound");
  u64 l1_m = 0, l1_T = 0;
  std::string l1_chi;
  c_l1->add_option("--m", l1_m)->required();
  c_l1->add_option("--chi", l1_chi);
  c_l1->add_option("--T", l1_T, "series truncation (default max(m, 10^6))");

  auto* c_wolke = app.add_subcommand("wolke", "prime-residue reciprocal sum vs L(1,chi)");
  u64 wo_m = 0;
  std::string wo_chi;
  c_wolke->add_option("--m", wo_m)->required();
  c_wolke->add_option("--chi", wo_chi);

  auto* c_ident = app.add_subcommand("identity-check", "the k-fold sum identity, exactly");
  u64 id_m = 0;
  double id_x = 0, id_y = -1;
  u64 id_q = 0;
  std::string id_chi;
  c_ident->add_option("--m", id_m)->required();
  c_ident->add_option("--chi", id_chi);
  c_ident->add_option("--x", id_x)->required();
  c_ident->add_option("--q", id_q, "explicit coprimality modulus");
  c_ident->add_option("--y", id_y, "q = product of prime nonresidues <= y (default m)");

  for (CLI::App* sc : {c_rho, c_uk, c_psi, c_psiq, c_charsum, c_burgess, c_nonres, c_res,
                       c_hyp, c_l1, c_wolke, c_ident})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) return app.exit(e);
    std::ostringstream oss;
    app.exit(e, oss, oss);
    std::cerr << oss.str();
    return 2;
  }

  try {
    if (*c_rho) {
      if (rho_dump) {
        Output out(g, "rho");
        out.stream() << "u,rho\n";
        for (double u = 0.0; u <= rho_max + 1e-12; u += rho_step)
          out.stream() << fmt_double(u) << ',' << fmt_double(rho(u, rho_tol)) << "\n";
      } else {
        std::cout << fmt_double(rho(rho_u, rho_tol)) << "\n";
      }
    } else if (*c_uk) {
      double u = u_k(uk_k, uk_tol);
      std::cout << fmt_double(u) << " residual=" << fmt_double(std::fabs(rho(u) - 1.0 / uk_k))
                << "\n";
    } else if (*c_psi || *c_psiq) {
      u64 limit = sm_limit ? sm_limit : static_cast<u64>(sm_x);
      SmoothCounter counter(limit);
      u64 q = (*c_psiq) ? sm_q : 1;
      emit_smooth_report(g, (*c_psiq) ? "psiq" : "psi", counter.tenenbaum_compare(sm_x, sm_y, q));
    } else if (*c_charsum) {
      if (!cs_xmax) cs_xmax = cs_m;
      std::vector<DirichletCharacter> chars;
      if (cs_chi.empty())
        chars = enumerate_characters(cs_m);
      else
        chars.push_back(select_character(cs_m, cs_chi, false));
      Output out(g, "charsum");
      out.stream() << charsum_csv_header() << "\n";
      for (const auto& chi : chars)
        for (const CharSumRow& row : charsum_grid(chi, cs_xmax, cs_xstep, cs_eps))
          out.stream() << to_csv_row(row) << "\n";
      if (!cs_emit_chi.empty()) {
        std::ofstream jf(cs_emit_chi);
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& chi : chars) arr.push_back(character_to_json(chi));
        jf << arr.dump(2) << "\n";
      }
    } else if (*c_burgess) {
      BurgessFactors b = burgess_factors(bg_m, bg_k);
      Output out(g, "burgess");
      if (bg_x > 0) {
        out.stream() << "m,k,M,Q,R,shape_r2,shape_r3,shape_r4,shape_r5,shape_r6\n";
        out.stream() << b.m << ',' << b.k << ',' << b.M << ',' << b.Q << ',' << fmt_double(b.R);
        for (unsigned r = 2; r <= 6; ++r)
          out.stream() << ',' << fmt_double(burgess_bound_shape(bg_m, bg_k, r, bg_eps, bg_x));
        out.stream() << "\n";
      } else {
        out.stream() << "m,k,M,Q,R\n";
        out.stream() << b.m << ',' << b.k << ',' << b.M << ',' << b.Q << ',' << fmt_double(b.R)
                     << "\n";
      }
    } else if (*c_nonres || *c_res) {
      if (filter_primes && filter_odd)
        throw std::invalid_argument("pick at most one of --primes / --odd");
      survey.filter = filter_primes ? ModulusFilter::Primes
                                    : (filter_odd ? ModulusFilter::Odd : ModulusFilter::All);
      if (!kinds_csv.empty()) {
        survey.kinds.clear();
        std::string cur;
        for (char c : kinds_csv + ",") {
          if (c == ',') {
            if (!cur.empty()) survey.kinds.push_back(parse_threshold_kind(cur));
            cur.clear();
          } else {
            cur += c;
          }
        }
      } else if (*c_res) {
        survey.kinds = {ThresholdKind::T15};
      }
      if (b_override >= 0) survey.B_override = b_override;
      survey.threads = g.threads;
      survey.format = g.format == "jsonl" ? OutputFormat::Jsonl : OutputFormat::Csv;
      std::vector<SurveyRecord> rows = run_survey(survey);
      Output out(g, (*c_nonres) ? "nonres-survey" : "residue-survey");
      write_survey(out.stream(), rows, survey.format);
      std::cerr << "wrote " << rows.size() << " rows\n";
    } else if (*c_hyp) {
      DirichletCharacter chi = select_character(hy_m, hy_chi, true);
      HyperbolaBreakdown h = sum_r_hyperbola(chi, hy_x, hy_upsilon);
      LFuncRow row;
      row.m = hy_m;
      row.x = h.x;
      row.upsilon = h.upsilon;
      row.term1 = h.term1;
      row.term2 = h.term2;
      row.term3 = h.term3;
      row.total = h.total;
      row.direct_total = h.direct_total;
      emit_lfunc_rows(g, "hyperbola", {row});
      if (h.total != h.direct_total) {
        std::cerr << "hyperbola identity violated\n";
        return 1;
      }
    } else if (*c_l1) {
      DirichletCharacter chi = select_character(l1_m, l1_chi, true);
      u64 T = l1_T ? l1_T : std::max<u64>(l1_m, 1000000);
      LOneEstimate est = l_one(chi, T);
      LFuncRow row;
      row.m = l1_m;
      row.l1_estimate = est.value;
      row.tail_bound = est.tail_bound;
      emit_lfunc_rows(g, "l1", {row});
    } else if (*c_wolke) {
      DirichletCharacter chi = select_character(wo_m, wo_chi, true);
      WolkeComparison w = wolke_compare(chi);
      LFuncRow row;
      row.m = wo_m;
      row.l1_estimate = w.l1;
      row.tail_bound = w.l1_tail;
      row.wolke_lhs = w.lhs;
      row.wolke_rhs = w.rhs;
      emit_lfunc_rows(g, "wolke", {row});
    } else if (*c_ident) {
      DirichletCharacter chi = select_character(id_m, id_chi, false);
      IdentityCheckResult r = id_q ? fund_identity_check(chi, id_x, id_q)
                                   : fund_identity_check_y(chi, id_x,
                                                           id_y < 0 ? double(id_m) : id_y);
      if (r.equal) {
        std::cout << "OK lhs=rhs=" << r.rhs << "\n";
      } else {
        std::cout << "MISMATCH lhs=" << fmt_double(r.lhs) << " rhs=" << r.rhs << "\n";
        return 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
