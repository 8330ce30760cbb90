#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "kisinram/corpus.hpp"
#include "kisinram/json_io.hpp"
#include "kisinram/ramification.hpp"

namespace {

using namespace kisinram;

struct Options {
  std::string command;
  std::string input_path;
  std::string output_path;
  long long prec = 0;
  long long denom_cap = 0;
  bool pretty = false;
  bool compact = false;
};

Json read_input(const Options& opt) {
  std::string text;
  if (opt.input_path.empty() || opt.input_path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(opt.input_path);
    if (!in) throw InputError("cannot open input file: " + opt.input_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("input is not valid JSON");
  return j;
}

void write_output(const Options& opt, const Json& doc) {
  std::string text = opt.pretty ? doc.dump(2) : doc.dump();
  text.push_back('\n');
  if (opt.output_path.empty() || opt.output_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(opt.output_path, std::ios::binary);
    if (!out) throw InputError("cannot open output file: " + opt.output_path);
    out << text;
  }
}

// some commands wrap the module with extra keys ({"module":..., "E":...})
Json module_part(const Json& j) {
  if (j.is_object() && j.contains("module")) return j["module"];
  return j;
}

KisinModule parse_module(const Json& j, const Options& opt,
                         long long min_prec = 0) {
  return module_from_json(module_part(j), opt.prec, opt.denom_cap, min_prec);
}

Json solution_set_to_json(const SolutionSet& sols) {
  Json out;
  out["p"] = sols.p;
  out["m"] = sols.field->m;
  Json mod = Json::array();
  for (long long c : sols.field->modulus) mod.push_back(c);
  out["field_modulus"] = std::move(mod);
  out["prec"] = rat_to_json(sols.prec);
  Json basis = Json::array();
  for (auto& vec : sols.basis) {
    Json jvec = Json::array();
    for (auto& s : vec) jvec.push_back(series_to_json(s));
    basis.push_back(std::move(jvec));
  }
  out["basis"] = std::move(basis);
  return out;
}

Json mat_to_json(const SeriesMat& A) {
  Json out = Json::array();
  for (auto& row : A) {
    Json jrow = Json::array();
    for (auto& s : row) jrow.push_back(series_to_json(s));
    out.push_back(std::move(jrow));
  }
  return out;
}

Json fp_mat_to_json(const FpMat& A) {
  Json out = Json::array();
  for (auto& row : A) {
    Json jrow = Json::array();
    for (long long x : row) jrow.push_back(x);
    out.push_back(std::move(jrow));
  }
  return out;
}

Json gram_to_json(const GramData& g) {
  Json out;
  out["gram"] = fp_mat_to_json(g.mat);
  Json sharp = Json::array();
  for (auto& row : g.sharp) {
    Json jrow = Json::array();
    for (char c : row) jrow.push_back((bool)c);
    sharp.push_back(std::move(jrow));
  }
  out["sharp"] = std::move(sharp);
  out["all_sharp"] = g.all_sharp;
  out["tbar"] = series_to_json(g.tbar);
  return out;
}

int thread_count() {
  if (const char* env = std::getenv("KISINRAM_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? (int)hc : 1;
}

Json run_command(const Options& opt) {
  Json out;
  if (opt.command == "snf") {
    Json in = read_input(opt);
    KisinModule M = parse_module(in, opt);
    SmithData snf = smith_normal_form(M.A, 1, M.field->p);
    out["effective_config"] = effective_config(M);
    Json exps = Json::array();
    for (long long s : snf.exps) exps.push_back(s);
    out["exps"] = std::move(exps);
    out["P"] = mat_to_json(snf.P);
    out["Q"] = mat_to_json(snf.Q);
  } else if (opt.command == "eheight") {
    Json in = read_input(opt);
    KisinModule M = parse_module(in, opt);
    out["effective_config"] = effective_config(M);
    out["eheight"] = e_height(M.A, M.field->p);
    out["bound"] = M.e * M.r;
  } else if (opt.command == "dual") {
    Json in = read_input(opt);
    KisinModule M = parse_module(in, opt);
    out["effective_config"] = effective_config(M);
    out["dual"] = module_to_json(dual(M));
  } else if (opt.command == "basechange") {
    Json in = read_input(opt);
    KisinModule M = parse_module(in, opt);
    if (!in.is_object() || !in.contains("N"))
      throw InputError("basechange needs {\"module\": ..., \"N\": ...}");
    long long N = in["N"].get<long long>();
    out["effective_config"] = effective_config(M);
    out["module"] = module_to_json(base_change(M, N));
  } else if (opt.command == "solve") {
    Json in = read_input(opt);
    KisinModule M = parse_module(in, opt);
    SolutionSet sols =
        solve_for_module(M, default_target_prec(M.e, M.r, M.field->p));
    out["effective_config"] = effective_config(M);
    out["solutions"] = solution_set_to_json(sols);
  } else if (opt.command == "lower-breaks") {
    Json in = read_input(opt);
    KisinModule M = parse_module(in, opt);
    out["effective_config"] = effective_config(M);
    out["jumps"] = jumps_to_json(lower_breaks(M));
  } else if (opt.command == "upper-jumps") {
    Json in = read_input(opt);
    KisinModule M = parse_module(in, opt);
    DualityData D = duality_data(M);
    out["effective_config"] = effective_config(M);
    out["jumps"] = jumps_to_json(upper_jumps(D));
    Json dims = Json::array();
    for (const Rat& j : upper_jumps(D)) {
      Json at;
      at["j"] = rat_to_json(j);
      at["dim"] = upper_dim(D, j);
      dims.push_back(std::move(at));
    }
    out["dims"] = std::move(dims);
  } else if (opt.command == "pairing") {
    Json in = read_input(opt);
    KisinModule M = parse_module(in, opt);
    DualityData D = duality_data(M);
    out["effective_config"] = effective_config(M);
    Json g = gram_to_json(D.gram);
    for (auto& [k, v] : g.items()) out[k] = v;
  } else if (opt.command == "duality-report") {
    Json in = read_input(opt);
    KisinModule M = parse_module(in, opt);
    DualityData D = duality_data(M);
    DualityChecks C = run_duality_checks(D);
    out["effective_config"] = effective_config(M);
    out["jumps"] = jumps_to_json(D.breaks);
    out["dual_jumps"] = jumps_to_json(D.dual_breaks);
    out["upper_jumps"] = jumps_to_json(upper_jumps(D));
    Json g = gram_to_json(D.gram);
    out["gram"] = g["gram"];
    out["gram_sharp"] = g["sharp"];
    Json checks;
    checks["gram_invertible"] = C.gram_invertible ? "pass" : "fail";
    checks["breaks_bounded"] = C.breaks_bounded ? "pass" : "fail";
    checks["jumps_bounded"] = C.jumps_bounded ? "pass" : "fail";
    checks["dim_sum"] = C.dim_sum_ok ? "pass" : "fail";
    checks["double_orthogonal"] = C.double_orthogonal_ok ? "pass" : "fail";
    out["checks"] = std::move(checks);
  } else if (opt.command == "breuil") {
    Json in = read_input(opt);
    Json jm = module_part(in);
    long long p = jm.contains("p") ? jm["p"].get<long long>() : 0;
    long long e = jm.contains("e") ? jm["e"].get<long long>() : 0;
    KisinModule M = parse_module(in, opt);
    EisensteinPoly E = (in.is_object() && in.contains("E"))
                           ? eisenstein_from_json(in["E"], p, e)
                           : default_eisenstein(M.field->p, M.e);
    BreuilData B = breuil_data(M, E);
    out["effective_config"] = effective_config(M);
    Json rlist = Json::array();
    for (long long r : B.rlist) rlist.push_back(r);
    out["r"] = std::move(rlist);
    out["G"] = mat_to_json(B.Gtilde);
  } else if (opt.command == "compare-mixed") {
    Json in = read_input(opt);
    Json jm = module_part(in);
    long long N = (in.is_object() && in.contains("N")) ? in["N"].get<long long>() : 2;
    long long p = jm.contains("p") ? jm["p"].get<long long>() : 0;
    long long e = jm.contains("e") ? jm["e"].get<long long>() : 0;
    long long d = jm.contains("A") && jm["A"].is_array() ? (long long)jm["A"].size() : 1;
    KisinModule M = parse_module(in, opt, mixed_min_prec(p, e, (int)d, N));
    EisensteinPoly E = (in.is_object() && in.contains("E"))
                           ? eisenstein_from_json(in["E"], M.field->p, M.e)
                           : default_eisenstein(M.field->p, M.e);
    CompareReport rep = compare_mod_p(M, E, N);
    out["effective_config"] = effective_config(M);
    Json breuil;
    Json rlist = Json::array();
    for (long long r : rep.breuil.rlist) rlist.push_back(r);
    breuil["r"] = std::move(rlist);
    breuil["G"] = mat_to_json(rep.breuil.Gtilde);
    out["breuil"] = std::move(breuil);
    out["mixed_equations"] = mat_to_json(rep.mixed_red);
    out["equal_char_equations"] = mat_to_json(rep.equal_red);
    out["mod_p_match"] = rep.all_equal;
    try {
      MixedPresentation Mp = mixed_presentation(M, E, N);
      std::vector<Rat> mixed = mixed_lower_breaks(Mp);
      std::vector<Rat> eq = lower_breaks(M);
      out["mixed_jumps"] = jumps_to_json(mixed);
      out["breaks_equal"] = (mixed == eq);
    } catch (const MathError& err) {
      if (err.code != "inconclusive") throw;
      out["breaks_equal"] = "inconclusive";
    }
  } else if (opt.command == "verify-main") {
    std::vector<CorpusInstance> corpus;
    if (!opt.input_path.empty()) {
      Json in = read_input(opt);
      if (!in.is_object() || !in.contains("instances") ||
          !in["instances"].is_array())
        throw InputError("corpus file needs {\"instances\": [module, ...]}");
      if (in["instances"].empty()) throw InputError("empty-corpus");
      int idx = 0;
      for (auto& jm : in["instances"]) {
        KisinModule M = module_from_json(module_part(jm), opt.prec, opt.denom_cap);
        bool mixed = M.field->m == 1 && M.r == 1 && M.e % M.field->p == 0;
        if (mixed) {
          for (auto& row : M.A)
            for (auto& s : row)
              for (auto& [ex, c] : s.terms)
                if (!ex.is_integer() || ex.n % M.field->p != 0) mixed = false;
          if (mixed && M.prec < mixed_min_prec(M.field->p, M.e, M.d, 2))
            M = module_from_json(module_part(jm), opt.prec, opt.denom_cap,
                                 mixed_min_prec(M.field->p, M.e, M.d, 2));
        }
        corpus.push_back({"instance-" + std::to_string(idx++), M, mixed});
      }
    } else {
      corpus = shipped_corpus();
    }
    VerifySummary sum = verify_corpus(corpus, thread_count());
    out["total"] = sum.total;
    out["passed"] = sum.passed;
    out["failed"] = sum.failed;
    out["inconclusive"] = sum.inconclusive;
    Json results = Json::array();
    for (auto& res : sum.results) {
      Json jr;
      jr["name"] = res.name;
      jr["pass"] = res.pass;
      if (res.inconclusive) jr["inconclusive"] = true;
      if (!res.detail.empty()) jr["detail"] = res.detail;
      results.push_back(std::move(jr));
    }
    out["results"] = std::move(results);
    if (sum.failed > 0) out["__exit"] = 2;
  } else {
    throw InputError("unknown command: " + opt.command);
  }
  return out;
}

} // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"ramification computations for mod-p Kisin modules"};
  app.require_subcommand(1);
  for (const char* name :
       {"snf", "eheight", "dual", "solve", "lower-breaks", "upper-jumps",
        "pairing", "duality-report", "basechange", "breuil", "compare-mixed",
        "verify-main"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", opt.input_path, "input JSON file (default stdin)");
    sub->add_option("--output", opt.output_path, "output file (default stdout)");
    sub->add_option("--prec", opt.prec, "working precision override");
    sub->add_option("--denom-cap", opt.denom_cap, "exponent denominator cap");
    sub->add_flag("--pretty", opt.pretty, "indent the JSON output");
    sub->add_flag("--json", opt.compact, "compact JSON output (default)");
    sub->callback([name, &opt]() { opt.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  }

  try {
    kisinram::Json out = run_command(opt);
    int code = 0;
    if (out.contains("__exit")) {
      code = out["__exit"].get<int>();
      out.erase("__exit");
    }
    write_output(opt, out);
    return code;
  } catch (const kisinram::MathError& err) {
    kisinram::Json doc;
    kisinram::Json e;
    e["code"] = err.code;
    e["message"] = err.what();
    e["context"] = err.context;
    doc["error"] = std::move(e);
    write_output(opt, doc);
    return 2;
  } catch (const std::exception& err) {
    kisinram::Json doc;
    kisinram::Json e;
    e["code"] = "input-error";
    e["message"] = err.what();
    doc["error"] = std::move(e);
    write_output(opt, doc);
    return 1;
  }
}
