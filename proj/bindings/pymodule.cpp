#include <pybind11/pybind11.h>

#include "kisinram/corpus.hpp"
#include "kisinram/json_io.hpp"
#include "kisinram/ramification.hpp"

namespace py = pybind11;
using namespace kisinram;

namespace {

Json dispatch(const std::string& command, const Json& in) {
  Json out;
  if (command == "eheight") {
    KisinModule M = module_from_json(in);
    out["eheight"] = e_height(M.A, M.field->p);
    out["bound"] = M.e * M.r;
  } else if (command == "lower-breaks") {
    KisinModule M = module_from_json(in);
    out["jumps"] = jumps_to_json(lower_breaks(M));
  } else if (command == "upper-jumps") {
    KisinModule M = module_from_json(in);
    DualityData D = duality_data(M);
    out["jumps"] = jumps_to_json(upper_jumps(D));
  } else if (command == "duality-report") {
    KisinModule M = module_from_json(in);
    DualityData D = duality_data(M);
    DualityChecks C = run_duality_checks(D);
    out["jumps"] = jumps_to_json(D.breaks);
    out["dual_jumps"] = jumps_to_json(D.dual_breaks);
    out["upper_jumps"] = jumps_to_json(upper_jumps(D));
    out["gram_invertible"] = C.gram_invertible;
    out["all_checks_pass"] = C.gram_invertible && C.breaks_bounded &&
                             C.jumps_bounded && C.dim_sum_ok &&
                             C.double_orthogonal_ok;
  } else if (command == "compare-mixed") {
    Json jm = in.contains("module") ? in["module"] : in;
    long long N = in.contains("N") ? in["N"].get<long long>() : 2;
    long long p = jm["p"].get<long long>();
    long long e = jm["e"].get<long long>();
    int d = (int)jm["A"].size();
    KisinModule M = module_from_json(jm, 0, 0, mixed_min_prec(p, e, d, N));
    EisensteinPoly E = in.contains("E")
                           ? eisenstein_from_json(in["E"], p, e)
                           : default_eisenstein(p, e);
    CompareReport rep = compare_mod_p(M, E, N);
    out["mod_p_match"] = rep.all_equal;
    try {
      std::vector<Rat> mixed = mixed_lower_breaks(mixed_presentation(M, E, N));
      out["breaks_equal"] = (mixed == lower_breaks(M));
    } catch (const MathError& err) {
      if (err.code != "inconclusive") throw;
      out["breaks_equal"] = "inconclusive";
    }
  } else {
    throw InputError("unknown command: " + command);
  }
  return out;
}

} // namespace

PYBIND11_MODULE(_kisinram, mod) {
  mod.doc() = "ramification computations for mod-p Kisin modules";
  mod.attr("__version__") = "1.0.0";
  mod.def(
      "run",
      [](const std::string& command, const std::string& input) {
        Json in = Json::parse(input, nullptr, false);
        if (in.is_discarded()) throw InputError("input is not valid JSON");
        try {
          return dispatch(command, in).dump();
        } catch (const MathError& err) {
          Json e;
          e["code"] = err.code;
          e["message"] = err.what();
          throw py::value_error(e.dump());
        }
      },
      py::arg("command"), py::arg("input"),
      "Run a named computation on a JSON input string; returns a JSON string.");
}
