#include "kisinram/json_io.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "kisinram/error.hpp"

namespace kisinram {

namespace {

long long as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer())
    throw InputError(what + " must be an integer");
  return j.get<long long>();
}

Rat exponent_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rat(std::stoll(s));
      return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw InputError("malformed exponent \"" + s + "\"");
    }
  }
  throw InputError("exponent must be an integer or an \"a/b\" string");
}

FFElem coeff_from_json(const Json& j, const FieldPtr& f) {
  if (j.is_number_integer()) return ff_int(f, j.get<long long>());
  if (j.is_array()) {
    if ((int)j.size() != f->m)
      throw InputError("coefficient needs exactly m coordinates");
    std::vector<long long> coords;
    for (auto& x : j) coords.push_back(as_int(x, "coefficient coordinate"));
    return ff_make(f, std::move(coords));
  }
  throw InputError("coefficient must be an integer or a coordinate list");
}

} // namespace

Json rat_to_json(const Rat& r) { return Json::array({r.n, r.d}); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (!j.is_array() || j.size() != 2)
    throw InputError("rational must be [numerator, denominator]");
  return Rat(as_int(j[0], "numerator"), as_int(j[1], "denominator"));
}

Json ffelem_to_json(const FFElem& x) {
  if (x.field->m == 1) return Json(x.c[0]);
  Json a = Json::array();
  for (long long v : x.c) a.push_back(v);
  return a;
}

Json series_to_json(const Series& s) {
  Json terms = Json::array();
  for (auto& [e, c] : s.terms) {
    Json exp = e.is_integer() ? Json(e.n) : Json(e.str());
    terms.push_back(Json::array({exp, ffelem_to_json(c)}));
  }
  Json out;
  out["terms"] = std::move(terms);
  out["prec"] = rat_to_json(s.prec);
  return out;
}

Series series_from_json(const Json& j, const FieldPtr& f, Rat prec,
                        long long cap) {
  if (!j.is_array()) throw InputError("series literal must be a list of pairs");
  std::vector<std::pair<Rat, FFElem>> terms;
  for (auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw InputError("series term must be [exponent, coefficient]");
    terms.push_back({exponent_from_json(pair[0]), coeff_from_json(pair[1], f)});
  }
  return series_make(f, std::move(terms), prec, cap);
}

KisinModule module_from_json(const Json& j, long long prec_override,
                             long long cap_override, long long min_prec) {
  if (!j.is_object()) throw InputError("module definition must be an object");
  static const std::set<std::string> known = {
      "p", "m", "modulus", "e", "r", "c0bar", "prec", "denom_cap", "A"};
  for (auto& [key, val] : j.items())
    if (!known.count(key)) throw InputError("unknown key \"" + key + "\"");
  for (const char* req : {"p", "e", "r", "A"})
    if (!j.contains(req))
      throw InputError(std::string("missing required key \"") + req + "\"");

  long long p = as_int(j["p"], "p");
  long long m = j.contains("m") ? as_int(j["m"], "m") : 1;
  FieldPtr f;
  if (j.contains("modulus")) {
    std::vector<long long> mod;
    for (auto& x : j["modulus"]) mod.push_back(as_int(x, "modulus coefficient"));
    if ((long long)mod.size() != m + 1)
      throw InputError("modulus must have m+1 coefficients");
    f = make_field(p, std::move(mod));
  } else {
    f = canonical_field(p, (int)m);
  }
  long long e = as_int(j["e"], "e");
  long long r = as_int(j["r"], "r");
  FFElem c0bar = j.contains("c0bar") ? coeff_from_json(j["c0bar"], f)
                                     : ff_int(f, -1);
  long long prec = prec_override ? prec_override
                   : j.contains("prec") ? as_int(j["prec"], "prec")
                                        : 0;
  long long cap = cap_override ? cap_override
                  : j.contains("denom_cap") ? as_int(j["denom_cap"], "denom_cap")
                                            : 0;
  const Json& A = j["A"];
  if (!A.is_array() || A.empty())
    throw InputError("A must be a non-empty square matrix");
  int d = (int)A.size();
  if (prec == 0) prec = default_prec(p, d, e, r);
  if (prec < min_prec) prec = min_prec;
  if (cap == 0) cap = default_denom_cap(p);
  SeriesMat mat;
  for (auto& row : A) {
    if (!row.is_array() || (int)row.size() != d)
      throw InputError("A must be a square matrix");
    std::vector<Series> srow;
    for (auto& entry : row)
      srow.push_back(series_from_json(entry, f, Rat(prec), cap));
    mat.push_back(std::move(srow));
  }
  return make_module(f, e, r, c0bar, std::move(mat), prec, cap);
}

Json module_to_json(const KisinModule& M) {
  Json out;
  out["p"] = M.field->p;
  out["m"] = M.field->m;
  Json mod = Json::array();
  for (long long c : M.field->modulus) mod.push_back(c);
  out["modulus"] = std::move(mod);
  out["e"] = M.e;
  out["r"] = M.r;
  out["c0bar"] = ffelem_to_json(M.c0bar);
  out["prec"] = M.prec;
  out["denom_cap"] = M.denom_cap;
  Json A = Json::array();
  for (auto& row : M.A) {
    Json jrow = Json::array();
    for (auto& s : row) {
      Json terms = Json::array();
      for (auto& [e, c] : s.terms) {
        Json exp = e.is_integer() ? Json(e.n) : Json(e.str());
        terms.push_back(Json::array({exp, ffelem_to_json(c)}));
      }
      jrow.push_back(std::move(terms));
    }
    A.push_back(std::move(jrow));
  }
  out["A"] = std::move(A);
  return out;
}

Json effective_config(const KisinModule& M) {
  Json out;
  out["p"] = M.field->p;
  out["m"] = M.field->m;
  Json mod = Json::array();
  for (long long c : M.field->modulus) mod.push_back(c);
  out["modulus"] = std::move(mod);
  out["e"] = M.e;
  out["r"] = M.r;
  out["c0bar"] = ffelem_to_json(M.c0bar);
  out["prec"] = M.prec;
  out["denom_cap"] = M.denom_cap;
  return out;
}

Json jumps_to_json(const std::vector<Rat>& vals) {
  std::vector<Rat> sorted = vals;
  std::sort(sorted.begin(), sorted.end());
  Json out = Json::array();
  size_t i = 0;
  while (i < sorted.size()) {
    size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    out.push_back(Json::array({sorted[i].n, sorted[i].d, (long long)(j - i)}));
    i = j;
  }
  return out;
}

EisensteinPoly eisenstein_from_json(const Json& j, long long p, long long e) {
  if (!j.is_array())
    throw InputError("E must be the coefficient list [c_0,...,c_e]");
  std::vector<long long> coeffs;
  for (auto& x : j) coeffs.push_back(as_int(x, "Eisenstein coefficient"));
  if ((long long)coeffs.size() != e + 1)
    throw InputError("E must have degree e");
  return make_eisenstein(p, std::move(coeffs));
}

} // namespace kisinram
