#pragma once

#include <json.hpp>

#include "kisinram/mixedchar.hpp"

namespace kisinram {

// Key order is preserved on emission so that output is byte-stable.
using Json = nlohmann::ordered_json;

Json rat_to_json(const Rat& r); // [num, den]
Rat rat_from_json(const Json& j);

Json ffelem_to_json(const FFElem& x); // residue for F_p, coordinate list otherwise
Json series_to_json(const Series& s); // {terms: [[exp, coeff]...], prec: ...}

// series literal: list of [exponent, coefficient] pairs; exponent integer or
// "a/b" string; coefficient integer or list of m coordinates
Series series_from_json(const Json& j, const FieldPtr& f, Rat prec,
                        long long cap);

// {p, m?, modulus?, e, r, c0bar?, prec?, denom_cap?, A: [[literal]]}
KisinModule module_from_json(const Json& j, long long prec_override = 0,
                             long long cap_override = 0,
                             long long min_prec = 0);
Json module_to_json(const KisinModule& M);
Json effective_config(const KisinModule& M);

// multiset of rationals as [[num, den, multiplicity], ...]
Json jumps_to_json(const std::vector<Rat>& vals);

EisensteinPoly eisenstein_from_json(const Json& j, long long p, long long e);

} // namespace kisinram
