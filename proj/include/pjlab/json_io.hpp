#pragma once

#include <string>

#include <json.hpp>

#include "pjlab/boolfn.hpp"
#include "pjlab/pseudojunta.hpp"
#include "pjlab/schedule.hpp"
#include "pjlab/space.hpp"

namespace pjlab {

using Json = nlohmann::json;

// Numbers in input documents: JSON numbers, or strings "a/b" / decimals.
Rat rat_from_json(const Json& v);

// exact values emit {"rat": "a/b", "val": double}; doubles emit plain numbers
Json scalar_json(const Rat& q);
Json scalar_json(double x);
Json sqrtrat_json(const SqrtRat& v);

// 1-based sorted coordinate list
Json mask_json(Mask S);
Mask mask_from_json(const Json& v, int n);

// {"n": int, "space": {"kind":"p-biased","p":...} | {"kind":"finite","coords":[[...],...]}}
template <class R>
SpacePtr<R> space_from_json(const Json& doc);

template <class R>
Json space_to_json(const ProductSpace<R>& sp);

// {"space": <space>, "function": {"kind":"table","values":[...]}
//                              | {"kind":"builtin","name":...,"params":{...}}}
template <class R>
FunctionRep<R> function_from_json(const Json& doc);

template <class R>
Json function_to_json(const FunctionRep<R>& f);

// {"entries":[{"S":[1-based coords],
//              "J":{"kind":"table","values":[...]} | {"kind":"all-ones-indicator"}
//                 | {"kind":"const1"}}]}
template <class R>
JuntaCollection<R> collection_from_json(const Json& doc, SpacePtr<R> sp);

template <class R>
Json collection_to_json(const JuntaCollection<R>& J);

Json schedule_to_json(const ParameterSchedule& s);

// FNV-1a digest of a canonical dump, for run reports
std::string json_digest(const Json& doc);

}  // namespace pjlab
