#pragma once
#include "vchow/quadform.hpp"
#include "vchow/series.hpp"
#include "vchow/vpb.hpp"
#include <json.hpp>

namespace vchow {

using Json = nlohmann::json;

/* Schema tags understood by this build (see schemas/). */
inline constexpr const char* kPushforwardSchema = "vchow/pushforward-query/v1";
inline constexpr const char* kSqrtEulerSchema = "vchow/sqrt-euler/v1";
inline constexpr const char* kQuadformSchema = "vchow/quadform/v1";
inline constexpr const char* kSeriesSchema = "vchow/series/v1";

/* {"builtin": "pt"|"P1"|...|"P1xP1"} or a raw table
   {"generators": [["h",1],...], "relations": ["h^3"], "dim": d,
    "integrals": {"h^2": "1", ...}}. */
VarietyPtr variety_from_json(const Json& j);

/* {"rank": r, "chern": ["h", "h^2", ...], "honest": true}; chern[i] is
   c_{i+1} as an expression (c_0 = 1 implied). */
KClass kclass_from_json(const Json& j, const VarietyPtr& X);

/* {"roots": ["h", "2*h"], "sign": 1} */
OrthSplitBundle orth_from_json(const Json& j, const VarietyPtr& X);

/* row-major matrix of rational strings */
Mat mat_from_json(const Json& j);
Json mat_to_json(const Mat& m);

PushforwardQuery pushforward_query_from_json(const Json& j, VarietyPtr* base_out);

std::vector<Rat> series_coeffs_from_json(const Json& j);
Json series_to_json(const TruncatedSeries& f);
Json class_to_json(const GradedClass& a); // {"monomial": "coeff", ...}
GradedClass class_from_json(const Json& j, const RingPtr& R);

} // namespace vchow
