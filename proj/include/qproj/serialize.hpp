#pragma once

#include <json.hpp>

#include "qproj/classify.hpp"
#include "qproj/reversibility.hpp"
#include "qproj/simple_decomp.hpp"

namespace qproj {

using Json = nlohmann::ordered_json;

Json to_json(const Quaternion& q);
Quaternion quaternion_from_json(const Json& j);

/// {"matrix": [[[w,x,y,z] x3] x3]}
Json to_json(const QMatrix3& m);
Json to_json(const RealMatrix3& m);
/// Accepts {"matrix": ...} or the bare nested array; entries may be
/// 4-arrays or plain numbers. Throws ParseError.
QMatrix3 matrix_from_json(const Json& j);
/// Throws ParseError if any entry has a non-zero imaginary part.
RealMatrix3 real_matrix_from_json(const Json& j);

Json to_json(const CharPoly6& p);
Json to_json(const JordanData& jd);
Json to_json(const SimpleCertificate& c);
SimpleCertificate certificate_from_json(const Json& j);
Json to_json(const Decomposition& d);
Json to_json(const ReversibilityReport& r);
Json to_json(const DynType& t);

/// Parses text as JSON, mapping syntax errors to ParseError.
Json parse_json(const std::string& text);

}  // namespace qproj
