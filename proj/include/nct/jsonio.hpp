#ifndef NCT_JSONIO_HPP
#define NCT_JSONIO_HPP

#include <string>

#include "json.hpp"
#include "nct/trace.hpp"

namespace nct {

using Json = nlohmann::ordered_json;

// Rounds to the shortest value that reproduces the 12-significant-digit
// decimal form; JSON emission of the rounded double is then byte-stable.
double jround(double x);

Json traceToJson(const TruncatedTrace& tau);
Json traceToJson(const ExactTrace& tau);
TruncatedTrace traceFromJson(const Json& j);
TruncatedTrace readTraceFile(const std::string& path);

Json envelope(const std::string& command, Json result);

}  // namespace nct

#endif
