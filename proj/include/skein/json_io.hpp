#pragma once

#include <json.hpp>

#include <string>

#include "skein/cantor.hpp"
#include "skein/gammastar.hpp"
#include "skein/lipmap.hpp"
#include "skein/skein_space.hpp"
#include "skein/thread.hpp"

namespace skein {

using Json = nlohmann::json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const OpenInterval& iv);
OpenInterval interval_from_json(const Json& j);

Json to_json(const Thread& t);
Thread thread_from_json(const Json& j);

Json to_json(const PLMap& f);
PLMap plmap_from_json(const Json& j);

Json to_json(const GammaSequence& g);
GammaSequence gamma_from_json(const Json& j);

Json to_json(const GammaStarRun& run);
GammaStarRun run_from_json(const Json& j);

Json to_json(const JumpCertificate& cert);
JumpCertificate certificate_from_json(const Json& j);

Json to_json(const SkeinTruncation& tr);
SkeinTruncation truncation_from_json(const Json& j);

Json to_json(const ThreadingSpace& ts);
ThreadingSpace threading_from_json(const Json& j);

/// Canonical serialized form: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace skein
