#pragma once

#include "exalg/orbits.hpp"
#include "exalg/transvect.hpp"
#include "exalg/words.hpp"

#include <json.hpp>

namespace exalg {

using Json = nlohmann::ordered_json;

Json ring_to_json(const RingPtr& r);
RingPtr ring_from_json(const Json& j);

/// Compact ring tokens for the command line: int, rat, z8, fp5, loc5,
/// fp5[X], fp2[t]/(t^3). Falls back to parsing `text` as inline JSON.
RingPtr parse_ring_spec(const std::string& text);

Json ideal_to_json(const Ideal& ideal);
Ideal ideal_from_json(const RingPtr& r, const Json& j);

Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);

Json word_to_json(const Word& w);
Word word_from_json(const Json& j);

Json relword_to_json(const RelWord& w);
RelWord relword_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json orbit_table_to_json(const OrbitTable& t, const FiniteRingEnum& R,
                         OrbitFamily family, const std::optional<Ideal>& rel);

Json module_to_json(const ProjModule& m);
ProjModule module_from_json(const Json& j);

/// FNV-1a 64-bit hash of the canonical serialization, as fixed-width hex.
std::string transcript_hash(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace exalg
