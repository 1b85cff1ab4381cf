#pragma once

#include <json.hpp>

#include "qext/sources.hpp"

// JSON form of the source profiles (see docs/source_profile.schema.json):
//   {"kind":"gaussian_sum","terms":[{"weight":[re,im],"center":[t,x,y,z],
//                                    "width":[[...] x4]}]}
//   {"kind":"static","terms":[{"weight":[re,im],"center":[x,y,z],"width":[[...] x3]}]}
//   {"kind":"travelling","profile":[terms3],"velocity":[vx,vy,vz]}
//   {"kind":"two_epoch","plus":{"profile":[terms3],"velocity":[...]},
//                       "minus":{"profile":[terms3],"velocity":[...]}}

namespace qext {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const SourceProfile& p);
SourceProfile source_profile_from_json(const nlohmann::json& j);

nlohmann::json gaussian3_to_json(const GaussianSum3& g);
GaussianSum3 gaussian3_from_json(const nlohmann::json& j);

}  // namespace qext
