#pragma once

#include <string>

#include "capbound/io.hpp"

namespace capbound::test {

inline std::string fixture(const std::string& name) { return std::string(CAPBOUND_FIXTURES) + "/" + name; }

inline Channel fixture_channel(int i) {
  return channel_from_json(read_json_file(fixture("channel_" + std::to_string(i) + ".json")));
}

inline const Json& sdp_oracle() {
  static const Json j = read_json_file(fixture("sdp_oracle.json"));
  return j;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace capbound::test
