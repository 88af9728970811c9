#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "rv/arch_local.hpp"
#include "rv/hankel.hpp"

namespace rv {

// Place parameters from the params document:
//   {"place":"real","blocks":[{"kind":"gl1","delta":0,"t":"0"},{"kind":"ds2","l":11,"t":"0"}]}
//   {"place":"complex","blocks":[{"l":1,"t":"0.5,0"}]}
// Unknown keys are rejected. t may be a number, "re,im", "a+bi" or [re, im].
PlaceParams parse_params(const nlohmann::json& doc);
PlaceParams load_params(const std::string& path);
nlohmann::ordered_json params_to_json(const PlaceParams& p);

// "re,im", "a+bi", "a-bi", "bi", "a"
complex_t parse_complex(const std::string& s);
complex_t parse_complex(const nlohmann::json& j);
inline complex_t parse_complex(const char* s) { return parse_complex(std::string(s)); }
// "a:b:n" → n equally spaced points, endpoints included (n = 1 gives a)
std::vector<real_t> parse_grid(const std::string& s);
// comma separated reals
std::vector<real_t> parse_real_list(const std::string& s);
// "a,b" support interval
std::pair<real_t, real_t> parse_interval(const std::string& s);
// s-grid: ';' separated complex values, or "z0..z1:n" for n points on a segment
std::vector<complex_t> parse_s_grid(const std::string& s);

// Writes path.tmp and renames it over path.
void write_atomic(const std::string& path, const std::string& body);

// Shortest round-trip text for a real.
std::string fmt(real_t v);

}  // namespace rv
