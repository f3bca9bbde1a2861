#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "multistable/index_function.hpp"
#include "multistable/processes.hpp"
#include "multistable/quadrature.hpp"
#include "multistable/real_function.hpp"

namespace multistable {

using Json = nlohmann::json;

/// Index function from the mini-language
///   const:1.5
///   affine:intercept,slope
///   sin:mid=1.5,amp=0.3,period=2[,phase=0]
///   pw:v0,e1,v1,e2,v2,...        (values[0] below e1, values[k] on [e_k, e_{k+1}))
///   table:file.json              ({"xs": [...], "alphas": [...]})
/// Non-constant families need bounds (a, b).
IndexFunction parse_alpha(const std::string& text, std::optional<std::pair<double, double>> bounds = {});

/// Index function from a JSON record:
///   {"family": "sinusoidal", "params": {"mid": 1.5, "amp": 0.3, "period": 2.0}, "a": 1.2, "b": 1.8}
///   {"family": "tabulated", "xs": [...], "alphas": [...], "a": ..., "b": ...}
/// A string value is read with parse_alpha.
IndexFunction alpha_from_json(const Json& j, std::optional<std::pair<double, double>> bounds = {});

/// Real function from the mini-language
///   ind:lo,hi[,scale]
///   exp:rate[,start[,scale]]
///   pow:lo,hi,center,exponent[,scale]
///   step:e0,e1,...,en/v0,...,v{n-1}
RealFunction parse_function(const std::string& text);

/// Real function from {"family": "indicator", "params": {"lo": 0, "hi": 1, "scale": 1}}
/// (families indicator, exponential, power, step) or a mini-language string.
RealFunction function_from_json(const Json& j);

/// "a,b"
std::pair<double, double> parse_bounds(const std::string& text);
/// "lo:hi:n" -> n equally spaced points including both ends (n >= 1).
std::vector<double> parse_grid(const std::string& text);
/// Comma separated reals.
std::vector<double> parse_list(const std::string& text);

/// 64-bit FNV-1a of the canonical (sorted-key) JSON dump, as 16 hex digits.
std::string config_hash(const Json& config);

/// Reads a JSON file; ArgumentError when missing or malformed.
Json read_json_file(const std::string& path);

}  // namespace multistable
