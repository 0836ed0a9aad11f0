#pragma once

#include "ellgen/bundleops.hpp"
#include "ellgen/cohring.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace ellgen {

/// A loaded input document: manifold, optional bundle, optional order.
///
/// JSON layout:
///   "manifold": "CP2" | {"builtin": "CP4"} |
///               {"name", "generators": [{"name", "degree"}], "top_degree",
///                "vanishing": [[exponents]], "integration": [{"monomial", "value"}],
///                "tangent_roots": [class, ...]}
///   "bundle":   {"rank", "roots": [class, ...], "twist_b": class}
///   "order":    integer
/// A class is a string ("x", "1/2*x - y", "0") or an object {"x": "1/2"}.
/// Rationals are strings; integers are also accepted.
struct Manifest {
    Manifold manifold;
    /// Set when the manifold came from a builtin name; kept for round trips.
    std::string builtin;
    std::optional<ProjBundle> bundle;
    std::optional<std::size_t> order;
};

/// Throws InputError (or UnknownManifold) on malformed documents.
Manifest manifest_from_json(const nlohmann::json& doc);
Manifest load_manifest(const std::filesystem::path& path);
nlohmann::json manifest_to_json(const Manifest& m);

/// Parses a degree-2 class written with the generator names of pres.
LinearClass parse_linear_class(const PresentationPtr& pres, std::string_view text);

inline constexpr std::size_t kFallbackOrder = 20;
inline constexpr const char* kOrderEnvVar = "ELLGEN_ORDER_DEFAULT";

/// Flag, then manifest, then the environment variable, then 20.
std::size_t resolve_order(std::optional<std::size_t> flag, const Manifest* manifest);

} // namespace ellgen
