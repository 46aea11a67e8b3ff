#ifndef SELFSIM_CONFIG_HPP
#define SELFSIM_CONFIG_HPP

#include "selfsim/ifs.hpp"
#include "selfsim/overlaps.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace selfsim {

/// Scalar literals: rationals as "p/q" strings, irrationals as
/// {"minpoly": [c0..cd], "interval": ["a/b", "c/d"]} (ascending coefficients).
AlgebraicScalar parse_scalar_literal(const nlohmann::json& j);
nlohmann::json scalar_literal(const AlgebraicScalar& s);

/// Model config: {"dimension": d, "lambdas": [...], "translations": [[...]...],
/// "probabilities": ["p/q"...]}.  Translation coordinates must be rational or
/// certified equal to one of the lambdas (exactness requires exact inputs).
IFSModel parse_model_json(const nlohmann::json& j);
nlohmann::json model_to_json(const IFSModel& model);

IFSModel load_model(const std::string& path);

std::vector<std::string> preset_names();
IFSModel preset_model(const std::string& name);

/// Certificate serialization; integer polynomials as term lists
/// [[e0..em], "coeff"].
nlohmann::json certificate_to_json(const OverlapCertificate& cert);
OverlapCertificate certificate_from_json(const nlohmann::json& j, std::size_t var_count);

}  // namespace selfsim

#endif
