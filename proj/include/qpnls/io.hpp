#pragma once

// JSON forms:
//   lattice element  {"kx": int, "ky": int}
//   function         {"coeffs": [{"kx": int, "ky": int, "re": float, "im": float}, ...]}

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "qpnls/omega.hpp"
#include "qpnls/qp_function.hpp"

namespace qpnls {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json omega_to_json(const OmegaElement& k);
OmegaElement omega_from_json(const nlohmann::json& j);

nlohmann::json qp_to_json(const QPFunction& u);
QPFunction qp_from_json(const nlohmann::json& j);

QPFunction read_qp_function(const std::filesystem::path& path);
void write_qp_function(const std::filesystem::path& path, const QPFunction& u);

}  // namespace qpnls
