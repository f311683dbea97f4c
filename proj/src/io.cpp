#include "qpnls/io.hpp"

#include <cstdint>
#include <fstream>
#include <limits>

namespace qpnls {

namespace {

std::int64_t narrow(Int v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw OverflowError("coordinate " + to_string(v) + " does not fit the JSON integer range");
    return static_cast<std::int64_t>(v);
}

}  // namespace

nlohmann::json omega_to_json(const OmegaElement& k) { return {{"kx", narrow(k.kx)}, {"ky", narrow(k.ky)}}; }

OmegaElement omega_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kx") || !j.contains("ky"))
        throw IoError("lattice element needs integer fields kx and ky");
    if (!j["kx"].is_number_integer() || !j["ky"].is_number_integer())
        throw IoError("lattice coordinates must be integers");
    return {j["kx"].get<std::int64_t>(), j["ky"].get<std::int64_t>()};
}

nlohmann::json qp_to_json(const QPFunction& u) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [k, c] : u.coeffs()) {
        coeffs.push_back({{"kx", narrow(k.kx)}, {"ky", narrow(k.ky)}, {"re", c.real()}, {"im", c.imag()}});
    }
    return {{"coeffs", coeffs}};
}

QPFunction qp_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw IoError("function JSON needs a \"coeffs\" array");
    QPFunction::CoeffMap coeffs;
    for (const auto& entry : j["coeffs"]) {
        OmegaElement k = omega_from_json(entry);
        double re = entry.value("re", 0.0);
        double im = entry.value("im", 0.0);
        coeffs[k] += Complex(re, im);
    }
    return QPFunction(std::move(coeffs));
}

QPFunction read_qp_function(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return qp_from_json(j);
}

void write_qp_function(const std::filesystem::path& path, const QPFunction& u) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << qp_to_json(u).dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace qpnls
