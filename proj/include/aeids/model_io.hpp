#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aeids/autoencoder.hpp"
#include "aeids/classifiers.hpp"
#include "aeids/matrix.hpp"

namespace aeids {

// Model container: a JSON document tagged {"format": "aeids-model",
// "version": 1, "kind": ...} where float arrays are base64-encoded
// little-endian IEEE-754 doubles. Round trips are bit-exact and the format
// is byte-stable across platforms, so ports can interoperate.

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);  // throws ParseError

std::string doubles_to_b64(const Vector& values);
Vector b64_to_doubles(const std::string& text);

void save_autoencoder(const std::string& path, const Autoencoder& model);
Autoencoder load_autoencoder(const std::string& path);

void save_classifier(const std::string& path, const ClassifierModel& model);
ClassifierModel load_classifier(const std::string& path);

}  // namespace aeids
