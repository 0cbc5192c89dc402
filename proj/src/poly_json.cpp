#include "cubelens/poly_json.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cubelens {

namespace {

std::string field(const nlohmann::json& term, const char* key, const char* fallback) {
  if (!term.contains(key)) {
    if (fallback) return fallback;
    throw std::invalid_argument(std::string("polynomial term is missing \"") + key + "\"");
  }
  const auto& value = term.at(key);
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return value.dump();
  throw std::invalid_argument(std::string("\"") + key + "\" must be a decimal string");
}

}  // namespace

CoeffPoly poly_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("terms") || !doc.at("terms").is_array()) {
    throw std::invalid_argument("polynomial JSON must be an object with a \"terms\" array");
  }
  std::vector<std::pair<Integer, Gaussian>> terms;
  for (const auto& term : doc.at("terms")) {
    if (!term.is_object()) throw std::invalid_argument("polynomial term must be an object");
    terms.emplace_back(parse_integer(field(term, "n", nullptr)),
                       Gaussian{parse_ratio(field(term, "re", "0")),
                                parse_ratio(field(term, "im", "0"))});
  }
  return CoeffPoly::from_terms(terms);
}

nlohmann::json poly_to_json(const CoeffPoly& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [n, a] : f.terms()) {
    terms.push_back({{"n", to_string(n)}, {"re", to_string(a.re)}, {"im", to_string(a.im)}});
  }
  return {{"terms", terms}};
}

}  // namespace cubelens
