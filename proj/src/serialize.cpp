#include "qosc/serialize.hpp"

#include "qosc/errors.hpp"

namespace qosc {

nlohmann::json poly_to_json(const BivarPolynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  // std::map keyed by (i, j) already iterates in the required order.
  for (const auto& [ij, c] : p.coeffs) {
    terms.push_back({{"i", ij.first},
                     {"j", ij.second},
                     {"re", c.real()},
                     {"im", c.imag()}});
  }
  return {{"params", {{"hbar", p.hbar}, {"m", p.m}, {"lambda", p.lambda}}},
          {"terms", terms}};
}

BivarPolynomial poly_from_json(const nlohmann::json& j) {
  if (!j.contains("params") || !j.contains("terms")) {
    throw DomainError("polynomial JSON needs params and terms");
  }
  BivarPolynomial p;
  p.hbar = j["params"].at("hbar").get<double>();
  p.m = j["params"].at("m").get<double>();
  p.lambda = j["params"].at("lambda").get<double>();
  for (const auto& term : j["terms"]) {
    p.add(term.at("i").get<int>(), term.at("j").get<int>(),
          complex(term.at("re").get<double>(), term.at("im").get<double>()));
  }
  return p;
}

}  // namespace qosc
