#ifndef TILTED_CERT_IO_HPP
#define TILTED_CERT_IO_HPP

#include "tilted/certificates.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace tilted {

/// Certificate files carry the basis as polynomial text (symbolic scalar
/// syntax) and the Gram matrix either as exact field elements
/// (mode "exact", theta "symbolic") or as plain numbers (mode "numeric",
/// theta a number in radians).

inline nlohmann::json certificate_to_json(
    const GramCertificate<Scalar>& cert) {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& p : cert.basis) basis.push_back(poly_str(p));
  nlohmann::json gram = nlohmann::json::array();
  for (const auto& row : cert.gram) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& e : row) r.push_back(e.to_json());
    gram.push_back(r);
  }
  return nlohmann::json{{"name", cert.name},
                        {"theta", "symbolic"},
                        {"mode", "exact"},
                        {"basis", basis},
                        {"gram", gram}};
}

inline nlohmann::json certificate_to_json(
    const std::string& name, double theta,
    const std::vector<NcPoly<Scalar>>& basis,
    const std::vector<std::vector<double>>& gram) {
  nlohmann::json jb = nlohmann::json::array();
  for (const auto& p : basis) jb.push_back(poly_str(p));
  nlohmann::json jg = nlohmann::json::array();
  for (const auto& row : gram) {
    nlohmann::json r = nlohmann::json::array();
    for (double e : row) r.push_back(e);
    jg.push_back(r);
  }
  return nlohmann::json{{"name", name},
                        {"theta", theta},
                        {"mode", "numeric"},
                        {"basis", jb},
                        {"gram", jg}};
}

inline VerificationReport verify_certificate_json(const nlohmann::json& j) {
  const std::string mode = j.at("mode").get<std::string>();
  const std::string name = j.at("name").get<std::string>();
  std::vector<NcPoly<Scalar>> basis;
  for (const auto& text : j.at("basis"))
    basis.push_back(parse_poly(text.get<std::string>()));

  if (mode == "exact") {
    if (!(j.at("theta").is_string() &&
          j.at("theta").get<std::string>() == "symbolic"))
      throw std::invalid_argument(
          "exact certificates require theta: \"symbolic\"");
    GramCertificate<Scalar> cert;
    cert.name = name;
    cert.basis = basis;
    for (const auto& row : j.at("gram")) {
      std::vector<Scalar> r;
      for (const auto& e : row) r.push_back(Scalar::from_json(e));
      cert.gram.push_back(std::move(r));
    }
    cert.target = shifted_bell(symbolic_context());
    return verify_exact(cert);
  }
  if (mode == "numeric") {
    const double theta = j.at("theta").get<double>();
    GramCertificate<double> cert;
    cert.name = name;
    for (const auto& p : basis) {
      NcPoly<double> q;
      for (const auto& [m, c] : p.terms()) q.add_term(m, c.eval(theta));
      cert.basis.push_back(std::move(q));
    }
    for (const auto& row : j.at("gram")) {
      std::vector<double> r;
      for (const auto& e : row) r.push_back(e.get<double>());
      cert.gram.push_back(std::move(r));
    }
    cert.target = shifted_bell(numeric_context(theta));
    return verify_numeric(cert);
  }
  throw std::invalid_argument("unknown certificate mode '" + mode + "'");
}

}  // namespace tilted

#endif  // TILTED_CERT_IO_HPP
