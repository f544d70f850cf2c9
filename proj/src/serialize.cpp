#include "qsturm/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "qsturm/error.hpp"

namespace qsturm {

json to_json(const ContinuedFraction& cf) {
  json j;
  j["coeffs"] = cf.coeffs();
  if (!cf.periodic_block().empty()) j["periodic"] = cf.periodic_block();
  return j;
}

ContinuedFraction cf_from_json(const json& j) {
  if (!j.is_object() || (!j.contains("coeffs") && !j.contains("periodic"))) {
    throw Error(ErrorKind::ParseError, "continued fraction needs \"coeffs\" or \"periodic\"");
  }
  try {
    std::vector<std::int64_t> coeffs, periodic;
    if (j.contains("coeffs")) coeffs = j.at("coeffs").get<std::vector<std::int64_t>>();
    if (j.contains("periodic")) periodic = j.at("periodic").get<std::vector<std::int64_t>>();
    return ContinuedFraction(std::move(coeffs), std::move(periodic));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("continued fraction: ") + e.what());
  }
}

json to_json(const ModelSpec& spec) {
  json potential = json::object();
  for (Symbol s = 0; s < spec.alphabet.size(); ++s) {
    potential[std::string(1, spec.alphabet.label(s))] = spec.potential[s];
  }
  return {
      {"cf", to_json(spec.cf)},
      {"substitution", {{"a", spec.alphabet.render(spec.subst.image_a)}, {"b", spec.alphabet.render(spec.subst.image_b)}}},
      {"prefix", spec.alphabet.render(spec.prefix)},
      {"potential", potential},
      {"allow_non_injective", spec.allow_non_injective},
  };
}

ModelSpec spec_from_json(const json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "spec must be a JSON object");
    std::map<char, double> potential;
    for (const auto& [key, value] : j.at("potential").items()) {
      if (key.size() != 1) throw Error(ErrorKind::ParseError, "potential key '" + key + "' is not a single character");
      potential[key[0]] = value.get<double>();
    }
    const json& sub = j.at("substitution");
    return ModelSpec::from_labels(cf_from_json(j.at("cf")), sub.at("a").get<std::string>(),
                                  sub.at("b").get<std::string>(), j.value("prefix", std::string()),
                                  potential, j.value("allow_non_injective", false));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("spec: ") + e.what());
  }
}

ModelSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open spec file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  return spec_from_json(j);
}

json to_json(const Decomposition& d, const Alphabet& alphabet, const json& potential) {
  json pot = json::object();
  for (char c : alphabet.labels()) {
    const std::string key(1, c);
    if (potential.is_object() && potential.contains(key)) {
      pot[key] = potential.at(key);
    } else {
      pot[key] = static_cast<double>(*alphabet.find(c));
    }
  }
  return {
      {"cf", to_json(rotation_cf(d.base_prefix))},
      {"substitution", {{"a", alphabet.render(d.subst.image_a)}, {"b", alphabet.render(d.subst.image_b)}}},
      {"prefix", alphabet.render(d.prefix_w)},
      {"potential", pot},
      {"base", Alphabet::binary().render(d.base_prefix)},
      {"theta", d.theta_estimate},
      {"bispecial_length", d.bispecial_length},
      {"analyzed_length", d.analyzed_length},
  };
}

std::string fingerprint(const ModelSpec& spec) {
  const std::string text = to_json(spec).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  std::string s(buf, res.ptr);
  if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

}  // namespace qsturm
