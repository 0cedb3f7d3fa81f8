#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace thermocone::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ValidationError("json", what); }

double get_number(const Json& j, const std::string& what) {
  if (!j.is_number()) bad(what + " must be a number");
  return j.get<double>();
}

std::complex<double> get_entry(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  bad("matrix entries must be numbers or [re, im] pairs");
}

}  // namespace

Json load_json_arg(const std::string& text, const std::string& what) {
  std::string body = text;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) bad(what + " is empty");
  if (text[first] != '{' && text[first] != '[') {
    std::ifstream in(text);
    if (!in) throw ValidationError("io", "cannot open " + what + " file '" + text + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    bad("malformed JSON in " + what + ": " + e.what());
  }
}

HamiltonianSpec parse_hamiltonian(const Json& j) {
  if (j.is_object() && j.contains("diagonal")) {
    if (!j["diagonal"].is_array()) bad("hamiltonian.diagonal must be a list");
    std::vector<double> e;
    for (const auto& v : j["diagonal"]) e.push_back(get_number(v, "diagonal entry"));
    return HamiltonianSpec::from_diagonal(std::move(e));
  }
  if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array())
    bad("hamiltonian must be {\"levels\": [{\"energy\": .., \"degeneracy\": ..}, ...]}");
  std::vector<EnergyLevel> levels;
  for (const auto& l : j["levels"]) {
    if (!l.is_object() || !l.contains("energy")) bad("each level needs an \"energy\"");
    EnergyLevel lv;
    lv.energy = get_number(l["energy"], "level energy");
    if (l.contains("degeneracy")) {
      const auto& g = l["degeneracy"];
      if (!g.is_number_integer() || g.get<long long>() < 1)
        throw ValidationError("hamiltonian", "degeneracy must be a positive integer");
      lv.degeneracy = g.get<std::size_t>();
    }
    levels.push_back(lv);
  }
  return HamiltonianSpec(std::move(levels));
}

Macrostate parse_macro(const Json& j) {
  if (!j.is_object() || !j.contains("E") || !j.contains("S"))
    bad("macrostate must be {\"E\": .., \"S\": ..}");
  return {get_number(j["E"], "E"), get_number(j["S"], "S")};
}

HermitianMatrix parse_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  HermitianMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      bad("matrix rows must all have the same length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = get_entry(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

QuantumState parse_state(const Json& j) {
  if (!j.is_object()) bad("state must be a JSON object");
  const double n = j.contains("n") ? get_number(j["n"], "n") : 1.0;
  if (j.contains("matrix")) return QuantumState::matrix(parse_matrix(j["matrix"]), n);
  if (j.contains("spectrum")) {
    if (!j["spectrum"].is_array() || !j.contains("energy"))
      bad("spectral state needs \"spectrum\": [..] and \"energy\"");
    std::vector<double> ev;
    for (const auto& v : j["spectrum"]) ev.push_back(get_number(v, "spectrum entry"));
    return QuantumState::spectral(std::move(ev), get_number(j["energy"], "energy"), n);
  }
  if (j.contains("macro")) return QuantumState::macro(parse_macro(j["macro"]), n);
  bad("state needs one of \"matrix\", \"spectrum\" or \"macro\"");
}

protocol::Distribution parse_distribution(const Json& j) {
  protocol::Distribution p;
  const Json* probs = &j;
  if (j.is_object()) {
    if (!j.contains("probabilities")) bad("distribution needs \"probabilities\"");
    probs = &j["probabilities"];
    if (j.contains("labels"))
      for (const auto& l : j["labels"]) p.labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  if (!probs->is_array()) bad("distribution must be a list of probabilities");
  for (const auto& v : *probs) p.probabilities.push_back(get_number(v, "probability"));
  protocol::validate(p);
  return p;
}

protocol::LevelSet parse_levels(const Json& j) {
  if (!j.is_array()) bad("level set must be a list of numbers or \"a/b\" strings");
  std::vector<protocol::Rational> v;
  for (const auto& e : j) {
    if (e.is_string())
      v.push_back(protocol::Rational::parse(e.get<std::string>()));
    else if (e.is_number_integer())
      v.emplace_back(e.get<std::int64_t>());
    else if (e.is_number())
      v.push_back(protocol::Rational::from_double(e.get<double>()));
    else
      bad("level set entries must be numbers or strings");
  }
  return protocol::LevelSet(std::move(v));
}

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("io", "cannot write output file '" + path + "'");
  f << text;
  if (!f) throw ValidationError("io", "failed writing output file '" + path + "'");
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
  std::string s;
  for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
  s += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_number(row[i]);
    s += "\n";
  }
  return s;
}

}  // namespace thermocone::cli
