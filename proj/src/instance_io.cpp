#include "sketchfeas/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sketchfeas/error.hpp"
#include "sketchfeas/gen.hpp"

namespace sketchfeas {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
  if (!doc.contains(name)) throw ParseError(name, "missing");
  return doc.at(name);
}

std::vector<double> real_array(const json& doc, const char* name, std::size_t expected) {
  const json& arr = field(doc, name);
  if (!arr.is_array()) throw ParseError(name, "must be an array");
  if (arr.size() != expected) {
    throw ParseError(name, "expected " + std::to_string(expected) + " entries, got " +
                               std::to_string(arr.size()));
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) throw ParseError(name, "entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::size_t positive_count(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
    throw ParseError(name, "must be a positive integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

std::string write_instance(const FeasInstance& inst) {
  json doc;
  doc["version"] = kInstanceFormatVersion;
  doc["m"] = inst.rows();
  doc["n"] = inst.cols();
  doc["domain"] = to_string(inst.domain);
  doc["A"] = inst.A.to_row_major();
  doc["b"] = inst.b.values();
  if (inst.label) doc["label"] = to_string(*inst.label);
  if (inst.witness) doc["witness"] = inst.witness->values();
  if (inst.certificate) doc["certificate"] = inst.certificate->values();
  if (inst.provenance) {
    doc["provenance"] = {{"dist", to_string(inst.provenance->dist)},
                         {"seed", inst.provenance->seed}};
  }
  return doc.dump(1) + "\n";
}

FeasInstance read_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  if (!doc.is_object()) throw ParseError("document", "must be a JSON object");
  const json& version = field(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != kInstanceFormatVersion) {
    throw ParseError("version", "unsupported version (expected 1)");
  }
  const std::size_t m = positive_count(doc, "m");
  const std::size_t n = positive_count(doc, "n");
  const json& domain = field(doc, "domain");
  if (!domain.is_string() || (domain != "lp" && domain != "ip")) {
    throw ParseError("domain", "must be \"lp\" or \"ip\"");
  }

  auto vector_field = [&](const char* name, std::size_t expected) {
    try {
      return DenseVector(real_array(doc, name, expected));
    } catch (const UsageError& e) {
      throw ParseError(name, e.what());
    }
  };
  DenseMatrix a = [&] {
    try {
      return DenseMatrix::from_row_major(m, n, real_array(doc, "A", m * n));
    } catch (const UsageError& e) {
      throw ParseError("A", e.what());
    }
  }();
  FeasInstance inst(std::move(a), vector_field("b", m),
                    domain == "lp" ? Domain::ContinuousNonneg : Domain::IntegerNonneg);
  if (doc.contains("label")) {
    const json& label = doc.at("label");
    if (label == "feasible") {
      inst.label = Label::Feasible;
    } else if (label == "infeasible") {
      inst.label = Label::Infeasible;
    } else {
      throw ParseError("label", "must be \"feasible\" or \"infeasible\"");
    }
  }
  if (doc.contains("witness")) inst.witness = vector_field("witness", n);
  if (doc.contains("certificate")) inst.certificate = vector_field("certificate", m);
  if (doc.contains("provenance")) {
    const json& prov = doc.at("provenance");
    if (!prov.is_object()) throw ParseError("provenance", "must be an object");
    const json& dist = field(prov, "dist");
    const json& seed = field(prov, "seed");
    if (!dist.is_string()) throw ParseError("provenance.dist", "must be a string");
    if (!seed.is_number_unsigned()) {
      throw ParseError("provenance.seed", "must be an unsigned integer");
    }
    try {
      inst.provenance =
          Provenance{parse_distribution(dist.get<std::string>()), seed.get<std::uint64_t>()};
    } catch (const UsageError& e) {
      throw ParseError("provenance.dist", e.what());
    }
  }
  return inst;
}

void save_instance(const std::filesystem::path& path, const FeasInstance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open '" + path.string() + "' for writing");
  out << write_instance(inst);
}

FeasInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_instance(buf.str());
}

}  // namespace sketchfeas
