#include "szn/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace szn {

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out.push_back({m(i, j).real(), m(i, j).imag()});
  return out;
}

CMatrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || Eigen::Index(j.size()) != rows * cols)
    throw ParseError("matrix: expected " + std::to_string(rows * cols) +
                     " [re, im] entries, got " + std::to_string(j.size()));
  CMatrix m(rows, cols);
  Eigen::Index k = 0;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw ParseError("matrix: entry " + std::to_string(k) + " is not [re, im]");
    m(k / cols, k % cols) = Complex(e[0].get<double>(), e[1].get<double>());
    ++k;
  }
  return m;
}

Json kraus_to_json(const KrausSet& k) {
  Json out;
  out["dim"] = k.dim;
  out["kraus"] = Json::array();
  for (const CMatrix& a : k.operators) out["kraus"].push_back(matrix_to_json(a));
  return out;
}

KrausSet kraus_from_json(const Json& j) {
  if (!j.contains("dim") || !j.contains("kraus"))
    throw ParseError("kraus file: missing 'dim' or 'kraus'");
  const Eigen::Index dim = j["dim"].get<Eigen::Index>();
  std::vector<CMatrix> ops;
  for (const Json& op : j["kraus"]) ops.push_back(matrix_from_json(op, dim, dim));
  return KrausSet(std::move(ops));
}

namespace {

Json tagged_matrix(const std::string& kind, const CMatrix& m) {
  Json out;
  out["kind"] = kind;
  out["dim"] = m.rows();
  out["matrix"] = matrix_to_json(m);
  return out;
}

CMatrix untag_matrix(const Json& j, const std::string& kind) {
  if (!j.contains("kind") || j["kind"].get<std::string>() != kind)
    throw ParseError("expected a file with kind '" + kind + "'");
  const Eigen::Index dim = j["dim"].get<Eigen::Index>();
  return matrix_from_json(j["matrix"], dim, dim);
}

}  // namespace

Json chi_to_json(const ChiMatrix& chi) { return tagged_matrix("chi", chi.matrix); }

ChiMatrix chi_from_json(const Json& j) { return ChiMatrix{untag_matrix(j, "chi")}; }

Json superop_to_json(const Superoperator& s) { return tagged_matrix("superop", s.matrix); }

Superoperator superop_from_json(const Json& j) {
  return Superoperator{untag_matrix(j, "superop")};
}

Json unitaries_to_json(const std::vector<CMatrix>& us) {
  Json out;
  out["kind"] = "unitary";
  out["dim"] = us.empty() ? 8 : us.front().rows();
  out["matrices"] = Json::array();
  for (const CMatrix& u : us) out["matrices"].push_back(matrix_to_json(u));
  return out;
}

std::vector<CMatrix> unitaries_from_json(const Json& j) {
  if (!j.contains("kind") || j["kind"].get<std::string>() != "unitary")
    throw ParseError("expected a file with kind 'unitary'");
  const Eigen::Index dim = j["dim"].get<Eigen::Index>();
  std::vector<CMatrix> us;
  for (const Json& m : j["matrices"]) us.push_back(matrix_from_json(m, dim, dim));
  return us;
}

Json record_to_json(const TomographyRecord& rec) {
  Json out;
  out["inputs"] = Json::array();
  for (const DensityMatrix& rho : rec.inputs)
    out["inputs"].push_back(matrix_to_json(rho.matrix));
  out["outputs"] = Json::array();
  for (const CMatrix& m : rec.outputs) out["outputs"].push_back(matrix_to_json(m));
  out["noise_sigma"] = rec.noise_sigma ? Json(*rec.noise_sigma) : Json(nullptr);
  out["seed"] = rec.seed ? Json(*rec.seed) : Json(nullptr);
  return out;
}

TomographyRecord record_from_json(const Json& j) {
  TomographyRecord rec;
  for (const Json& m : j.at("inputs"))
    rec.inputs.emplace_back(matrix_from_json(m, 4, 4));
  for (const Json& m : j.at("outputs")) rec.outputs.push_back(matrix_from_json(m, 4, 4));
  if (j.contains("noise_sigma") && !j["noise_sigma"].is_null())
    rec.noise_sigma = j["noise_sigma"].get<double>();
  if (j.contains("seed") && !j["seed"].is_null())
    rec.seed = j["seed"].get<std::uint64_t>();
  return rec;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

Json read_json_file(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("SZN_DATA_DIR")) return env;
  return SZN_DATA_DIR;
}

}  // namespace szn
