#pragma once

#include "szn/channel.hpp"
#include "szn/tomography.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace szn {

using Json = nlohmann::ordered_json;

/// Matrices travel as flat row-major lists of [re, im] pairs.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols);

/// {"dim": 4, "kraus": [op, op, ...]}
Json kraus_to_json(const KrausSet& k);
KrausSet kraus_from_json(const Json& j);

/// {"kind": "chi" | "superop", "dim": 16, "matrix": [...]}
Json chi_to_json(const ChiMatrix& chi);
ChiMatrix chi_from_json(const Json& j);
Json superop_to_json(const Superoperator& s);
Superoperator superop_from_json(const Json& j);

/// {"kind": "unitary", "dim": 8, "matrices": [...]}
Json unitaries_to_json(const std::vector<CMatrix>& us);
std::vector<CMatrix> unitaries_from_json(const Json& j);

Json record_to_json(const TomographyRecord& rec);
TomographyRecord record_from_json(const Json& j);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

/// Directory holding the bundled published data (Kraus sets, gate lists,
/// reference tables). Compiled-in default, overridable with SZN_DATA_DIR.
std::filesystem::path data_dir();

}  // namespace szn
