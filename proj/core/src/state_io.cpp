#include "bsqf/state_io.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "bsqf/error.hpp"

namespace bsqf {

nlohmann::json state_to_json(const BipartiteState& s) {
  const ComplexMatrix& m = s.matrix();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"d_a", s.d_a()}, {"d_b", s.d_b()}, {"re", re}, {"im", im}};
}

BipartiteState state_from_json(const nlohmann::json& doc,
                               bool require_full_rank) {
  try {
    const auto d_a = doc.at("d_a").get<std::size_t>();
    const auto d_b = doc.at("d_b").get<std::size_t>();
    const auto& re = doc.at("re");
    const auto& im = doc.at("im");
    const std::size_t n = d_a * d_b;
    if (n == 0 || re.size() != n || im.size() != n) {
      throw Error(ErrorCode::ParseError,
                  "expected " + std::to_string(n) + " rows in re/im");
    }
    std::vector<Complex> entries;
    entries.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (re[i].size() != n || im[i].size() != n) {
        throw Error(ErrorCode::ParseError,
                    "row " + std::to_string(i) + " has wrong length");
      }
      for (std::size_t j = 0; j < n; ++j)
        entries.emplace_back(re[i][j].get<double>(), im[i][j].get<double>());
    }
    ComplexMatrix m(n, std::move(entries));
    return BipartiteState(validate_density(m, require_full_rank), d_a, d_b);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

void save_state(const BipartiteState& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  out << state_to_json(s).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

BipartiteState load_state(const std::filesystem::path& path,
                          bool require_full_rank) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return state_from_json(doc, require_full_rank);
}

}  // namespace bsqf
