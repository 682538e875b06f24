#include "capbound/io.hpp"

#include <fstream>

namespace capbound {

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw DimensionError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw DimensionError("matrix rows have different lengths");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row[c];
      if (e.is_number())
        m(r, c) = Complex(e.get<double>(), 0.0);
      else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      else
        throw DomainError("matrix entries must be [re, im] pairs");
    }
  }
  return m;
}

namespace {

const std::pair<const char*, ChannelFamily::Kind> kFamilies[] = {
    {"identity", ChannelFamily::Kind::identity},
    {"erasure", ChannelFamily::Kind::erasure},
    {"depolarizing", ChannelFamily::Kind::depolarizing},
    {"amplitude_damping", ChannelFamily::Kind::amplitude_damping},
    {"dephasing", ChannelFamily::Kind::dephasing},
    {"symmetric_side", ChannelFamily::Kind::symmetric_side},
};

std::optional<ChannelFamily> family_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("name")) return std::nullopt;
  const auto name = j["name"].get<std::string>();
  for (const auto& [n, k] : kFamilies)
    if (name == n) return ChannelFamily{k, j.value("d", 2), j.value("p", 0.0)};
  return std::nullopt;
}

bool same_kraus(const Channel& a, const Channel& b) {
  if (a.kraus().size() != b.kraus().size() || a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) return false;
  for (std::size_t k = 0; k < a.kraus().size(); ++k)
    if ((a.kraus()[k] - b.kraus()[k]).cwiseAbs().maxCoeff() > 1e-12) return false;
  return true;
}

int get_dim(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) throw DimensionError(std::string("missing integer field '") + key + "'");
  const int v = j[key].get<int>();
  if (v <= 0) throw DimensionError(std::string("field '") + key + "' must be positive");
  return v;
}

}  // namespace

Json channel_to_json(const Channel& ch) {
  Json j;
  j["dim_in"] = ch.dim_in();
  j["dim_out"] = ch.dim_out();
  Json kraus = Json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  j["kraus"] = std::move(kraus);
  if (const auto& f = ch.family()) j["family"] = {{"name", f->name()}, {"d", f->d}, {"p", f->p}};
  return j;
}

Channel channel_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("channel JSON must be an object");
  const int din = get_dim(j, "dim_in");
  const int dout = get_dim(j, "dim_out");
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty())
    throw DimensionError("channel JSON needs a non-empty 'kraus' array");
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : j["kraus"]) {
    kraus.push_back(matrix_from_json(k));
    if (kraus.back().rows() != dout || kraus.back().cols() != din)
      throw DimensionError("Kraus operator shape does not match dim_out x dim_in");
  }
  Channel ch(std::move(kraus));
  if (j.contains("family")) {
    if (auto f = family_from_json(j["family"])) {
      try {
        const Channel ref = channels::from_family(*f);
        if (same_kraus(ref, ch)) return Channel(ch.kraus(), f);
      } catch (const ValidationError&) {
      }
    }
  }
  return ch;
}

Json state_to_json(const BipartiteState& s) {
  return {{"dim_a", s.dim_a}, {"dim_b", s.dim_b}, {"rho", matrix_to_json(s.rho.mat())}};
}

BipartiteState state_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("state JSON must be an object");
  const int da = get_dim(j, "dim_a");
  const int db = get_dim(j, "dim_b");
  if (!j.contains("rho")) throw DimensionError("state JSON needs 'rho'");
  return BipartiteState(da, db, DensityMatrix(matrix_from_json(j["rho"])));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace capbound
