#include <string>

#include <json.hpp>

#include "subalg/error.hpp"
#include "subalg/model.hpp"

namespace subalg {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "subalg-observer-model";
constexpr int kVersion = 1;

json matrix_rows(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json map_to_json(const MonomialMap& map) {
  json K = json::array();
  for (std::size_t i = 0; i < map.terms(); ++i) {
    auto r = map.powers().row(i);
    K.push_back(std::vector<int>(r.begin(), r.end()));
  }
  return {{"inputs", map.inputs()},
          {"outputs", map.outputs()},
          {"K", std::move(K)},
          {"L", matrix_rows(map.coefficients())}};
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

// Schema helpers: every failure names the JSON path.
[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  fail(ErrorCode::Parse, "model document " + path + ": " + what);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "/" + key, "missing");
  return *it;
}

std::size_t as_count(const json& v, const std::string& path) {
  if (!v.is_number_unsigned()) schema_error(path, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) schema_error(path, "expected a number");
  return v.get<double>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array");
  return v;
}

Eigen::MatrixXd matrix_from_json(const json& v, const std::string& path, std::size_t rows,
                                 std::size_t cols) {
  const json& arr = as_array(v, path);
  if (arr.size() != rows) {
    schema_error(path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(arr.size()));
  }
  Eigen::MatrixXd M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = path + "/" + std::to_string(i);
    const json& row = as_array(arr[i], rp);
    if (row.size() != cols) {
      schema_error(rp, "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          as_double(row[j], rp + "/" + std::to_string(j));
    }
  }
  return M;
}

Eigen::VectorXd vector_from_json(const json& v, const std::string& path, std::size_t size) {
  const json& arr = as_array(v, path);
  if (arr.size() != size) {
    schema_error(path, "expected " + std::to_string(size) + " entries, found " + std::to_string(arr.size()));
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(size));
  for (std::size_t i = 0; i < size; ++i) {
    out(static_cast<Eigen::Index>(i)) = as_double(arr[i], path + "/" + std::to_string(i));
  }
  return out;
}

MonomialMap map_from_json(const json& v, const std::string& path) {
  const std::size_t inputs = as_count(member(v, path, "inputs"), path + "/inputs");
  const std::size_t outputs = as_count(member(v, path, "outputs"), path + "/outputs");
  const json& K = as_array(member(v, path, "K"), path + "/K");
  std::vector<PowerVector> rows;
  for (std::size_t i = 0; i < K.size(); ++i) {
    const std::string rp = path + "/K/" + std::to_string(i);
    const json& row = as_array(K[i], rp);
    if (row.size() != inputs) schema_error(rp, "expected " + std::to_string(inputs) + " exponents");
    std::vector<int> e;
    for (std::size_t j = 0; j < inputs; ++j) {
      const json& x = row[j];
      if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() > 1'000'000) {
        schema_error(rp + "/" + std::to_string(j), "expected a nonnegative integer exponent");
      }
      e.push_back(x.get<int>());
    }
    rows.emplace_back(std::move(e));
  }
  PowerMatrix pm(inputs);
  try {
    pm = PowerMatrix::from_rows(inputs, rows);
  } catch (const Error& e) {
    fail(ErrorCode::Validation, "model document " + path + "/K: " + e.what());
  }
  Eigen::MatrixXd L = matrix_from_json(member(v, path, "L"), path + "/L", outputs, rows.size());
  return MonomialMap(std::move(L), std::move(pm));
}

}  // namespace

std::string serialize_model(const ObserverModel& model) {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["n"] = model.n;
  doc["d_y"] = model.d_y;
  doc["f_o"] = map_to_json(model.f_o);
  doc["h_o"] = map_to_json(model.h_o);
  if (model.g_io) {
    json g = map_to_json(model.g_io->g);
    g["t_minus"] = model.g_io->t_minus;
    doc["g_io"] = std::move(g);
  }
  // one n-vector per training series
  doc["x0"] = matrix_rows(model.x0.transpose());
  if (model.scaling) {
    doc["scaling"] = {{"offset", vector_to_json(model.scaling->offset)},
                      {"scale", vector_to_json(model.scaling->scale)}};
  }
  doc["provenance"] = model.provenance;
  return doc.dump(2) + "\n";
}

ObserverModel deserialize_model(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, "model document is not valid JSON at byte " + std::to_string(e.byte) +
                               ": " + e.what());
  }
  const json& format = member(doc, "", "format");
  if (!format.is_string() || format.get<std::string>() != kFormat) {
    schema_error("/format", std::string("expected \"") + kFormat + "\"");
  }
  if (as_count(member(doc, "", "version"), "/version") != kVersion) {
    schema_error("/version", "unsupported version");
  }

  ObserverModel model;
  model.n = as_count(member(doc, "", "n"), "/n");
  model.d_y = as_count(member(doc, "", "d_y"), "/d_y");
  model.f_o = map_from_json(member(doc, "", "f_o"), "/f_o");
  model.h_o = map_from_json(member(doc, "", "h_o"), "/h_o");
  if (doc.contains("g_io")) {
    const json& g = doc["g_io"];
    model.g_io = PastMap{as_count(member(g, "/g_io", "t_minus"), "/g_io/t_minus"),
                         map_from_json(g, "/g_io")};
  }
  const json& x0 = as_array(member(doc, "", "x0"), "/x0");
  model.x0 = matrix_from_json(x0, "/x0", x0.size(), model.n).transpose();
  if (doc.contains("scaling")) {
    const json& s = doc["scaling"];
    model.scaling = OutputScaling{
        vector_from_json(member(s, "/scaling", "offset"), "/scaling/offset", model.d_y),
        vector_from_json(member(s, "/scaling", "scale"), "/scaling/scale", model.d_y)};
  }
  if (doc.contains("provenance")) {
    const json& p = doc["provenance"];
    if (!p.is_object()) schema_error("/provenance", "expected an object");
    for (const auto& [key, value] : p.items()) {
      if (!value.is_string()) schema_error("/provenance/" + key, "expected a string");
      model.provenance[key] = value.get<std::string>();
    }
  }
  validate(model);
  return model;
}

}  // namespace subalg
