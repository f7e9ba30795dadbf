#include "qlab/io/json_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "qlab/error.hpp"

namespace qlab {

Json rep_to_json(const Rep& m) {
  const auto& q = m.algebra().quiver();
  Json dims = Json::object(), mats = Json::object();
  for (int v = 0; v < q.num_vertices(); ++v) dims[q.vertex_name(v)] = m.dim(v);
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& x = m.mat(a);
    Json rows = Json::array();
    for (std::size_t r = 0; r < x.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < x.cols(); ++c) row.push_back(x(r, c));
      rows.push_back(std::move(row));
    }
    mats[q.arrow(a).id] = std::move(rows);
  }
  return Json{{"dims", std::move(dims)}, {"field", m.prime()}, {"mats", std::move(mats)}};
}

Rep rep_from_json(const AlgebraPtr& alg, const Json& j) {
  const auto& q = alg->quiver();
  try {
    if (j.at("field").get<std::uint32_t>() != alg->prime())
      fail(ErrorKind::BadParameter, "module field differs from the algebra field");
    std::vector<std::size_t> dims(static_cast<std::size_t>(q.num_vertices()), 0);
    for (const auto& [name, d] : j.at("dims").items()) dims[static_cast<std::size_t>(q.vertex_index(name))] = d.get<std::size_t>();
    std::vector<Matrix> mats;
    for (int a = 0; a < q.num_arrows(); ++a) {
      const auto rows = dims[static_cast<std::size_t>(q.arrow(a).target)];
      const auto cols = dims[static_cast<std::size_t>(q.arrow(a).source)];
      Matrix x(rows, cols, alg->prime());
      const auto& id = q.arrow(a).id;
      if (j.at("mats").contains(id)) {
        const auto& data = j.at("mats").at(id);
        if (data.size() != rows) fail(ErrorKind::BadParameter, "arrow '" + id + "' has the wrong number of rows");
        for (std::size_t r = 0; r < rows; ++r) {
          if (data[r].size() != cols) fail(ErrorKind::BadParameter, "arrow '" + id + "' has the wrong number of columns");
          for (std::size_t c = 0; c < cols; ++c) {
            const auto v = data[r][c].get<std::int64_t>();
            if (v < 0 || v >= static_cast<std::int64_t>(alg->prime()))
              fail(ErrorKind::BadParameter, "entry out of range for arrow '" + id + "'");
            x(r, c) = static_cast<std::uint32_t>(v);
          }
        }
      } else if (rows * cols != 0) {
        fail(ErrorKind::BadParameter, "missing matrix for arrow '" + id + "'");
      }
      mats.push_back(std::move(x));
    }
    for (const auto& [name, _] : j.at("mats").items())
      if (!q.find_arrow(name)) fail(ErrorKind::BadParameter, "unknown arrow '" + name + "'");
    Rep m(alg, std::move(dims), std::move(mats));
    if (!m.satisfies_relations()) fail(ErrorKind::BadParameter, "module violates the relations");
    return m;
  } catch (const Json::exception& e) {
    fail(ErrorKind::BadParameter, std::string("malformed module JSON: ") + e.what());
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    fail(ErrorKind::Internal, "SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write '" + path + "'");
  out << data;
  if (!out) fail(ErrorKind::IoError, "write to '" + path + "' failed");
}

}  // namespace qlab
