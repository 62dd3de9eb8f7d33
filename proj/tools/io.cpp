// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#include "io.hpp"

#include <fstream>
#include <sstream>

namespace spectwist::io {

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
  return j.at(key);
}

int int_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return j.get<int>();
}

std::string unit_key(int k, int i, int j) {
  return std::to_string(k) + "," + std::to_string(i) + "," + std::to_string(j);
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const AlgebraElement& a) {
  json blocks = json::array();
  for (const auto& b : a.blocks()) blocks.push_back(to_json(b));
  return blocks;
}

json to_json(const Perturbation& p) {
  json pairs = json::array();
  for (const auto& [a, b] : p.pairs()) pairs.push_back(json::array({to_json(a), to_json(b)}));
  return pairs;
}

json triple_to_json(const TwistedTriple& t) {
  json j;
  j["algebra"]["blocks"] = t.shape().block_dims();
  j["hilbert_dim"] = t.dim();
  json images = json::object();
  for (const auto& u : t.shape().units()) images[unit_key(u.k, u.i, u.j)] = to_json(t.rep().unit_image(u.k, u.i, u.j));
  j["representation"]["unit_images"] = std::move(images);
  j["dirac"] = to_json(t.dirac());
  if (t.grading()) j["grading"] = to_json(*t.grading());
  if (t.real()) j["real_structure"]["matrix"] = to_json(t.real()->mat());
  j["automorphism"]["perm"] = t.sigma().perm();
  json conj = json::array();
  for (const auto& c : t.sigma().conjugators()) conj.push_back(to_json(c));
  j["automorphism"]["conjugators"] = std::move(conj);
  return j;
}

cplx complex_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SchemaError(where + ": expected a complex number [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw SchemaError(where + ": expected rows to be non-empty arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw SchemaError(where + ": ragged matrix at row " + std::to_string(r));
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<size_t>(c)], where);
  }
  return m;
}

AlgebraElement element_from_json(const json& j, const AlgebraShape& shape, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != shape.num_blocks())
    throw SchemaError(where + ": expected " + std::to_string(shape.num_blocks()) + " blocks");
  std::vector<CMatrix> blocks;
  for (int k = 0; k < shape.num_blocks(); ++k) {
    CMatrix b = matrix_from_json(j[static_cast<size_t>(k)], where + " block " + std::to_string(k));
    if (b.rows() != shape.dim(k) || b.cols() != shape.dim(k))
      throw SchemaError(where + ": block " + std::to_string(k) + " must be " + std::to_string(shape.dim(k)) + " x " +
                        std::to_string(shape.dim(k)));
    blocks.push_back(std::move(b));
  }
  return {shape, std::move(blocks)};
}

Perturbation pert_from_json(const json& j, const AlgebraShape& shape) {
  if (!j.is_array() || j.empty()) throw SchemaError("perturbation: expected a non-empty list of pairs");
  std::vector<ElementPair> pairs;
  for (size_t n = 0; n < j.size(); ++n) {
    const std::string where = "perturbation pair " + std::to_string(n);
    if (!j[n].is_array() || j[n].size() != 2) throw SchemaError(where + ": expected [a, b]");
    pairs.emplace_back(element_from_json(j[n][0], shape, where), element_from_json(j[n][1], shape, where));
  }
  return {shape, std::move(pairs)};
}

TwistedTriple triple_from_json(const json& j) {
  std::vector<int> dims;
  for (const auto& d : field(field(j, "algebra", "triple"), "blocks", "algebra"))
    dims.push_back(int_from_json(d, "algebra.blocks"));
  const AlgebraShape shape(dims);
  const int dim = int_from_json(field(j, "hilbert_dim", "triple"), "hilbert_dim");
  if (dim <= 0) throw SchemaError("hilbert_dim must be positive");
  const json& images = field(field(j, "representation", "triple"), "unit_images", "representation");
  if (!images.is_object()) throw SchemaError("representation.unit_images: expected an object");
  std::vector<CMatrix> units;
  for (const auto& u : shape.units()) {
    const std::string key = unit_key(u.k, u.i, u.j);
    if (!images.contains(key)) throw SchemaError("representation.unit_images: missing '" + key + "'");
    units.push_back(matrix_from_json(images.at(key), "unit image " + key));
  }
  if (images.size() != units.size()) throw SchemaError("representation.unit_images: unexpected keys");
  Representation rep(shape, dim, std::move(units));
  CMatrix dirac = matrix_from_json(field(j, "dirac", "triple"), "dirac");
  std::optional<CMatrix> grading;
  if (j.contains("grading") && !j.at("grading").is_null()) grading = matrix_from_json(j.at("grading"), "grading");
  std::optional<AntilinearOp> real;
  if (j.contains("real_structure") && !j.at("real_structure").is_null())
    real = AntilinearOp(matrix_from_json(field(j.at("real_structure"), "matrix", "real_structure"), "real_structure"));
  const json& aut = field(j, "automorphism", "triple");
  std::vector<int> perm;
  for (const auto& p : field(aut, "perm", "automorphism")) perm.push_back(int_from_json(p, "automorphism.perm"));
  std::vector<CMatrix> conj;
  const json& cj = field(aut, "conjugators", "automorphism");
  if (!cj.is_array()) throw SchemaError("automorphism.conjugators: expected an array");
  for (size_t k = 0; k < cj.size(); ++k) conj.push_back(matrix_from_json(cj[k], "conjugator " + std::to_string(k)));
  Automorphism sigma(shape, std::move(perm), std::move(conj));
  return {std::move(rep), std::move(dirac), std::move(sigma), std::move(grading), std::move(real)};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

TwistedTriple load_triple(const std::string& path) { return triple_from_json(read_json_file(path)); }

Perturbation load_pert(const std::string& path, const AlgebraShape& shape) {
  return pert_from_json(read_json_file(path), shape);
}

AlgebraElement load_element(const std::string& path, const AlgebraShape& shape) {
  return element_from_json(read_json_file(path), shape, path);
}

IdempotentData load_idempotent(const std::string& path, const TwistedTriple& t) {
  const json j = read_json_file(path);
  const int n = int_from_json(field(j, "n", "idempotent"), "idempotent.n");
  if (n <= 0) throw SchemaError("idempotent.n must be positive");
  return make_idempotent(t, n, element_from_json(field(j, "element", "idempotent"), t.shape().amplified(n), "idempotent"));
}

}  // namespace spectwist::io
