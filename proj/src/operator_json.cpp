#include "drsplit/operator_json.hpp"

#include <string>

#include "drsplit/detail/overloaded.hpp"
#include "drsplit/errors.hpp"

namespace drsplit {

using detail::Overloaded;

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::Parse, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::Parse, std::string(what) + " must be a number");
  return j.get<double>();
}

std::optional<Index> optional_dim(const Json& j) {
  if (!j.contains("dim")) return std::nullopt;
  const Json& d = j.at("dim");
  if (!d.is_number_integer() || d.get<long long>() <= 0) {
    throw Error(ErrorCode::Parse, "'dim' must be a positive integer");
  }
  return static_cast<Index>(d.get<long long>());
}

void put_dim(Json& j, std::optional<Index> dim) {
  if (dim) j["dim"] = *dim;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::Parse, "matrix must be a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw Error(ErrorCode::Parse, "matrix rows must be non-empty arrays");
  const auto cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw Error(ErrorCode::Parse, "matrix rows must all have the same length");
    }
    for (Index k = 0; k < cols; ++k) m(i, k) = number(row[static_cast<std::size_t>(k)], "matrix entry");
  }
  return m;
}

Vector vector_from_json(const Json& j) {
  if (j.is_number()) return Vector::Constant(1, j.get<double>());
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::Parse, "vector must be a non-empty array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = number(j[i], "vector entry");
  return v;
}

Json to_json(const OperatorSpec& op) {
  return std::visit(
      Overloaded{
          [](const ZeroOp& z) {
            Json j{{"type", "zero"}};
            put_dim(j, z.dim);
            return j;
          },
          [](const ScaledIdentity& s) {
            Json j{{"type", "scaled_identity"}, {"alpha", s.alpha}};
            put_dim(j, s.dim);
            return j;
          },
          [](const LinearRelation& l) { return Json{{"type", "linear"}, {"M", matrix_to_json(l.M)}}; },
          [](const ProxFunction& f) {
            return std::visit(
                Overloaded{
                    [](const Quadratic& k) {
                      return Json{{"type", "prox_quadratic"},
                                  {"Q", matrix_to_json(k.Q)},
                                  {"q", vector_to_json(k.q)}};
                    },
                    [](const L1Norm& k) {
                      Json j{{"type", "prox_l1"}, {"weight", k.weight}};
                      put_dim(j, k.dim);
                      return j;
                    },
                    [](const BoxIndicator& k) {
                      return Json{{"type", "prox_box"}, {"lo", vector_to_json(k.lo)}, {"hi", vector_to_json(k.hi)}};
                    },
                    [](const AffineIndicator& k) {
                      return Json{{"type", "prox_affine"}, {"E", matrix_to_json(k.E)}, {"e", vector_to_json(k.e)}};
                    },
                },
                f.kind);
          },
          [](const InverseOp& i) { return Json{{"type", "inverse"}, {"inner", to_json(*i.inner)}}; },
          [](const Block2x2& b) {
            return Json{{"type", "block2x2"}, {"A", to_json(*b.A)}, {"B", to_json(*b.B)}, {"C", matrix_to_json(b.C)}};
          },
      },
      op.variant());
}

OperatorSpec operator_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "operator must be a JSON object");
  const Json& type_field = field(j, "type");
  if (!type_field.is_string()) throw Error(ErrorCode::Parse, "operator 'type' must be a string");
  const auto type = type_field.get<std::string>();

  if (type == "zero") return OperatorSpec::zero(optional_dim(j));
  if (type == "scaled_identity") {
    return OperatorSpec::scaled_identity(number(field(j, "alpha"), "alpha"), optional_dim(j));
  }
  if (type == "linear") return OperatorSpec::linear(matrix_from_json(field(j, "M")));
  if (type == "prox_quadratic") {
    return OperatorSpec::quadratic(matrix_from_json(field(j, "Q")), vector_from_json(field(j, "q")));
  }
  if (type == "prox_l1") return OperatorSpec::l1(number(field(j, "weight"), "weight"), optional_dim(j));
  if (type == "prox_box") return OperatorSpec::box(vector_from_json(field(j, "lo")), vector_from_json(field(j, "hi")));
  if (type == "prox_affine") {
    return OperatorSpec::affine(matrix_from_json(field(j, "E")), vector_from_json(field(j, "e")));
  }
  if (type == "inverse") return OperatorSpec::inverse(operator_from_json(field(j, "inner")));
  if (type == "block2x2") {
    return OperatorSpec::block(operator_from_json(field(j, "A")), operator_from_json(field(j, "B")),
                               matrix_from_json(field(j, "C")));
  }
  throw Error(ErrorCode::Parse, "unknown operator type '" + type + "'");
}

}  // namespace drsplit
