// Copyright 2026 The gibbsmaj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gibbsmaj/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gibbsmaj::io {

namespace {

[[noreturn]] void fail(const std::string& context, const std::string& what) {
  throw InputError(context + ": " + what);
}

double number(const Json& j, const std::string& context) {
  if (!j.is_number()) fail(context, "expected a number, got " + j.dump());
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(context, "expected a finite number");
  return v;
}

std::optional<std::string> label_of(const Json& j, const std::string& context) {
  if (!j.contains("label")) return std::nullopt;
  if (!j["label"].is_string()) fail(context, "\"label\" must be a string");
  return j["label"].get<std::string>();
}

std::size_t declared_size(const Json& j, const std::string& context) {
  if (!j.is_object()) fail(context, "expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    fail(context, "\"n\" must be a positive integer");
  }
  return j["n"].get<std::size_t>();
}

void dump_into(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      return;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_into(j[i], out);
      }
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

MatrixDocument parse_matrix(const Json& j, const std::string& context) {
  const std::size_t n = declared_size(j, context);
  if (!j.contains("matrix") || !j["matrix"].is_array() || j["matrix"].size() != n) {
    fail(context, "\"matrix\" must hold n rows");
  }
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const Json& row = j["matrix"][r];
    if (!row.is_array() || row.size() != n) fail(context, "row " + std::to_string(r) + " must hold n entries");
    for (std::size_t c = 0; c < n; ++c) {
      const Json& e = row[c];
      if (!e.is_array() || e.size() != 2) {
        fail(context, "entry (" + std::to_string(r) + ", " + std::to_string(c) + ") must be a [re, im] pair");
      }
      m(r, c) = Complex(number(e[0], context), number(e[1], context));
    }
  }
  return MatrixDocument{std::move(m), label_of(j, context)};
}

Json to_json(const MatrixDocument& doc) {
  Json j = {{"n", doc.n()}, {"matrix", matrix_rows(doc.matrix)}};
  if (doc.label) j["label"] = *doc.label;
  return j;
}

VectorDocument parse_vector(const Json& j, const std::string& context) {
  const std::size_t n = declared_size(j, context);
  if (!j.contains("vector") || !j["vector"].is_array() || j["vector"].size() != n) {
    fail(context, "\"vector\" must hold n numbers");
  }
  VectorDocument doc;
  for (const Json& x : j["vector"]) doc.values.push_back(number(x, context));
  doc.label = label_of(j, context);
  return doc;
}

Json to_json(const VectorDocument& doc) {
  Json values = Json::array();
  for (double x : doc.values) values.push_back(x);
  Json j = {{"n", doc.values.size()}, {"vector", values}};
  if (doc.label) j["label"] = *doc.label;
  return j;
}

HermitianMatrix require_hermitian(const MatrixDocument& doc, const std::string& context) {
  try {
    return HermitianMatrix(doc.matrix);
  } catch (const NotHermitian& e) {
    fail(context, std::string("matrix is not hermitian (") + e.what() + ")");
  }
}

Temperature parse_temperature(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Temperature::infinite();
  try {
    return Temperature::finite(number(j, "temperature"));
  } catch (const InvalidTemperature& e) {
    fail("temperature", e.what());
  }
}

Json to_json(Temperature t) {
  if (t.is_infinite()) return "inf";
  return t.value();
}

PiecewiseConstant parse_piecewise(const Json& j, const std::string& context) {
  if (j.is_number()) return PiecewiseConstant(number(j, context));
  if (!j.is_object() || !j.contains("values")) fail(context, "expected a number or {\"breakpoints\", \"values\"}");
  std::vector<double> breakpoints, values;
  if (j.contains("breakpoints")) {
    if (!j["breakpoints"].is_array()) fail(context, "\"breakpoints\" must be an array");
    for (const Json& x : j["breakpoints"]) breakpoints.push_back(number(x, context));
  }
  if (!j["values"].is_array()) fail(context, "\"values\" must be an array");
  for (const Json& x : j["values"]) values.push_back(number(x, context));
  try {
    return PiecewiseConstant(std::move(breakpoints), std::move(values));
  } catch (const std::invalid_argument& e) {
    fail(context, e.what());
  }
}

SystemDocument parse_system(const Json& j) {
  if (!j.is_object()) fail("system", "expected a JSON object");
  if (!j.contains("hamiltonian")) fail("system", "missing \"hamiltonian\"");
  if (!j.contains("temperature")) fail("system", "missing \"temperature\"");
  SystemDocument doc;
  doc.system_hamiltonian = require_hermitian(parse_matrix(j["hamiltonian"], "system.hamiltonian"), "system.hamiltonian");
  doc.temperature = parse_temperature(j["temperature"]);
  doc.label = label_of(j, "system");
  const GibbsContext ctx(doc.system_hamiltonian, doc.temperature);
  doc.system = thermal_system(ctx);
  if (j.contains("gamma")) doc.system.gamma = parse_piecewise(j["gamma"], "system.gamma");
  if (j.contains("controls")) {
    if (!j["controls"].is_array()) fail("system", "\"controls\" must be an array");
    for (std::size_t k = 0; k < j["controls"].size(); ++k) {
      const Json& c = j["controls"][k];
      const std::string where = "system.controls[" + std::to_string(k) + "]";
      if (!c.is_object() || !c.contains("hamiltonian") || !c.contains("u")) {
        fail(where, "needs \"hamiltonian\" and \"u\"");
      }
      doc.system.controls.push_back(
          {require_hermitian(parse_matrix(c["hamiltonian"], where), where), parse_piecewise(c["u"], where + ".u")});
    }
  }
  if (j.contains("dissipators")) {
    if (!j["dissipators"].is_array()) fail("system", "\"dissipators\" must be an array");
    doc.system.dissipators.clear();
    doc.default_dissipators = false;
    for (std::size_t k = 0; k < j["dissipators"].size(); ++k)
      doc.system.dissipators.push_back(
          parse_matrix(j["dissipators"][k], "system.dissipators[" + std::to_string(k) + "]").matrix);
  }
  try {
    doc.system.validate();
  } catch (const std::invalid_argument& e) {
    fail("system", e.what());
  }
  return doc;
}

ThermalOperation parse_thermal_operation(const Json& j) {
  if (!j.is_object()) fail("thermal operation", "expected a JSON object");
  for (const char* key : {"system_hamiltonian", "bath_hamiltonian", "unitary", "temperature"})
    if (!j.contains(key)) fail("thermal operation", std::string("missing \"") + key + "\"");
  auto h_s = require_hermitian(parse_matrix(j["system_hamiltonian"], "system_hamiltonian"), "system_hamiltonian");
  auto h_r = require_hermitian(parse_matrix(j["bath_hamiltonian"], "bath_hamiltonian"), "bath_hamiltonian");
  auto u = parse_matrix(j["unitary"], "unitary").matrix;
  try {
    return ThermalOperation(std::move(h_s), std::move(h_r), std::move(u), parse_temperature(j["temperature"]));
  } catch (const std::invalid_argument& e) {
    fail("thermal operation", e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": invalid JSON (" + e.what() + ")");
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError(path.string() + ": cannot write file");
  out << text << '\n';
}

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

Json matrix_rows(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Json real_rows(const RealMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gibbsmaj::io
