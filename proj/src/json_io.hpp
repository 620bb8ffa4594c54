// Copyright 2026 The qsd developers
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

// Internal helpers for the on-disk matrix encoding: row-major arrays of
// [re, im] pairs. Not part of the public interface.

#pragma once

#include <string>

#include <json.hpp>

#include "qsd/errors.hpp"
#include "qsd/matrix.hpp"

namespace qsd::detail {

inline ComplexMatrix matrix_from_json(const nlohmann::json& j, std::size_t dim,
                                      const std::string& path) {
  if (!j.is_array() || j.size() != dim) {
    throw ParseError(path, "expected an array of " + std::to_string(dim) + " rows");
  }
  ComplexMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const nlohmann::json& row = j[r];
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != dim) {
      throw ParseError(row_path,
                       "expected an array of " + std::to_string(dim) + " entries");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      const nlohmann::json& cell = row[c];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
          !cell[1].is_number()) {
        throw ParseError(row_path + "[" + std::to_string(c) + "]", "expected [re, im]");
      }
      m(r, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qsd::detail
