// Copyright 2026 The permkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PERMKIT_JSON_IO_HPP
#define PERMKIT_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "permkit/bosonic.hpp"
#include "permkit/combinatorics.hpp"
#include "permkit/estimators.hpp"
#include "permkit/identities.hpp"
#include "permkit/numerics.hpp"
#include "permkit/permanents.hpp"

namespace permkit {

using Json = nlohmann::ordered_json;

// Matrices use {"dim": m, "entries": [[re, im], ...]} in row-major order.
// Malformed input raises ParseError; an entry count other than dim^2 raises
// DimensionMismatch.
ComplexMatrix matrix_from_json(const Json &j);
Json matrix_to_json(const ComplexMatrix &a);

// Multi-indices are plain arrays of non-negative integers.
MultiIndex multi_index_from_json(const Json &j);
Json multi_index_to_json(const MultiIndex &p);

Json complex_to_json(Complex z);

/// Parses a file; I/O failures and syntax errors both map to ParseError.
Json read_json_file(const std::string &path);

Json to_json(const PermanentResult &r);
Json to_json(const IdentityReport &r);
Json to_json(const EstimateReport &r);
Json to_json(const PipelineReport &r);
Json to_json(const RegimeReport &r);

}  // namespace permkit

#endif
