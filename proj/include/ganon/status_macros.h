// Copyright 2026 The Ganon Authors
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

#ifndef GANON_STATUS_MACROS_H_
#define GANON_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define GANON_STATUS_CONCAT_INNER_(x, y) x##y
#define GANON_STATUS_CONCAT_(x, y) GANON_STATUS_CONCAT_INNER_(x, y)

#define GANON_RETURN_IF_ERROR(expr)        \
  do {                                     \
    const absl::Status _ganon_st = (expr); \
    if (!_ganon_st.ok()) return _ganon_st; \
  } while (0)

#define GANON_ASSIGN_OR_RETURN(lhs, rexpr)                                    \
  GANON_ASSIGN_OR_RETURN_IMPL_(                                               \
      GANON_STATUS_CONCAT_(_ganon_statusor_, __LINE__), lhs, rexpr)

#define GANON_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                 \
  if (!statusor.ok()) return statusor.status();            \
  lhs = std::move(statusor).value()

#endif  // GANON_STATUS_MACROS_H_
