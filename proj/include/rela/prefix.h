// Copyright 2026 The Rela authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// IP prefixes and the boolean guards that select traffic classes.

#ifndef RELA_PREFIX_H_
#define RELA_PREFIX_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace rela {

struct IpPrefix {
  int family = 4;  // 4 or 6
  std::array<uint8_t, 16> addr{};
  int length = 0;

  // Accepts "a.b.c.d/len", "x::y/len" or a bare address (full length).
  // Host bits past `length` are cleared.
  static absl::StatusOr<IpPrefix> Parse(std::string_view text);

  // True iff every address of *this lies inside `outer`.
  bool Within(const IpPrefix& outer) const;

  std::string ToString() const;

  friend bool operator==(const IpPrefix&, const IpPrefix&) = default;
};

struct Traffic {
  std::optional<IpPrefix> dst;
  std::optional<IpPrefix> src;
  std::string ingress;
};

struct PrefixPredicate;
using PredicatePtr = std::shared_ptr<const PrefixPredicate>;

struct PrefixPredicate {
  enum class Kind { kTrue, kAtom, kAnd, kOr, kNot };
  enum class Field { kDst, kSrc };
  enum class Op { kEq, kNe, kIn };

  Kind kind = Kind::kTrue;
  Field field = Field::kDst;
  Op op = Op::kEq;
  // One prefix for == and !=, one or more for `in`.
  std::vector<IpPrefix> prefixes;
  PredicatePtr a, b;

  static PredicatePtr True();
  static PredicatePtr Atom(Field field, Op op, std::vector<IpPrefix> prefixes);
  static PredicatePtr And(PredicatePtr a, PredicatePtr b);
  static PredicatePtr Or(PredicatePtr a, PredicatePtr b);
  static PredicatePtr Not(PredicatePtr a);
};

// An atom over a field the traffic lacks (no srcPrefix) is false; `!=` is the
// negation of `==`.
bool MatchPredicate(const PrefixPredicate& pred, const Traffic& traffic);

bool SamePredicate(const PrefixPredicate& a, const PrefixPredicate& b);

// Fully parenthesized, parseable by the surface parser.
std::string PrintPredicate(const PrefixPredicate& pred);

}  // namespace rela

#endif  // RELA_PREFIX_H_
