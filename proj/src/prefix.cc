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

#include "rela/prefix.h"

#include <arpa/inet.h>

#include <charconv>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace rela {

absl::StatusOr<IpPrefix> IpPrefix::Parse(std::string_view text) {
  auto bad = [&](const char* why) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed prefix '", std::string(text), "': ", why));
  };
  std::string_view addr_text = text;
  std::optional<int> length;
  if (size_t slash = text.find('/'); slash != std::string_view::npos) {
    addr_text = text.substr(0, slash);
    std::string_view len_text = text.substr(slash + 1);
    int n = -1;
    auto [end, ec] =
        std::from_chars(len_text.data(), len_text.data() + len_text.size(), n);
    if (ec != std::errc() || end != len_text.data() + len_text.size() ||
        len_text.empty()) {
      return bad("bad mask length");
    }
    length = n;
  }
  IpPrefix p;
  std::string addr(addr_text);
  if (addr.find(':') != std::string::npos) {
    p.family = 6;
    if (inet_pton(AF_INET6, addr.c_str(), p.addr.data()) != 1) {
      return bad("bad IPv6 address");
    }
  } else {
    p.family = 4;
    if (inet_pton(AF_INET, addr.c_str(), p.addr.data()) != 1) {
      return bad("bad IPv4 address");
    }
  }
  int max_len = p.family == 4 ? 32 : 128;
  p.length = length.value_or(max_len);
  if (p.length < 0 || p.length > max_len) return bad("mask out of range");
  for (int bit = p.length; bit < max_len; ++bit) {
    p.addr[bit / 8] &= static_cast<uint8_t>(~(0x80u >> (bit % 8)));
  }
  return p;
}

bool IpPrefix::Within(const IpPrefix& outer) const {
  if (family != outer.family || length < outer.length) return false;
  for (int bit = 0; bit < outer.length; ++bit) {
    uint8_t mask = 0x80u >> (bit % 8);
    if ((addr[bit / 8] & mask) != (outer.addr[bit / 8] & mask)) return false;
  }
  return true;
}

std::string IpPrefix::ToString() const {
  char buf[INET6_ADDRSTRLEN];
  inet_ntop(family == 4 ? AF_INET : AF_INET6, addr.data(), buf, sizeof(buf));
  return absl::StrCat(buf, "/", length);
}

namespace {

PredicatePtr Make(PrefixPredicate p) {
  return std::make_shared<const PrefixPredicate>(std::move(p));
}

}  // namespace

PredicatePtr PrefixPredicate::True() { return Make({}); }

PredicatePtr PrefixPredicate::Atom(Field field, Op op,
                                   std::vector<IpPrefix> prefixes) {
  PrefixPredicate p;
  p.kind = Kind::kAtom;
  p.field = field;
  p.op = op;
  p.prefixes = std::move(prefixes);
  return Make(std::move(p));
}

PredicatePtr PrefixPredicate::And(PredicatePtr a, PredicatePtr b) {
  PrefixPredicate p;
  p.kind = Kind::kAnd;
  p.a = std::move(a);
  p.b = std::move(b);
  return Make(std::move(p));
}

PredicatePtr PrefixPredicate::Or(PredicatePtr a, PredicatePtr b) {
  PrefixPredicate p;
  p.kind = Kind::kOr;
  p.a = std::move(a);
  p.b = std::move(b);
  return Make(std::move(p));
}

PredicatePtr PrefixPredicate::Not(PredicatePtr a) {
  PrefixPredicate p;
  p.kind = Kind::kNot;
  p.a = std::move(a);
  return Make(std::move(p));
}

bool MatchPredicate(const PrefixPredicate& pred, const Traffic& traffic) {
  using Kind = PrefixPredicate::Kind;
  switch (pred.kind) {
    case Kind::kTrue:
      return true;
    case Kind::kAnd:
      return MatchPredicate(*pred.a, traffic) &&
             MatchPredicate(*pred.b, traffic);
    case Kind::kOr:
      return MatchPredicate(*pred.a, traffic) ||
             MatchPredicate(*pred.b, traffic);
    case Kind::kNot:
      return !MatchPredicate(*pred.a, traffic);
    case Kind::kAtom: {
      const std::optional<IpPrefix>& value =
          pred.field == PrefixPredicate::Field::kDst ? traffic.dst
                                                     : traffic.src;
      if (!value.has_value()) return false;
      bool inside = false;
      for (const IpPrefix& p : pred.prefixes) inside |= value->Within(p);
      return pred.op == PrefixPredicate::Op::kNe ? !inside : inside;
    }
  }
  return false;
}

bool SamePredicate(const PrefixPredicate& a, const PrefixPredicate& b) {
  if (a.kind != b.kind) return false;
  using Kind = PrefixPredicate::Kind;
  switch (a.kind) {
    case Kind::kTrue:
      return true;
    case Kind::kAtom:
      return a.field == b.field && a.op == b.op && a.prefixes == b.prefixes;
    case Kind::kNot:
      return SamePredicate(*a.a, *b.a);
    default:
      return SamePredicate(*a.a, *b.a) && SamePredicate(*a.b, *b.b);
  }
}

std::string PrintPredicate(const PrefixPredicate& pred) {
  using Kind = PrefixPredicate::Kind;
  switch (pred.kind) {
    case Kind::kTrue:
      return "true";
    case Kind::kAnd:
      return absl::StrCat("(", PrintPredicate(*pred.a), " and ",
                          PrintPredicate(*pred.b), ")");
    case Kind::kOr:
      return absl::StrCat("(", PrintPredicate(*pred.a), " or ",
                          PrintPredicate(*pred.b), ")");
    case Kind::kNot:
      return absl::StrCat("not ", PrintPredicate(*pred.a));
    case Kind::kAtom: {
      std::string out = pred.field == PrefixPredicate::Field::kDst
                            ? "dstPrefix"
                            : "srcPrefix";
      if (pred.op == PrefixPredicate::Op::kIn) {
        absl::StrAppend(&out, " in {");
        for (size_t i = 0; i < pred.prefixes.size(); ++i) {
          absl::StrAppend(&out, i ? ", " : "", pred.prefixes[i].ToString());
        }
        absl::StrAppend(&out, "}");
        return out;
      }
      absl::StrAppend(&out, pred.op == PrefixPredicate::Op::kEq ? "==" : "!=",
                      pred.prefixes[0].ToString());
      return out;
    }
  }
  return "";
}

}  // namespace rela
