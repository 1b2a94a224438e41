#pragma once

#include <string_view>

namespace sliceopt {

enum class Relation { LessEq, Equal, GreaterEq };

constexpr std::string_view relation_symbol(Relation rel) {
  switch (rel) {
    case Relation::LessEq: return "<=";
    case Relation::Equal: return "=";
    case Relation::GreaterEq: return ">=";
  }
  return "?";
}

}  // namespace sliceopt
