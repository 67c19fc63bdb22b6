#pragma once

#include <string>
#include <string_view>

#include "seisdetect/error.hpp"

namespace seisdetect {

// Partition role stamped into every data file so that training and selection
// can refuse test-partition inputs.
enum class DataRole { Unassigned, Train, Validation, Test, Pool };

inline std::string_view to_string(DataRole role) {
  switch (role) {
    case DataRole::Unassigned: return "unassigned";
    case DataRole::Train: return "train";
    case DataRole::Validation: return "validation";
    case DataRole::Test: return "test";
    case DataRole::Pool: return "pool";
  }
  return "unassigned";
}

inline DataRole parse_role(std::string_view text) {
  if (text == "unassigned") return DataRole::Unassigned;
  if (text == "train") return DataRole::Train;
  if (text == "validation") return DataRole::Validation;
  if (text == "test") return DataRole::Test;
  if (text == "pool") return DataRole::Pool;
  throw Error(ErrorCode::ParseError, "unknown data role '" + std::string(text) + "'");
}

}  // namespace seisdetect
