#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "nlbox/box.hpp"

namespace nlbox {

/// Malformed box document: bad JSON or wrong shape. `what()` names the location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses {"matrix": [[r00], [r01], [r10], [r11]]}. Only the shape is checked
/// here; probability constraints are left to validate().
Box box_from_json(std::string_view text);

/// Renders a box in the same schema with 17 significant digits per entry, so
/// box_from_json(box_to_json(b)) == b bit for bit.
std::string box_to_json(const Box& box);

/// Decimal rendering with 17 significant digits.
std::string format_double(double value);

/// Header row plus one row: x00,x01,x10,x11 followed by the eight CHSH values
/// named chsh_<x><y>_<plus|minus>.
std::string chsh_csv(const Box& box);

}  // namespace nlbox
