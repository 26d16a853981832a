#include "nlbox/io.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace nlbox {

Box box_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("matrix")) throw ParseError("expected an object with key \"matrix\"");
  const auto& matrix = doc.at("matrix");
  if (!matrix.is_array() || matrix.size() != 4) throw ParseError("\"matrix\" must be an array of 4 rows");
  Table t{};
  for (std::size_t r = 0; r < 4; ++r) {
    const auto& row = matrix[r];
    if (!row.is_array() || row.size() != 4) {
      throw ParseError("matrix[" + std::to_string(r) + "] must be an array of 4 numbers");
    }
    for (std::size_t c = 0; c < 4; ++c) {
      if (!row[c].is_number()) {
        throw ParseError("matrix[" + std::to_string(r) + "][" + std::to_string(c) + "] is not a number");
      }
      t[r][c] = row[c].get<double>();
    }
  }
  return Box(t);
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string box_to_json(const Box& box) {
  std::string out = "{\"matrix\": [";
  for (int r = 0; r < 4; ++r) {
    out += r ? ", [" : "[";
    for (int c = 0; c < 4; ++c) {
      if (c) out += ", ";
      out += format_double(box.matrix()[r][c]);
    }
    out += "]";
  }
  out += "]}";
  return out;
}

std::string chsh_csv(const Box& box) {
  const auto c = correlators(box);
  const auto values = chsh_values(c);
  std::ostringstream out;
  out << "x00,x01,x10,x11";
  for (const auto& v : values) out << ",chsh_" << v.x << v.y << (v.sign > 0 ? "_plus" : "_minus");
  out << '\n';
  out << format_double(c.x00) << ',' << format_double(c.x01) << ',' << format_double(c.x10) << ','
      << format_double(c.x11);
  for (const auto& v : values) out << ',' << format_double(v.value);
  out << '\n';
  return out.str();
}

}  // namespace nlbox
