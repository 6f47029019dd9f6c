#include "holder/exponent.hpp"

#include <array>
#include <charconv>
#include <system_error>

namespace holder {

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "+inf") return pos_inf();
  if (text == "-inf") return neg_inf();
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw DomainError("cannot parse exponent '" + text + "'");
  }
  return from_real(value);
}

std::string Exponent::to_string() const {
  switch (tag_) {
    case Tag::NegInf: return "-inf";
    case Tag::PosInf: return "inf";
    case Tag::Zero: return "0";
    case Tag::Finite: break;
  }
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value_);
  return std::string(buf.data(), ptr);
}

}  // namespace holder
