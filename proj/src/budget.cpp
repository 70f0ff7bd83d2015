#include "reflexa/budget.hpp"

#include <charconv>
#include <cstdlib>

#include "reflexa/error.hpp"

namespace reflexa {

namespace {

std::uint64_t parse_count(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("bad budget value '" + std::string(s) + "' in '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Budget parse_budget(std::string_view text, Budget base) {
  Budget b = base;
  if (text.empty()) return b;
  if (text.find('=') == std::string_view::npos) {
    b.dim = parse_count(text, text);
    return b;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("budget item '" + std::string(item) + "' lacks '='");
    std::string_view key = item.substr(0, eq), val = item.substr(eq + 1);
    if (key == "dim")
      b.dim = parse_count(val, text);
    else if (key == "enumeration")
      b.enumeration = parse_count(val, text);
    else if (key == "iso")
      b.iso_search = parse_count(val, text);
    else if (key == "modules")
      b.modules = parse_count(val, text);
    else
      throw ParseError("unknown budget key '" + std::string(key) + "'");
  }
  return b;
}

const Budget& default_budget() {
  static const Budget b = [] {
    const char* env = std::getenv("REFLEXA_BUDGET");
    return env ? parse_budget(env) : Budget{};
  }();
  return b;
}

std::string to_string(const Budget& b) {
  return "dim=" + std::to_string(b.dim) + ",enumeration=" + std::to_string(b.enumeration) +
         ",iso=" + std::to_string(b.iso_search) +
         ",modules=" + std::to_string(b.modules);
}

}  // namespace reflexa
