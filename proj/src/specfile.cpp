#include "cocyclelab/specfile.hpp"

#include <fstream>
#include <sstream>

#include "cocyclelab/util.hpp"

namespace cocyclelab {

namespace {

struct Line {
  int number;
  std::string key;
  std::string value;
};

[[noreturn]] void parse_fail(int line, const std::string& what) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_doubles(const Line& ln, std::size_t expect) {
  std::istringstream is(ln.value);
  std::vector<double> out;
  double v;
  while (is >> v) out.push_back(v);
  std::string rest;
  if (is.clear(), is >> rest)
    parse_fail(ln.number, "unexpected token '" + rest + "'");
  if (expect != 0 && out.size() != expect)
    parse_fail(ln.number, "expected " + std::to_string(expect) + " numbers");
  return out;
}

long parse_int(const Line& ln) {
  try {
    std::size_t used = 0;
    long v = std::stol(ln.value, &used);
    if (used != ln.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    parse_fail(ln.number, "expected an integer, got '" + ln.value + "'");
  }
}

bool is_word_key(const std::string& key, int alphabet) {
  if (key.empty()) return false;
  for (char c : key)
    if (c < '0' || c >= '0' + std::min(alphabet, 10)) return false;
  return true;
}

}  // namespace

CocycleSpec parse_spec_text(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  int number = 0;
  std::string section;
  std::vector<std::pair<std::string, Line>> entries;  // (section, line)
  while (std::getline(is, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(number, "unterminated section header");
      section = line.substr(1, line.size() - 2);
      if (section != "sft" && section != "cocycle" && section != "builtin")
        parse_fail(number, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_fail(number, "expected 'key = value'");
    Line ln{number, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
    if (section.empty()) parse_fail(number, "content before any section header");
    entries.emplace_back(section, ln);
  }

  int size = -1;
  std::vector<std::vector<int>> rows;
  std::string kind;
  std::optional<std::pair<int, int>> window;
  std::optional<double> alpha;
  std::vector<Line> word_lines;
  std::string builtin_name;
  std::optional<int> k0;

  for (const auto& [sec, ln] : entries) {
    if (sec == "sft") {
      if (ln.key == "size") {
        size = static_cast<int>(parse_int(ln));
        if (size < 1 || size > 10) parse_fail(ln.number, "size must be in 1..10 for files");
      } else if (ln.key == "row") {
        auto vals = parse_doubles(ln, 0);
        std::vector<int> row;
        for (double v : vals) {
          if (v != 0.0 && v != 1.0) parse_fail(ln.number, "row entries must be 0/1");
          row.push_back(static_cast<int>(v));
        }
        rows.push_back(std::move(row));
      } else {
        parse_fail(ln.number, "unknown key '" + ln.key + "' in [sft]");
      }
    } else if (sec == "cocycle") {
      if (ln.key == "kind") {
        kind = ln.value;
      } else if (ln.key == "window") {
        auto vals = parse_doubles(ln, 2);
        window = {static_cast<int>(vals[0]), static_cast<int>(vals[1])};
      } else if (ln.key == "alpha") {
        alpha = parse_doubles(ln, 1)[0];
      } else if (size > 0 && is_word_key(ln.key, size)) {
        word_lines.push_back(ln);
      } else {
        parse_fail(ln.number, "unknown key '" + ln.key + "' in [cocycle]");
      }
    } else {  // builtin
      if (ln.key == "name") {
        builtin_name = ln.value;
      } else if (ln.key == "k0") {
        k0 = static_cast<int>(parse_int(ln));
      } else {
        parse_fail(ln.number, "unknown key '" + ln.key + "' in [builtin]");
      }
    }
  }

  if (size < 1) fail(ErrorCode::ParseError, "[sft] needs a size");
  if (static_cast<int>(rows.size()) != size)
    fail(ErrorCode::ParseError, "[sft] needs exactly 'size' rows");
  TransitionMatrix q = validate_sft(rows);

  if (kind == "builtin") {
    if (builtin_name.empty()) fail(ErrorCode::ParseError, "[builtin] needs a name");
    return CocycleSpec::builtin(std::move(q), builtin_name, k0);
  }
  if (kind != "locally-constant")
    fail(ErrorCode::ParseError, "kind must be locally-constant or builtin");
  if (!window) fail(ErrorCode::ParseError, "locally-constant cocycles need a window");
  if (!alpha) fail(ErrorCode::ParseError, "locally-constant cocycles need alpha");

  std::map<Word, Mat2> table;
  const int width = window->second - window->first + 1;
  for (const auto& ln : word_lines) {
    if (static_cast<int>(ln.key.size()) != width)
      parse_fail(ln.number, "word '" + ln.key + "' does not match the window width");
    Word w;
    for (char c : ln.key) w.push_back(c - '0');
    auto vals = parse_doubles(ln, 4);
    Mat2 m(vals[0], vals[1], vals[2], vals[3]);
    if (!is_sl2(m))
      parse_fail(ln.number, "matrix for word '" + ln.key + "' has determinant " +
                                format_g17(m.det) + " (not SL2 within 1e-9)");
    if (!table.emplace(std::move(w), m).second)
      parse_fail(ln.number, "duplicate word '" + ln.key + "'");
  }
  return CocycleSpec::locally_constant(std::move(q), window->first, window->second,
                                       std::move(table), *alpha);
}

CocycleSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

std::string emit_spec_text(const CocycleSpec& spec) {
  std::ostringstream os;
  os << "[sft]\n";
  os << "size = " << spec.base().size() << "\n";
  for (const auto& row : spec.base().entries()) {
    os << "row =";
    for (int v : row) os << " " << v;
    os << "\n";
  }
  os << "\n[cocycle]\n";
  if (spec.is_builtin()) {
    os << "kind = builtin\n";
    os << "\n[builtin]\n";
    os << "name = " << spec.builtin_ref().name << "\n";
    if (spec.builtin_ref().k0 != 0) os << "k0 = " << spec.builtin_ref().k0 << "\n";
    return os.str();
  }
  const auto& t = spec.table();
  os << "kind = locally-constant\n";
  os << "window = " << t.window_lo << " " << t.window_hi << "\n";
  os << "alpha = " << format_g17(spec.alpha()) << "\n";
  for (const auto& [w, m] : t.entries) {
    for (Symbol s : w) os << s;
    os << " = " << format_g17(m.m00) << " " << format_g17(m.m01) << " " << format_g17(m.m10)
       << " " << format_g17(m.m11) << "\n";
  }
  return os.str();
}

std::string spec_digest(const std::string& text) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(text)));
  return buf;
}

}  // namespace cocyclelab
