#include "gsift/group_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gsift {

namespace {

std::vector<int64_t> numbers_on_line(const std::string& line) {
  std::istringstream in(line);
  std::vector<int64_t> out;
  int64_t x;
  while (in >> x) out.push_back(x);
  if (!in.eof() && in.fail()) {
    in.clear();
    std::string rest;
    in >> rest;
    throw std::invalid_argument("unexpected token '" + rest + "' in: " + line);
  }
  return out;
}

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string strip_comment(const std::string& line) {
  size_t hash = line.find('#');
  std::string s = hash == std::string::npos ? line : line.substr(0, hash);
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Element element_from_numbers(ElementKind kind, uint32_t n, uint32_t p,
                             const std::vector<int64_t>& nums, const std::string& where) {
  if (kind == ElementKind::permutation) {
    if (nums.size() != n)
      throw std::invalid_argument(where + ": expected " + std::to_string(n) + " images");
    std::vector<uint32_t> images(n);
    for (uint32_t i = 0; i < n; ++i) {
      if (nums[i] < 1 || nums[i] > static_cast<int64_t>(n))
        throw std::invalid_argument(where + ": image out of range");
      images[i] = static_cast<uint32_t>(nums[i] - 1);
    }
    return Element::permutation(std::move(images));
  }
  if (nums.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument(where + ": expected " + std::to_string(n * n) + " entries");
  std::vector<uint32_t> entries(nums.size());
  for (size_t i = 0; i < nums.size(); ++i) {
    int64_t x = nums[i] % static_cast<int64_t>(p);
    if (x < 0) x += p;
    entries[i] = static_cast<uint32_t>(x);
  }
  return Element::matrix(n, p, std::move(entries));
}

}  // namespace

Group parse_group(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  Group g;
  bool have_header = false;
  ElementKind kind = ElementKind::permutation;
  uint32_t n = 0, p = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = strip_comment(line);
    if (s.empty()) continue;
    std::string where = origin + ":" + std::to_string(lineno);
    if (s.rfind("label ", 0) == 0) {
      g.label = s.substr(6);
      continue;
    }
    if (!have_header) {
      std::istringstream hs(s);
      std::string word;
      hs >> word;
      if (word == "perm") {
        kind = ElementKind::permutation;
        if (!(hs >> n) || n == 0) throw std::invalid_argument(where + ": bad perm header");
      } else if (word == "mat") {
        kind = ElementKind::matrix;
        if (!(hs >> n >> p) || n == 0) throw std::invalid_argument(where + ": bad mat header");
        if (!is_prime(p)) throw std::invalid_argument(where + ": matrix field size must be prime");
      } else {
        throw std::invalid_argument(where + ": expected 'perm <n>' or 'mat <n> <p>'");
      }
      have_header = true;
      continue;
    }
    g.generators.push_back(element_from_numbers(kind, n, p, numbers_on_line(s), where));
  }
  if (!have_header) throw std::invalid_argument(origin + ": missing group header");
  if (g.generators.empty()) throw std::invalid_argument(origin + ": no generators");
  g.identity = Element::identity_like(g.generators.front());
  return g;
}

Group load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open group file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_group(buf.str(), path);
}

std::string element_row(const Element& g) {
  std::ostringstream out;
  const auto& v = g.data();
  if (g.kind() == ElementKind::permutation) {
    for (size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i] + 1;
  } else {
    for (size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  }
  return out.str();
}

Element parse_element_like(const Element& model, const std::string& line) {
  return element_from_numbers(model.kind(), model.degree(), model.field(),
                              numbers_on_line(strip_comment(line)), "element");
}

std::string serialize_group(const Group& g) {
  std::ostringstream out;
  if (!g.label.empty()) out << "label " << g.label << "\n";
  const Element& first = g.generators.front();
  if (first.kind() == ElementKind::permutation) {
    out << "perm " << first.degree() << "\n";
  } else {
    out << "mat " << first.degree() << " " << first.field() << "\n";
  }
  for (const Element& e : g.generators) out << element_row(e) << "\n";
  return out.str();
}

void save_group(const Group& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write group file: " + path);
  out << serialize_group(g);
}

}  // namespace gsift
