#pragma once

#include <string>
#include <vector>

#include "gsift/element.hpp"

namespace gsift {

// A group given by generators only.
struct Group {
  std::string label;
  std::vector<Element> generators;
  Element identity;
};

// Group file format, line oriented, '#' starts a comment:
//   label m11
//   perm 11
//   2 3 4 5 6 7 8 9 10 11 1
//   1 2 7 10 6 4 11 3 9 5 8
// or for matrix groups ("mat <dim> <prime>") one generator per line as
// dim*dim row-major entries. Permutation images are written 1-based.
Group load_group(const std::string& path);
void save_group(const Group& g, const std::string& path);
Group parse_group(const std::string& text, const std::string& origin);
std::string serialize_group(const Group& g);

// one element in the same row syntax as a group file generator line
Element parse_element_like(const Element& model, const std::string& line);
std::string element_row(const Element& g);

}  // namespace gsift
