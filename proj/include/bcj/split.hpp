#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace bcj {

struct MarkedItem {
  std::string id;
  double mark = 0.0;
};

/// Stratified split into `groups` groups: items are sorted by mark
/// (highest first), equal marks are shuffled with the seed, and the sorted
/// list is dealt round-robin. Group sizes differ by at most one.
///
/// Throws bcj::Error(InvalidArgument) unless 1 <= groups <= items.size()
/// and ids are unique.
std::vector<std::vector<MarkedItem>> stratified_split(std::vector<MarkedItem> items, std::size_t groups,
                                                      std::uint64_t seed);

/// Parses an `id,mark` CSV with a header row. Throws bcj::Error(InvalidArgument).
std::vector<MarkedItem> read_marks_csv(std::istream& is);

}  // namespace bcj
