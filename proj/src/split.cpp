#include "bcj/split.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "bcj/errors.hpp"
#include "bcj/rng.hpp"

namespace bcj {

std::vector<std::vector<MarkedItem>> stratified_split(std::vector<MarkedItem> items, std::size_t groups,
                                                      std::uint64_t seed) {
  if (groups < 1 || groups > items.size()) {
    throw Error(ErrorCode::InvalidArgument, "group count must lie between 1 and the number of items");
  }
  std::set<std::string> ids;
  for (const auto& it : items) {
    if (!ids.insert(it.id).second) throw Error(ErrorCode::InvalidArgument, "duplicate id: " + it.id);
  }
  std::sort(items.begin(), items.end(), [](const MarkedItem& a, const MarkedItem& b) {
    return a.mark != b.mark ? a.mark > b.mark : a.id < b.id;
  });
  Rng rng(seed);
  for (auto begin = items.begin(); begin != items.end();) {
    auto end = std::find_if(begin, items.end(), [&](const MarkedItem& m) { return m.mark != begin->mark; });
    std::vector<MarkedItem> stratum(begin, end);
    rng.shuffle(stratum);
    std::copy(stratum.begin(), stratum.end(), begin);
    begin = end;
  }
  std::vector<std::vector<MarkedItem>> out(groups);
  for (std::size_t k = 0; k < items.size(); ++k) out[k % groups].push_back(items[k]);
  return out;
}

std::vector<MarkedItem> read_marks_csv(std::istream& is) {
  std::vector<MarkedItem> items;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line != "id,mark") {
        throw Error(ErrorCode::InvalidArgument, "marks CSV must start with the header 'id,mark'");
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || comma == 0) {
      throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(line_no) + ": expected id,mark");
    }
    MarkedItem item{line.substr(0, comma), 0.0};
    std::istringstream mark(line.substr(comma + 1));
    if (!(mark >> item.mark) || !(mark >> std::ws).eof() || !std::isfinite(item.mark)) {
      throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(line_no) + ": mark is not a number");
    }
    items.push_back(std::move(item));
  }
  return items;
}

}  // namespace bcj
