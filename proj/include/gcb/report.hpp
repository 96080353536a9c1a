#ifndef GCB_REPORT_HPP
#define GCB_REPORT_HPP

#include "gcb/rational.hpp"

namespace gcb {

// One named residual of a check; `detail` carries a sample nonzero value.
struct ResidualItem {
  std::string name;
  bool zero = true;
  std::string detail;
};

struct CheckReport {
  std::vector<ResidualItem> items;

  bool pass() const {
    for (auto& it : items)
      if (!it.zero) return false;
    return true;
  }
  void add(std::string name, bool zero, std::string detail = {}) {
    items.push_back({std::move(name), zero, std::move(detail)});
  }
  const ResidualItem* find(const std::string& name) const {
    for (auto& it : items)
      if (it.name == name) return &it;
    return nullptr;
  }
};

}  // namespace gcb

#endif
