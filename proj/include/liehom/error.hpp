#pragma once

#include <stdexcept>
#include <string>

namespace liehom {

/// Base for every domain failure; `kind()` is the stable name used in reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what) : std::runtime_error(what), kind_(std::move(kind)) {}
  [[nodiscard]] const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

}  // namespace liehom
