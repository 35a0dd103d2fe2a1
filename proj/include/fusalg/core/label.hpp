#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

namespace fusalg {

/// Canonical identifier of a basis element. Every ring guarantees that two
/// labels compare equal exactly when they name the same basis element, so
/// the key string can be hashed and deduplicated directly.
class Label {
 public:
  Label() = default;
  explicit Label(std::string key) : key_(std::move(key)) {}

  const std::string& str() const noexcept { return key_; }
  bool empty() const noexcept { return key_.empty(); }

  friend auto operator<=>(const Label&, const Label&) = default;
  friend bool operator==(const Label&, const Label&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Label& l) { return os << l.key_; }

 private:
  std::string key_;
};

}  // namespace fusalg

template <>
struct std::hash<fusalg::Label> {
  std::size_t operator()(const fusalg::Label& l) const noexcept {
    return std::hash<std::string>{}(l.str());
  }
};
