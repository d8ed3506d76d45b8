#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "perconet/network.hpp"

namespace perconet {

/// Malformed or inconsistent network document. `position` is the byte offset of a
/// syntax error, or npos for semantic errors, which name the offending entry instead.
class NetworkFormatError : public std::runtime_error {
 public:
  NetworkFormatError(const std::string& what, std::size_t position = npos)
      : std::runtime_error(what), position_(position) {}

  std::size_t position() const { return position_; }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t position_;
};

/// JSON document with "meta", "nodes" and "elements"; reals use 17 significant digits.
std::string export_network(const GeneralizedNetwork& net);

/// Rebuilds the lattice named in "meta" and checks that the elements match it.
GeneralizedNetwork import_network(std::string_view document);

GeneralizedNetwork load_network(const std::string& path);
void save_network(const GeneralizedNetwork& net, const std::string& path);

}  // namespace perconet
