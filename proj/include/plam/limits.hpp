// Resource caps shared by the engines.
#pragma once

#include <stdexcept>
#include <string>

namespace plam {

// Raised when a computation would exceed a configured cap. The message names the cap.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(std::string cap, const std::string& detail)
      : std::runtime_error("resource cap exceeded: " + cap + " (" + detail + ")"),
        cap_(std::move(cap)) {}
  const std::string& cap() const { return cap_; }

 private:
  std::string cap_;
};

}  // namespace plam
