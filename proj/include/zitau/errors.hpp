#pragma once

#include <stdexcept>
#include <string>

namespace zitau {

// The requested quantity is undefined for these inputs: an empty conditioning
// group, a fully tied margin, or a zero-mass region that would have to be
// conditioned on.
class degenerate_error : public std::runtime_error {
public:
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

// The result would not meet its accuracy contract, e.g. the truncated tail
// mass of a grid is too large for the requested computation.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace zitau
