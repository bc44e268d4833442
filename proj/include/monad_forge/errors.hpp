#ifndef MONAD_FORGE_ERRORS_HPP
#define MONAD_FORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace monad_forge
{

// Operands live over different coefficient fields or different ambient spaces.
struct RingMismatch : std::invalid_argument {
    explicit RingMismatch(const std::string &what) : std::invalid_argument(what) {}
};

struct ShapeMismatch : std::invalid_argument {
    explicit ShapeMismatch(const std::string &what) : std::invalid_argument(what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string &what) : std::invalid_argument(what) {}
};

struct DegreeMismatch : std::invalid_argument {
    explicit DegreeMismatch(const std::string &what) : std::invalid_argument(what) {}
};

// A sweep or basis would exceed a configured size limit.
struct ResourceCapExceeded : std::runtime_error {
    explicit ResourceCapExceeded(const std::string &what) : std::runtime_error(what) {}
};

// Ranks for which no explicit matrices are produced by the builders.
struct NotConstructible : std::invalid_argument {
    explicit NotConstructible(const std::string &what) : std::invalid_argument(what) {}
};

} // namespace monad_forge

#endif
