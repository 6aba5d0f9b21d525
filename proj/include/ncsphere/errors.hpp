#pragma once

#include <stdexcept>
#include <string>

namespace ncs {

struct NonIntegrable : std::domain_error {
    explicit NonIntegrable(const std::string& what) : std::domain_error(what) {}
};

struct OrderOverflow : std::domain_error {
    explicit OrderOverflow(const std::string& what) : std::domain_error(what) {}
};

struct MismatchedDeformation : std::invalid_argument {
    explicit MismatchedDeformation(const std::string& what) : std::invalid_argument(what) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct ZeroSpectralParameter : std::invalid_argument {
    explicit ZeroSpectralParameter(const std::string& what) : std::invalid_argument(what) {}
};

struct SingularCoefficient : std::domain_error {
    explicit SingularCoefficient(const std::string& what) : std::domain_error(what) {}
};

struct ModeOverflow : std::runtime_error {
    explicit ModeOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySupport : std::invalid_argument {
    explicit EmptySupport(const std::string& what) : std::invalid_argument(what) {}
};

struct UnsupportedSpec : std::invalid_argument {
    explicit UnsupportedSpec(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ncs
