#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fftseso {

/// A matrix that was required to be skew-symmetric is not (within tolerance).
struct NotSkew : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operation received a (near-)zero vector where a direction is required.
struct ZeroVector : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A matrix that was required to be symmetric positive definite is not.
struct NotSpd : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A scalar argument is outside the stated domain of a formula.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A state or result contains NaN or infinity.
struct NonFinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A gain set violates one or more of its stability constraints.
struct InvalidGains : std::invalid_argument {
    explicit InvalidGains(std::vector<std::string> v)
        : std::invalid_argument(join(v)), violations(std::move(v)) {}

    std::vector<std::string> violations;

  private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid gains:";
        for (const auto& item : v) {
            s += " [" + item + "]";
        }
        return s;
    }
};

/// Filesystem failure, annotated with the offending path.
struct IoError : std::runtime_error {
    IoError(const std::string& path, const std::string& what)
        : std::runtime_error(what + ": " + path), path(path) {}

    std::string path;
};

} // namespace fftseso
