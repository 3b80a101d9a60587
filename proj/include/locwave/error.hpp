#pragma once

#include <stdexcept>
#include <string>

namespace locwave {

enum class ErrorCode {
    InvalidArgument,
    DegenerateEigenvector,
    NotLocalized,
    NoFeasiblePoint,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace locwave
