#pragma once

#include <stdexcept>
#include <string>

namespace l2t {

enum class ErrorCode {
    Schema,
    Precondition,
    Overflow,
    DivergentIntegral,
    QuadratureFailure,
    ImpulseContent,
    GridDomain,
    NonPositiveSample,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above; the C
// layer maps them one-to-one onto l2t_status values.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace l2t
