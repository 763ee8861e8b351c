#pragma once

#include <stdexcept>
#include <string>

namespace shallow {

enum class ErrorCode {
    kInvalidArgument,
    kDegenerateCollinear,
    kChordOutsideDisk,
    kDegenerateTriangle,
    kCuttingSizeExceeded,
    kNotNEmpty,
    kPartitionStalled,
    kFamilyMismatch,
    kQBelowLine,
    kMalformedInput,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code), message_(what) {}

    ErrorCode code() const { return code_; }
    // Message without the code prefix.
    const std::string& message() const { return message_; }

private:
    ErrorCode code_;
    std::string message_;
};

}  // namespace shallow
