#pragma once

#include <stdexcept>
#include <string>

namespace opplod {

enum class ErrorCode {
    InvalidInput,
    InvalidParam,
    InsufficientHistory,
    FormatError,
    ConfigError,
    IoError,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidInput:        return "E_INPUT";
        case ErrorCode::InvalidParam:        return "E_PARAM";
        case ErrorCode::InsufficientHistory: return "E_HISTORY";
        case ErrorCode::FormatError:         return "E_FORMAT";
        case ErrorCode::ConfigError:         return "E_CONFIG";
        case ErrorCode::IoError:             return "E_IO";
    }
    return "E_UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace opplod
