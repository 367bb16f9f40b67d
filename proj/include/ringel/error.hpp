#pragma once

#include <stdexcept>
#include <string>

namespace ringel
{
    enum class ErrorCode
    {
        InvalidArgument,
        NotPrime,
        SymmetricColors,
        InvalidTree,
        RegimeViolation,
        SearchExhausted,
        InconsistentFamily,
        Io,
        VersionMismatch,
        Schema,
    };

    inline auto to_string(ErrorCode code) -> std::string
    {
        switch (code) {
            case ErrorCode::InvalidArgument: return "invalid-argument";
            case ErrorCode::NotPrime: return "not-prime";
            case ErrorCode::SymmetricColors: return "symmetric-colors";
            case ErrorCode::InvalidTree: return "invalid-tree";
            case ErrorCode::RegimeViolation: return "regime-violation";
            case ErrorCode::SearchExhausted: return "search-exhausted";
            case ErrorCode::InconsistentFamily: return "inconsistent-family";
            case ErrorCode::Io: return "io";
            case ErrorCode::VersionMismatch: return "version-mismatch";
            case ErrorCode::Schema: return "schema";
        }
        return "unknown";
    }

    /// Every failure raised by the library carries a code so the CLI can map
    /// it to an exit status without string matching.
    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string & what) :
            std::runtime_error(what),
            _code(code)
        {
        }

        auto code() const noexcept -> ErrorCode { return _code; }

    private:
        ErrorCode _code;
    };

    [[noreturn]] inline void fail(ErrorCode code, const std::string & what)
    {
        throw Error(code, what);
    }

    inline void require(bool condition, ErrorCode code, const std::string & what)
    {
        if (! condition)
            fail(code, what);
    }
}
