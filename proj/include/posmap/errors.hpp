#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace posmap {

// Base error carrying a stable machine-readable code; the CLI maps these to
// {"error": code, "detail": msg} with exit code 1 (SchemaError exits 2).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(detail), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& detail) : Error("DimensionError", detail) {}
};

struct BasisError : Error {
    explicit BasisError(const std::string& detail) : Error("BasisError", detail) {}
};

struct SpecError : Error {
    explicit SpecError(const std::string& detail) : Error("SpecError", detail) {}
};

struct NotCPError : Error {
    explicit NotCPError(const std::string& detail) : Error("NotCP", detail) {}
};

struct InBallError : Error {
    explicit InBallError(const std::string& detail) : Error("InBall", detail) {}
};

struct NonDiagonalizableError : Error {
    explicit NonDiagonalizableError(const std::string& detail)
        : Error("NonDiagonalizable", detail) {}
};

struct NotAProjectionError : Error {
    explicit NotAProjectionError(const std::string& detail)
        : Error("NotAProjection", detail) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& detail) : Error("NumericalError", detail) {}
};

// Malformed input documents (bad JSON shape, wrong field types). Carries a
// JSON-pointer-like path to the offending location.
class SchemaError : public Error {
public:
    SchemaError(std::string path, const std::string& detail)
        : Error("SchemaError", detail + " (at " + path + ")"), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace posmap
