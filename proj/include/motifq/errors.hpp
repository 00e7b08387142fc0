#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace motifq {

/// Base class for every error raised by the library. The CLI maps these to
/// exit code 2 (data error).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DisconnectedMotif : public Error {
public:
    DisconnectedMotif() : Error("motif pattern is not connected") {}
};

class MotifTooSmall : public Error {
public:
    explicit MotifTooSmall(std::size_t n)
        : Error("motif pattern needs at least 3 nodes, got " + std::to_string(n)) {}
};

class InvalidGraph : public Error {
public:
    using Error::Error;
};

class UnknownEdge : public Error {
public:
    explicit UnknownEdge(std::size_t e) : Error("edge index " + std::to_string(e) + " is not in the network") {}
};

class PolynomialBlowup : public Error {
public:
    explicit PolynomialBlowup(std::size_t cap)
        : Error("objective exceeds the term cap of " + std::to_string(cap) + "; partition the instance further") {}
};

class LengthMismatch : public Error {
public:
    LengthMismatch(std::size_t expected, std::size_t got)
        : Error("length mismatch: expected " + std::to_string(expected) + ", got " + std::to_string(got)) {}
};

class QubitCapExceeded : public Error {
public:
    QubitCapExceeded(std::size_t r, std::size_t cap)
        : Error(std::to_string(r) + " qubits exceeds the cap of " + std::to_string(cap)) {}
};

class MotifLargerThanCap : public Error {
public:
    MotifLargerThanCap(std::size_t motif_edges, std::size_t cap)
        : Error("motif has " + std::to_string(motif_edges) + " edges but the qubit cap is " + std::to_string(cap)) {}
};

class SolverCapExceeded : public Error {
public:
    SolverCapExceeded(std::size_t candidates, std::size_t cap)
        : Error("exact solver cap exceeded: " + std::to_string(candidates) + " candidates > " + std::to_string(cap)) {}
};

class InfeasibleSpec : public Error {
public:
    using Error::Error;
};

class EmptyNetwork : public Error {
public:
    EmptyNetwork() : Error("network has no edges") {}
};

class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what), source_(std::move(source)), line_(line) {}

    const std::string& source() const { return source_; }
    std::size_t line() const { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

}  // namespace motifq
