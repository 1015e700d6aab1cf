#pragma once

#include <stdexcept>
#include <string>

namespace orthotree {

// Base class for all validation and contract failures raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NonFiniteError : public Error {
public:
    explicit NonFiniteError(const std::string& what) : Error(what) {}
};

class NonSquareError : public Error {
public:
    explicit NonSquareError(const std::string& what) : Error(what) {}
};

class ShapeMismatchError : public Error {
public:
    explicit ShapeMismatchError(const std::string& what) : Error(what) {}
};

class DimensionMismatchError : public Error {
public:
    explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

class NotHermitianError : public Error {
public:
    explicit NotHermitianError(const std::string& what) : Error(what) {}
};

class NoConvergenceError : public Error {
public:
    NoConvergenceError(const std::string& what, int sweeps)
        : Error(what), sweeps(sweeps) {}
    int sweeps;
};

class ZeroVectorError : public Error {
public:
    explicit ZeroVectorError(const std::string& what) : Error(what) {}
};

class InvalidDecompositionError : public Error {
public:
    explicit InvalidDecompositionError(const std::string& what) : Error(what) {}
};

class PartitionMismatchError : public Error {
public:
    explicit PartitionMismatchError(const std::string& what) : Error(what) {}
};

class NotDensityMatrixError : public Error {
public:
    explicit NotDensityMatrixError(const std::string& what) : Error(what) {}
};

class WeightInvalidError : public Error {
public:
    explicit WeightInvalidError(const std::string& what) : Error(what) {}
};

class NotOrthogonalFamilyError : public Error {
public:
    explicit NotOrthogonalFamilyError(const std::string& what) : Error(what) {}
};

class UnknownProjectorError : public Error {
public:
    explicit UnknownProjectorError(const std::string& what) : Error(what) {}
};

class InvalidPmfError : public Error {
public:
    explicit InvalidPmfError(const std::string& what) : Error(what) {}
};

class EmptyContextsError : public Error {
public:
    explicit EmptyContextsError(const std::string& what) : Error(what) {}
};

} // namespace orthotree
