#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace depsig {

// Base of every error this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input data or misuse of a fitted artifact (CLI exit code 2).
class DataError : public Error {
public:
    using Error::Error;
};

// Numeric failure or dimension inconsistency (CLI exit code 3).
class NumericError : public Error {
public:
    using Error::Error;
};

// -- corpus ------------------------------------------------------------

class MissingColumn : public DataError {
public:
    explicit MissingColumn(const std::string& name)
        : DataError("missing column: " + name) {}
};

class UnknownLabel : public DataError {
public:
    UnknownLabel(std::size_t row, const std::string& value)
        : DataError("row " + std::to_string(row) + ": unknown label \"" + value + "\"") {}
};

class DuplicateId : public DataError {
public:
    DuplicateId(std::size_t row, const std::string& id)
        : DataError("row " + std::to_string(row) + ": duplicate document id \"" + id + "\"") {}
};

class MalformedRow : public DataError {
public:
    MalformedRow(std::size_t row, const std::string& what)
        : DataError("row " + std::to_string(row) + ": " + what) {}
};

class ClassTooSmall : public DataError {
public:
    ClassTooSmall(const std::string& class_name, std::size_t count)
        : DataError("class \"" + class_name + "\" has only " + std::to_string(count) +
                    " documents; need at least 2") {}
};

// -- features ----------------------------------------------------------

class EmptyVocabulary : public DataError {
public:
    EmptyVocabulary() : DataError("corpus contains no token eligible for the vocabulary") {}
};

class ScalerNotFitted : public DataError {
public:
    ScalerNotFitted() : DataError("style scaler used before fitting") {}
};

class VocabularyMissing : public DataError {
public:
    VocabularyMissing() : DataError("vocabulary used before fitting") {}
};

// -- model -------------------------------------------------------------

class DimensionMismatch : public NumericError {
public:
    explicit DimensionMismatch(const std::string& what)
        : NumericError("dimension mismatch: " + what) {}
};

class MissingClass : public DataError {
public:
    explicit MissingClass(const std::string& class_name)
        : DataError("training data contains no document of class \"" + class_name + "\"") {}
};

class NonFiniteLoss : public NumericError {
public:
    NonFiniteLoss() : NumericError("training loss became non-finite (check feature scales)") {}
};

class CorruptModel : public DataError {
public:
    explicit CorruptModel(const std::string& what)
        : DataError("corrupt model file: " + what) {}
};

class UnsupportedVersion : public DataError {
public:
    explicit UnsupportedVersion(const std::string& got)
        : DataError("unsupported model format version " + got) {}
};

// -- evaluation --------------------------------------------------------

class LengthMismatch : public DataError {
public:
    LengthMismatch(std::size_t gold, std::size_t pred)
        : DataError("gold/prediction length mismatch: " + std::to_string(gold) + " vs " +
                    std::to_string(pred)) {}
};

} // namespace depsig
