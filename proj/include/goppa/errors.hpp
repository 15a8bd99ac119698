#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace goppa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

class RankDeficiency : public Error {
 public:
  RankDeficiency(std::size_t rank, std::size_t rows)
      : Error("matrix is rank deficient: rank " + std::to_string(rank) + " < " + std::to_string(rows)),
        rank_(rank) {}
  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

class DecodingFailure : public Error {
 public:
  using Error::Error;
};

class RadiusTooLarge : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class StructureError : public Error {
 public:
  using Error::Error;
};

class ExhaustionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class CountermeasureViolation : public Error {
 public:
  using Error::Error;
};

class PayloadTooLong : public Error {
 public:
  using Error::Error;
};

class NoCandidate : public Error {
 public:
  using Error::Error;
};

class AmbiguousCandidates : public Error {
 public:
  AmbiguousCandidates(std::size_t count)
      : Error(std::to_string(count) + " candidates pass the checksum"), count_(count) {}
  std::size_t count() const noexcept { return count_; }

 private:
  std::size_t count_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace goppa
