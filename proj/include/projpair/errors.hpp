#pragma once

#include <stdexcept>
#include <string>

namespace projpair {

// Base class for every certification failure the library raises. Each
// subclass corresponds to one named failure mode of the public contracts.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotUnitary : public Error {
 public:
  using Error::Error;
};

class NotAProjection : public Error {
 public:
  using Error::Error;
};

class NotAContraction : public Error {
 public:
  using Error::Error;
};

// An eigenvalue sits inside the forbidden gap around zero, so sgn() is not
// defined: the input was not reduced to a part with trivial nullspace.
class SingularSign : public Error {
 public:
  using Error::Error;
};

// A unitary has spectrum at -1 (within tolerance): the principal logarithm
// does not exist and the caller must use the global construction instead.
class BranchCut : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class EigenSolverFailure : public Error {
 public:
  using Error::Error;
};

class EmptyGenericPart : public Error {
 public:
  using Error::Error;
};

class DegenerateAngle : public Error {
 public:
  using Error::Error;
};

class MismatchedDifference : public Error {
 public:
  using Error::Error;
};

class NotInCommutant : public Error {
 public:
  using Error::Error;
};

class AnticommutationViolated : public Error {
 public:
  using Error::Error;
};

class NotCodiagonal : public Error {
 public:
  using Error::Error;
};

class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

class IllConditionedGram : public Error {
 public:
  using Error::Error;
};

class NotPositive : public Error {
 public:
  using Error::Error;
};

class CertificateFailed : public Error {
 public:
  using Error::Error;
};

class InconsistentReport : public Error {
 public:
  using Error::Error;
};

class NotCommutingWithGamma : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace projpair
