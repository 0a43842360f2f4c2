// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace eqlab {

// Base for all library errors so callers can catch one type at the CLI boundary.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// concept module
class DuplicateHypothesis : public Error { public: using Error::Error; };
class LabelOutOfRange : public Error { public: using Error::Error; };
class EmptyClass : public Error { public: using Error::Error; };

// littlestone module
class GuardExceeded : public Error { public: using Error::Error; };
class EmptyVersionSpace : public Error { public: using Error::Error; };

// adversary module
class ZeroMassDisagreement : public Error { public: using Error::Error; };
class AdversaryNotExact : public Error { public: using Error::Error; };

// minimax module
class NonSquare : public Error { public: using Error::Error; };
class NonFinite : public Error { public: using Error::Error; };

// learner module
class DegenerateNormalizer : public Error { public: using Error::Error; };
class PotentialUndefined : public Error { public: using Error::Error; };
class LengthMismatch : public Error { public: using Error::Error; };

// protocol module
class InconsistentTarget : public Error { public: using Error::Error; };
class EmptyConsistentSet : public Error { public: using Error::Error; };

// harness module
class EmptyTable : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

}  // namespace eqlab
