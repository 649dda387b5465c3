#pragma once

#include <stdexcept>
#include <string>

namespace cfs {

enum class Errc {
  DefectiveMatrix,
  NotPositiveSpectrum,
  DegenerateGram,
  NotSignature11,
  NotGenericallySeparated,
  ParityObstruction,
  NoSolution,
  NotInStabilizer,
  NotProperlyTimelike,
  AmbiguousDirection,
  NotSpinConnectable,
  HomeMismatch,
  NotSpacelike,
  NotAdmissible,
  NotRegular,
  OutOfDomain,
  OnLightCone,
  QuadratureFailure,
  MassShellDegenerate,
  IntegrationFailure,
  InvalidInput,
};

const char* errc_name(Errc c) noexcept;

// True for errors caused by malformed or out-of-range input rather than by
// the numerics; the CLI maps these to exit code 2.
bool is_validation_error(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::string subreason = {})
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        subreason_(std::move(subreason)) {}

  Errc code() const noexcept { return code_; }
  const std::string& subreason() const noexcept { return subreason_; }

 private:
  Errc code_;
  std::string subreason_;
};

}  // namespace cfs
