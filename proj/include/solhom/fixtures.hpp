#pragma once

// Built-in registry of named systems: solenoids given by c, and transfer
// towers whose homology and transfer maps are supplied as data.

#include <string>
#include <vector>

#include "solhom/errors.hpp"
#include "solhom/homology.hpp"

namespace solhom {

class UnknownFixture : public Error {
 public:
  using Error::Error;
};

struct FixtureInfo {
  std::string name;
  std::string kind;  ///< "solenoid" or "transfer"
  std::string summary;
};

std::vector<FixtureInfo> fixture_list();

/// Multi-line description; transfer fixtures list groups, generators and transfer maps.
std::string fixture_details(const std::string& name);

/// Accepts the registry names and the parametric family "solenoid:q/p".
/// Solenoid fixtures yield unstable-side groupoid homology.
GradedGroup fixture_homology(const std::string& name);

/// Named colimits known for the field K, in K's integral-basis coordinates.
std::vector<NamedColimit> named_colimits(const NumberField& K);

}  // namespace solhom
