#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "qsturm/contfrac.hpp"
#include "qsturm/word.hpp"

namespace qsturm {

/// Substitution S on {a, b}; images live in the target alphabet of the model.
struct Substitution {
  Word image_a;
  Word image_b;

  const Word& image(Symbol letter) const;
  std::size_t max_image_length() const { return std::max(image_a.size(), image_b.size()); }
  std::size_t min_image_length() const { return std::min(image_a.size(), image_b.size()); }

  /// S(ab) != S(ba).
  bool is_aperiodic() const;

  bool operator==(const Substitution&) const = default;
};

/**
 * A quasi-Sturmian model u = w S(c_theta) together with the potential map
 * f from the target alphabet to energies.
 */
struct ModelSpec {
  ContinuedFraction cf;
  Substitution subst;
  Word prefix;
  Alphabet alphabet;
  std::vector<double> potential;  // indexed by symbol code of `alphabet`
  bool allow_non_injective = false;

  /// Builds a spec from labelled strings; the alphabet is the sorted key set
  /// of `potential`. Validates before returning.
  static ModelSpec from_labels(ContinuedFraction cf, std::string_view image_a,
                               std::string_view image_b, std::string_view prefix,
                               const std::map<char, double>& potential,
                               bool allow_non_injective = false);

  /// Throws on empty images, symbols without a potential value, or a
  /// non-injective potential unless explicitly allowed.
  void validate() const;

  double potential_of(Symbol s) const;
  double min_potential() const;
  double max_potential() const;

  bool operator==(const ModelSpec&) const = default;
};

}  // namespace qsturm
