#pragma once

#include <optional>

#include "cars/kernels.hpp"
#include "cars/tensor.hpp"

namespace cars {

/// Response tensors of one molecule / vibrational mode. `alpha34`,
/// `gprime34` and `a34` belong to the probe/anti-Stokes pair, `alpha12` to
/// the pump/Stokes pair. The pump/Stokes optical-activity tensors are only
/// needed by the general |M|^2 evaluator.
struct PropertyTensorSet {
  SymRank2 alpha34;
  SymRank2 alpha12;
  Rank2 gprime34;
  Rank3SymLast a34;
  std::optional<Rank2> gprime12;
  std::optional<Rank3SymLast> a12;

  PropertyTensorSet rotated(const Rotation& r) const;
  /// Mirror image: alpha unchanged, G' and A negated.
  PropertyTensorSet enantiomer() const;
  /// Every tensor multiplied by `s`.
  PropertyTensorSet scaled(double s) const;
  bool achiral() const;

  kernels::MolecularFrameTensors frame_tensors() const;
};

}  // namespace cars
