#include "cars/property_tensors.hpp"

namespace cars {

PropertyTensorSet PropertyTensorSet::rotated(const Rotation& r) const {
  PropertyTensorSet out{rotate_rank2(r, alpha34), rotate_rank2(r, alpha12),
                        rotate_rank2(r, gprime34), rotate_rank3(r, a34), std::nullopt,
                        std::nullopt};
  if (gprime12) out.gprime12 = rotate_rank2(r, *gprime12);
  if (a12) out.a12 = rotate_rank3(r, *a12);
  return out;
}

PropertyTensorSet PropertyTensorSet::enantiomer() const {
  PropertyTensorSet out = *this;
  out.gprime34 = gprime34.scaled(-1.0);
  out.a34 = a34.scaled(-1.0);
  if (gprime12) out.gprime12 = gprime12->scaled(-1.0);
  if (a12) out.a12 = a12->scaled(-1.0);
  return out;
}

PropertyTensorSet PropertyTensorSet::scaled(double s) const {
  PropertyTensorSet out{alpha34.scaled(s), alpha12.scaled(s), gprime34.scaled(s), a34.scaled(s),
                        std::nullopt, std::nullopt};
  if (gprime12) out.gprime12 = gprime12->scaled(s);
  if (a12) out.a12 = a12->scaled(s);
  return out;
}

bool PropertyTensorSet::achiral() const {
  auto zero = [](const auto& values) {
    for (double v : values)
      if (v != 0.0) return false;
    return true;
  };
  return zero(gprime34.data()) && zero(a34.data()) && (!gprime12 || zero(gprime12->data())) &&
         (!a12 || zero(a12->data()));
}

kernels::MolecularFrameTensors PropertyTensorSet::frame_tensors() const {
  return {alpha34.data(), alpha12.data(), gprime34.data(), a34.data()};
}

}  // namespace cars
