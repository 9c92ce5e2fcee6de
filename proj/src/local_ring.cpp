#include <string>

#include "charp/finv.hpp"

namespace charp {

LocalRingAtPoint::LocalRingAtPoint(Ideal I, std::vector<Fp> point, const Budget& budget)
    : ideal_(std::move(I)), point_(std::move(point)) {
  if (point_.size() != ring()->nvars())
    throw Error(ErrorKind::InvalidArgument, "point has " + std::to_string(point_.size()) + " coordinates, ring has " +
                                                std::to_string(ring()->nvars()) + " variables");
  for (const auto& g : ideal_.gens())
    if (g.evaluate(point_).value != 0)
      throw Error(ErrorKind::PointNotOnVariety, "generator " + g.to_string() + " does not vanish at the point");
  translated_ = translate(ideal_, point_);
  dim_ = krull_dim(translated_, budget);
}

LocalRingAtPoint LocalRingAtPoint::at_origin(Ideal I, const Budget& budget) {
  std::vector<Fp> origin(I.ring()->nvars());
  return LocalRingAtPoint(std::move(I), std::move(origin), budget);
}

}  // namespace charp
