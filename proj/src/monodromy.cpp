#include "symcorr/monodromy.hpp"

namespace symcorr {

SurfaceBase::SurfaceBase(int g) : genus(g) {
  if (g < 1)
    throw InvalidCover("base genus must be at least 1, got " + std::to_string(g));
}

MonodromyCover::MonodromyCover(SurfaceBase base, std::size_t degree,
                               std::vector<Perm> images)
    : base_(base), degree_(degree), images_(std::move(images)) {
  if (degree_ < 1)
    throw InvalidCover("cover degree must be positive");
  if (images_.size() != 2 * static_cast<std::size_t>(base_.genus))
    throw InvalidCover("generator count must be 2*genus = " +
                       std::to_string(2 * base_.genus) + ", got " +
                       std::to_string(images_.size()));
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i].degree() != degree_)
      throw InvalidCover("generator " + std::to_string(i + 1) + " has degree " +
                         std::to_string(images_[i].degree()) + ", expected " +
                         std::to_string(degree_));
}

Perm MonodromyCover::relator_image() const {
  Perm r = Perm::identity(degree_);
  for (int i = 0; i < base_.genus; ++i)
    r = r * commutator(a(i), b(i));
  return r;
}

PermGroup MonodromyCover::monodromy_group() const {
  return PermGroup(degree_, images_);
}

ValidationReport validate(const MonodromyCover &cover) {
  ValidationReport report;
  for (std::size_t i = 0; i < cover.images().size(); ++i) {
    if (cover.images()[i].degree() != cover.degree()) {
      report.valid = false;
      report.failures.push_back("generator " + std::to_string(i + 1) +
                                " has wrong degree");
    }
  }
  if (!report.valid)
    return report;
  Perm r = cover.relator_image();
  if (!r.is_identity()) {
    report.valid = false;
    report.failures.push_back("surface relator [a1,b1]...[ag,bg] evaluates to " +
                              r.to_cycle_string() + ", not the identity");
  }
  return report;
}

long long cover_genus(std::size_t degree, int base_genus) {
  return static_cast<long long>(degree) * (base_genus - 1) + 1;
}

ComponentReport components(const MonodromyCover &cover) {
  auto check = validate(cover);
  if (!check.valid)
    throw InvalidCover(check.failures.front());
  ComponentReport report;
  report.fiber_size = cover.degree();
  for (auto &orb : orbits(cover.monodromy_group())) {
    std::size_t m = orb.size();
    report.components.push_back({std::move(orb), m, cover_genus(m, cover.genus())});
  }
  return report;
}

bool is_connected(const MonodromyCover &cover) {
  return components(cover).components.size() == 1;
}

long long genus_total(const MonodromyCover &cover) {
  long long total = 0;
  for (const auto &c : components(cover).components)
    total += c.genus;
  return total;
}

} // namespace symcorr
