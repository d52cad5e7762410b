#include "symcorr/fiberprod.hpp"

#include <algorithm>

namespace symcorr {

bool ProductCover::factors_equal() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [&](const MonodromyCover &f) { return f == factors_.front(); });
}

Perm product_perm(const FiberSpace &fiber, const std::vector<Perm> &factors) {
  if (factors.size() != fiber.ell())
    throw std::invalid_argument("product_perm needs one permutation per factor");
  std::vector<Point> images(fiber.size());
  for (std::size_t idx = 0; idx < fiber.size(); ++idx) {
    std::size_t image = 0;
    for (std::size_t i = 0; i < fiber.ell(); ++i) {
      Point p = static_cast<Point>(fiber.digit(idx, i) + 1);
      image += (factors[i](p) - 1) * fiber.stride(i);
    }
    images[idx] = static_cast<Point>(image + 1);
  }
  return Perm::from_images(std::move(images));
}

ProductCover product_cover(std::vector<MonodromyCover> factors,
                           std::uint64_t max_fiber) {
  if (factors.empty())
    throw InvalidCover("a fiber product needs at least one factor");
  const auto &first = factors.front();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto &f = factors[i];
    if (f.base() != first.base())
      throw InvalidCover("factor " + std::to_string(i + 1) +
                         " lives over a base of genus " +
                         std::to_string(f.genus()) + ", expected " +
                         std::to_string(first.genus()));
    if (f.degree() != first.degree())
      throw InvalidCover("factor " + std::to_string(i + 1) + " has degree " +
                         std::to_string(f.degree()) + ", expected " +
                         std::to_string(first.degree()));
    auto v = validate(f);
    if (!v.valid)
      throw InvalidCover("factor " + std::to_string(i + 1) + ": " +
                         v.failures.front());
  }

  FiberSpace fiber(first.degree(), factors.size(), max_fiber);
  std::vector<Perm> images;
  for (std::size_t g = 0; g < first.images().size(); ++g) {
    std::vector<Perm> per_factor;
    for (const auto &f : factors)
      per_factor.push_back(f.images()[g]);
    images.push_back(product_perm(fiber, per_factor));
  }
  MonodromyCover total(first.base(), fiber.size(), std::move(images));
  return ProductCover(std::move(factors), fiber, std::move(total));
}

namespace {

bool injective(const FiberSpace &fiber, std::size_t idx) {
  std::vector<bool> used(fiber.n(), false);
  for (std::size_t i = 0; i < fiber.ell(); ++i) {
    std::size_t d = fiber.digit(idx, i);
    if (used[d])
      return false;
    used[d] = true;
  }
  return true;
}

} // namespace

IrreducibilityReport irreducibility_report(const ProductCover &pc) {
  IrreducibilityReport rep;
  auto total_orbits = orbits(pc.total().monodromy_group());
  rep.product_orbit_count = total_orbits.size();
  rep.product_transitive = total_orbits.size() == 1;
  rep.factors_equal = pc.factors_equal();
  for (const auto &f : pc.factors())
    rep.factor_max_transitivity.push_back(max_transitivity(f.monodromy_group()));

  if (!rep.factors_equal)
    return rep;

  const auto &fiber = pc.fiber();
  const std::size_t ell = pc.ell();
  if (ell > pc.n()) {
    rep.monodromy_l_transitive = false;
    rep.injective_tuples_transitive = false;
  } else {
    rep.monodromy_l_transitive =
        is_k_transitive(pc.factors().front().monodromy_group(), ell);

    // The product action preserves the injective tuples when factors agree.
    std::size_t first_injective = fiber.size();
    std::size_t injective_count = 0;
    for (std::size_t idx = 0; idx < fiber.size(); ++idx) {
      if (injective(fiber, idx)) {
        ++injective_count;
        first_injective = std::min(first_injective, idx);
      }
    }
    auto orb = orbit(pc.total().monodromy_group(),
                     static_cast<Point>(first_injective + 1));
    rep.injective_tuples_transitive = orb.size() == injective_count;
  }
  rep.discrepancy = rep.product_transitive != *rep.monodromy_l_transitive;
  return rep;
}

void DivisorOnC::add(std::size_t index, const mpz_class &coefficient) {
  if (coefficient == 0)
    return;
  auto [it, inserted] = terms_.emplace(index, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0)
      terms_.erase(it);
  }
}

mpz_class DivisorOnC::degree() const {
  mpz_class d = 0;
  for (const auto &[idx, c] : terms_)
    d += c;
  return d;
}

DivisorOnC apply_D(const FiberSpace &fiber, const DivisorOnC &divisor) {
  DivisorOnC out;
  for (const auto &[idx, c] : divisor.terms()) {
    if (idx >= fiber.size())
      throw std::out_of_range("divisor term " + std::to_string(idx) +
                              " outside the fiber of size " +
                              std::to_string(fiber.size()));
    for (std::size_t u : fiber.neighbours(idx))
      out.add(u, c);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>>
correspondence_as_set(const FiberSpace &fiber) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(fiber.size() * fiber.ell() * (fiber.n() - 1));
  for (std::size_t t = 0; t < fiber.size(); ++t) {
    auto nb = fiber.neighbours(t);
    std::sort(nb.begin(), nb.end());
    for (std::size_t u : nb)
      pairs.emplace_back(t, u);
  }
  return pairs;
}

bool check_symmetric(const std::vector<std::pair<std::size_t, std::size_t>> &pairs) {
  std::vector<std::pair<std::size_t, std::size_t>> sorted = pairs;
  std::sort(sorted.begin(), sorted.end());
  for (const auto &[t, u] : sorted)
    if (!std::binary_search(sorted.begin(), sorted.end(), std::make_pair(u, t)))
      return false;
  return true;
}

bool check_fixed_point_free(
    const std::vector<std::pair<std::size_t, std::size_t>> &pairs) {
  return std::none_of(pairs.begin(), pairs.end(),
                      [](const auto &p) { return p.first == p.second; });
}

std::pair<std::optional<std::size_t>, std::optional<std::size_t>>
bidegree(const FiberSpace &fiber,
         const std::vector<std::pair<std::size_t, std::size_t>> &pairs) {
  std::vector<std::size_t> first(fiber.size(), 0), second(fiber.size(), 0);
  for (const auto &[t, u] : pairs) {
    ++first[t];
    ++second[u];
  }
  auto uniform = [](const std::vector<std::size_t> &v) -> std::optional<std::size_t> {
    if (v.empty() || std::any_of(v.begin(), v.end(), [&](std::size_t x) { return x != v.front(); }))
      return std::nullopt;
    return v.front();
  };
  return {uniform(first), uniform(second)};
}

} // namespace symcorr
