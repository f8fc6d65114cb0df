#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/model.hpp"
#include "fairdiv/oracle.hpp"

namespace fairdiv {

// Difference coordinates xi[k * t + a] = x_{k,a} - x_{k+1,a} for
// k in [0, n-1), row-major by k. Rational during feasibility checks,
// integral during the cube search.
using XiVector = std::vector<Rational>;
using IntXiVector = std::vector<std::int64_t>;

XiVector to_rational(std::span<const std::int64_t> xi);

// The (n-1)t-variable system obtained from the complete-EF linear program by
// the difference change of variables and elimination of the last bundle:
//
//   EF:       sum_a v_i(a) sum_{k=i}^{j-1} xi_{k,a} >= 0
//             sum_a v_j(a) sum_{k=i}^{j-1} xi_{k,a} <= 0      for i < j
//   positive: m_a - sum_{k<i} (k+1) xi_{k,a} + sum_{k>=i} (n-k-1) xi_{k,a} >= 0
//
// (0-indexed agents i, j and rows k.) The supply is rational so that scaled
// systems can be represented.
class GammaSystem {
 public:
  GammaSystem(std::vector<AdditiveValuation> valuations, std::vector<Rational> supply);
  static GammaSystem from_instance(const Instance& instance);

  std::size_t agents() const noexcept { return valuations_.size(); }
  std::size_t types() const noexcept { return supply_.size(); }
  std::size_t dimension() const noexcept { return (agents() - 1) * types(); }
  std::span<const AdditiveValuation> valuations() const noexcept { return valuations_; }
  std::span<const Rational> supply() const noexcept { return supply_; }
  bool integral_supply() const;
  // Only valid when the supply is integral.
  InstancePtr instance() const;

  GammaSystem with_supply(std::vector<Rational> supply) const;

 private:
  std::vector<AdditiveValuation> valuations_;
  std::vector<Rational> supply_;
};

bool gamma_feasible(const GammaSystem& sys, std::span<const Rational> xi);

// x_{n,a}(xi) = (m_a - sum_k (k+1) xi_{k,a}) / n for every type a.
std::vector<Rational> x_n_of_xi(const GammaSystem& sys, std::span<const Rational> xi);

// Forward map of a complete allocation to its difference coordinates.
IntXiVector xi_of_allocation(const Allocation& alloc);

// Inverse map. Empty when x_n is fractional or some bundle entry is negative.
std::optional<Allocation> reconstruct_allocation(const GammaSystem& sys, std::span<const std::int64_t> xi);

// The corner xi_star + c* of the unit cube at xi_star whose last bundle is
// integral. No feasibility check.
IntXiVector corner_point(const GammaSystem& sys, std::span<const std::int64_t> xi_star);

// Picks the corner xi_star + c*, c*_{k,a} = [k + 1 == r_a] with
// r_a = (m_a - sum_k (k+1) xi*_{k,a}) mod n, whose last bundle is integral,
// and reconstructs it. The caller certifies that the whole unit cube at
// xi_star lies in the system; a corner that is infeasible or reconstructs
// negatively raises invariant_violated.
Allocation cube_corner(const GammaSystem& sys, std::span<const std::int64_t> xi_star);

// Every corner xi_star + c, c in {0,1}^d, is feasible.
bool cube_feasible(const GammaSystem& sys, std::span<const std::int64_t> xi_star);

struct CubeSearchOptions {
  std::size_t max_dimension = 8;
};

// First integer xi_star with |xi_star|_inf <= radius (ascending lexicographic
// order over the box) whose unit cube lies in the system.
std::optional<IntXiVector> find_integer_cube(const GammaSystem& sys, std::int64_t radius,
                                             const CubeSearchOptions& options = {});

// True iff no two valuations are positive multiples of each other.
bool distinct_valuations(std::span<const AdditiveValuation> valuations);

struct RadiusPolicy {
  // radius = scale * r + offset
  std::int64_t scale = 1;
  std::int64_t offset = 0;

  std::int64_t radius_for(std::int64_t r) const { return scale * r + offset; }
  std::string str() const;
  static RadiusPolicy parse(const std::string& text);
};

struct ScanResult {
  std::optional<std::int64_t> r;
  IntXiVector xi_star;
  std::int64_t radius = 0;
  // A hit at r certifies a complete EF allocation for every supply m >= r * 1.
  bool certified() const { return r.has_value(); }
};

// Smallest r <= r_max such that the system with supply r * 1 holds an
// integer unit cube within radius_policy.radius_for(r). Requires t >= 2 and
// pairwise distinct valuations.
ScanResult scan_min_r(std::span<const AdditiveValuation> valuations, std::int64_t r_max,
                      const RadiusPolicy& policy = {}, const CubeSearchOptions& options = {});

// First complete EF allocation in enumeration order, or none.
std::optional<Allocation> ef_bruteforce(const InstancePtr& instance, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace fairdiv
