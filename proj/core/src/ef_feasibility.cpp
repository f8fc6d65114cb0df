#include "fairdiv/ef_feasibility.hpp"

#include <cstdlib>
#include <numeric>

#include "fairdiv/error.hpp"
#include "fairdiv/oracle.hpp"

namespace fairdiv {

XiVector to_rational(std::span<const std::int64_t> xi) { return XiVector(xi.begin(), xi.end()); }

GammaSystem::GammaSystem(std::vector<AdditiveValuation> valuations, std::vector<Rational> supply)
    : valuations_(std::move(valuations)), supply_(std::move(supply)) {
  if (valuations_.empty()) fail(ErrorCode::invalid_argument, "system needs at least one agent");
  if (supply_.empty()) fail(ErrorCode::invalid_argument, "system needs at least one type");
  for (const auto& v : valuations_) {
    if (v.types() != supply_.size()) fail(ErrorCode::dimension_mismatch, "valuation length does not match t");
  }
}

GammaSystem GammaSystem::from_instance(const Instance& instance) {
  std::vector<Rational> supply(instance.supply().counts().begin(), instance.supply().counts().end());
  return GammaSystem(std::vector<AdditiveValuation>(instance.valuations().begin(), instance.valuations().end()),
                     std::move(supply));
}

bool GammaSystem::integral_supply() const {
  return std::all_of(supply_.begin(), supply_.end(), [](const Rational& m) { return m.is_integer() && m.sign() >= 0; });
}

InstancePtr GammaSystem::instance() const {
  if (!integral_supply()) fail(ErrorCode::precondition_failed, "supply is not a nonnegative integer vector");
  std::vector<std::int64_t> counts;
  for (const auto& m : supply_) counts.push_back(m.num());
  return make_instance(ItemVector(std::move(counts)), valuations_);
}

GammaSystem GammaSystem::with_supply(std::vector<Rational> supply) const {
  return GammaSystem(valuations_, std::move(supply));
}

namespace {

void check_dimension(const GammaSystem& sys, std::size_t size) {
  if (size != sys.dimension()) {
    fail(ErrorCode::dimension_mismatch, "xi has " + std::to_string(size) + " entries, expected " +
                                            std::to_string(sys.dimension()));
  }
}

}  // namespace

bool gamma_feasible(const GammaSystem& sys, std::span<const Rational> xi) {
  check_dimension(sys, xi.size());
  const auto n = sys.agents();
  const auto t = sys.types();
  auto at = [&](std::size_t k, TypeIndex a) -> const Rational& { return xi[k * t + a]; };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational lhs_i, lhs_j;
      for (TypeIndex a = 0; a < t; ++a) {
        Rational column;
        for (std::size_t k = i; k < j; ++k) column += at(k, a);
        lhs_i += sys.valuations()[i][a] * column;
        lhs_j += sys.valuations()[j][a] * column;
      }
      if (lhs_i.sign() < 0 || lhs_j.sign() > 0) return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (TypeIndex a = 0; a < t; ++a) {
      Rational slack = sys.supply()[a];
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const auto row = static_cast<std::int64_t>(k);
        if (k < i) {
          slack -= Rational(row + 1) * at(k, a);
        } else {
          slack += Rational(static_cast<std::int64_t>(n) - row - 1) * at(k, a);
        }
      }
      if (slack.sign() < 0) return false;
    }
  }
  return true;
}

std::vector<Rational> x_n_of_xi(const GammaSystem& sys, std::span<const Rational> xi) {
  check_dimension(sys, xi.size());
  const auto n = sys.agents();
  const auto t = sys.types();
  std::vector<Rational> out;
  out.reserve(t);
  for (TypeIndex a = 0; a < t; ++a) {
    Rational rest = sys.supply()[a];
    for (std::size_t k = 0; k + 1 < n; ++k) rest -= Rational(static_cast<std::int64_t>(k) + 1) * xi[k * t + a];
    out.push_back(rest / Rational(static_cast<std::int64_t>(n)));
  }
  return out;
}

IntXiVector xi_of_allocation(const Allocation& alloc) {
  const auto n = alloc.agents();
  const auto t = alloc.instance().types();
  IntXiVector xi;
  xi.reserve((n - 1) * t);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (TypeIndex a = 0; a < t; ++a) xi.push_back(alloc.bundle(k)[a] - alloc.bundle(k + 1)[a]);
  }
  return xi;
}

std::optional<Allocation> reconstruct_allocation(const GammaSystem& sys, std::span<const std::int64_t> xi) {
  check_dimension(sys, xi.size());
  const auto n = sys.agents();
  const auto t = sys.types();
  const auto last = x_n_of_xi(sys, to_rational(xi));
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(t, 0));
  for (TypeIndex a = 0; a < t; ++a) {
    if (!last[a].is_integer()) return std::nullopt;
    std::int64_t running = last[a].num();
    rows[n - 1][a] = running;
    for (std::size_t k = n - 1; k-- > 0;) {
      running += xi[k * t + a];
      rows[k][a] = running;
    }
  }
  std::vector<ItemVector> bundles;
  bundles.reserve(n);
  for (auto& row : rows) {
    for (auto c : row) {
      if (c < 0) return std::nullopt;
    }
    bundles.emplace_back(std::move(row));
  }
  return Allocation(sys.instance(), std::move(bundles));
}

IntXiVector corner_point(const GammaSystem& sys, std::span<const std::int64_t> xi_star) {
  check_dimension(sys, xi_star.size());
  if (!sys.integral_supply()) fail(ErrorCode::precondition_failed, "cube corner needs an integral supply");
  const auto n = static_cast<std::int64_t>(sys.agents());
  const auto t = sys.types();
  IntXiVector corner(xi_star.begin(), xi_star.end());
  for (TypeIndex a = 0; a < t; ++a) {
    std::int64_t rest = sys.supply()[a].num();
    for (std::int64_t k = 0; k + 1 < n; ++k) rest -= (k + 1) * xi_star[k * t + a];
    const auto r_a = ((rest % n) + n) % n;
    if (r_a > 0) corner[(r_a - 1) * t + a] += 1;
  }
  return corner;
}

Allocation cube_corner(const GammaSystem& sys, std::span<const std::int64_t> xi_star) {
  const auto corner = corner_point(sys, xi_star);
  if (!gamma_feasible(sys, to_rational(corner))) {
    fail(ErrorCode::invariant_violated, "chosen cube corner lies outside the system; the cube was not certified");
  }
  auto alloc = reconstruct_allocation(sys, corner);
  if (!alloc) fail(ErrorCode::invariant_violated, "chosen cube corner does not reconstruct to an allocation");
  return *std::move(alloc);
}

bool cube_feasible(const GammaSystem& sys, std::span<const std::int64_t> xi_star) {
  check_dimension(sys, xi_star.size());
  const auto d = xi_star.size();
  if (d >= 63) fail(ErrorCode::cap_exceeded, "cube dimension too large to enumerate");
  XiVector corner = to_rational(xi_star);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    for (std::size_t k = 0; k < d; ++k) corner[k] = Rational(xi_star[k] + static_cast<std::int64_t>((mask >> k) & 1));
    if (!gamma_feasible(sys, corner)) return false;
  }
  return true;
}

namespace {

std::int64_t lcm_of_denominators(const AdditiveValuation& v) {
  std::int64_t l = 1;
  for (const auto& x : v.values()) l = std::lcm(l, x.den());
  return l;
}

// Integer form of one inequality: sum_k coef[k] * xi[k] + constant >= 0.
struct Row {
  std::vector<__int128> coef;
  __int128 constant = 0;
  std::vector<__int128> corner_shift;  // min(coef, 0): the worst unit-cube corner
  std::vector<__int128> suffix_best;   // best achievable tail contribution from k on
};

std::vector<Row> integer_rows(const GammaSystem& sys) {
  const auto n = sys.agents();
  const auto t = sys.types();
  const auto d = sys.dimension();
  std::vector<std::vector<__int128>> weights(n, std::vector<__int128>(t));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = sys.valuations()[i];
    const auto scale = lcm_of_denominators(v);
    for (TypeIndex a = 0; a < t; ++a) weights[i][a] = static_cast<__int128>(v[a].num()) * (scale / v[a].den());
  }
  std::vector<Row> rows;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Row keeps{std::vector<__int128>(d, 0), 0, {}, {}};
      Row no_envy{std::vector<__int128>(d, 0), 0, {}, {}};
      for (std::size_t k = i; k < j; ++k) {
        for (TypeIndex a = 0; a < t; ++a) {
          keeps.coef[k * t + a] = weights[i][a];
          no_envy.coef[k * t + a] = -weights[j][a];
        }
      }
      rows.push_back(std::move(keeps));
      rows.push_back(std::move(no_envy));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (TypeIndex a = 0; a < t; ++a) {
      const auto& m = sys.supply()[a];
      Row pos{std::vector<__int128>(d, 0), m.num(), {}, {}};
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const auto row = static_cast<__int128>(k);
        pos.coef[k * t + a] = (k < i ? -(row + 1) : static_cast<__int128>(n) - row - 1) * m.den();
      }
      rows.push_back(std::move(pos));
    }
  }
  return rows;
}

__int128 wide_abs(__int128 v) { return v < 0 ? -v : v; }

}  // namespace

std::optional<IntXiVector> find_integer_cube(const GammaSystem& sys, std::int64_t radius,
                                             const CubeSearchOptions& options) {
  if (radius < 0) fail(ErrorCode::invalid_argument, "radius must be nonnegative");
  const auto d = sys.dimension();
  if (d > options.max_dimension) {
    fail(ErrorCode::cap_exceeded, "cube search dimension " + std::to_string(d) + " exceeds the cap of " +
                                      std::to_string(options.max_dimension));
  }
  auto rows = integer_rows(sys);
  for (auto& row : rows) {
    row.corner_shift.resize(d);
    row.suffix_best.assign(d + 1, 0);
    for (std::size_t k = 0; k < d; ++k) row.corner_shift[k] = std::min<__int128>(row.coef[k], 0);
    for (std::size_t k = d; k-- > 0;) {
      row.suffix_best[k] = row.suffix_best[k + 1] + wide_abs(row.coef[k]) * radius + row.corner_shift[k];
    }
  }

  // Depth-first scan in lexicographic order; partial[r] holds the worst-corner
  // value of row r over the coordinates fixed so far.
  IntXiVector xi(d, -radius);
  std::vector<std::vector<__int128>> partial(d + 1, std::vector<__int128>(rows.size(), 0));
  for (std::size_t r = 0; r < rows.size(); ++r) partial[0][r] = rows[r].constant;

  auto viable = [&](std::size_t depth) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (partial[depth][r] + rows[r].suffix_best[depth] < 0) return false;
    }
    return true;
  };
  auto fix = [&](std::size_t depth) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      partial[depth + 1][r] = partial[depth][r] + rows[r].coef[depth] * xi[depth] + rows[r].corner_shift[depth];
    }
  };

  if (!viable(0)) return std::nullopt;
  if (d == 0) return IntXiVector{};
  std::size_t depth = 0;
  xi[0] = -radius;
  while (true) {
    bool advanced = false;
    if (xi[depth] <= radius) {
      fix(depth);
      if (viable(depth + 1)) {
        if (depth + 1 == d) return xi;
        ++depth;
        xi[depth] = -radius;
        advanced = true;
      }
    }
    if (advanced) continue;
    // Move to the next candidate at this depth, backtracking when exhausted.
    while (true) {
      if (xi[depth] <= radius) ++xi[depth];
      if (xi[depth] <= radius) break;
      if (depth == 0) return std::nullopt;
      --depth;
      ++xi[depth];
      if (xi[depth] <= radius) break;
    }
  }
}

bool distinct_valuations(std::span<const AdditiveValuation> valuations) {
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    for (std::size_t j = i + 1; j < valuations.size(); ++j) {
      const auto& vi = valuations[i];
      const auto& vj = valuations[j];
      if (vi.types() != vj.types()) fail(ErrorCode::dimension_mismatch, "valuations differ in length");
      bool proportional = true;
      for (TypeIndex a = 0; a < vi.types() && proportional; ++a) {
        for (TypeIndex b = a + 1; b < vi.types() && proportional; ++b) {
          proportional = vi[a] * vj[b] == vi[b] * vj[a];
        }
      }
      if (proportional) return false;
    }
  }
  return true;
}

std::string RadiusPolicy::str() const {
  if (scale == 0) return std::to_string(offset);
  return (scale == 1 ? std::string() : std::to_string(scale)) + "r";
}

RadiusPolicy RadiusPolicy::parse(const std::string& text) {
  auto parse_count = [&](const std::string& digits) {
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9) {
      fail(ErrorCode::invalid_argument, "invalid radius policy '" + text + "' (expected r, <k>r or <k>)");
    }
    return static_cast<std::int64_t>(std::stoll(digits));
  };
  if (!text.empty() && text.back() == 'r') {
    const auto prefix = text.substr(0, text.size() - 1);
    return RadiusPolicy{prefix.empty() ? 1 : parse_count(prefix), 0};
  }
  return RadiusPolicy{0, parse_count(text)};
}

ScanResult scan_min_r(std::span<const AdditiveValuation> valuations, std::int64_t r_max, const RadiusPolicy& policy,
                      const CubeSearchOptions& options) {
  if (valuations.empty()) fail(ErrorCode::invalid_argument, "no valuations given");
  const auto t = valuations.front().types();
  if (t < 2) fail(ErrorCode::precondition_failed, "t = 1 admits no distinct valuations");
  if (!distinct_valuations(valuations)) {
    fail(ErrorCode::precondition_failed, "valuations are not pairwise distinct (some pair is proportional)");
  }
  const std::vector<AdditiveValuation> owned(valuations.begin(), valuations.end());
  for (std::int64_t r = 1; r <= r_max; ++r) {
    GammaSystem sys(owned, std::vector<Rational>(t, Rational(r)));
    const auto radius = policy.radius_for(r);
    if (auto hit = find_integer_cube(sys, radius, options)) return ScanResult{r, *std::move(hit), radius};
  }
  return ScanResult{};
}

std::optional<Allocation> ef_bruteforce(const InstancePtr& instance, std::uint64_t cap) {
  return exists_fair(instance, Criterion::ef, cap);
}

}  // namespace fairdiv
