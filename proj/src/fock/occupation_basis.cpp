#include "vanhove/fock/occupation_basis.hpp"

#include <algorithm>
#include <limits>

#include "vanhove/types.hpp"

namespace vanhove::fock {

namespace {

// Appends every occupation vector of `shell` total excitation in descending
// lexicographic order.
void enumerate_shell(int mode_count, int shell, std::vector<OccupationBasis::Occupation>& out) {
  std::vector<OccupationBasis::Occupation> current(static_cast<std::size_t>(mode_count), 0);
  auto recurse = [&](auto&& self, int mode, int remaining) -> void {
    if (mode == mode_count - 1) {
      current[static_cast<std::size_t>(mode)] = static_cast<OccupationBasis::Occupation>(remaining);
      out.insert(out.end(), current.begin(), current.end());
      return;
    }
    for (int n = remaining; n >= 0; --n) {
      current[static_cast<std::size_t>(mode)] = static_cast<OccupationBasis::Occupation>(n);
      self(self, mode + 1, remaining - n);
    }
  };
  recurse(recurse, 0, shell);
}

}  // namespace

std::optional<std::size_t> basis_size(int mode_count, int max_excitation, std::size_t cap) {
  // C(M+n-1, n) built incrementally: C(M+n, n+1) = C(M+n-1, n) * (M+n) / (n+1).
  std::size_t total = 0;
  unsigned long long shell = 1;
  for (int n = 0; n <= max_excitation; ++n) {
    if (shell > cap) return std::nullopt;
    total += static_cast<std::size_t>(shell);
    if (total > cap) return std::nullopt;
    const auto num = static_cast<unsigned long long>(mode_count + n);
    if (shell > std::numeric_limits<unsigned long long>::max() / num) return std::nullopt;
    shell = shell * num / static_cast<unsigned long long>(n + 1);
  }
  return total;
}

OccupationBasis::OccupationBasis(int mode_count, int max_excitation, std::size_t max_size)
    : mode_count_(mode_count), max_excitation_(max_excitation) {
  if (mode_count < 1) throw InvalidParameter("mode count must be >= 1");
  if (max_excitation < 0) throw InvalidParameter("max total excitation must be >= 0");
  if (max_excitation > std::numeric_limits<Occupation>::max()) {
    throw CapacityError("max total excitation exceeds occupation storage");
  }
  const auto expected = basis_size(mode_count, max_excitation, max_size);
  if (!expected) {
    throw CapacityError("basis for M=" + std::to_string(mode_count) + ", N=" + std::to_string(max_excitation) +
                        " exceeds the configured maximum of " + std::to_string(max_size) + " states");
  }

  occupations_.reserve(*expected * static_cast<std::size_t>(mode_count));
  totals_.reserve(*expected);
  for (int shell = 0; shell <= max_excitation; ++shell) {
    enumerate_shell(mode_count, shell, occupations_);
    totals_.resize(occupations_.size() / static_cast<std::size_t>(mode_count), shell);
    shell_end_.push_back(totals_.size());
  }

  index_.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) index_.emplace(key(state(i)), i);

  const auto modes = static_cast<std::size_t>(mode_count);
  lowered_.assign(size() * modes, -1);
  std::vector<Occupation> scratch(modes);
  for (std::size_t i = 0; i < size(); ++i) {
    const auto occ = state(i);
    for (std::size_t j = 0; j < modes; ++j) {
      if (occ[j] == 0) continue;
      std::copy(occ.begin(), occ.end(), scratch.begin());
      --scratch[j];
      lowered_[i * modes + j] = static_cast<std::int64_t>(index_.at(key(scratch)));
    }
  }
}

std::string OccupationBasis::key(std::span<const Occupation> occupation) {
  return {reinterpret_cast<const char*>(occupation.data()), occupation.size_bytes()};
}

std::optional<std::size_t> OccupationBasis::find(std::span<const Occupation> occupation) const {
  if (occupation.size() != static_cast<std::size_t>(mode_count_)) return std::nullopt;
  auto it = index_.find(key(occupation));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t OccupationBasis::index_of(std::span<const Occupation> occupation) const {
  auto found = find(occupation);
  if (!found) throw InputError("occupation vector is not part of the truncated basis");
  return *found;
}

std::size_t OccupationBasis::shell_prefix(int shell) const {
  if (shell < 0) return 0;
  if (shell >= max_excitation_) return size();
  return shell_end_[static_cast<std::size_t>(shell)];
}

OccupationBasis build_basis(int mode_count, int max_excitation, std::size_t max_size) {
  return OccupationBasis(mode_count, max_excitation, max_size);
}

}  // namespace vanhove::fock
