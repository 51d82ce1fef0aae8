#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace vanhove::fock {

inline constexpr std::size_t kDefaultMaxBasisSize = 200000;

/// Truncated symmetric Fock space over M modes: all occupation vectors
/// (n_1, ..., n_M) with sum n_i <= N. Ordered by total excitation, then
/// lexicographically descending within a shell, so the vacuum is index 0 and
/// the one-particle state of mode j is index 1 + j.
class OccupationBasis {
 public:
  using Occupation = std::uint16_t;

  OccupationBasis(int mode_count, int max_excitation, std::size_t max_size = kDefaultMaxBasisSize);

  int mode_count() const { return mode_count_; }
  int max_excitation() const { return max_excitation_; }
  std::size_t size() const { return totals_.size(); }

  std::span<const Occupation> state(std::size_t index) const {
    return {occupations_.data() + index * static_cast<std::size_t>(mode_count_),
            static_cast<std::size_t>(mode_count_)};
  }
  int total(std::size_t index) const { return totals_[index]; }

  std::optional<std::size_t> find(std::span<const Occupation> occupation) const;
  std::size_t index_of(std::span<const Occupation> occupation) const;

  /// Index of the state with one quantum removed from `mode`, or -1 when n_mode = 0.
  std::int64_t lowered(std::size_t index, std::size_t mode) const {
    return lowered_[index * static_cast<std::size_t>(mode_count_) + mode];
  }

  /// Number of states with total excitation <= shell (a prefix of the ordering).
  std::size_t shell_prefix(int shell) const;

  bool operator==(const OccupationBasis& other) const {
    return mode_count_ == other.mode_count_ && max_excitation_ == other.max_excitation_;
  }

 private:
  static std::string key(std::span<const Occupation> occupation);

  int mode_count_;
  int max_excitation_;
  std::vector<Occupation> occupations_;
  std::vector<int> totals_;
  std::vector<std::size_t> shell_end_;
  std::vector<std::int64_t> lowered_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Basis size sum_{n=0}^{N} C(M+n-1, n); nullopt on overflow past `cap`.
std::optional<std::size_t> basis_size(int mode_count, int max_excitation, std::size_t cap);

OccupationBasis build_basis(int mode_count, int max_excitation, std::size_t max_size = kDefaultMaxBasisSize);

}  // namespace vanhove::fock
