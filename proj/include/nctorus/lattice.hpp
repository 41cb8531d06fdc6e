#pragma once

// Finite truncation of the doubled lattice eigenbasis e_{mu,nu,+-}.
//
// Sites are (mu, nu) = (m + eps1, n + eps2) with integer m, n in
// [-n_max, n_max] and a chirality sign s. The flat index order is
// grading-major (all + before all -), then lexicographic in (m, n),
// so the grading operator is block-diagonal by construction.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nctorus {

/// Spin-structure offset: exactly 0 or 1/2, stored symbolically.
enum class HalfOffset : std::uint8_t { zero = 0, half = 1 };

inline double offset_value(HalfOffset e) {
  return e == HalfOffset::half ? 0.5 : 0.0;
}

inline const char* offset_label(HalfOffset e) {
  return e == HalfOffset::half ? "1/2" : "0";
}

struct SpinStructure {
  HalfOffset eps_mu = HalfOffset::zero;
  HalfOffset eps_nu = HalfOffset::zero;

  bool operator==(const SpinStructure&) const = default;

  bool has_half_offset() const {
    return eps_mu == HalfOffset::half || eps_nu == HalfOffset::half;
  }
  std::string label() const {
    return std::string("(") + offset_label(eps_mu) + "," + offset_label(eps_nu) + ")";
  }
};

/// The four equivariant spin structures in canonical order.
inline const std::vector<SpinStructure>& all_spin_structures() {
  static const std::vector<SpinStructure> spins = {
      {HalfOffset::zero, HalfOffset::zero},
      {HalfOffset::zero, HalfOffset::half},
      {HalfOffset::half, HalfOffset::zero},
      {HalfOffset::half, HalfOffset::half},
  };
  return spins;
}

struct Truncation {
  int n_max = 1;
  SpinStructure spin;

  Truncation() = default;
  Truncation(int n, SpinStructure s) : n_max(n), spin(s) {
    if (n_max < 1) throw std::invalid_argument("Truncation: n_max must be >= 1");
  }
};

enum class Chirality : std::uint8_t { plus = 0, minus = 1 };

inline Chirality flip(Chirality s) {
  return s == Chirality::plus ? Chirality::minus : Chirality::plus;
}

struct Site {
  int m = 0;
  int n = 0;
  Chirality s = Chirality::plus;

  bool operator==(const Site&) const = default;
};

/// Bijection between lattice sites (m, n, s) and flat indices [0, dim).
class BasisIndexMap {
 public:
  explicit BasisIndexMap(Truncation trunc)
      : trunc_(trunc),
        width_(2 * trunc.n_max + 1),
        block_(width_ * width_),
        dim_(2 * width_ * width_) {}

  const Truncation& truncation() const { return trunc_; }
  SpinStructure spin() const { return trunc_.spin; }
  int n_max() const { return trunc_.n_max; }
  int width() const { return width_; }
  int block_size() const { return block_; }
  int dim() const { return dim_; }

  bool in_window(int m, int n) const {
    const int h = trunc_.n_max;
    return m >= -h && m <= h && n >= -h && n <= h;
  }

  int index_of(const Site& x) const {
    if (!in_window(x.m, x.n))
      throw std::out_of_range("BasisIndexMap: site outside window");
    const int h = trunc_.n_max;
    const int base = (x.s == Chirality::minus) ? block_ : 0;
    return base + (x.m + h) * width_ + (x.n + h);
  }

  Site site_of(int idx) const {
    if (idx < 0 || idx >= dim_)
      throw std::out_of_range("BasisIndexMap: index outside [0, dim)");
    const int h = trunc_.n_max;
    Site x;
    x.s = idx < block_ ? Chirality::plus : Chirality::minus;
    const int r = idx % block_;
    x.m = r / width_ - h;
    x.n = r % width_ - h;
    return x;
  }

  /// Derivation eigenvalues of a site; half-integer offsets are exact doubles.
  double mu_of(const Site& x) const { return x.m + offset_value(trunc_.spin.eps_mu); }
  double nu_of(const Site& x) const { return x.n + offset_value(trunc_.spin.eps_nu); }

 private:
  Truncation trunc_;
  int width_;
  int block_;
  int dim_;
};

inline BasisIndexMap build_basis(Truncation trunc) { return BasisIndexMap(trunc); }

/// Indices whose (m, n) lie at least `depth` sites away from the window edge.
/// mask(0) is the full space; mask(d+1) is nested in mask(d).
class InteriorMask {
 public:
  InteriorMask(const BasisIndexMap& map, int depth)
      : depth_(depth), member_(static_cast<std::size_t>(map.dim()), 0) {
    if (depth < 0 || depth > map.n_max())
      throw std::invalid_argument("InteriorMask: empty interior (depth must be in [0, n_max])");
    const int bound = map.n_max() - depth;
    for (int i = 0; i < map.dim(); ++i) {
      const Site x = map.site_of(i);
      if (x.m >= -bound && x.m <= bound && x.n >= -bound && x.n <= bound) {
        member_[static_cast<std::size_t>(i)] = 1;
        indices_.push_back(i);
      }
    }
  }

  int depth() const { return depth_; }
  const std::vector<int>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool contains(int idx) const {
    return idx >= 0 && idx < static_cast<int>(member_.size()) &&
           member_[static_cast<std::size_t>(idx)] != 0;
  }

 private:
  int depth_;
  std::vector<int> indices_;
  std::vector<std::uint8_t> member_;
};

inline InteriorMask interior_mask(const BasisIndexMap& map, int depth) {
  return InteriorMask(map, depth);
}

}  // namespace nctorus
