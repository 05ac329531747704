#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodge/filtration/compatibility.hpp"
#include "hodge/rees/rees_module.hpp"

namespace hodge {

/// Homology of one multidegree: homology[j] = dim H^{-j}, j = 0..|seq|.
struct KoszulCell {
  LatticePoint degree;
  std::vector<std::size_t> homology;
};

struct KoszulHomology {
  std::vector<std::size_t> sequence;
  std::vector<KoszulCell> cells;
  /// Sum over the multidegree range of dim H^{-j}.
  std::vector<std::size_t> totals;
  bool d_squared_zero = true;

  /// All H^{-j} with j >= 1 vanish.
  bool resolution() const {
    for (std::size_t j = 1; j < totals.size(); ++j)
      if (totals[j] != 0) return false;
    return true;
  }
  /// First multidegree (lexicographic) with some nonzero H^{-j}, j >= 1.
  std::optional<KoszulCell> first_nonvanishing() const {
    for (const auto& c : cells)
      for (std::size_t j = 1; j < c.homology.size(); ++j)
        if (c.homology[j] != 0) return c;
    return std::nullopt;
  }
};

namespace detail {

inline void check_sequence(const ReesModule& r, const std::vector<std::size_t>& seq) {
  require(!seq.empty(), ErrorCode::InvalidArgument, "koszul: empty sequence");
  std::vector<bool> seen(r.vars(), false);
  for (auto v : seq) {
    require(v < r.vars(), ErrorCode::InvalidArgument, "koszul: variable index " + std::to_string(v) + " out of range");
    require(!seen[v], ErrorCode::InvalidArgument, "koszul: repeated variable index");
    seen[v] = true;
  }
}

/// Koszul differentials d_j: C_j -> C_{j-1} at one multidegree, with
/// C_j = ⊕_{|T|=j} M_{d - 1_T} and bit b of T standing for sorted[b].
class KoszulAtDegree {
 public:
  KoszulAtDegree(const ReesModule& r, const std::vector<std::size_t>& sorted, const LatticePoint& d)
      : r_(r), s_(sorted), d_(d) {
    const std::size_t subsets = std::size_t{1} << s_.size();
    dims_.resize(subsets);
    offset_.resize(subsets);
    std::vector<std::size_t> running(s_.size() + 1, 0);
    for (std::size_t t = 0; t < subsets; ++t) {
      dims_[t] = r_.piece_dim(shifted(t));
      const auto j = static_cast<std::size_t>(std::popcount(t));
      offset_[t] = running[j];
      running[j] += dims_[t];
    }
    term_dims_ = running;
  }

  std::size_t term_dim(std::size_t j) const { return j < term_dims_.size() ? term_dims_[j] : 0; }

  QMatrix differential(std::size_t j) const {
    QMatrix d(term_dim(j - 1), term_dim(j));
    if (d.rows() == 0 || d.cols() == 0) return d;
    for (std::size_t t = 0; t < dims_.size(); ++t) {
      if (static_cast<std::size_t>(std::popcount(t)) != j || dims_[t] == 0) continue;
      const LatticePoint src = shifted(t);
      std::size_t pos = 0;
      for (std::size_t b = 0; b < s_.size(); ++b) {
        if (!(t >> b & 1)) continue;
        const std::size_t face = t & ~(std::size_t{1} << b);
        const Rational sign = pos % 2 == 0 ? Rational(1) : Rational(-1);
        ++pos;
        if (dims_[face] == 0) continue;
        QMatrix x = r_.structure_map(s_[b], src);
        for (std::size_t a = 0; a < x.rows(); ++a)
          for (std::size_t c = 0; c < x.cols(); ++c)
            if (x(a, c) != 0) d(offset_[face] + a, offset_[t] + c) = sign * x(a, c);
      }
    }
    return d;
  }

 private:
  LatticePoint shifted(std::size_t t) const {
    LatticePoint k = d_;
    for (std::size_t b = 0; b < s_.size(); ++b)
      if (t >> b & 1) k[s_[b]] -= 1;
    return k;
  }

  const ReesModule& r_;
  const std::vector<std::size_t>& s_;
  LatticePoint d_;
  std::vector<std::size_t> dims_, offset_, term_dims_;
};

inline std::pair<LatticePoint, LatticePoint> koszul_range(const ReesModule& r, const std::vector<std::size_t>& seq) {
  LatticePoint lo = r.lo(), hi = r.hi();
  for (auto v : seq) hi[v] += 1;
  return {lo, hi};
}

}  // namespace detail

/// Homology of K(seq; r) multidegree by multidegree. Outside the range
/// [lo, hi] (widened by one in the sequence directions) every cell is
/// either 0 or the Koszul complex of an identity map, hence exact.
inline KoszulHomology koszul_homology(const ReesModule& r, const std::vector<std::size_t>& seq) {
  detail::check_sequence(r, seq);
  std::vector<std::size_t> sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t s = seq.size();
  KoszulHomology out;
  out.sequence = seq;
  out.totals.assign(s + 1, 0);
  auto [lo, hi] = detail::koszul_range(r, seq);
  for_each_point(lo, hi, [&](const LatticePoint& d) {
    detail::KoszulAtDegree k(r, sorted, d);
    std::vector<QMatrix> diff(s + 2);
    std::vector<std::size_t> rk(s + 2, 0);
    for (std::size_t j = 1; j <= s; ++j) {
      diff[j] = k.differential(j);
      rk[j] = rank(diff[j]);
    }
    for (std::size_t j = 1; j < s; ++j)
      if (!(diff[j] * diff[j + 1]).is_zero()) out.d_squared_zero = false;
    KoszulCell cell{d, std::vector<std::size_t>(s + 1, 0)};
    bool any = false;
    for (std::size_t j = 0; j <= s; ++j) {
      cell.homology[j] = k.term_dim(j) - rk[j] - rk[j + 1];
      out.totals[j] += cell.homology[j];
      any = any || cell.homology[j] != 0;
    }
    if (any) out.cells.push_back(std::move(cell));
  });
  require(out.d_squared_zero, ErrorCode::InvariantViolation, "koszul: d∘d != 0");
  return out;
}

/// Where a sequence stops being regular: multiplication by
/// `sequence[position]` is not injective modulo the earlier variables in
/// multidegree `degree` (or, for the homological criterion, the prefix of
/// length position+1 has nonzero lower homology at `degree`).
struct RegularityWitness {
  std::vector<std::size_t> sequence;
  std::size_t position = 0;
  LatticePoint degree;
};

struct RegularityReport {
  bool regular = true;
  bool by_injectivity = true;
  bool by_koszul = true;
  std::optional<RegularityWitness> witness;
};

namespace detail {

/// I_d = Σ_{e ∈ earlier} x_e(M_{d - 1_e}) inside M_d.
inline QSubspace ideal_piece(const ReesModule& r, const std::vector<std::size_t>& earlier, const LatticePoint& d) {
  const std::size_t dim = r.piece_dim(d);
  QSubspace acc = QSubspace::zero(dim);
  for (auto e : earlier) {
    LatticePoint src = d;
    src[e] -= 1;
    const std::size_t ds = r.piece_dim(src);
    if (ds == 0 || dim == 0) continue;
    acc = subspace_sum(acc, image_of(r.structure_map(e, src), QSubspace::full(ds)));
  }
  return acc;
}

/// First multidegree where x_v is not injective on M / (x_e : e ∈ earlier).
/// Only the box [lo, hi] is scanned: past hi_u every piece and map repeats
/// the one at hi_u, so a failure there has an earlier copy.
inline std::optional<LatticePoint> step_failure(const ReesModule& r, const std::vector<std::size_t>& earlier,
                                                std::size_t v) {
  std::optional<LatticePoint> bad;
  for_each_point(r.lo(), r.hi(), [&](const LatticePoint& d) {
    if (bad) return;
    const std::size_t dim = r.piece_dim(d);
    if (dim == 0) return;
    LatticePoint up = d;
    up[v] += 1;
    const QSubspace here = ideal_piece(r, earlier, d);
    if (here.is_full()) return;
    const QSubspace there = ideal_piece(r, earlier, up);
    if (!here.contains(preimage_of(r.structure_map(v, d), there))) bad = d;
  });
  return bad;
}

/// Memoizes both regularity criteria: the step check depends only on the
/// set of earlier variables and the next one, Koszul homology only on the
/// set of variables.
class ResolutionCache {
 public:
  explicit ResolutionCache(const ReesModule& r) : r_(r) {}
  std::optional<LatticePoint> failure(std::vector<std::size_t> vars) {
    std::sort(vars.begin(), vars.end());
    auto it = cache_.find(vars);
    if (it != cache_.end()) return it->second;
    auto h = koszul_homology(r_, vars);
    std::optional<LatticePoint> f;
    if (auto c = h.first_nonvanishing()) f = c->degree;
    cache_.emplace(vars, f);
    return f;
  }
  std::optional<LatticePoint> step(std::vector<std::size_t> earlier, std::size_t v) {
    std::sort(earlier.begin(), earlier.end());
    auto key = std::make_pair(earlier, v);
    auto it = steps_.find(key);
    if (it != steps_.end()) return it->second;
    auto f = step_failure(r_, earlier, v);
    steps_.emplace(std::move(key), f);
    return f;
  }

 private:
  const ReesModule& r_;
  std::map<std::vector<std::size_t>, std::optional<LatticePoint>> cache_;
  std::map<std::pair<std::vector<std::size_t>, std::size_t>, std::optional<LatticePoint>> steps_;
};

inline RegularityReport regularity(const ReesModule& r, const std::vector<std::size_t>& seq, ResolutionCache& cache) {
  detail::check_sequence(r, seq);
  RegularityReport rep;
  std::optional<RegularityWitness> inj, kos;
  for (std::size_t j = 0; j < seq.size() && !inj; ++j)
    if (auto d = cache.step({seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(j)}, seq[j]))
      inj = RegularityWitness{seq, j, *d};
  for (std::size_t j = 0; j < seq.size() && !kos; ++j) {
    std::vector<std::size_t> prefix(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(j + 1));
    if (auto d = cache.failure(prefix)) kos = RegularityWitness{seq, j, *d};
  }
  rep.by_injectivity = !inj;
  rep.by_koszul = !kos;
  if (rep.by_injectivity != rep.by_koszul)
    fail(ErrorCode::Internal, "regularity criteria disagree (injectivity " + std::string(rep.by_injectivity ? "yes" : "no") +
                                  ", koszul " + (rep.by_koszul ? "yes" : "no") + ")");
  rep.regular = rep.by_injectivity;
  rep.witness = inj ? inj : kos;
  return rep;
}

}  // namespace detail

/// x_{seq[0]}, ..., x_{seq[s-1]} is r-regular. Both the step-injectivity
/// and the prefix-Koszul criteria are evaluated; a disagreement throws.
inline RegularityReport is_regular_sequence(const ReesModule& r, const std::vector<std::size_t>& seq) {
  detail::ResolutionCache cache(r);
  return detail::regularity(r, seq, cache);
}

struct FlatnessReport {
  bool flat = true;
  bool by_permutations = true;
  bool by_subsets = true;
  std::size_t permutations_checked = 0;
  std::size_t subsets_checked = 0;
  std::optional<std::vector<std::size_t>> failing_permutation;
  std::optional<std::vector<std::size_t>> failing_subset;
  std::optional<RegularityWitness> witness;
};

/// Flatness over Q[x_1..x_n]: every permutation of the variables is a
/// regular sequence, equivalently every subset (in increasing order) is.
/// Both sweeps are exhaustive and must agree.
inline FlatnessReport is_flat(const ReesModule& r) {
  FlatnessReport rep;
  const std::size_t n = r.vars();
  if (n == 0) return rep;
  detail::ResolutionCache cache(r);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  do {
    ++rep.permutations_checked;
    auto reg = detail::regularity(r, perm, cache);
    if (!reg.regular) {
      rep.by_permutations = false;
      rep.failing_permutation = perm;
      rep.witness = reg.witness;
      break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> sub;
    for (std::size_t b = 0; b < n; ++b)
      if (mask >> b & 1) sub.push_back(b);
    ++rep.subsets_checked;
    auto reg = detail::regularity(r, sub, cache);
    if (!reg.regular) {
      rep.by_subsets = false;
      rep.failing_subset = sub;
      if (!rep.witness) rep.witness = reg.witness;
      break;
    }
  }
  if (rep.by_permutations != rep.by_subsets)
    fail(ErrorCode::Internal, "flatness: permutation and subset criteria disagree");
  rep.flat = rep.by_permutations;
  return rep;
}

struct FlatnessCompatibility {
  bool compatible = true;
  FlatnessReport flatness;
};

/// Compatibility decided through flatness of the Rees module.
inline FlatnessCompatibility compatibility_via_flatness(const MultiFiltration& mf) {
  FlatnessCompatibility out;
  if (mf.size() == 0) return out;
  out.flatness = is_flat(rees_of(mf));
  out.compatible = out.flatness.flat;
  return out;
}

}  // namespace hodge
