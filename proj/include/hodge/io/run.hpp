#pragma once

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>
#include <vector>

#include "hodge/fixtures/fixtures.hpp"
#include "hodge/io/report.hpp"
#include "hodge/io/task.hpp"

namespace hodge {

namespace run_detail {

template <class Seq>
std::string join(const Seq& xs, const std::string& sep = ",") {
  std::string s;
  bool first = true;
  for (const auto& x : xs) {
    if (!first) s += sep;
    first = false;
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Rational>) s += format_rational(x);
    else s += std::to_string(x);
  }
  return s;
}

/// 0-based variable or filtration positions printed as x_1, x_2, ...
inline std::string vars_string(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::string("x_") + std::to_string(v[i] + 1);
  return s + ")";
}

inline std::string tuple(const std::vector<std::int64_t>& v) { return "(" + join(v) + ")"; }
inline std::string tuple(const std::vector<int>& v) { return "(" + join(v) + ")"; }

inline std::string vector_string(const QVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_rational(v[i]);
  return s + "]";
}

inline std::string span_string(const QSubspace& s) {
  if (s.is_zero()) return "0";
  std::string out = "span{";
  bool first = true;
  for (const auto& v : s.basis_vectors()) {
    out += (first ? "" : ", ") + vector_string(v);
    first = false;
  }
  return out + "}";
}

inline Table filtration_table(const std::string& title, const Filtration& f) {
  Table t{title, {"index", "dim", "dim gr"}, {}};
  for (const auto& s : f.steps())
    t.rows.push_back({format_rational(s.index), std::to_string(s.space.dim()), std::to_string(f.graded(s.index).dim())});
  return t;
}

class Stopwatch {
 public:
  explicit Stopwatch(Report& r) : r_(r), start_(std::chrono::steady_clock::now()) {}
  void lap(const std::string& name) {
    auto now = std::chrono::steady_clock::now();
    r_.timings.emplace_back(name, std::chrono::duration<double, std::milli>(now - start_).count());
    start_ = now;
  }

 private:
  Report& r_;
  std::chrono::steady_clock::time_point start_;
};

inline std::string certificate_string(const NonExistence& c) {
  return c.message + " (step " + std::to_string(c.stage_number) + " of L, vector " + vector_string(c.vector) + ")";
}

inline void run(Report& r, const MonodromyTask& t) {
  Stopwatch sw(r);
  r.fact("dim", std::to_string(t.n.dim()));
  r.fact("jordan type", join(t.n.jordan_type()));
  r.fact("center", format_rational(t.center));
  auto m = monodromy_filtration(t.n, t.center);
  sw.lap("filtration");
  auto d = monodromy_defect(t.n, m);
  sw.lap("axioms");
  r.check("monodromy-axioms", !d, d.value_or(""));
  r.tables.push_back(filtration_table("weight filtration W(N)", m.filtration));
}

inline void run(Report& r, const RelativeMonodromyTask& t) {
  Stopwatch sw(r);
  r.fact("dim", std::to_string(t.n.dim()));
  auto res = relative_monodromy(t.n, t.l);
  sw.lap("construction");
  r.tables.push_back(filtration_table("L", t.l));
  r.check("exists", res.exists(), res.certificate ? certificate_string(*res.certificate) : "");
  if (res.exists()) {
    auto d = relative_monodromy_defect(t.n, t.l, res.filtration->filtration);
    sw.lap("axioms");
    r.check("relative-monodromy-axioms", !d, d.value_or(""));
    r.tables.push_back(filtration_table("M = W(N; L)", res.filtration->filtration));
  }
}

inline void run(Report& r, const MfTask& t) {
  Stopwatch sw(r);
  r.fact("operators", std::to_string(t.ns.size()));
  r.fact("dim", std::to_string(t.ns.front().dim()));
  auto res = mf_property(t.ns);
  sw.lap("filtrations");
  r.fact("status", to_string(res.status));
  r.check("nesting-exists", res.status != MfStatus::NestingDoesNotExist,
          res.certificate ? "W(N_" + std::to_string(*res.failing_operator + 1) + "; ...) does not exist: " +
                                certificate_string(*res.certificate)
                          : "");
  std::string detail;
  if (t.ns.size() == 1) detail = "holds (trivially)";
  else if (res.status == MfStatus::Fails)
    detail = "nested jumps " + join(res.nested->filtration.jumps()) + " vs W(sum) jumps " + join(res.joint.filtration.jumps());
  r.check("mf-holds", res.status == MfStatus::Holds, detail);
  if (res.nested) {
    r.tables.push_back(filtration_table("nested W(N_1, W(N_2, ...))", res.nested->filtration));
    auto g = graded_sum_decomposition(t.ns, *res.nested);
    sw.lap("graded sum");
    Table gt{"graded sum decomposition", {"weight", "dim gr nested", "sum of iterated gradeds"}, {}};
    for (const auto& row : g.rows)
      gt.rows.push_back({std::to_string(row.weight), std::to_string(row.nested_dim), std::to_string(row.iterated_sum)});
    r.tables.push_back(gt);
    if (res.status == MfStatus::Holds) r.check("graded-sum", g.holds);
    else r.fact("graded sum identity", g.holds ? "holds" : "fails");
  }
  r.tables.push_back(filtration_table("W(N_1 + ... + N_p)", res.joint.filtration));
}

inline Table graded_dims_table(const std::string& title, const std::map<Multidegree, QSubspace>& m) {
  Table t{title, {"multidegree", "dim"}, {}};
  for (const auto& [l, s] : m) t.rows.push_back({tuple(l), std::to_string(s.dim())});
  return t;
}

inline void run(Report& r, const LefschetzTask& t) {
  Stopwatch sw(r);
  const auto& g = t.g;
  r.fact("dim", std::to_string(g.dim()));
  r.fact("slots", std::to_string(g.slots()));
  r.fact("center", std::to_string(g.center));
  r.tables.push_back(graded_dims_table("graded pieces", g.space.pieces()));
  bool monodromy = true;
  for (std::size_t i = 0; i < g.slots(); ++i) monodromy = grading_is_monodromy(g, i) && monodromy;
  sw.lap("grading");
  r.check("grading-is-monodromy", monodromy);
  if (!monodromy) return;
  std::string sl2_detail;
  for (std::size_t i = 0; i < g.slots() && sl2_detail.empty(); ++i)
    if (auto d = sl2_complete(g, i).bracket_defect()) sl2_detail = "slot " + std::to_string(i + 1) + ": " + *d;
  r.check("sl2-brackets", sl2_detail.empty(), sl2_detail);
  if (g.slots() >= 2) {
    std::vector<QMatrix> ws;
    for (std::size_t i = 0; i < g.slots(); ++i) ws.push_back(weil_w(g, {i}));
    std::string d;
    for (std::size_t i = 0; i < ws.size() && d.empty(); ++i)
      for (std::size_t j = i + 1; j < ws.size() && d.empty(); ++j)
        if (ws[i] * ws[j] != ws[j] * ws[i]) d = "w_" + std::to_string(i + 1) + " w_" + std::to_string(j + 1) + " != w_" +
                                                 std::to_string(j + 1) + " w_" + std::to_string(i + 1);
    r.check("w-commute", d.empty(), d);
  }
  sw.lap("sl2");
  r.tables.push_back(graded_dims_table("primitive parts", primitive_parts(g)));
  auto c = evaluate_polarization(g);
  sw.lap("polarization");
  r.fact("isotropic", c.isotropic ? "yes" : "no (slot " + std::to_string(*c.non_isotropic_slot + 1) + ")");
  r.fact("primitive criterion", c.by_primitives() ? "positive" : "fails");
  r.fact("w criterion", c.by_w() ? "positive" : "fails");
  r.check("criteria-agree", c.criteria_agree());
  std::string pd;
  if (!c.isotropic) pd = "form is not infinitesimally isotropic for N_" + std::to_string(*c.non_isotropic_slot + 1);
  else if (c.failing_primitive)
    pd = "primitive part P" + tuple(*c.failing_primitive) + " not positive at pivot " + std::to_string(*c.failing_primitive_pivot);
  else if (!c.w_positive)
    pd = std::string("k(., w .) ") + (c.w_symmetric ? "not positive" : "not symmetric") +
         (c.failing_w_pivot ? " at pivot " + std::to_string(*c.failing_w_pivot) : "");
  r.check("polarized", c.polarized(), pd);
  if (t.hodge) {
    auto h = hodge_typing_check(g, *t.hodge);
    r.check("hodge-typing", h.ok, h.failure.value_or(""));
  }
  if (c.polarized() && c.criteria_agree())
    for (std::size_t i = 0; i < g.slots(); ++i)
      for (std::size_t j = i + 1; j < g.slots(); ++j) {
        auto m = merge_slots(g, i, j);
        r.check("merge-" + std::to_string(i + 1) + "-" + std::to_string(j + 1),
                m.grading_is_monodromy && m.polarization.polarized(),
                m.grading_is_monodromy ? "" : "merged grading is not the monodromy grading of N_i + N_j");
      }
  sw.lap("hodge and merge");
}

inline std::string row_failure_string(const RowFailure& w) {
  return "row " + tuple(w.cell) + " in direction " + std::to_string(w.direction + 1) + ": " + w.reason + " (dims " +
         std::to_string(w.dim_left) + " -> " + std::to_string(w.dim_middle) + " -> " + std::to_string(w.dim_right) + ")";
}

inline void run(Report& r, const CompatTask& t) {
  Stopwatch sw(r);
  const auto& mf = t.mf;
  r.fact("dim", std::to_string(mf.ambient_dim()));
  r.fact("filtrations", std::to_string(mf.size()));
  auto h = compatible_filtrations(mf);
  sw.lap("hypercomplex");
  auto f = compatibility_via_flatness(mf);
  sw.lap("rees flatness");
  r.fact("verdict", h.compatible ? "compatible" : "incompatible");
  std::string hd = "points " + std::to_string(h.points_checked) + ", rows " + std::to_string(h.rows_checked);
  if (!h.compatible)
    hd += "; failing indices (" + join(*h.failing_indices) + "), " + row_failure_string(*h.witness);
  r.check("hypercomplex-exact", h.compatible, hd);
  std::string fd = "permutations " + std::to_string(f.flatness.permutations_checked) + ", subsets " +
                   std::to_string(f.flatness.subsets_checked);
  if (f.flatness.failing_permutation) fd += "; failing order " + vars_string(*f.flatness.failing_permutation);
  if (f.flatness.failing_subset) fd += "; failing subset " + vars_string(*f.flatness.failing_subset);
  if (f.flatness.witness)
    fd += "; x_" + std::to_string(f.flatness.witness->sequence[f.flatness.witness->position] + 1) +
          " not injective modulo earlier variables in degree " + tuple(f.flatness.witness->degree);
  r.check("rees-flat", f.compatible, fd);
  r.check("algorithms-agree", h.compatible == f.compatible);
  if (h.compatible && mf.size() > 0) {
    auto [lo, hi] = graded_box(mf);
    std::vector<std::size_t> perm(mf.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::string bad;
    for_each_point(lo, hi, [&](const LatticePoint& k) {
      if (!bad.empty()) return;
      std::vector<Rational> idx;
      for (auto c : k) idx.push_back(mf.lattice().at(c));
      auto p = perm;
      std::optional<std::size_t> dim0;
      do {
        auto it = iterated_graded(mf, idx, p);
        if (!it.agrees || (dim0 && *dim0 != it.iterated_dim)) {
          bad = "at (" + join(idx) + ") order " + vars_string(p);
          return;
        }
        dim0 = it.iterated_dim;
      } while (std::next_permutation(p.begin(), p.end()));
    });
    sw.lap("iterated gradeds");
    r.check("iterated-gradeds-invariant", bad.empty(), bad);
  }
}

inline Table koszul_table(const KoszulHomology& kh) {
  std::vector<std::string> cols{"degree"};
  for (std::size_t j = 0; j <= kh.sequence.size(); ++j) cols.push_back("H^-" + std::to_string(j));
  Table t{"koszul homology (nonzero degrees)", cols, {}};
  for (const auto& c : kh.cells) {
    std::vector<std::string> row{tuple(c.degree)};
    for (auto h : c.homology) row.push_back(std::to_string(h));
    t.rows.push_back(std::move(row));
  }
  std::vector<std::string> total{"total"};
  for (auto h : kh.totals) total.push_back(std::to_string(h));
  t.rows.push_back(std::move(total));
  return t;
}

inline void run(Report& r, const KoszulTask& t) {
  Stopwatch sw(r);
  const auto& m = t.module;
  std::vector<std::size_t> seq = t.sequence;
  if (seq.empty()) {
    seq.resize(m.vars());
    std::iota(seq.begin(), seq.end(), std::size_t{0});
  }
  r.fact("variables", std::to_string(m.vars()));
  r.fact("box", tuple(m.lo()) + " .. " + tuple(m.hi()));
  r.fact("sequence", vars_string(seq));
  auto kh = koszul_homology(m, seq);
  sw.lap("homology");
  r.check("d-squared-zero", kh.d_squared_zero);
  r.tables.push_back(koszul_table(kh));
  auto reg = is_regular_sequence(m, seq);
  sw.lap("regularity");
  std::string rd;
  if (reg.witness)
    rd = "x_" + std::to_string(reg.witness->sequence[reg.witness->position] + 1) +
         " is a zero divisor modulo earlier variables in degree " + tuple(reg.witness->degree);
  r.check("regular-sequence", reg.regular, rd);
  r.fact("lower homology vanishes", kh.resolution() ? "yes" : "no");
}

inline void run(Report& r, const ReesTask& t) {
  Stopwatch sw(r);
  const auto rees = rees_of(t.mf);
  sw.lap("module");
  r.fact("variables", std::to_string(rees.vars()));
  r.fact("box", tuple(rees.lo()) + " .. " + tuple(rees.hi()));
  Table pt{"nonzero rees pieces", {"degree", "dim", "subspace"}, {}};
  for_each_point(rees.lo(), rees.hi(), [&](const LatticePoint& k) {
    if (rees.piece_dim(k) > 0) pt.rows.push_back({tuple(k), std::to_string(rees.piece_dim(k)), span_string(*rees.embedded_piece(k))});
  });
  r.tables.push_back(pt);
  auto d = rees.commutation_defect();
  r.check("commuting-squares", !d, d.value_or(""));
  auto flat = is_flat(rees);
  sw.lap("flatness");
  std::string fd;
  if (flat.failing_permutation) fd = "failing order " + vars_string(*flat.failing_permutation);
  r.check("flat", flat.flat, fd);
  auto h = compatible_filtrations(t.mf);
  r.check("flatness-agrees-with-hypercomplex", h.compatible == flat.flat);
}

inline void run(Report& r, const NilssonTask& t) {
  Stopwatch sw(r);
  const std::size_t p = t.module.coordinates();
  r.fact("alpha", index_string(t.alpha));
  r.fact("k", "(" + join(t.k) + ")");
  r.fact("dim E", std::to_string(t.module.piece_dim(t.alpha)));
  auto dc = nilsson_tensor(t.module, t.alpha, t.k);
  r.fact("dim W", std::to_string(dc.dim()));
  r.check("squares-commute", dc.squares_commute());
  const bool hyp = nils_hypothesis(t.module, t.alpha, t.k);
  std::vector<std::size_t> degs;
  for (const auto& n : t.module.at(t.alpha)) degs.push_back(n.degree());
  r.check("hypothesis", hyp, hyp ? "" : "k below the nilpotency degrees (" + join(degs) + ")");
  auto rep = nils_iso_check(t.module, t.alpha, t.k);
  sw.lap("nils");
  r.fact("dim joint kernel", std::to_string(rep.kernel_dim));
  r.fact("dim image", std::to_string(rep.image_dim));
  r.check("nils-isomorphism", rep.isomorphism(),
          rep.isomorphism() ? "" : rep.failure + (rep.witness ? ", witness " + vector_string(*rep.witness) : ""));
  if (p == 2) {
    auto tp = two_path_compare(t.module, t.alpha, t.k);
    sw.lap("two paths");
    r.check("two-paths", tp.ok(),
            tp.ok() ? "" : std::string(tp.maps_agree ? "" : "maps differ; ") + (tp.images_equal ? "" : "images differ; ") +
                               (tp.images_in_kernel ? "" : "image leaves the kernel"));
  }
}

inline void run(Report& r, const VkTask& t) {
  Stopwatch sw(r);
  auto v = fixture_Vk(t.k);
  const std::size_t k = t.k;
  r.fact("k", std::to_string(k));
  r.fact("dim", std::to_string(k + 1));
  Table basis{"basis v_l", {"l", "degree", "N v_l", "Hodge type", "in F^p for p <=", "in W_i for i >="}, {}};
  for (std::size_t l = 0; l <= k; ++l)
    basis.rows.push_back({std::to_string(l), std::to_string(2 * static_cast<std::int64_t>(l) - static_cast<std::int64_t>(k)),
                          l == 0 ? "0" : "v_" + std::to_string(l - 1), "(" + std::to_string(l) + "," + std::to_string(l) + ")",
                          std::to_string(l), std::to_string(2 * l)});
  r.tables.push_back(basis);
  Table q{"Q(v_l, v_{k-l'}) = delta (as stated)", {"l", "l'", "Q"}, {}};
  Table s{"k(v_l, v_{k-l}) (sign-normalized)", {"l", "k"}, {}};
  for (std::size_t l = 0; l <= k; ++l) {
    q.rows.push_back({std::to_string(l), std::to_string(l), format_rational(v.q_verbatim(l, k - l))});
    s.rows.push_back({std::to_string(l), format_rational(v.structure.form(l, k - l))});
  }
  r.tables.push_back(q);
  r.tables.push_back(s);
  Table f{"F^p", {"p", "F^p"}, {}};
  for (std::size_t p = 0; p < v.f.size(); ++p) f.rows.push_back({std::to_string(p), span_string(v.f[p])});
  r.tables.push_back(f);
  Table w{"W_i", {"i", "W_i"}, {}};
  for (std::size_t i = 0; i <= 2 * k; ++i) w.rows.push_back({std::to_string(i), span_string(v.w.at(Rational(static_cast<long>(i))))});
  r.tables.push_back(w);
  auto m = monodromy_filtration(v.n, Rational(static_cast<long>(k)));
  r.check("monodromy-equals-W", m.filtration == v.w);
  auto prim = primitive_parts(v.structure);
  const bool top = prim.size() == 1 && prim.begin()->first == Multidegree{static_cast<std::int64_t>(k)} &&
                   prim.begin()->second.dim() == 1 && v.w.graded(Rational(static_cast<long>(2 * k))).dim() == 1;
  r.check("primitive-top", top);
  const QMatrix& n = v.n.matrix();
  r.fact("stated Q isotropic", (n.transpose() * v.q_verbatim + v.q_verbatim * n).is_zero() ? "yes" : "no");
  r.check("polarized", polarization_check(v.structure).polarized());
  auto h = hodge_typing_check(v.structure, v.hodge);
  r.check("hodge-typing", h.ok, h.failure.value_or(""));
  sw.lap("checks");
}

}  // namespace run_detail

/// Dispatches one task. Library errors raised while running become an
/// error report carrying their machine-readable code.
inline Report run_task(const Task& t) {
  Report r;
  r.task = task_kind(t.data);
  r.label = t.label;
  try {
    std::visit([&](const auto& d) { run_detail::run(r, d); }, t.data);
  } catch (const Error& e) {
    r.error = e.code();
    r.error_message = e.what();
  }
  return r;
}

}  // namespace hodge
