#include "maxspread/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <thread>

namespace maxspread {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::Symplectic: return "symplectic";
    case Flavor::Orthogonal: return "orthogonal";
    case Flavor::Plain: return "plain";
  }
  return "?";
}

Flavor flavor_from_string(const std::string& s) {
  if (s == "symplectic") return Flavor::Symplectic;
  if (s == "orthogonal") return Flavor::Orthogonal;
  if (s == "plain") return Flavor::Plain;
  throw GeometryError("unknown flavor '" + s + "'");
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::Found: return "found";
    case SearchStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

namespace {

// Packed GF(2) vectors, coordinate 0 in the most significant used bit.
struct PackedOps {
  using V = std::uint64_t;
  const FormedSpace& space;
  int N;
  std::vector<std::uint64_t> gram_rows;

  explicit PackedOps(const FormedSpace& s) : space(s), N(s.dim()) {
    for (int i = 0; i < N; ++i) gram_rows.push_back(pack_gf2(s.gram()[static_cast<std::size_t>(i)]));
  }
  V from(const Vec& v) const { return pack_gf2(v); }
  Vec to(V v) const { return unpack_gf2(v, N); }
  int lead(V v) const { return N - 1 - (63 - __builtin_clzll(v)); }
  bool zero_at(V v, int i) const { return !((v >> (N - 1 - i)) & 1u); }
  std::uint64_t index(V v) const { return v; }
  V polar(V u) const {
    V r = 0;
    for (int i = 0; i < N; ++i)
      if ((u >> (N - 1 - i)) & 1u) r ^= gram_rows[static_cast<std::size_t>(i)];
    return r;
  }
  bool orthogonal(V pu, V w) const { return (__builtin_popcountll(pu & w) & 1) == 0; }
  V add(V a, V b) const { return a ^ b; }
  void multiples(V v, std::vector<V>& out) const { out.push_back(v); }
  bool has_rank(const std::vector<V>& D, std::size_t from, std::size_t need) const {
    if (need == 0) return true;
    std::vector<V> rows;
    for (std::size_t i = from; i < D.size(); ++i) {
      V w = D[i];
      for (V r : rows)
        if (w & (std::uint64_t{1} << (63 - __builtin_clzll(r)))) w ^= r;
      if (w) {
        rows.push_back(w);
        if (rows.size() >= need) return true;
      }
    }
    return false;
  }
};

struct GenericOps {
  using V = Vec;
  const FormedSpace& space;
  const Field& F;
  int N;

  explicit GenericOps(const FormedSpace& s) : space(s), F(*s.field()), N(s.dim()) {}
  V from(const Vec& v) const { return v; }
  Vec to(const V& v) const { return v; }
  int lead(const V& v) const {
    for (int i = 0; i < N; ++i)
      if (v[static_cast<std::size_t>(i)]) return i;
    return N;
  }
  bool zero_at(const V& v, int i) const { return v[static_cast<std::size_t>(i)] == 0; }
  std::uint64_t index(const V& v) const { return vector_index(F, v); }
  V polar(const V& u) const { return space.polar(u); }
  bool orthogonal(const V& pu, const V& w) const { return vec_dot(F, pu, w) == 0; }
  V add(const V& a, const V& b) const { return vec_add(F, a, b); }
  void multiples(const V& v, std::vector<V>& out) const {
    for (Elem l : F.elements())
      if (l) out.push_back(vec_scale(F, l, v));
  }
  bool has_rank(const std::vector<V>& D, std::size_t from, std::size_t need) const {
    if (need == 0) return true;
    std::vector<V> rows;
    std::vector<int> piv;
    for (std::size_t i = from; i < D.size(); ++i) {
      V w = D[i];
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const Elem c = w[static_cast<std::size_t>(piv[k])];
        if (c) vec_axpy(F, w, F.neg(c), rows[k]);
      }
      const int l = lead(w);
      if (l < N) {
        w = vec_scale(F, F.inv(w[static_cast<std::size_t>(l)]), w);
        rows.push_back(std::move(w));
        piv.push_back(l);
        if (rows.size() >= need) return true;
      }
    }
    return false;
  }
};

template <class Ops>
class Engine {
 public:
  using V = typename Ops::V;

  Engine(const Ops& ops, const SearchOptions& opt, const VectorMask* mask)
      : ops_(ops), opt_(opt), mask_(mask), n_(static_cast<std::size_t>(opt.target_dim)) {}

  SearchResult run(const FormedSpace& V_) {
    start_ = std::chrono::steady_clock::now();
    SearchResult res;
    // root candidates: allowed points of the right flavor, sorted by (lead, index)
    std::vector<std::pair<std::pair<int, std::uint64_t>, V>> tagged;
    for_each_point_of(*V_.field(), V_.dim(), [&](const Vec& p) {
      if (opt_.flavor == Flavor::Orthogonal && V_.quadratic(p) != 0) return true;
      V v = ops_.from(p);
      if (mask_ && !(*mask_)[ops_.index(v)]) return true;
      tagged.push_back({{ops_.lead(v), ops_.index(v)}, std::move(v)});
      return true;
    });
    std::sort(tagged.begin(), tagged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    root_.reserve(tagged.size());
    for (auto& t : tagged) root_.push_back(std::move(t.second));

    if (n_ == 0) {
      res.leaves.push_back(Subspace::zero(V_.field(), V_.dim()));
      res.status = SearchStatus::Found;
      return res;
    }
    per_root_.assign(root_.size(), {});
    if (ops_.has_rank(root_, 0, n_)) {
      const unsigned jobs = std::max(1u, opt_.jobs);
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        Worker w;
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= root_.size() || stop_.load()) break;
          if (!opt_.enumerate_all && i > best_.load()) break;
          if (root_.size() - i < n_) break;
          std::vector<V> basis, span{V{}};
          span[0] = zero_vector();
          w.leaves.clear();
          child(w, basis, span, root_, i);
          if (!w.leaves.empty()) {
            std::lock_guard<std::mutex> lk(mu_);
            per_root_[i] = std::move(w.leaves);
            w.leaves.clear();
            std::size_t cur = best_.load();
            while (i < cur && !best_.compare_exchange_weak(cur, i)) {
            }
          }
        }
        std::lock_guard<std::mutex> lk(mu_);
        res.pruned += w.pruned;
      };
      if (jobs == 1) {
        worker();
      } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
      }
    } else {
      ++res.pruned;
    }

    res.nodes = nodes_.load();
    res.seconds = elapsed();
    for (std::size_t i = 0; i < per_root_.size(); ++i) {
      for (auto& b : per_root_[i]) {
        std::vector<Vec> rows;
        for (auto& v : b) rows.push_back(ops_.to(v));
        res.leaves.push_back(Subspace::span(V_.field(), V_.dim(), std::move(rows)));
        if (!opt_.enumerate_all) break;
      }
      if (!opt_.enumerate_all && !res.leaves.empty()) break;
    }
    if (!res.leaves.empty() && !opt_.enumerate_all) {
      res.status = SearchStatus::Found;
    } else if (budget_hit_.load()) {
      res.status = SearchStatus::BudgetExceeded;
    } else {
      res.status = res.leaves.empty() ? SearchStatus::Exhausted : SearchStatus::Found;
    }
    return res;
  }

 private:
  struct Worker {
    std::vector<std::vector<V>> leaves;
    std::uint64_t pruned = 0;
  };

  V zero_vector() const {
    if constexpr (std::is_same_v<V, Vec>) {
      return Vec(static_cast<std::size_t>(ops_.N), 0);
    } else {
      return V{0};
    }
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  bool tick() {
    const std::uint64_t k = nodes_.fetch_add(1) + 1;
    if (opt_.node_budget && k > opt_.node_budget) {
      budget_hit_ = true;
      stop_ = true;
    }
    if (opt_.time_budget_seconds > 0 && (k & 1023) == 0 && elapsed() > opt_.time_budget_seconds) {
      budget_hit_ = true;
      stop_ = true;
    }
    return stop_.load();
  }

  bool allowed(const V& v) const { return !mask_ || (*mask_)[ops_.index(v)]; }

  // Extends basis by D[i]; returns true when the whole search should stop.
  bool child(Worker& w, std::vector<V>& basis, std::vector<V>& span, const std::vector<V>& D, std::size_t i) {
    const V& v = D[i];
    const int c = ops_.lead(v);
    const bool need_perp = opt_.flavor != Flavor::Plain;
    V pv{};
    if (need_perp) pv = ops_.polar(v);
    // new vectors of S + <v>: lambda v + s, lambda != 0
    std::vector<V> fresh;
    {
      std::vector<V> mult;
      ops_.multiples(v, mult);
      fresh.reserve(mult.size() * span.size());
      for (const auto& m : mult)
        for (const auto& s : span) fresh.push_back(ops_.add(m, s));
    }
    std::vector<V> next;
    for (std::size_t j = i + 1; j < D.size(); ++j) {
      const V& x = D[j];
      const int l = ops_.lead(x);
      if (l <= c || !ops_.zero_at(v, l)) continue;
      if (need_perp && !ops_.orthogonal(pv, x)) continue;
      if (mask_) {
        bool ok = true;
        for (const auto& f : fresh)
          if (!allowed(ops_.add(x, f))) {
            ok = false;
            break;
          }
        if (!ok) continue;
      }
      next.push_back(x);
    }
    const std::size_t old = span.size();
    span.insert(span.end(), fresh.begin(), fresh.end());
    basis.push_back(v);
    const bool stop = dfs(w, basis, span, next);
    basis.pop_back();
    span.resize(old);
    return stop;
  }

  bool dfs(Worker& w, std::vector<V>& basis, std::vector<V>& span, const std::vector<V>& D) {
    if (tick()) return true;
    if (basis.size() == n_) {
      w.leaves.push_back(basis);
      return !opt_.enumerate_all;
    }
    const std::size_t need = n_ - basis.size();
    if (!ops_.has_rank(D, 0, need)) {
      ++w.pruned;
      return false;
    }
    for (std::size_t i = 0; i < D.size(); ++i) {
      if (D.size() - i < need) break;
      if (child(w, basis, span, D, i)) return true;
    }
    return false;
  }

  const Ops& ops_;
  const SearchOptions& opt_;
  const VectorMask* mask_;
  std::size_t n_;
  std::vector<V> root_;
  std::vector<std::vector<std::vector<V>>> per_root_;
  std::atomic<std::size_t> best_{static_cast<std::size_t>(-1)};
  std::atomic<bool> stop_{false}, budget_hit_{false};
  std::atomic<std::uint64_t> nodes_{0};
  std::mutex mu_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SearchResult flag_search(const FormedSpace& V, const SearchOptions& opt, const VectorMask* mask) {
  if (opt.flavor == Flavor::Orthogonal && !V.has_quadratic())
    throw GeometryError("orthogonal flavor needs a quadratic form");
  if (opt.target_dim < 0 || opt.target_dim > V.dim()) throw GeometryError("search: bad target dimension");
  if (point_count(*V.field(), V.dim()) > kMaxEnumeratedPoints)
    throw OutOfScale("search over " + V.describe() + " exceeds the desk-scale guard");
  if (mask && mask->size() != vector_count(*V.field(), V.dim())) throw GeometryError("search: mask has wrong size");
  if (V.field()->order() == 2 && V.dim() <= 63) {
    PackedOps ops(V);
    Engine<PackedOps> e(ops, opt, mask);
    return e.run(V);
  }
  GenericOps ops(V);
  Engine<GenericOps> e(ops, opt, mask);
  return e.run(V);
}

std::vector<Subspace> enumerate_subspaces(const FormedSpace& V, Flavor flavor, int dim, unsigned jobs) {
  SearchOptions opt;
  opt.flavor = flavor;
  opt.target_dim = dim;
  opt.enumerate_all = true;
  opt.jobs = jobs;
  return flag_search(V, opt, nullptr).leaves;
}

std::vector<Subspace> enumerate_maximal(const FormedSpace& V, Flavor flavor, unsigned jobs) {
  if (flavor == Flavor::Plain) throw GeometryError("maximal subspaces need a form flavor");
  int dim = V.max_isotropic_dim();
  if (flavor == Flavor::Symplectic && V.kind() != SpaceKind::Symplectic) {
    // totally isotropic subspaces of the polar form of an even-dimensional
    // orthogonal space in characteristic 2
    if (V.dim() % 2 != 0 || V.field()->characteristic() != 2)
      throw GeometryError("symplectic flavor needs an alternating polar form");
    dim = V.dim() / 2;
  }
  return enumerate_subspaces(V, flavor, dim, jobs);
}

std::optional<std::uint64_t> maximal_subspace_count(const FormedSpace& V, Flavor flavor) {
  if (flavor == Flavor::Plain) return std::nullopt;
  const std::uint64_t q = V.field()->order();
  const bool alternating = V.kind() == SpaceKind::Symplectic ||
                           (flavor == Flavor::Symplectic && V.field()->characteristic() == 2 && V.dim() % 2 == 0);
  if (flavor == Flavor::Symplectic && !alternating) return std::nullopt;
  int lo = 1, hi = 0;  // product of q^i + 1 over lo..hi
  if (alternating) {
    hi = V.dim() / 2;
  } else {
    switch (V.kind()) {
      case SpaceKind::OrthogonalPlus: lo = 0, hi = V.dim() / 2 - 1; break;
      case SpaceKind::OrthogonalMinus: lo = 2, hi = V.dim() / 2; break;
      case SpaceKind::Parabolic: lo = 1, hi = V.dim() / 2; break;
      case SpaceKind::Symplectic: break;
    }
  }
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t n = 1, qi = 1;
  for (int i = 0; i <= hi; ++i) {
    if (i >= lo) n = n > kMax / (qi + 1) ? kMax : n * (qi + 1);
    qi = qi > kMax / q ? kMax - 1 : qi * q;
  }
  return n;
}

}  // namespace maxspread
