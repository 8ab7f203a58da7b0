#include "nfold/graver.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>

#include "nfold/errors.hpp"

namespace nfold {

// ---------------------------------------------------------------- GraverBasis

IntVector canonical_representative(IntVector v) {
  const std::size_t f = v.first_nonzero();
  if (f < v.size() && v[f].sign() < 0) return -v;
  return v;
}

GraverBasis::GraverBasis(std::size_t ambient_dimension, std::vector<IntVector> elements,
                         std::uint64_t matrix_fingerprint)
    : dimension_(ambient_dimension), fingerprint_(matrix_fingerprint) {
  for (auto& e : elements) {
    if (e.size() != dimension_) throw DimensionError("Graver element has wrong dimension");
    if (e.is_zero()) throw std::invalid_argument("Graver basis cannot contain the zero vector");
    e = canonical_representative(std::move(e));
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  elements_ = std::move(elements);
}

bool GraverBasis::contains(const IntVector& g) const {
  if (g.size() != dimension_ || g.is_zero()) return false;
  return std::binary_search(elements_.begin(), elements_.end(), canonical_representative(g));
}

// ---------------------------------------------------------------- cache

namespace {

std::uint64_t bimatrix_key(const Bimatrix& a) { return a.stacked().fingerprint() ^ (a.r() * 0x9e3779b97f4a7c15ULL); }

}  // namespace

const GraverBasis* GraverCache::find_basis(const IntMatrix& a) const {
  auto [lo, hi] = bases_.equal_range(a.fingerprint());
  for (auto it = lo; it != hi; ++it) {
    if (it->second.first == a) return &it->second.second;
  }
  return nullptr;
}

void GraverCache::store_basis(const IntMatrix& a, const GraverBasis& basis) {
  if (find_basis(a)) return;
  bases_.emplace(a.fingerprint(), std::make_pair(a, basis));
}

std::optional<std::size_t> GraverCache::find_complexity(const Bimatrix& a) const {
  auto [lo, hi] = complexities_.equal_range(bimatrix_key(a));
  for (auto it = lo; it != hi; ++it) {
    if (it->second.first == a) return it->second.second;
  }
  return std::nullopt;
}

void GraverCache::store_complexity(const Bimatrix& a, std::size_t value) {
  if (find_complexity(a)) return;
  complexities_.emplace(bimatrix_key(a), std::make_pair(a, value));
}

std::size_t GraverCache::basis_count() const noexcept { return bases_.size(); }

// ---------------------------------------------------------------- completion machinery

namespace {

using Mask = std::vector<std::uint64_t>;

void set_bit(Mask& m, std::size_t i) { m[i / 64] |= std::uint64_t{1} << (i % 64); }

// Working set of lattice vectors with cached sign supports. Elements are
// always added together with their negation.
class ElementStore {
 public:
  explicit ElementStore(std::size_t dim) : dim_(dim), words_((dim + 63) / 64) {}

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t words() const noexcept { return words_; }
  std::size_t size() const noexcept { return vecs_.size(); }
  const IntVector& vec(std::size_t id) const { return vecs_[id]; }
  const std::uint64_t* pos(std::size_t id) const { return pos_.data() + id * words_; }
  const std::uint64_t* neg(std::size_t id) const { return neg_.data() + id * words_; }
  std::size_t negation(std::size_t id) const { return negation_[id]; }

  /// Adds v and -v; returns the id of v (the id of -v is one larger).
  std::size_t add_pair(IntVector v) {
    IntVector minus = -v;
    const std::size_t a = add(std::move(v));
    const std::size_t b = add(std::move(minus));
    negation_.push_back(b);
    negation_.push_back(a);
    return a;
  }

  void signs_of(const IntVector& v, Mask& pos, Mask& neg) const {
    pos.assign(words_, 0);
    neg.assign(words_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
      const int s = v[i].sign();
      if (s > 0) set_bit(pos, i);
      if (s < 0) set_bit(neg, i);
    }
  }

 private:
  std::size_t add(IntVector v) {
    const std::size_t id = vecs_.size();
    pos_.resize(pos_.size() + words_, 0);
    neg_.resize(neg_.size() + words_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
      const int s = v[i].sign();
      if (s > 0) pos_[id * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
      if (s < 0) neg_[id * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
    }
    vecs_.push_back(std::move(v));
    return id;
  }

  std::size_t dim_;
  std::size_t words_;
  std::vector<IntVector> vecs_;
  std::vector<std::uint64_t> pos_, neg_;
  std::vector<std::size_t> negation_;
};

// No coordinate in `mask` where one vector is positive and the other negative.
bool sign_compatible(const ElementStore& st, std::size_t u, std::size_t w, const Mask& mask) {
  const auto *pu = st.pos(u), *nu = st.neg(u), *pw = st.pos(w), *nw = st.neg(w);
  for (std::size_t k = 0; k < st.words(); ++k) {
    if (((pu[k] & nw[k]) | (nu[k] & pw[k])) & mask[k]) return false;
  }
  return true;
}

// h ⊑ s restricted to `coords`, given that the sign supports already nest.
bool magnitudes_dominated(const IntVector& h, const IntVector& s, const std::vector<std::size_t>& coords) {
  for (std::size_t c : coords) {
    if (!h[c].is_zero() && compare_abs(h[c], s[c]) > 0) return false;
  }
  return true;
}

// Index for "is some stored element ⊑ s on these coordinates". Internal nodes
// branch on the sign of one coordinate; a query with s_c = 0 only descends into
// the zero branch.
class SupportTree {
 public:
  SupportTree(const ElementStore& store, std::vector<std::size_t> coords, Mask mask)
      : store_(store), coords_(std::move(coords)), mask_(std::move(mask)) {
    nodes_.push_back(Node{});
  }

  void insert(std::size_t id) {
    std::size_t node = descend(0, id);
    nodes_[node].items.push_back(id);
    if (nodes_[node].items.size() > kLeafCapacity && nodes_[node].depth < coords_.size()) split(node);
  }

  bool has_leq(const IntVector& s, const Mask& spos, const Mask& sneg) const {
    stack_.clear();
    stack_.push_back(0);
    while (!stack_.empty()) {
      const Node& node = nodes_[stack_.back()];
      stack_.pop_back();
      if (node.leaf) {
        for (std::size_t id : node.items) {
          if (supports_nest(id, spos, sneg) && magnitudes_dominated(store_.vec(id), s, coords_)) return true;
        }
        continue;
      }
      const int sg = s[coords_[node.depth]].sign();
      if (node.child[1] >= 0) stack_.push_back(static_cast<std::size_t>(node.child[1]));
      if (sg > 0 && node.child[2] >= 0) stack_.push_back(static_cast<std::size_t>(node.child[2]));
      if (sg < 0 && node.child[0] >= 0) stack_.push_back(static_cast<std::size_t>(node.child[0]));
    }
    return false;
  }

 private:
  static constexpr std::size_t kLeafCapacity = 16;

  struct Node {
    std::size_t depth = 0;
    bool leaf = true;
    int child[3] = {-1, -1, -1};
    std::vector<std::size_t> items;
  };

  int slot(std::size_t id, std::size_t depth) const { return store_.vec(id)[coords_[depth]].sign() + 1; }

  std::size_t child_of(std::size_t node, int s) {
    if (nodes_[node].child[s] < 0) {
      Node fresh;
      fresh.depth = nodes_[node].depth + 1;
      nodes_.push_back(std::move(fresh));
      nodes_[node].child[s] = static_cast<int>(nodes_.size() - 1);
    }
    return static_cast<std::size_t>(nodes_[node].child[s]);
  }

  std::size_t descend(std::size_t node, std::size_t id) {
    while (!nodes_[node].leaf) node = child_of(node, slot(id, nodes_[node].depth));
    return node;
  }

  void split(std::size_t node) {
    std::vector<std::size_t> items = std::move(nodes_[node].items);
    nodes_[node].items.clear();
    nodes_[node].leaf = false;
    for (std::size_t id : items) {
      const std::size_t c = child_of(node, slot(id, nodes_[node].depth));
      nodes_[c].items.push_back(id);
    }
  }

  bool supports_nest(std::size_t id, const Mask& spos, const Mask& sneg) const {
    const auto *p = store_.pos(id), *n = store_.neg(id);
    for (std::size_t k = 0; k < store_.words(); ++k) {
      if (((p[k] & ~spos[k]) | (n[k] & ~sneg[k])) & mask_[k]) return false;
    }
    return true;
  }

  const ElementStore& store_;
  std::vector<std::size_t> coords_;
  Mask mask_;
  std::vector<Node> nodes_;
  mutable std::vector<std::size_t> stack_;
};

Integer norm_on(const IntVector& v, const std::vector<std::size_t>& coords) {
  Integer out;
  for (std::size_t c : coords) {
    if (!v[c].is_zero()) out += v[c].abs();
  }
  return out;
}

struct Completion {
  const Budget& budget;
  const Deadline& deadline;
  std::size_t ticks = 0;

  void tick(std::string_view what) {
    if ((++ticks & 0xfff) == 0) deadline.check(what);
  }
};

// Plain critical-pair completion on `coords`. On return the store has the
// positive sum property with respect to ⊑ on `coords` and holds exactly the
// minimal elements.
ElementStore complete_on(ElementStore store, const std::vector<std::size_t>& coords, const Mask& mask,
                         Completion& ctx) {
  SupportTree tree(store, coords, mask);
  for (std::size_t id = 0; id < store.size(); ++id) tree.insert(id);

  std::deque<IntVector> pending;
  auto enqueue_pairs = [&](std::size_t id) {
    for (std::size_t other = 0; other < store.size(); ++other) {
      if (other == id || other == store.negation(id)) continue;
      if (sign_compatible(store, id, other, mask)) continue;
      pending.push_back(store.vec(id) + store.vec(other));
    }
  };
  for (std::size_t id = 0; id < store.size(); ++id) enqueue_pairs(id);

  Mask spos, sneg;
  while (!pending.empty()) {
    IntVector s = std::move(pending.front());
    pending.pop_front();
    ctx.tick("Graver completion");
    // normal form: subtract stored elements conformally below s until none is left
    bool reduced = true;
    while (reduced && !s.is_zero()) {
      reduced = false;
      store.signs_of(s, spos, sneg);
      for (std::size_t id = 0; id < store.size(); ++id) {
        const IntVector& h = store.vec(id);
        bool nest = true;
        for (std::size_t k = 0; k < store.words() && nest; ++k) {
          nest = (((store.pos(id)[k] & ~spos[k]) | (store.neg(id)[k] & ~sneg[k])) & mask[k]) == 0;
        }
        if (nest && magnitudes_dominated(h, s, coords)) {
          s -= h;
          reduced = true;
          break;
        }
      }
    }
    if (s.is_zero() || norm_on(s, coords).is_zero()) continue;
    const std::size_t a = store.add_pair(std::move(s));
    check_element_budget(ctx.budget, store.size() / 2, "Graver completion");
    tree.insert(a);
    tree.insert(a + 1);
    enqueue_pairs(a);
    enqueue_pairs(a + 1);
  }

  // keep the ⊑-minimal elements only
  ElementStore minimal(store.dimension());
  std::set<IntVector> seen;
  for (std::size_t id = 0; id < store.size(); ++id) {
    const IntVector& v = store.vec(id);
    const IntVector rep = canonical_representative(v);
    if (rep != v || seen.contains(rep)) continue;
    bool dominated = false;
    for (std::size_t other = 0; other < store.size() && !dominated; ++other) {
      const IntVector& h = store.vec(other);
      if (h == v) continue;
      bool nest = true;
      for (std::size_t c : coords) {
        if (h[c].is_zero()) continue;
        if (h[c].sign() != v[c].sign() || compare_abs(h[c], v[c]) > 0) {
          nest = false;
          break;
        }
      }
      dominated = nest;
    }
    if (!dominated) {
      seen.insert(rep);
      minimal.add_pair(rep);
    }
  }
  return minimal;
}

// Extends a store that is ⊑-minimal with the positive sum property on `sigma`
// to one with the same properties on sigma ∪ {j}. Critical pairs are u + w
// with u_j > 0 > w_j and u, w sign-compatible on sigma, processed in increasing
// sigma-norm; a sum is new exactly when no stored element is ⊑ it.
void lift_coordinate(ElementStore& store, std::vector<std::size_t>& sigma, Mask& sigma_mask, std::size_t j,
                     Completion& ctx) {
  std::vector<std::size_t> coords = sigma;
  coords.push_back(j);
  Mask coord_mask = sigma_mask;
  set_bit(coord_mask, j);

  SupportTree tree(store, coords, coord_mask);
  std::map<Integer, std::vector<std::size_t>> positive, negative;
  auto file = [&](std::size_t id, const Integer& norm) {
    tree.insert(id);
    const int s = store.vec(id)[j].sign();
    if (s > 0) positive[norm].push_back(id);
    if (s < 0) negative[norm].push_back(id);
  };
  for (std::size_t id = 0; id < store.size(); ++id) file(id, norm_on(store.vec(id), sigma));

  Integer level;
  Mask spos, sneg;
  while (true) {
    std::optional<Integer> next;
    for (const auto& [a, ids] : positive) {
      auto it = negative.upper_bound(level - a);
      if (it == negative.end()) continue;
      Integer candidate = a + it->first;
      if (!next || candidate < *next) next = std::move(candidate);
    }
    if (!next) break;
    level = *next;

    for (auto pit = positive.begin(); pit != positive.end() && pit->first < level; ++pit) {
      auto nit = negative.find(level - pit->first);
      if (nit == negative.end()) continue;
      // Buckets at norms below `level` are not modified while this level runs.
      const std::vector<std::size_t>& ups = pit->second;
      const std::vector<std::size_t>& downs = nit->second;
      for (std::size_t u : ups) {
        for (std::size_t w : downs) {
          // (u, w) and (-w, -u) give negated sums; handle one of them.
          if (u >= store.negation(w)) continue;
          if (!sign_compatible(store, u, w, sigma_mask)) continue;
          ctx.tick("Graver lifting");
          IntVector s = store.vec(u) + store.vec(w);
          store.signs_of(s, spos, sneg);
          if (tree.has_leq(s, spos, sneg)) continue;
          const std::size_t a = store.add_pair(std::move(s));
          check_element_budget(ctx.budget, store.size() / 2, "Graver lifting");
          file(a, level);
          file(a + 1, level);
        }
      }
    }
  }
  sigma = std::move(coords);
  sigma_mask = std::move(coord_mask);
}

// Reduces the kernel basis so that a set of pivot columns carries an
// echelon structure. Returns the pivots and whether every pivot is ±1, in
// which case the basis restricted to the pivots is the identity.
std::pair<std::vector<std::size_t>, bool> choose_pivots(std::vector<IntVector>& rows) {
  const std::size_t k = rows.size();
  const std::size_t n = rows.front().size();
  std::vector<bool> used(n, false);
  std::vector<std::size_t> pivots;
  bool unimodular = true;
  for (std::size_t r = 0; r < k; ++r) {
    std::size_t pr = k, pc = n;
    for (std::size_t c = 0; c < n && pc == n; ++c) {
      if (used[c]) continue;
      for (std::size_t i = r; i < k; ++i) {
        if (rows[i][c] == 1 || rows[i][c] == -1) {
          pr = i;
          pc = c;
          break;
        }
      }
    }
    if (pc == n) {
      unimodular = false;
      for (std::size_t c = 0; c < n && pc == n; ++c) {
        if (used[c]) continue;
        for (std::size_t i = r; i < k; ++i) {
          if (!rows[i][c].is_zero()) {
            pc = c;
            break;
          }
        }
      }
      // Euclid on column pc over rows r..k-1
      while (true) {
        pr = k;
        for (std::size_t i = r; i < k; ++i) {
          if (rows[i][pc].is_zero()) continue;
          if (pr == k || compare_abs(rows[i][pc], rows[pr][pc]) < 0) pr = i;
        }
        std::swap(rows[r], rows[pr]);
        bool cleared = true;
        for (std::size_t i = r + 1; i < k; ++i) {
          if (rows[i][pc].is_zero()) continue;
          rows[i].add_scaled(-trunc_div(rows[i][pc], rows[r][pc]), rows[r]);
          if (!rows[i][pc].is_zero()) cleared = false;
        }
        if (cleared) break;
      }
      if (rows[r][pc].sign() < 0) rows[r] = -rows[r];
    } else {
      std::swap(rows[r], rows[pr]);
      if (rows[r][pc].sign() < 0) rows[r] = -rows[r];
      for (std::size_t i = 0; i < k; ++i) {
        if (i != r && !rows[i][pc].is_zero()) rows[i].add_scaled(-rows[i][pc], rows[r]);
      }
    }
    used[pc] = true;
    pivots.push_back(pc);
  }
  return {pivots, unimodular};
}

std::vector<IntVector> representatives(const ElementStore& store) {
  std::vector<IntVector> out;
  for (std::size_t id = 0; id < store.size(); ++id) {
    const IntVector& v = store.vec(id);
    if (v[v.first_nonzero()].sign() > 0) out.push_back(v);
  }
  return out;
}

}  // namespace

GraverBasis graver_basis(const IntMatrix& a, const GraverOptions& options) {
  if (options.cache) {
    if (const GraverBasis* hit = options.cache->find_basis(a)) return *hit;
  }
  const std::size_t n = a.cols();
  const std::uint64_t fp = a.fingerprint();
  std::vector<IntVector> basis = n == 0 ? std::vector<IntVector>{} : integer_kernel(a);
  if (basis.empty()) return GraverBasis(n, {}, fp);

  Deadline deadline(options.budget);
  Completion ctx{options.budget, deadline};
  ElementStore store(n);

  if (options.algorithm == GraverAlgorithm::Completion) {
    for (auto& b : basis) store.add_pair(std::move(b));
    std::vector<std::size_t> all(n);
    Mask mask((n + 63) / 64, 0);
    for (std::size_t i = 0; i < n; ++i) {
      all[i] = i;
      set_bit(mask, i);
    }
    store = complete_on(std::move(store), all, mask, ctx);
  } else {
    auto [pivots, unimodular] = choose_pivots(basis);
    for (auto& b : basis) store.add_pair(std::move(b));
    Mask sigma_mask((n + 63) / 64, 0);
    for (std::size_t c : pivots) set_bit(sigma_mask, c);
    std::vector<std::size_t> sigma = pivots;
    if (!unimodular) store = complete_on(std::move(store), sigma, sigma_mask, ctx);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_pivot[j]) lift_coordinate(store, sigma, sigma_mask, j, ctx);
    }
  }

  GraverBasis result(n, representatives(store), fp);
  if (options.cache) options.cache->store_basis(a, result);
  return result;
}

// ---------------------------------------------------------------- n-fold

std::size_t graver_complexity(const Bimatrix& a, const GraverOptions& options) {
  if (options.cache) {
    if (auto hit = options.cache->find_complexity(a)) return *hit;
  }
  const GraverBasis bottom = graver_basis(a.bottom(), options);
  std::size_t value = 0;
  if (!bottom.empty()) {
    // One column A1*g per antipodal pair. Using both signs would add only the
    // elements (e_i, e_i) of norm 2 for nonzero columns, plus sign splits of
    // the elements found here, which have the same 1-norm.
    std::vector<IntVector> columns;
    bool some_nonzero = false;
    for (const auto& g : bottom.elements()) {
      columns.push_back(a.top() * g);
      if (!columns.back().is_zero()) some_nonzero = true;
    }
    const GraverBasis lifted = graver_basis(IntMatrix::from_columns(a.r(), columns), options);
    for (const auto& h : lifted.elements()) {
      value = std::max(value, static_cast<std::size_t>(h.l1_norm().to_int64()));
    }
    if (some_nonzero) value = std::max<std::size_t>(value, 2);
  }
  if (options.cache) options.cache->store_complexity(a, value);
  return value;
}

namespace {

// Calls visit(positions) for every strictly increasing choice of `k` block
// positions out of `n`.
template <typename Visit>
void for_each_placement(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> pos(k);
  for (std::size_t i = 0; i < k; ++i) pos[i] = i;
  while (true) {
    visit(pos);
    std::size_t i = k;
    while (i > 0 && pos[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pos[i - 1];
    for (std::size_t m = i; m < k; ++m) pos[m] = pos[m - 1] + 1;
  }
}

// Element cap for the complexity computation done on behalf of nfold_graver.
constexpr std::size_t kComplexityEffort = 20000;

// The same options with the time already spent since `start` deducted.
GraverOptions remaining(const GraverOptions& options, std::chrono::steady_clock::time_point start) {
  GraverOptions out = options;
  if (options.budget.max_time) {
    const auto spent =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    out.budget.max_time = spent >= *options.budget.max_time ? std::chrono::milliseconds(0)
                                                             : *options.budget.max_time - spent;
  }
  return out;
}

// The complexity only decides whether lifting applies. When computing it is
// itself out of reach (already for K_{3,4}) the caller completes A^(n)
// directly, which yields the same basis.
std::optional<std::size_t> complexity_if_cheap(const Bimatrix& a, const NFoldGraverOptions& options,
                                               const Deadline& deadline) {
  if (options.known_complexity) return options.known_complexity;
  GraverOptions probe = options;
  const bool user_cap = options.budget.max_elements && *options.budget.max_elements <= kComplexityEffort;
  if (!user_cap) probe.budget.max_elements = kComplexityEffort;
  try {
    return graver_complexity(a, probe);
  } catch (const BudgetExceeded&) {
    if (user_cap || deadline.expired()) throw;
    return std::nullopt;
  }
}

}  // namespace

GraverBasis nfold_graver(const Bimatrix& a, std::size_t n, const NFoldGraverOptions& options) {
  if (n == 0) throw std::invalid_argument("nfold_graver: n must be positive");
  const std::size_t t = a.t();
  if (!options.lift_by_complexity || t == 0) return graver_basis(nfold_product(a, n), options);

  const auto start = std::chrono::steady_clock::now();
  Deadline deadline(options.budget);
  const std::optional<std::size_t> complexity = complexity_if_cheap(a, options, deadline);
  const IntMatrix product = nfold_product(a, n);
  if (!complexity) return graver_basis(product, remaining(options, start));
  const std::size_t g = *complexity;
  if (g == 0) return GraverBasis(n * t, {}, product.fingerprint());
  if (n <= g) return graver_basis(product, remaining(options, start));
  if (options.cache) {
    if (const GraverBasis* hit = options.cache->find_basis(product)) return *hit;
  }

  const GraverBasis base = graver_basis(nfold_product(a, g), remaining(options, start));
  std::set<IntVector> lifted;
  for (const auto& e : base.elements()) {
    std::vector<IntVector> blocks;
    for (std::size_t k = 0; k < g; ++k) {
      IntVector b = e.slice(k * t, t);
      if (!b.is_zero()) blocks.push_back(std::move(b));
    }
    for_each_placement(n, blocks.size(), [&](const std::vector<std::size_t>& pos) {
      IntVector out(n * t);
      for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t c = 0; c < t; ++c) out[pos[i] * t + c] = blocks[i][c];
      }
      lifted.insert(std::move(out));
      check_element_budget(options.budget, lifted.size(), "n-fold Graver lifting");
    });
    deadline.check("n-fold Graver lifting");
  }
  GraverBasis result(n * t, std::vector<IntVector>(lifted.begin(), lifted.end()), product.fingerprint());
  if (options.cache) options.cache->store_basis(product, result);
  return result;
}

IntMatrix assemble_extended(const Bimatrix& a, const Bimatrix& w, std::size_t n) {
  if (a.t() != w.t()) throw DimensionError("assemble_extended: A and W have different column counts");
  const IntMatrix an = nfold_product(a, n);
  const IntMatrix wn = nfold_product(w, n);
  const std::size_t extra = wn.rows();
  IntMatrix out(an.rows() + wn.rows(), an.cols() + extra);
  out.set_block(0, 0, an);
  out.set_block(an.rows(), 0, wn);
  out.set_block(an.rows(), an.cols(), IntMatrix::identity(extra));
  return out;
}

GraverBasis extended_nfold_graver(const Bimatrix& a, const Bimatrix& w, std::size_t n, ExtendedGraverRoute route,
                                  const NFoldGraverOptions& options) {
  if (n == 0) throw std::invalid_argument("extended_nfold_graver: n must be positive");
  if (a.t() != w.t()) throw DimensionError("extended_nfold_graver: A and W have different column counts");
  const IntMatrix assembled = assemble_extended(a, w, n);
  if (route == ExtendedGraverRoute::Assembled) return graver_basis(assembled, options);

  const std::size_t r = a.r(), s = a.s(), t = a.t(), p = w.r(), q = w.s();
  const std::size_t width = t + p + q;
  // D1 = (A1 0 0 ; W1 I_p 0), D2 = (A2 0 0 ; W2 0 I_q)
  IntMatrix d1(r + p, width), d2(s + q, width);
  d1.set_block(0, 0, a.top());
  d1.set_block(r, 0, w.top());
  d1.set_block(r, t, IntMatrix::identity(p));
  d2.set_block(0, 0, a.bottom());
  d2.set_block(s, 0, w.bottom());
  d2.set_block(s, t + p, IntMatrix::identity(q));
  const GraverBasis dn = nfold_graver(Bimatrix(std::move(d1), std::move(d2)), n, options);

  // D^(n) block k is (x^k, y^k, z^k). Keep elements with y^2..y^n = 0 and
  // reorder to (x^1..x^n, y^1, z^1..z^n).
  std::vector<IntVector> kept;
  for (const auto& g : dn.elements()) {
    bool keep = true;
    for (std::size_t k = 1; k < n && keep; ++k) {
      for (std::size_t c = 0; c < p && keep; ++c) keep = g[k * width + t + c].is_zero();
    }
    if (!keep) continue;
    IntVector out(n * t + p + n * q);
    std::size_t at = 0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t c = 0; c < t; ++c) out[at++] = g[k * width + c];
    }
    for (std::size_t c = 0; c < p; ++c) out[at++] = g[t + c];
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t c = 0; c < q; ++c) out[at++] = g[k * width + t + p + c];
    }
    kept.push_back(std::move(out));
  }
  return GraverBasis(assembled.cols(), std::move(kept), assembled.fingerprint());
}

}  // namespace nfold
