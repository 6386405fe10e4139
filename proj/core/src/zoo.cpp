#include "blv/zoo.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace blv {

long long factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: n is negative");
  if (n > 20) throw std::overflow_error("factorial: 64-bit overflow for n > 20");
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::vector<int> unrank_permutation(int n, long long r) {
  if (n < 1 || r < 0 || r >= factorial(n)) throw std::invalid_argument("unrank: rank out of range");
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) {
    long long f = factorial(n - 1 - i);
    int idx = static_cast<int>(r / f);
    r %= f;
    perm[i] = pool[idx];
    pool.erase(pool.begin() + idx);
  }
  return perm;
}

long long rank_permutation(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  long long r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += perm[j] < perm[i];
    r += smaller * factorial(n - 1 - i);
  }
  return r;
}

namespace {

std::string word_label(std::span<const int> values) {
  std::string s;
  for (int v : values) s += static_cast<char>('1' + v);
  return s;
}

void check_positions(std::span<const int> positions, int n, const char* what) {
  if (positions.empty()) throw std::invalid_argument(std::string(what) + ": empty position set");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] < 0 || positions[i] >= n)
      throw std::invalid_argument(std::string(what) + ": position " +
                                  std::to_string(positions[i]) + " out of range");
    if (i > 0 && positions[i] <= positions[i - 1])
      throw std::invalid_argument(std::string(what) + ": positions must be strictly increasing");
  }
}

std::string joined(std::span<const int> v, char sep, int offset = 0) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i] + offset);
  }
  return s;
}

// Assigns dense indices to the distinct keys in lexicographic order and
// returns (labeling, ordered keys).
std::pair<std::vector<int>, std::vector<std::vector<int>>> index_keys(
    std::vector<std::vector<int>> keys) {
  std::vector<std::vector<int>> uniq = keys;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<int> labeling(keys.size());
  for (std::size_t x = 0; x < keys.size(); ++x) {
    auto it = std::lower_bound(uniq.begin(), uniq.end(), keys[x]);
    labeling[x] = static_cast<int>(it - uniq.begin());
  }
  return {std::move(labeling), std::move(uniq)};
}

}  // namespace

SymmetricGroup::SymmetricGroup(int n) : n_(n) {
  if (n < 2 || n > 8) throw std::invalid_argument("symmetric group walk supports 2 <= n <= 8");
  const long long N = factorial(n);
  perms_.reserve(N);
  std::vector<std::string> labels;
  labels.reserve(N);
  for (long long r = 0; r < N; ++r) {
    perms_.push_back(unrank_permutation(n, r));
    labels.push_back(word_label(perms_.back()));
  }

  const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
  const Rational w = frac(1, pairs);
  const double wd = to_double(w);
  std::vector<std::vector<KernelEntry>> rows(N);
  std::vector<int> scratch(n);
  for (long long x = 0; x < N; ++x) {
    rows[x].reserve(pairs);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        // Relabel values a <-> b.
        for (int j = 0; j < n; ++j) {
          int v = perms_[x][j];
          scratch[j] = v == a ? b : v == b ? a : v;
        }
        rows[x].push_back({static_cast<int>(rank_permutation(scratch)), w, wd});
      }
  }
  std::vector<Rational> mu(N, frac(1, N));
  model_ = Model::from_rows(std::move(labels), std::move(rows), std::move(mu));
}

FactorMap SymmetricGroup::restriction_map(std::span<const int> positions) const {
  check_positions(positions, n_, "restriction_map");
  std::vector<std::vector<int>> keys(perms_.size());
  for (std::size_t x = 0; x < perms_.size(); ++x)
    for (int i : positions) keys[x].push_back(perms_[x][i]);
  auto [labeling, uniq] = index_keys(std::move(keys));
  std::vector<std::string> block_labels;
  block_labels.reserve(uniq.size());
  for (const auto& key : uniq) block_labels.push_back(word_label(key));
  std::vector<int> pos1(positions.begin(), positions.end());
  return make_factor_map(model_, "restrict(" + joined(pos1, ',', 1) + ")", std::move(labeling),
                         std::move(block_labels));
}

FactorMap SymmetricGroup::image_map(std::span<const int> positions) const {
  check_positions(positions, n_, "image_map");
  std::vector<std::vector<int>> keys(perms_.size());
  for (std::size_t x = 0; x < perms_.size(); ++x) {
    for (int i : positions) keys[x].push_back(perms_[x][i]);
    std::sort(keys[x].begin(), keys[x].end());
  }
  auto [labeling, uniq] = index_keys(std::move(keys));
  std::vector<std::string> block_labels;
  block_labels.reserve(uniq.size());
  for (const auto& key : uniq) block_labels.push_back(word_label(key));
  std::vector<int> pos1(positions.begin(), positions.end());
  return make_factor_map(model_, "image(" + joined(pos1, ',', 1) + ")", std::move(labeling),
                         std::move(block_labels));
}

std::vector<FactorMap> SymmetricGroup::coordinate_maps() const {
  std::vector<FactorMap> maps;
  maps.reserve(n_);
  for (int i = 0; i < n_; ++i) {
    int pos[1] = {i};
    FactorMap m = restriction_map(pos);
    m.name = "x(" + std::to_string(i + 1) + ")";
    maps.push_back(std::move(m));
  }
  return maps;
}

FactorMap SymmetricGroup::hypergeometric_map(std::span<const int> interval_sizes, int K) const {
  if (interval_sizes.empty()) throw std::invalid_argument("hypergeometric_map: no intervals");
  int total = 0;
  for (int s : interval_sizes) {
    if (s <= 0) throw std::invalid_argument("hypergeometric_map: interval sizes must be positive");
    total += s;
  }
  if (total != n_)
    throw std::invalid_argument("hypergeometric_map: interval sizes must partition the " +
                                std::to_string(n_) + " positions");
  if (K < 0 || K > n_) throw std::invalid_argument("hypergeometric_map: K out of range");

  const int d = static_cast<int>(interval_sizes.size());
  std::vector<int> interval_of(n_);
  {
    int pos = 0;
    for (int i = 0; i < d; ++i)
      for (int s = 0; s < interval_sizes[i]; ++s) interval_of[pos++] = i;
  }

  std::vector<std::vector<int>> keys(perms_.size());
  for (std::size_t x = 0; x < perms_.size(); ++x) {
    std::vector<int> counts(d, 0);
    for (int j = 0; j < n_; ++j)
      if (perms_[x][j] < K) ++counts[interval_of[j]];
    keys[x] = std::move(counts);
  }
  auto [labeling, uniq] = index_keys(std::move(keys));
  std::vector<std::string> block_labels;
  block_labels.reserve(uniq.size());
  for (const auto& key : uniq) block_labels.push_back(joined(key, ','));
  std::vector<int> sizes(interval_sizes.begin(), interval_sizes.end());
  return make_factor_map(model_,
                         "counts(" + joined(sizes, ',') + ";K=" + std::to_string(K) + ")",
                         std::move(labeling), std::move(block_labels));
}

Slice::Slice(int n, int k) : n_(n), k_(k) {
  if (n < 2 || n > 60 || k < 1 || k > n - 1)
    throw std::invalid_argument("slice walk needs 2 <= n <= 60 and 1 <= k <= n-1");
  long long count = binomial(n, k);
  if (count > 50000) throw std::invalid_argument("slice walk limited to 50000 states");

  masks_.reserve(count);
  std::uint64_t v = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (v < limit) {
    masks_.push_back(v);
    // Gosper's hack: next mask with the same popcount.
    std::uint64_t c = v & (~v + 1);
    std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }

  std::vector<std::string> labels;
  labels.reserve(masks_.size());
  for (std::uint64_t m : masks_) {
    std::string s(n, '0');
    for (int j = 0; j < n; ++j)
      if (m >> j & 1) s[j] = '1';
    labels.push_back(std::move(s));
  }

  const Rational w = frac(1, static_cast<long long>(k) * (n - k));
  const double wd = to_double(w);
  std::vector<std::vector<KernelEntry>> rows(masks_.size());
  for (std::size_t x = 0; x < masks_.size(); ++x) {
    rows[x].reserve(static_cast<std::size_t>(k) * (n - k));
    for (int i = 0; i < n; ++i) {
      if (!(masks_[x] >> i & 1)) continue;
      for (int j = 0; j < n; ++j) {
        if (masks_[x] >> j & 1) continue;
        std::uint64_t y = (masks_[x] & ~(std::uint64_t{1} << i)) | (std::uint64_t{1} << j);
        rows[x].push_back({state_of_mask_unchecked(y), w, wd});
      }
    }
  }
  std::vector<Rational> mu(masks_.size(), frac(1, count));
  model_ = Model::from_rows(std::move(labels), std::move(rows), std::move(mu));
}

int Slice::state_of_mask_unchecked(std::uint64_t mask) const {
  auto it = std::lower_bound(masks_.begin(), masks_.end(), mask);
  if (it != masks_.end() && *it == mask) return static_cast<int>(it - masks_.begin());
  return -1;
}

int Slice::state_of_mask(std::uint64_t mask) const {
  int idx = state_of_mask_unchecked(mask);
  if (idx < 0) throw std::invalid_argument("mask is not a state of this slice");
  return idx;
}

FactorMap Slice::coordinate_map(int position) const {
  if (position < 0 || position >= n_)
    throw std::invalid_argument("coordinate_map: position out of range");
  std::vector<int> labeling(masks_.size());
  for (std::size_t x = 0; x < masks_.size(); ++x)
    labeling[x] = static_cast<int>(masks_[x] >> position & 1);
  return make_factor_map(model_, "x(" + std::to_string(position + 1) + ")", std::move(labeling),
                         {"0", "1"});
}

std::vector<FactorMap> Slice::coordinate_maps() const {
  std::vector<FactorMap> maps;
  maps.reserve(n_);
  for (int j = 0; j < n_; ++j) maps.push_back(coordinate_map(j));
  return maps;
}

Product::Product(std::vector<std::vector<Rational>> factors) : factors_(std::move(factors)) {
  const int d = static_cast<int>(factors_.size());
  if (d < 1 || d > 63) throw std::invalid_argument("product chain needs 1 to 63 coordinates");
  long long total = 1;
  for (const auto& nu : factors_) {
    if (nu.empty()) throw std::invalid_argument("factor law has no atoms");
    Rational sum(0);
    for (const auto& p : nu) {
      if (p <= 0) throw std::invalid_argument("factor laws must be strictly positive");
      sum += p;
    }
    if (sum != 1) throw std::invalid_argument("factor law must sum to 1, got " + to_string(sum));
    sizes_.push_back(static_cast<int>(nu.size()));
    total *= sizes_.back();
    if (total > 100000) throw std::invalid_argument("product chain limited to 100000 states");
  }

  std::vector<std::string> labels(total);
  std::vector<Rational> mu(total);
  std::vector<std::vector<KernelEntry>> rows(total);
  std::vector<int> v(d, 0);
  for (long long x = 0; x < total; ++x) {
    labels[x] = joined(v, ',');
    Rational mass(1);
    for (int j = 0; j < d; ++j) mass *= factors_[j][v[j]];
    mu[x] = mass;

    Rational diag(0);
    for (int j = 0; j < d; ++j) diag += factors_[j][v[j]];
    diag /= d;
    rows[x].push_back({static_cast<int>(x), diag, to_double(diag)});
    // Stride of coordinate j in the mixed-radix index (coordinate 0 is most
    // significant).
    long long stride = total;
    for (int j = 0; j < d; ++j) {
      stride /= sizes_[j];
      for (int val = 0; val < sizes_[j]; ++val) {
        if (val == v[j]) continue;
        long long y = x + (static_cast<long long>(val) - v[j]) * stride;
        Rational p = factors_[j][val] / d;
        rows[x].push_back({static_cast<int>(y), p, to_double(p)});
      }
    }

    for (int j = d - 1; j >= 0; --j) {
      if (++v[j] < sizes_[j]) break;
      v[j] = 0;
    }
  }
  model_ = Model::from_rows(std::move(labels), std::move(rows), std::move(mu));
}

int Product::coordinate_value(int state, int j) const {
  long long stride = 1;
  for (int i = n_coordinates() - 1; i > j; --i) stride *= sizes_[i];
  return static_cast<int>(state / stride % sizes_[j]);
}

FactorMap Product::projection_map(std::span<const int> coords) const {
  check_positions(coords, n_coordinates(), "projection_map");
  long long blocks = 1;
  for (int j : coords) blocks *= sizes_[j];
  std::vector<int> labeling(model_.size());
  for (int x = 0; x < model_.size(); ++x) {
    long long b = 0;
    for (int j : coords) b = b * sizes_[j] + coordinate_value(x, j);
    labeling[x] = static_cast<int>(b);
  }
  std::vector<std::string> block_labels(blocks);
  {
    std::vector<int> v(coords.size(), 0);
    for (long long b = 0; b < blocks; ++b) {
      block_labels[b] = joined(v, ',');
      for (int j = static_cast<int>(coords.size()) - 1; j >= 0; --j) {
        if (++v[j] < sizes_[coords[j]]) break;
        v[j] = 0;
      }
    }
  }
  std::vector<int> c1(coords.begin(), coords.end());
  return make_factor_map(model_, "proj(" + joined(c1, ',', 1) + ")", std::move(labeling),
                         std::move(block_labels));
}

Product hypercube(int d) {
  std::vector<std::vector<Rational>> factors(d, {frac(1, 2), frac(1, 2)});
  return Product(std::move(factors));
}

Cayley::Cayley(std::vector<std::vector<int>> table, std::vector<int> generators,
               std::vector<std::string> element_labels)
    : table_(std::move(table)), generators_(std::move(generators)) {
  const int n = static_cast<int>(table_.size());
  if (n < 1 || n > 512) throw std::invalid_argument("group order must be between 1 and 512");
  for (const auto& row : table_) {
    if (row.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("multiplication table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("table entry out of range");
  }

  // Latin square property.
  for (int a = 0; a < n; ++a) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (int b = 0; b < n; ++b) {
      if (seen_row[table_[a][b]]++) throw std::invalid_argument("table row has repeats");
      if (seen_col[table_[b][a]]++) throw std::invalid_argument("table column has repeats");
    }
  }

  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = table_[e][b] == b && table_[b][e] == b;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw std::invalid_argument("table has no identity element");

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw std::invalid_argument("table is not associative");

  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_) {
        inverse_[a] = b;
        break;
      }
  for (int a = 0; a < n; ++a)
    if (inverse_[a] < 0 || table_[inverse_[a]][a] != identity_)
      throw std::invalid_argument("table has an element without a two-sided inverse");

  if (generators_.empty()) throw std::invalid_argument("generator set is empty");
  {
    std::vector<char> seen(n, 0);
    for (int z : generators_) {
      if (z < 0 || z >= n) throw std::invalid_argument("generator out of range");
      if (seen[z]++) throw std::invalid_argument("generator listed twice");
    }
  }
  std::sort(generators_.begin(), generators_.end());

  std::vector<std::string> labels;
  if (element_labels.empty()) {
    labels.resize(n);
    for (int a = 0; a < n; ++a) labels[a] = std::to_string(a);
  } else {
    if (element_labels.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("expected one label per group element");
    labels = std::move(element_labels);
  }

  const Rational w = frac(1, static_cast<long long>(generators_.size()));
  const double wd = to_double(w);
  std::vector<std::vector<KernelEntry>> rows(n);
  for (int x = 0; x < n; ++x)
    for (int z : generators_) rows[x].push_back({table_[x][inverse_[z]], w, wd});
  std::vector<Rational> mu(n, frac(1, n));
  model_ = Model::from_rows(std::move(labels), std::move(rows), std::move(mu));
  if (!model_.ergodic())
    throw std::invalid_argument("generators do not generate the group: kernel is reducible");
}

FactorMap Cayley::hom_map(std::string name, std::vector<int> labeling) const {
  const int n = order();
  if (labeling.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("hom_map: labeling length mismatch");

  std::vector<int> values = labeling;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const int m = static_cast<int>(values.size());
  std::vector<int> compact(n);
  std::vector<std::string> block_labels(m);
  for (int x = 0; x < n; ++x) {
    auto it = std::lower_bound(values.begin(), values.end(), labeling[x]);
    compact[x] = static_cast<int>(it - values.begin());
  }
  for (int b = 0; b < m; ++b) block_labels[b] = std::to_string(values[b]);

  // The label of a product must be a function of the labels of the factors.
  std::vector<std::vector<int>> prod(m, std::vector<int>(m, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int& slot = prod[compact[a]][compact[b]];
      int got = compact[table_[a][b]];
      if (slot < 0)
        slot = got;
      else if (slot != got)
        throw std::invalid_argument("hom_map '" + name +
                                    "': labeling does not factor through a group quotient");
    }
  return make_factor_map(model_, std::move(name), std::move(compact), std::move(block_labels));
}

std::vector<std::vector<int>> cyclic_group_table(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return table;
}

}  // namespace blv
