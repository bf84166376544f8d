#include "drbench/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace drbench {

using nlohmann::json;

namespace {

// Independent stream per (seed, purpose, index).
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

void require_positive(std::size_t v, const char* what) {
  if (v == 0) throw std::invalid_argument(std::string(what) + " must be positive");
}

std::vector<std::string> numbered_names(const char* prefix, std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < count; ++c) names.push_back(prefix + std::to_string(c));
  return names;
}

// Wraps an array and logs every mutation.
class TrackedArray {
 public:
  explicit TrackedArray(std::vector<double> v) : a_(std::move(v)) {}
  std::size_t size() const { return a_.size(); }
  double operator[](std::size_t i) const { return a_[i]; }
  void set(std::size_t i, double v) {
    a_[i] = v;
    ops_.push_back(SortOp{false, i, 0, v});
  }
  void swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a_[i], a_[j]);
    ops_.push_back(SortOp{true, i, j, 0.0});
  }
  std::vector<SortOp> take_ops() { return std::move(ops_); }

 private:
  std::vector<double> a_;
  std::vector<SortOp> ops_;
};

void bubble_sort(TrackedArray& a) {
  const std::size_t n = a.size();
  for (std::size_t end = n; end > 1; --end) {
    bool swapped = false;
    for (std::size_t i = 1; i < end; ++i) {
      if (a[i - 1] > a[i]) {
        a.swap(i - 1, i);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
}

// Adjacent-swap insertion: every mutation removes exactly one inversion.
void insertion_sort(TrackedArray& a) {
  for (std::size_t i = 1; i < a.size(); ++i)
    for (std::size_t j = i; j > 0 && a[j - 1] > a[j]; --j) a.swap(j - 1, j);
}

void selection_sort(TrackedArray& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t m = i;
    for (std::size_t j = i + 1; j < n; ++j)
      if (a[j] < a[m]) m = j;
    a.swap(i, m);
  }
}

void shell_sort(TrackedArray& a) {
  const std::size_t n = a.size();
  for (std::size_t gap = n / 2; gap > 0; gap /= 2) {
    for (std::size_t i = gap; i < n; ++i) {
      const double v = a[i];
      std::size_t j = i;
      while (j >= gap && a[j - gap] > v) {
        a.set(j, a[j - gap]);
        j -= gap;
      }
      if (j != i) a.set(j, v);
    }
  }
}

void comb_sort(TrackedArray& a) {
  const std::size_t n = a.size();
  std::size_t gap = n;
  bool sorted = false;
  while (!sorted) {
    gap = static_cast<std::size_t>(static_cast<double>(gap) / 1.3);
    if (gap <= 1) {
      gap = 1;
      sorted = true;
    }
    for (std::size_t i = 0; i + gap < n; ++i) {
      if (a[i] > a[i + gap]) {
        a.swap(i, i + gap);
        sorted = false;
      }
    }
  }
}

void quick_sort(TrackedArray& a, std::ptrdiff_t lo, std::ptrdiff_t hi) {
  while (lo < hi) {
    const double pivot = a[static_cast<std::size_t>(hi)];
    std::ptrdiff_t store = lo;
    for (std::ptrdiff_t i = lo; i < hi; ++i) {
      if (a[static_cast<std::size_t>(i)] < pivot) {
        a.swap(static_cast<std::size_t>(i), static_cast<std::size_t>(store));
        ++store;
      }
    }
    a.swap(static_cast<std::size_t>(store), static_cast<std::size_t>(hi));
    // Recurse on the smaller side to bound stack depth.
    if (store - lo < hi - store) {
      quick_sort(a, lo, store - 1);
      lo = store + 1;
    } else {
      quick_sort(a, store + 1, hi);
      hi = store - 1;
    }
  }
}

void merge_sort(TrackedArray& a, std::size_t lo, std::size_t hi, std::vector<double>& buf) {
  if (hi - lo < 2) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  merge_sort(a, lo, mid, buf);
  merge_sort(a, mid, hi, buf);
  buf.clear();
  std::size_t i = lo, j = mid;
  while (i < mid && j < hi) buf.push_back(a[j] < a[i] ? a[j++] : a[i++]);
  while (i < mid) buf.push_back(a[i++]);
  while (j < hi) buf.push_back(a[j++]);
  for (std::size_t k = 0; k < buf.size(); ++k)
    if (a[lo + k] != buf[k]) a.set(lo + k, buf[k]);
}

void sift_down(TrackedArray& a, std::size_t root, std::size_t end) {
  while (2 * root + 1 < end) {
    std::size_t child = 2 * root + 1;
    if (child + 1 < end && a[child] < a[child + 1]) ++child;
    if (a[root] >= a[child]) return;
    a.swap(root, child);
    root = child;
  }
}

void heap_sort(TrackedArray& a) {
  const std::size_t n = a.size();
  for (std::size_t start = n / 2; start-- > 0;) sift_down(a, start, n);
  for (std::size_t end = n; end > 1; --end) {
    a.swap(0, end - 1);
    sift_down(a, 0, end - 1);
  }
}

template <typename T>
T param_or(const json& params, const char* key, T fallback) {
  return params.contains(key) ? params.at(key).get<T>() : fallback;
}

void reject_unknown(const json& params, std::initializer_list<const char*> known) {
  if (params.is_null()) return;
  if (!params.is_object()) throw std::invalid_argument("generator params must be a JSON object");
  for (const auto& item : params.items()) {
    const bool ok = std::any_of(known.begin(), known.end(), [&](const char* k) { return item.key() == k; });
    if (!ok) throw std::invalid_argument("unknown generator parameter '" + item.key() + "'");
  }
}

}  // namespace

DynamicDataset gen_gaussians(std::uint64_t seed, const GaussiansParams& p) {
  require_positive(p.num_classes, "num_classes");
  require_positive(p.per_class, "per_class");
  require_positive(p.n, "n");
  require_positive(p.T, "T");
  const auto n = static_cast<Eigen::Index>(p.n);
  const std::size_t N = p.num_classes * p.per_class;

  auto center_rng = stream(seed, 1, 0);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Matrix centers(static_cast<Eigen::Index>(p.num_classes), n);
  for (Eigen::Index c = 0; c < centers.size(); ++c) centers.data()[c] = uniform(center_rng);

  // Point i draws every timestep from its own stream, so its sample is
  // reproducible on its own and shrinks toward the class center with sigma.
  DynamicDataset d;
  d.name = "gaussians";
  d.class_names = numbered_names("blob", p.num_classes);
  d.revisions.assign(p.T, Matrix(static_cast<Eigen::Index>(N), n));
  d.labels.resize(N);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t cls = i / p.per_class;
    d.labels[i] = static_cast<int>(cls);
    auto rng = stream(seed, 2, i);
    Eigen::RowVectorXd offset(n);
    for (std::size_t t = 0; t < p.T; ++t) {
      for (Eigen::Index j = 0; j < n; ++j) offset(j) = normal(rng);
      const double sigma = p.T == 1 ? 1.0 : 1.0 - 0.9 * static_cast<double>(t) / static_cast<double>(p.T - 1);
      d.revisions[t].row(static_cast<Eigen::Index>(i)) = centers.row(static_cast<Eigen::Index>(cls)) + sigma * offset;
    }
  }
  return d;
}

DynamicDataset gen_walk(std::uint64_t seed, const WalkParams& p) {
  require_positive(p.num_classes, "num_classes");
  require_positive(p.per_class, "per_class");
  require_positive(p.n, "n");
  require_positive(p.T, "T");
  const auto n = static_cast<Eigen::Index>(p.n);
  const std::size_t N = p.num_classes * p.per_class;

  auto dir_rng = stream(seed, 3, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix directions(static_cast<Eigen::Index>(p.num_classes), n);
  for (Eigen::Index c = 0; c < directions.rows(); ++c) {
    for (Eigen::Index j = 0; j < n; ++j) directions(c, j) = normal(dir_rng);
    directions.row(c).normalize();
  }

  // Small per-step jitter keeps displacements from being identical within a cluster.
  constexpr double kJitter = 0.1;
  DynamicDataset d;
  d.name = "walk";
  d.class_names = numbered_names("cluster", p.num_classes);
  d.revisions.assign(p.T, Matrix(static_cast<Eigen::Index>(N), n));
  d.labels.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t cls = i / p.per_class;
    d.labels[i] = static_cast<int>(cls);
    auto rng = stream(seed, 4, i);
    Eigen::RowVectorXd offset(n);
    for (Eigen::Index j = 0; j < n; ++j) offset(j) = p.noise * normal(rng);
    for (std::size_t t = 0; t < p.T; ++t) {
      // +1 at the start, -1 at the end: every center passes through the origin.
      const double s = p.T == 1 ? 1.0 : 1.0 - 2.0 * static_cast<double>(t) / static_cast<double>(p.T - 1);
      auto row = d.revisions[t].row(static_cast<Eigen::Index>(i));
      row = p.amplitude * s * directions.row(static_cast<Eigen::Index>(cls)) + offset;
      for (Eigen::Index j = 0; j < n; ++j) row(j) += kJitter * normal(rng);
    }
  }
  return d;
}

const std::vector<std::string>& sorting_algorithm_names() {
  static const std::vector<std::string> names = {"bubble", "insertion", "selection", "shell",
                                                 "comb",   "quick",     "merge",     "heap"};
  return names;
}

std::vector<SortOp> record_sort(std::size_t algorithm, std::vector<double> input) {
  TrackedArray a(std::move(input));
  const std::size_t n = a.size();
  switch (algorithm) {
    case 0: bubble_sort(a); break;
    case 1: insertion_sort(a); break;
    case 2: selection_sort(a); break;
    case 3: shell_sort(a); break;
    case 4: comb_sort(a); break;
    case 5: if (n > 1) quick_sort(a, 0, static_cast<std::ptrdiff_t>(n) - 1); break;
    case 6: {
      std::vector<double> buf;
      buf.reserve(n);
      merge_sort(a, 0, n, buf);
      break;
    }
    case 7: heap_sort(a); break;
    default: throw std::invalid_argument("unknown sorting algorithm index " + std::to_string(algorithm));
  }
  return a.take_ops();
}

std::vector<std::vector<double>> snapshot_states(const std::vector<double>& input, const std::vector<SortOp>& ops,
                                                 std::size_t T) {
  require_positive(T, "T");
  std::vector<std::vector<double>> states;
  states.reserve(T);
  std::vector<double> a = input;
  std::size_t applied = 0;
  const double W = static_cast<double>(ops.size());
  for (std::size_t s = 0; s < T; ++s) {
    const std::size_t target =
        T == 1 ? ops.size() : static_cast<std::size_t>(std::llround(W * static_cast<double>(s) / static_cast<double>(T - 1)));
    for (; applied < target; ++applied) {
      const SortOp& op = ops[applied];
      if (op.is_swap) std::swap(a[op.i], a[op.j]);
      else a[op.i] = op.value;
    }
    states.push_back(a);
  }
  return states;
}

DynamicDataset gen_sorts(std::uint64_t seed, const SortsParams& p) {
  require_positive(p.algorithms, "algorithms");
  require_positive(p.arrays_per_algorithm, "arrays_per_algorithm");
  require_positive(p.array_len, "array_len");
  require_positive(p.T, "T");
  const auto& names = sorting_algorithm_names();
  if (p.algorithms > names.size()) {
    throw std::invalid_argument("at most " + std::to_string(names.size()) + " sorting algorithms are available");
  }
  const std::size_t N = p.algorithms * p.arrays_per_algorithm;
  const auto n = static_cast<Eigen::Index>(p.array_len);

  DynamicDataset d;
  d.name = "sorts";
  d.class_names.assign(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(p.algorithms));
  d.revisions.assign(p.T, Matrix(static_cast<Eigen::Index>(N), n));
  d.labels.resize(N);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t alg = i / p.arrays_per_algorithm;
    d.labels[i] = static_cast<int>(alg);
    auto rng = stream(seed, 5, i);
    std::vector<double> input(p.array_len);
    for (double& v : input) v = uniform(rng);
    const auto states = snapshot_states(input, record_sort(alg, input), p.T);
    for (std::size_t t = 0; t < p.T; ++t)
      for (Eigen::Index j = 0; j < n; ++j) d.revisions[t](static_cast<Eigen::Index>(i), j) = states[t][static_cast<std::size_t>(j)];
  }
  return d;
}

DynamicDataset generate_by_name(std::string_view generator, std::uint64_t seed, const json& params) {
  if (generator == "gaussians") {
    reject_unknown(params, {"num_classes", "per_class", "n", "T"});
    GaussiansParams p;
    const json& j = params.is_null() ? json::object() : params;
    p.num_classes = param_or(j, "num_classes", p.num_classes);
    p.per_class = param_or(j, "per_class", p.per_class);
    p.n = param_or(j, "n", p.n);
    p.T = param_or(j, "T", p.T);
    return gen_gaussians(seed, p);
  }
  if (generator == "walk") {
    reject_unknown(params, {"num_classes", "per_class", "n", "T", "amplitude", "noise"});
    WalkParams p;
    const json& j = params.is_null() ? json::object() : params;
    p.num_classes = param_or(j, "num_classes", p.num_classes);
    p.per_class = param_or(j, "per_class", p.per_class);
    p.n = param_or(j, "n", p.n);
    p.T = param_or(j, "T", p.T);
    p.amplitude = param_or(j, "amplitude", p.amplitude);
    p.noise = param_or(j, "noise", p.noise);
    return gen_walk(seed, p);
  }
  if (generator == "sorts") {
    reject_unknown(params, {"algorithms", "arrays_per_algorithm", "array_len", "T"});
    SortsParams p;
    const json& j = params.is_null() ? json::object() : params;
    p.algorithms = param_or(j, "algorithms", p.algorithms);
    p.arrays_per_algorithm = param_or(j, "arrays_per_algorithm", p.arrays_per_algorithm);
    p.array_len = param_or(j, "array_len", p.array_len);
    p.T = param_or(j, "T", p.T);
    return gen_sorts(seed, p);
  }
  throw std::invalid_argument("unknown generator '" + std::string(generator) + "' (expected gaussians, walk, sorts)");
}

}  // namespace drbench
