// Exhaustive enumeration of the finite algebras, one representative per
// isomorphism class.
//
// Every finite distributive lattice is the lattice of downsets of a finite
// poset, so we enumerate labeled posets on up to max_size-1 points, take
// downset lattices, and deduplicate up to isomorphism. On each lattice we
// attach every order-reversing involution and every interior table, filter
// by the axioms, classify, and deduplicate the resulting algebras by a
// canonical relabeling key. The interior-table filter is the hot loop; it
// has a serial path and an OpenMP path that produce identical results.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "roughproof/algebra.hpp"

#ifdef ROUGHPROOF_HAVE_OPENMP
#include <omp.h>
#endif

namespace rp {
namespace {

std::string lattice_key(const Lattice& L) {
  const int n = L.n;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::string best;
  do {
    std::string s;
    s.reserve(static_cast<size_t>(n) * n + 2);
    s += std::to_string(n);
    s += ':';
    std::vector<int> inv(n);
    for (int k = 0; k < n; ++k) inv[p[k]] = k;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += L.le(inv[i], inv[j]) ? '1' : '0';
    if (best.empty() || s < best) best = std::move(s);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

// All downset lattices with 2..max_size elements, one per isomorphism class,
// keyed (and ordered) by their canonical encoding.
std::map<std::string, Lattice> downset_lattices(int max_size) {
  std::map<std::string, Lattice> out;
  for (int k = 1; k + 1 <= max_size; ++k) {
    const int pairs = k * (k - 1) / 2;
    long long total = 1;
    for (int i = 0; i < pairs; ++i) total *= 3;
    for (long long code = 0; code < total; ++code) {
      // strict order candidate: per unordered pair, none / i<j / j<i
      std::vector<uint8_t> lt(static_cast<size_t>(k) * k, 0);
      long long c = code;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
          const int choice = static_cast<int>(c % 3);
          c /= 3;
          if (choice == 1) lt[static_cast<size_t>(i) * k + j] = 1;
          if (choice == 2) lt[static_cast<size_t>(j) * k + i] = 1;
        }
      bool transitive = true;
      for (int i = 0; i < k && transitive; ++i)
        for (int j = 0; j < k && transitive; ++j)
          for (int l = 0; l < k && transitive; ++l)
            if (lt[static_cast<size_t>(i) * k + j] && lt[static_cast<size_t>(j) * k + l] &&
                !lt[static_cast<size_t>(i) * k + l])
              transitive = false;
      if (!transitive) continue;

      std::vector<int> downsets;
      for (int s = 0; s < (1 << k); ++s) {
        bool closed = true;
        for (int j = 0; j < k && closed; ++j) {
          if (!(s >> j & 1)) continue;
          for (int i = 0; i < k && closed; ++i)
            if (lt[static_cast<size_t>(i) * k + j] && !(s >> i & 1)) closed = false;
        }
        if (closed) downsets.push_back(s);
      }
      const int n = static_cast<int>(downsets.size());
      if (n > max_size) continue;
      std::sort(downsets.begin(), downsets.end(), [](int a, int b) {
        const int pa = __builtin_popcount(static_cast<unsigned>(a));
        const int pb = __builtin_popcount(static_cast<unsigned>(b));
        return pa != pb ? pa < pb : a < b;
      });
      std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          leq[static_cast<size_t>(i) * n + j] = (downsets[i] & ~downsets[j]) == 0 ? 1 : 0;
      auto L = Lattice::from_leq(n, std::move(leq));
      if (!L) continue;  // downset families are always lattices; defensive
      std::string key = lattice_key(*L);
      out.emplace(std::move(key), std::move(*L));
    }
  }
  return out;
}

std::vector<std::vector<uint8_t>> order_reversing_involutions(const Lattice& L) {
  const int n = L.n;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<uint8_t>> out;
  do {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      if (p[p[a]] != a) ok = false;
      for (int b = 0; b < n && ok; ++b)
        if (L.le(a, b) && !L.le(p[b], p[a])) ok = false;
    }
    if (ok) out.emplace_back(p.begin(), p.end());
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool interior_ok(const Lattice& L, long long code) {
  const int n = L.n;
  int intr[8] = {0};
  long long c = code;
  for (int i = 0; i < n; ++i) {
    intr[i] = static_cast<int>(c % n);
    c /= n;
  }
  if (intr[L.top] != L.top) return false;
  for (int x = 0; x < n; ++x) {
    if (!L.le(intr[x], x)) return false;
    if (intr[intr[x]] != intr[x]) return false;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (intr[L.mt(x, y)] != L.mt(intr[x], intr[y])) return false;
  return true;
}

// Flags[code] = 1 iff the interior table encoded by `code` (base-n digits)
// satisfies the interior axioms on L. Serial and parallel paths agree.
std::vector<uint8_t> interior_flags(const Lattice& L, int jobs) {
  long long total = 1;
  for (int i = 0; i < L.n; ++i) total *= L.n;
  std::vector<uint8_t> flags(static_cast<size_t>(total), 0);
#ifdef ROUGHPROOF_HAVE_OPENMP
  if (jobs != 1) {
    const int nt = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (long long code = 0; code < total; ++code)
      flags[static_cast<size_t>(code)] = interior_ok(L, code) ? 1 : 0;
    return flags;
  }
#else
  (void)jobs;
#endif
  for (long long code = 0; code < total; ++code)
    flags[static_cast<size_t>(code)] = interior_ok(L, code) ? 1 : 0;
  return flags;
}

std::string cache_file_name(const EnumOptions& opt) {
  std::string cls = alg_class_name(opt.cls);
  for (auto& ch : cls) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return "enum_" + cls + "_" + std::to_string(opt.max_size) + ".v1.algs";
}

std::optional<std::vector<SingleAlgebra>> read_cache_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::vector<std::vector<std::string>> groups(1);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      if (!groups.back().empty()) groups.emplace_back();
    } else {
      groups.back().push_back(line);
    }
  }
  if (groups.back().empty()) groups.pop_back();
  try {
    if (groups.empty() || groups[0].size() != 2 || groups[0][0] != "algcache v1") return std::nullopt;
    std::istringstream hdr(groups[0][1]);
    std::string word;
    size_t count = 0;
    if (!(hdr >> word >> count) || word != "count") return std::nullopt;
    if (groups.size() != count + 1) return std::nullopt;
    std::vector<SingleAlgebra> out;
    out.reserve(count);
    for (size_t i = 1; i < groups.size(); ++i) {
      std::string block;
      for (const auto& l : groups[i]) {
        block += l;
        block += '\n';
      }
      out.push_back(parse_alg(block));
    }
    return out;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void write_cache_file(const std::string& path, const std::vector<SingleAlgebra>& algs) {
  std::ofstream out(path);
  if (!out) return;  // best effort
  out << "algcache v1\ncount " << algs.size() << "\n\n";
  for (const auto& a : algs) out << render_alg(a) << "\n";
}

}  // namespace

std::vector<SingleAlgebra> enumerate_algebras(const EnumOptions& opt) {
  std::map<std::string, SingleAlgebra> dedup;
  if (opt.max_size < 2) return {};
  for (const auto& [lkey, lat] : downset_lattices(opt.max_size)) {
    const auto negs = order_reversing_involutions(lat);
    if (negs.empty()) continue;
    const auto flags = interior_flags(lat, opt.jobs);
    for (const auto& neg : negs) {
      SingleAlgebra a;
      a.lat = lat;
      a.neg = neg;
      for (long long code = 0; code < static_cast<long long>(flags.size()); ++code) {
        if (!flags[static_cast<size_t>(code)]) continue;
        a.intr.assign(lat.n, 0);
        long long c = code;
        for (int i = 0; i < lat.n; ++i) {
          a.intr[i] = static_cast<uint8_t>(c % lat.n);
          c /= lat.n;
        }
        if (!has_class(classify(a), opt.cls)) continue;
        dedup.emplace(canonical_key(a), a);
      }
    }
  }
  std::vector<SingleAlgebra> out;
  out.reserve(dedup.size());
  for (auto& [key, alg] : dedup) out.push_back(std::move(alg));
  return out;
}

std::vector<SingleAlgebra> enumerate_algebras_cached(const EnumOptions& opt) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<SingleAlgebra>> memo;
  const std::pair<int, int> key{opt.max_size, static_cast<int>(opt.cls)};
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const char* dir = std::getenv("ROUGHPROOF_CACHE");
  std::string path;
  if (dir && *dir) {
    path = std::string(dir) + "/" + cache_file_name(opt);
    if (auto cached = read_cache_file(path)) {
      std::lock_guard<std::mutex> lock(mu);
      memo[key] = *cached;
      return *cached;
    }
  }
  auto result = enumerate_algebras(opt);
  if (!path.empty()) write_cache_file(path, result);
  std::lock_guard<std::mutex> lock(mu);
  memo[key] = result;
  return result;
}

SweepResult soundness_sweep(CalculusId calc, int max_size, int jobs) {
  EnumOptions opt;
  opt.max_size = max_size;
  opt.cls = static_cast<AlgClass>(calc);
  opt.jobs = jobs;
  const auto algs = enumerate_algebras_cached(opt);
  const auto& rules = rule_set(calc);

  SweepResult res;
  res.algebras = static_cast<int>(algs.size());
  res.rules_checked = static_cast<int>(rules.size());
  res.checks = 0;

  std::vector<std::vector<std::string>> per_alg(algs.size());
  std::vector<long long> per_alg_checks(algs.size(), 0);
  const int count = static_cast<int>(algs.size());
#ifdef ROUGHPROOF_HAVE_OPENMP
  const int nt = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt) if (jobs != 1)
#endif
  for (int i = 0; i < count; ++i) {
    const HetAlgebra h = to_heterogeneous(algs[static_cast<size_t>(i)]);
    for (const Rule* r : rules) {
      if (!rule_applicable(*r, h)) continue;
      ++per_alg_checks[static_cast<size_t>(i)];
      if (auto err = check_rule_soundness(*r, h))
        per_alg[static_cast<size_t>(i)].push_back("algebra #" + std::to_string(i) + ": " + *err);
    }
  }
  for (size_t i = 0; i < per_alg.size(); ++i) {
    res.checks += per_alg_checks[i];
    for (auto& v : per_alg[i]) res.violations.push_back(std::move(v));
  }
  return res;
}

}  // namespace rp
