#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "varcirc/monoid.hpp"

namespace varcirc {

/// Named monoid for candidate catalogs and reports.
struct NamedMonoid {
  std::string name;
  FiniteMonoid monoid;
};

inline FiniteMonoid trivial_monoid() {
  FiniteMonoid m;
  m.size = 1;
  m.identity = 0;
  m.table = {0};
  return m;
}

/// Cyclic group of order p; element 1 generates.
inline FiniteMonoid cyclic_group(int p) {
  if (p < 1) throw std::invalid_argument("cyclic_group: order must be >= 1");
  FiniteMonoid m;
  m.size = p;
  m.identity = 0;
  m.table.resize(static_cast<size_t>(p) * p);
  for (int x = 0; x < p; ++x)
    for (int y = 0; y < p; ++y) m.table[static_cast<size_t>(x) * p + y] = (x + y) % p;
  return m;
}

/// {e, z} with z absorbing: the syntactic monoid of 1^*.
inline FiniteMonoid u1_monoid() {
  FiniteMonoid m;
  m.size = 2;
  m.identity = 0;
  m.table = {0, 1, 1, 1};
  return m;
}

/// Commutative aperiodic chain {0..n-1} with x*y = min(x+y, n-1).
inline FiniteMonoid saturating_chain(int n) {
  if (n < 1) throw std::invalid_argument("saturating_chain: size must be >= 1");
  FiniteMonoid m;
  m.size = n;
  m.identity = 0;
  m.table.resize(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      m.table[static_cast<size_t>(x) * n + y] = std::min(x + y, n - 1);
  return m;
}

inline FiniteMonoid direct_product(const FiniteMonoid& a, const FiniteMonoid& b) {
  FiniteMonoid m;
  m.size = a.size * b.size;
  m.identity = a.identity * b.size + b.identity;
  m.table.resize(static_cast<size_t>(m.size) * m.size);
  for (int x = 0; x < m.size; ++x)
    for (int y = 0; y < m.size; ++y) {
      int xa = x / b.size, xb = x % b.size;
      int ya = y / b.size, yb = y % b.size;
      m.table[static_cast<size_t>(x) * m.size + y] = a.mul(xa, ya) * b.size + b.mul(xb, yb);
    }
  return m;
}

/// The submonoid of a product of monoids generated by the given tuples,
/// tabulated with the identity tuple as element 0 and the remaining elements
/// in BFS discovery order. Returns the monoid and the generator indices.
inline std::pair<FiniteMonoid, std::vector<int>> generated_submonoid(
    const std::vector<FiniteMonoid>& components, const std::vector<std::vector<int>>& generators) {
  const size_t r = components.size();
  std::vector<int> ident(r);
  for (size_t c = 0; c < r; ++c) ident[c] = components[c].identity;

  auto mul_tuple = [&](const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> z(r);
    for (size_t c = 0; c < r; ++c) z[c] = components[c].mul(x[c], y[c]);
    return z;
  };

  std::vector<std::vector<int>> elems{ident};
  std::map<std::vector<int>, int> index{{ident, 0}};
  std::vector<int> gen_idx;
  for (const auto& g : generators) {
    if (g.size() != r) throw std::invalid_argument("generated_submonoid: tuple arity mismatch");
    auto it = index.find(g);
    if (it == index.end()) {
      index.emplace(g, static_cast<int>(elems.size()));
      gen_idx.push_back(static_cast<int>(elems.size()));
      elems.push_back(g);
    } else {
      gen_idx.push_back(it->second);
    }
  }
  for (size_t h = 0; h < elems.size(); ++h)
    for (int g : gen_idx) {
      auto t = mul_tuple(elems[h], elems[g]);
      if (!index.count(t)) {
        index.emplace(t, static_cast<int>(elems.size()));
        elems.push_back(std::move(t));
      }
    }

  const int n = static_cast<int>(elems.size());
  FiniteMonoid m;
  m.size = n;
  m.identity = 0;
  m.table.resize(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      m.table[static_cast<size_t>(x) * n + y] = index.at(mul_tuple(elems[x], elems[y]));
  return {std::move(m), std::move(gen_idx)};
}

/// Cyclic groups up to the size bound, plus non-cyclic products up to size 8.
inline std::vector<NamedMonoid> catalog_commutative_groups(int max_size) {
  std::vector<NamedMonoid> out;
  for (int p = 2; p <= max_size; ++p) out.push_back({"Z" + std::to_string(p), cyclic_group(p)});
  if (max_size >= 4) out.push_back({"Z2xZ2", direct_product(cyclic_group(2), cyclic_group(2))});
  if (max_size >= 8) {
    out.push_back({"Z2xZ4", direct_product(cyclic_group(2), cyclic_group(4))});
    out.push_back({"Z2xZ2xZ2",
                   direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2)))});
  }
  return out;
}

/// Commutative aperiodic monoids up to the size bound, with products to size 8.
inline std::vector<NamedMonoid> catalog_aperiodic_commutative(int max_size) {
  std::vector<NamedMonoid> out;
  out.push_back({"trivial", trivial_monoid()});
  if (max_size >= 2) out.push_back({"U1", u1_monoid()});
  if (max_size >= 3) out.push_back({"chain3", saturating_chain(3)});
  if (max_size >= 4) out.push_back({"U1xU1", direct_product(u1_monoid(), u1_monoid())});
  if (max_size >= 6) out.push_back({"chain3xU1", direct_product(saturating_chain(3), u1_monoid())});
  if (max_size >= 8)
    out.push_back({"U1xU1xU1", direct_product(u1_monoid(), direct_product(u1_monoid(), u1_monoid()))});
  return out;
}

inline std::vector<NamedMonoid> catalog_preset(const std::string& name, int max_size = 4) {
  if (name == "groups") return catalog_commutative_groups(max_size);
  if (name == "aperiodic") return catalog_aperiodic_commutative(max_size);
  throw std::invalid_argument("catalog preset: unknown name '" + name + "'");
}

}  // namespace varcirc
