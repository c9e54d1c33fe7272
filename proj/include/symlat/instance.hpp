#pragma once

// Instance files: JSON (de)serialization with decimal-string big integers,
// the seeded instance generator, and multiplication-table ingest.

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "symlat/engine.hpp"

namespace symlat {

// splitmix64; fixed so instance corpora reproduce across implementations.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection.
  uint64_t below(uint64_t bound) {
    uint64_t lim = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do { x = next(); } while (x >= lim);
    return x % bound;
  }

  // Uniform in [lo, hi] inclusive.
  int64_t range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }
};

struct InstanceMeta {
  std::optional<uint64_t> seed;
  std::string construction;
  std::optional<std::vector<Int>> hidden_v;  // S-coefficients of the hidden unit
};

struct Instance {
  std::vector<int64_t> orders;
  std::vector<int64_t> u;
  MatZ gram;
  std::vector<MatZ> action;
  InstanceMeta meta;
};

// An instance bound to a live GroupContext (the lattice holds a pointer into
// it, so the context's address must be stable).
struct LoadedInstance {
  std::shared_ptr<GroupContext> G;
  GLattice lattice;
  Instance raw;
};

namespace detail {

inline nlohmann::json matz_to_json_strings(const MatZ& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Int json_to_int(const nlohmann::json& v) {
  if (v.is_string()) return Int(v.get<std::string>());
  if (v.is_number_integer()) return Int(static_cast<long>(v.get<int64_t>()));
  throw BadInput("expected an integer or a decimal string");
}

inline MatZ json_to_matz(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty()) throw BadInput("matrix must be a nonempty array");
  int r = static_cast<int>(rows.size());
  int c = static_cast<int>(rows[0].size());
  MatZ m(r, c);
  for (int i = 0; i < r; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != c)
      throw BadInput("ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = json_to_int(rows[i][j]);
  }
  return m;
}

}  // namespace detail

inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["group"]["orders"] = inst.orders;
  j["group"]["u"] = inst.u;
  j["lattice"]["gram"] = detail::matz_to_json_strings(inst.gram);
  for (size_t i = 0; i < inst.action.size(); ++i) {
    nlohmann::json rows = nlohmann::json::array();
    const MatZ& m = inst.action[i];
    for (int r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < m.cols(); ++c) {
        // Action entries stay small; emit plain integers when they fit.
        if (m(r, c).fits_slong_p())
          row.push_back(m(r, c).get_si());
        else
          row.push_back(m(r, c).get_str());
      }
      rows.push_back(std::move(row));
    }
    j["lattice"]["action"]["g" + std::to_string(i)] = std::move(rows);
  }
  if (inst.meta.seed || !inst.meta.construction.empty() || inst.meta.hidden_v) {
    nlohmann::json meta;
    if (inst.meta.seed) meta["seed"] = *inst.meta.seed;
    if (!inst.meta.construction.empty()) meta["construction"] = inst.meta.construction;
    if (inst.meta.hidden_v) {
      nlohmann::json hv = nlohmann::json::array();
      for (const auto& x : *inst.meta.hidden_v) hv.push_back(x.get_str());
      meta["hidden_v"] = std::move(hv);
    }
    j["meta"] = std::move(meta);
  }
  return j;
}

inline Instance instance_from_json(const nlohmann::json& j) {
  Instance inst;
  try {
    inst.orders = j.at("group").at("orders").get<std::vector<int64_t>>();
    inst.u = j.at("group").at("u").get<std::vector<int64_t>>();
    inst.gram = detail::json_to_matz(j.at("lattice").at("gram"));
    const auto& act = j.at("lattice").at("action");
    for (size_t i = 0; i < inst.orders.size(); ++i) {
      std::string key = "g" + std::to_string(i);
      if (!act.contains(key)) throw BadInput("missing action matrix " + key);
      inst.action.push_back(detail::json_to_matz(act.at(key)));
    }
    if (j.contains("meta")) {
      const auto& meta = j.at("meta");
      if (meta.contains("seed")) inst.meta.seed = meta.at("seed").get<uint64_t>();
      if (meta.contains("construction"))
        inst.meta.construction = meta.at("construction").get<std::string>();
      if (meta.contains("hidden_v")) {
        std::vector<Int> hv;
        for (const auto& x : meta.at("hidden_v")) hv.push_back(detail::json_to_int(x));
        inst.meta.hidden_v = std::move(hv);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw BadInput(std::string("malformed instance file: ") + e.what());
  }
  return inst;
}

inline LoadedInstance load_instance(const Instance& inst) {
  LoadedInstance out;
  out.G = std::make_shared<GroupContext>(make_group(inst.orders, GroupElement{inst.u}));
  out.lattice = make_glattice(*out.G, inst.gram, inst.action);
  out.raw = inst;
  return out;
}

// ---- instance generator ----

namespace detail {

// Random unimodular matrix: a product of elementary row operations with
// small coefficients (keeps instance entries readable).
inline MatZ random_unimodular(SplitMix64& rng, int n) {
  MatZ U = MatZ::identity(n);
  int ops = 3 * n * n;
  for (int t = 0; t < ops; ++t) {
    int i = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    int jj = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    if (i == jj) {
      if (rng.below(2) == 0)
        for (int l = 0; l < n; ++l) U(i, l) = -U(i, l);
      continue;
    }
    Int c(rng.range(-1, 1));
    if (c == 0) c = 1;
    for (int l = 0; l < n; ++l) U(i, l) += c * U(jj, l);
  }
  return U;
}

// Instance with orthonormal hidden basis rows {sigma v}, scrambled by U:
// gram = U U^T, action_g = U^{-T} M_g^{std} U^T.
inline Instance scrambled_instance(const GroupContext& G, SplitMix64& rng,
                                   const std::vector<int64_t>& orders,
                                   const std::vector<int64_t>& u_exps,
                                   const std::vector<Int>& v_coeffs) {
  int n = static_cast<int>(G.n);
  MatZ U = random_unimodular(rng, n);
  auto Uinv_q = inverse_q(to_rational(U));
  if (!Uinv_q) throw InternalCheckFailed("unimodular scramble is singular");
  MatZ UinvT(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) UinvT(i, j) = (*Uinv_q)(j, i).get_num();
  MatZ UT = transpose(U);

  GLattice std_lat = standard_lattice(G);
  Instance inst;
  inst.orders = orders;
  inst.u = u_exps;
  inst.gram = U * UT;
  for (size_t i = 0; i < G.orders.size(); ++i)
    inst.action.push_back(UinvT * std_lat.gen_action[i] * UT);
  inst.meta.hidden_v = v_coeffs;
  return inst;
}

// A character G -> {+-1} with chi(u) = -1, as exponent bits per generator.
inline std::optional<std::vector<int>> sign_character(const std::vector<int64_t>& orders,
                                                      const std::vector<int64_t>& u_exps) {
  size_t t = orders.size();
  for (uint64_t mask = 0; mask < (1ULL << t); ++mask) {
    bool ok = true;
    int64_t on_u = 0;
    for (size_t i = 0; i < t; ++i) {
      int bit = (mask >> i) & 1;
      if (bit && orders[i] % 2 != 0) { ok = false; break; }  // chi(g_i)^d_i must be 1
      on_u += bit * u_exps[i];
    }
    if (!ok || on_u % 2 == 0) continue;
    std::vector<int> bits(t);
    for (size_t i = 0; i < t; ++i) bits[i] = (mask >> i) & 1;
    return bits;
  }
  return std::nullopt;
}

}  // namespace detail

inline Instance gen_instance(const std::vector<int64_t>& orders, const std::vector<int64_t>& u_exps,
                             uint64_t seed, const std::string& construction) {
  GroupContext G = make_group(orders, GroupElement{u_exps});
  int n = static_cast<int>(G.n);
  SplitMix64 rng(seed);
  Instance inst;

  if (construction == "principal") {
    // Random unit v of Q<G> with coefficients in {-2..2}.
    std::vector<Int> v;
    bool found = false;
    for (int tries = 0; tries < 1000 && !found; ++tries) {
      std::vector<Int> cand(n);
      for (int i = 0; i < n; ++i) cand[i] = Int(rng.range(-2, 2));
      try {
        ring_inverse(to_rational(RingZ{&G, cand}));
        v = std::move(cand);
        found = true;
      } catch (const NotAUnitError&) {
      }
    }
    if (!found) throw DegenerateV();
    inst = detail::scrambled_instance(G, rng, orders, u_exps, v);
  } else if (construction == "scrambled-standard") {
    std::vector<Int> one(n, Int(0));
    one[0] = 1;
    inst = detail::scrambled_instance(G, rng, orders, u_exps, one);
  } else if (construction == "non-unimodular") {
    GLattice std_lat = standard_lattice(G);
    inst.orders = orders;
    inst.u = u_exps;
    MatZ g = MatZ::identity(n);
    for (int i = 0; i < n; ++i) g(i, i) = 2;
    inst.gram = std::move(g);
    inst.action = std_lat.gen_action;
  } else if (construction == "trivial-action") {
    auto bits = detail::sign_character(orders, u_exps);
    if (!bits) throw BadInput("group has no sign character with chi(u) = -1");
    inst.orders = orders;
    inst.u = u_exps;
    inst.gram = MatZ::identity(n);
    for (size_t i = 0; i < orders.size(); ++i) {
      MatZ M = MatZ::identity(n);
      if ((*bits)[i])
        for (int l = 0; l < n; ++l) M(l, l) = -1;
      inst.action.push_back(std::move(M));
    }
  } else {
    throw BadInput("unknown construction: " + construction);
  }

  inst.meta.seed = seed;
  inst.meta.construction = construction;
  return inst;
}

// Deterministic recomputation of the scramble from the seed, then the exact
// quotient e / v (S-coefficients): coordinates y on the instance basis are
// the ring element (U^T y) * v, so e / v = U^T y. The quotient is a signed
// transversal element exactly when recovery matched the hidden orbit.
inline RingZ instance_quotient_with_seed(const Instance& inst, const GroupContext& G,
                                         const std::vector<Int>& e_coords) {
  if (!inst.meta.hidden_v || !inst.meta.seed) throw BadInput("instance lacks hidden data");
  int n = static_cast<int>(G.n);
  SplitMix64 rng(*inst.meta.seed);
  if (inst.meta.construction == "principal") {
    // Replay the rejection loop to restore the PRNG position.
    for (int tries = 0; tries < 1000; ++tries) {
      std::vector<Int> cand(n);
      for (int i = 0; i < n; ++i) cand[i] = Int(rng.range(-2, 2));
      if (cand == *inst.meta.hidden_v) break;
      try {
        ring_inverse(to_rational(RingZ{&G, cand}));
        throw InternalCheckFailed("replay diverged from the recorded hidden v");
      } catch (const NotAUnitError&) {
      }
    }
  }
  MatZ U = detail::random_unimodular(rng, n);
  auto x = transpose(U) * e_coords;
  return RingZ{&G, x};
}

// ---- multiplication-table ingest ----

// A group given by its multiplication table (indices into 0..N-1, row i col j
// = i*j, index 0 = identity) plus the index of u. Returns the cyclic
// decomposition and the coordinates of every element, via the Smith normal
// form of the relation lattice on the element generators.
struct TableGroup {
  std::vector<int64_t> orders;                // d_1 | d_2 | ... (nontrivial only)
  std::vector<std::vector<int64_t>> coords;   // per element, exponents in the decomposition
};

inline TableGroup group_from_table(const std::vector<std::vector<int>>& table) {
  int N = static_cast<int>(table.size());
  if (N == 0) throw BadInput("empty table");
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != N) throw BadInput("table is not square");
  for (int i = 0; i < N; ++i)
    if (table[0][i] != i || table[i][0] != i) throw BadInput("index 0 must be the identity");
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (table[i][j] != table[j][i]) throw BadInput("table is not commutative");

  // Present the group on all N generators; relations: x_i + x_j - x_{ij} = 0.
  std::vector<std::vector<Int>> rel;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j <= i; ++j) {
      std::vector<Int> row(N, Int(0));
      row[i] += 1;
      row[j] += 1;
      row[table[i][j]] -= 1;
      rel.push_back(std::move(row));
    }
  MatZ R(static_cast<int>(rel.size()), N);
  for (size_t i = 0; i < rel.size(); ++i)
    for (int j = 0; j < N; ++j) R(static_cast<int>(i), j) = rel[i][j];
  MatZ V;
  auto d = snf(R, &V);

  TableGroup out;
  std::vector<int> kept;  // positions with d_i != 1 (nontrivial cyclic factors)
  for (int j = 0; j < N; ++j) {
    if (d[j] == 1) continue;
    if (d[j] == 0) throw BadInput("table does not define a finite group");
    kept.push_back(j);
    out.orders.push_back(d[j].get_si());
  }
  if (kept.empty()) {
    out.orders.push_back(1);
    out.coords.assign(N, {0});
    return out;
  }
  for (int g = 0; g < N; ++g) {
    // Coordinates of generator g: row g of V at the kept positions, mod d.
    std::vector<int64_t> c;
    for (size_t t = 0; t < kept.size(); ++t) {
      Int x = mod_reduce(V(g, kept[t]), d[kept[t]]);
      c.push_back(x.get_si());
    }
    out.coords.push_back(std::move(c));
  }
  return out;
}

}  // namespace symlat
