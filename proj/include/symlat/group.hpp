#pragma once

// Finite abelian group G with a distinguished order-2 element u, plus the
// canonical transversal S of G/<u> used to index all coefficient vectors.

#include <cstdint>
#include <numeric>
#include <vector>

#include "symlat/common.hpp"

namespace symlat {

struct GroupElement {
  std::vector<int64_t> exps;
  bool operator==(const GroupElement& o) const { return exps == o.exps; }
  bool operator<(const GroupElement& o) const { return exps < o.exps; }
};

class GroupContext {
 public:
  std::vector<int64_t> orders;     // cyclic decomposition d_1,...,d_t
  GroupElement u;
  int64_t n = 0;                   // #G / 2
  int64_t k = 0;                   // exponent of G
  std::vector<GroupElement> elements;  // all of G, lexicographic by exps
  std::vector<GroupElement> S;         // transversal, S[0] = identity

  // For each element index: position of its coset representative in S and the
  // sign (+1 if the element is in S, -1 if it is u * rep).
  std::vector<int> srep_pos;
  std::vector<int> srep_sign;
  std::vector<int> s_elem_index;   // element index of S[j]

  int64_t order() const { return 2 * n; }

  GroupElement identity() const { return GroupElement{std::vector<int64_t>(orders.size(), 0)}; }

  int index_of(const GroupElement& a) const {
    int64_t idx = 0;
    for (size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + a.exps[i];
    return static_cast<int>(idx);
  }

  GroupElement mul(const GroupElement& a, const GroupElement& b) const {
    GroupElement r = a;
    for (size_t i = 0; i < orders.size(); ++i) r.exps[i] = (r.exps[i] + b.exps[i]) % orders[i];
    return r;
  }

  GroupElement inv(const GroupElement& a) const {
    GroupElement r = a;
    for (size_t i = 0; i < orders.size(); ++i) r.exps[i] = (orders[i] - r.exps[i]) % orders[i];
    return r;
  }

  GroupElement pow(const GroupElement& a, int64_t e) const {
    GroupElement r = a;
    for (size_t i = 0; i < orders.size(); ++i) {
      int64_t v = (a.exps[i] * (e % orders[i])) % orders[i];
      r.exps[i] = (v + orders[i]) % orders[i];
    }
    return r;
  }

  bool is_identity(const GroupElement& a) const {
    for (auto e : a.exps)
      if (e != 0) return false;
    return true;
  }

  // Decompose g as (position in S, sign): g = S[pos] or g = u * S[pos].
  void decompose(const GroupElement& g, int& pos, int& sign) const {
    int idx = index_of(g);
    pos = srep_pos[idx];
    sign = srep_sign[idx];
  }
};

inline GroupContext make_group(const std::vector<int64_t>& orders, const GroupElement& u) {
  for (auto d : orders)
    if (d < 1) throw BadInput("orders must be positive");
  if (u.exps.size() != orders.size()) throw BadU("u has wrong number of components");
  int64_t size = 1;
  for (auto d : orders) size *= d;
  if (size % 2 != 0) throw OddOrder();

  GroupContext ctx;
  ctx.orders = orders;
  ctx.u = u;
  for (size_t i = 0; i < orders.size(); ++i)
    if (u.exps[i] < 0 || u.exps[i] >= orders[i]) throw BadU("u component out of range");
  bool u_trivial = true;
  for (size_t i = 0; i < orders.size(); ++i) {
    int64_t twice = (2 * u.exps[i]) % orders[i];
    if (twice != 0) throw BadU();
    if (u.exps[i] != 0) u_trivial = false;
  }
  if (u_trivial) throw BadU("u must not be the identity");

  ctx.n = size / 2;
  ctx.k = 1;
  for (auto d : orders) ctx.k = std::lcm(ctx.k, d);

  // Enumerate all elements in lexicographic order of exps.
  std::vector<int64_t> cur(orders.size(), 0);
  for (int64_t c = 0; c < size; ++c) {
    ctx.elements.push_back(GroupElement{cur});
    for (int i = static_cast<int>(orders.size()) - 1; i >= 0; --i) {
      if (++cur[i] < orders[i]) break;
      cur[i] = 0;
    }
  }

  // Transversal: lexicographically smaller element of each coset {g, ug}.
  // Lexicographic element order makes the identity land at position 0.
  ctx.srep_pos.assign(size, -1);
  ctx.srep_sign.assign(size, 0);
  for (const auto& g : ctx.elements) {
    int gi = ctx.index_of(g);
    if (ctx.srep_pos[gi] >= 0) continue;
    GroupElement ug = ctx.mul(ctx.u, g);
    const GroupElement& rep = (g < ug) ? g : ug;
    const GroupElement& other = (g < ug) ? ug : g;
    int pos = static_cast<int>(ctx.S.size());
    ctx.S.push_back(rep);
    ctx.s_elem_index.push_back(ctx.index_of(rep));
    ctx.srep_pos[ctx.index_of(rep)] = pos;
    ctx.srep_sign[ctx.index_of(rep)] = 1;
    ctx.srep_pos[ctx.index_of(other)] = pos;
    ctx.srep_sign[ctx.index_of(other)] = -1;
  }
  return ctx;
}

}  // namespace symlat
