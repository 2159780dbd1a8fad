#include "dclp/ordering.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <vector>

#include "dclp/errors.hpp"

namespace dclp {

namespace {

// Quotient-graph state for one ordering run. Node ids double as element
// ids once the node has been eliminated.
struct QuotientGraph {
  int n;
  std::vector<std::vector<int>> var_adj;   // adjacent variable reps
  std::vector<std::vector<int>> elem_adj;  // adjacent element ids
  std::vector<std::vector<int>> members;   // element id -> variable reps
  std::vector<std::vector<int>> cluster;   // rep -> original indices merged
  std::vector<int> weight;                 // rep -> cluster size
  std::vector<char> alive_var;
  std::vector<char> alive_elem;
  std::vector<int> degree;

  // degree buckets; bucket[d] holds alive reps with current degree d
  std::vector<std::set<int>> bucket;
  int min_deg = 0;

  std::vector<int> stamp;  // marker workspace
  int stamp_val = 0;

  explicit QuotientGraph(int n_)
      : n(n_),
        var_adj(n_),
        elem_adj(n_),
        members(n_),
        cluster(n_),
        weight(n_, 1),
        alive_var(n_, 1),
        alive_elem(n_, 0),
        degree(n_, 0),
        bucket(n_ + 1),
        stamp(n_, 0) {}

  int new_stamp() { return ++stamp_val; }

  void prune_dead_vars(std::vector<int>& list) const {
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](int u) { return !alive_var[u]; }),
               list.end());
  }
  void prune_dead_elems(std::vector<int>& list) const {
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](int e) { return !alive_elem[e]; }),
               list.end());
  }

  // External degree of u in original-variable units.
  int compute_degree(int u) {
    int s = new_stamp();
    stamp[u] = s;
    int d = 0;
    prune_dead_vars(var_adj[u]);
    for (int w : var_adj[u]) {
      if (stamp[w] != s) {
        stamp[w] = s;
        d += weight[w];
      }
    }
    prune_dead_elems(elem_adj[u]);
    for (int e : elem_adj[u]) {
      prune_dead_vars(members[e]);
      for (int w : members[e]) {
        if (stamp[w] != s) {
          stamp[w] = s;
          d += weight[w];
        }
      }
    }
    return d;
  }

  void set_degree(int u, int d) {
    bucket[degree[u]].erase(u);
    degree[u] = d;
    bucket[d].insert(u);
    min_deg = std::min(min_deg, d);
  }
};

// Sorted adjacency-with-self signature used to detect indistinguishable
// variables: u and w are merged when these signatures coincide.
void adjacency_signature(QuotientGraph& g, int u, std::vector<int>& vars,
                         std::vector<int>& elems) {
  g.prune_dead_vars(g.var_adj[u]);
  g.prune_dead_elems(g.elem_adj[u]);
  vars = g.var_adj[u];
  vars.push_back(u);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  elems = g.elem_adj[u];
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
}

// Eliminate rep v: form the new element, absorb v's elements, prune the
// members' lists, merge indistinguishable members, refresh degrees.
// Members of the new element are flagged in `touched`.
void eliminate(QuotientGraph& g, int v, std::vector<int>& order,
               std::vector<char>& touched) {
  std::vector<int> front;
  int s = g.new_stamp();
  g.stamp[v] = s;
  g.prune_dead_vars(g.var_adj[v]);
  for (int u : g.var_adj[v]) {
    if (g.stamp[u] != s) {
      g.stamp[u] = s;
      front.push_back(u);
    }
  }
  g.prune_dead_elems(g.elem_adj[v]);
  for (int e : g.elem_adj[v]) {
    g.prune_dead_vars(g.members[e]);
    for (int u : g.members[e]) {
      if (g.stamp[u] != s) {
        g.stamp[u] = s;
        front.push_back(u);
      }
    }
    g.alive_elem[e] = 0;  // absorbed into the new element
  }
  std::sort(front.begin(), front.end());

  for (int orig : g.cluster[v]) order.push_back(orig);
  g.alive_var[v] = 0;
  g.alive_elem[v] = 1;
  g.members[v] = front;
  for (int u : front) touched[u] = 1;

  // drop member edges now covered by the new element, attach it
  int in_front = g.new_stamp();
  for (int u : front) g.stamp[u] = in_front;
  for (int u : front) {
    auto& va = g.var_adj[u];
    va.erase(std::remove_if(va.begin(), va.end(),
                            [&](int w) {
                              return !g.alive_var[w] ||
                                     g.stamp[w] == in_front;
                            }),
             va.end());
    g.prune_dead_elems(g.elem_adj[u]);
    g.elem_adj[u].push_back(v);
  }

  // merge indistinguishable members (identical adjacency implies
  // identical elimination behavior)
  std::unordered_map<long long, std::vector<int>> groups;
  std::vector<int> sig_v, sig_e;
  for (int u : front) {
    if (!g.alive_var[u]) continue;
    adjacency_signature(g, u, sig_v, sig_e);
    long long h = 1469598103934665603LL;
    for (int x : sig_v) h = h * 1099511628211LL + x + 1;
    for (int x : sig_e) h = h * 1099511628211LL + g.n + x + 1;
    groups[h].push_back(u);
  }
  std::vector<int> av, ae, bv, be;
  for (auto& [h, grp] : groups) {
    if (grp.size() < 2) continue;
    std::sort(grp.begin(), grp.end());
    for (size_t i = 0; i < grp.size(); ++i) {
      int a = grp[i];
      if (!g.alive_var[a]) continue;
      adjacency_signature(g, a, av, ae);
      for (size_t j = i + 1; j < grp.size(); ++j) {
        int b = grp[j];
        if (!g.alive_var[b]) continue;
        adjacency_signature(g, b, bv, be);
        // the var signature folds the node's own id in, so rename b to a
        // before comparing
        std::vector<int> bv2 = bv;
        for (int& x : bv2)
          if (x == b) x = a;
        std::sort(bv2.begin(), bv2.end());
        bv2.erase(std::unique(bv2.begin(), bv2.end()), bv2.end());
        if (bv2 == av && be == ae) {
          g.weight[a] += g.weight[b];
          g.cluster[a].insert(g.cluster[a].end(), g.cluster[b].begin(),
                              g.cluster[b].end());
          std::sort(g.cluster[a].begin(), g.cluster[a].end());
          g.alive_var[b] = 0;
          g.bucket[g.degree[b]].erase(b);
        }
      }
    }
  }

  for (int u : front) {
    if (!g.alive_var[u]) continue;
    g.set_degree(u, g.compute_degree(u));
  }
}

}  // namespace

Permutation min_degree_order(const SparseMatrix& pattern) {
  if (pattern.rows != pattern.cols)
    throw DimensionError("min_degree_order: pattern must be square");
  const int n = pattern.rows;
  if (n == 0) return Permutation::identity(0);

  QuotientGraph g(n);

  // Symmetrized adjacency without the diagonal.
  {
    std::vector<std::set<int>> adj(n);
    for (int j = 0; j < n; ++j) {
      for (int p = pattern.col_ptr[j]; p < pattern.col_ptr[j + 1]; ++p) {
        int i = pattern.row_idx[p];
        if (i == j) continue;
        adj[i].insert(j);
        adj[j].insert(i);
      }
    }
    for (int v = 0; v < n; ++v) {
      g.var_adj[v].assign(adj[v].begin(), adj[v].end());
      g.cluster[v].push_back(v);
      g.degree[v] = static_cast<int>(g.var_adj[v].size());
      g.bucket[g.degree[v]].insert(v);
    }
  }

  std::vector<int> order;
  order.reserve(n);
  std::vector<char> touched(n, 0);

  // Multiple elimination: every node holding the minimum degree at the
  // start of a sweep is eliminated in the same sweep (ascending index),
  // skipping nodes whose neighborhood a sweep-mate already changed.
  while (static_cast<int>(order.size()) < n) {
    while (g.bucket[g.min_deg].empty()) ++g.min_deg;
    std::vector<int> sweep(g.bucket[g.min_deg].begin(),
                           g.bucket[g.min_deg].end());
    std::fill(touched.begin(), touched.end(), 0);
    for (int v : sweep) {
      if (!g.alive_var[v] || touched[v]) continue;
      g.bucket[g.degree[v]].erase(v);
      eliminate(g, v, order, touched);
    }
  }

  return Permutation(std::move(order));
}

}  // namespace dclp
