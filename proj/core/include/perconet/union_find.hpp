#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "perconet/lattice.hpp"

namespace perconet {

/// Disjoint sets over node ids with weighted union, path compression and
/// per-node displacement to the parent, so that a cluster closing a loop around
/// the torus is flagged as wrapping.
class UnionFind {
 public:
  struct Located {
    int root;
    Shift offset;  // image of the node relative to its root
  };

  struct Merge {
    int root;
    bool joined;         // two clusters became one
    bool started_wrap;   // the resulting cluster wraps and did not before
  };

  explicit UnionFind(int n = 0) { reset(n); }

  void reset(int n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);
    size_.assign(n, 1);
    disp_.assign(n, Shift{});
    wrap_x_.assign(n, 0);
    wrap_y_.assign(n, 0);
    roots_ = n;
  }

  int node_count() const { return static_cast<int>(parent_.size()); }
  int cluster_count() const { return roots_; }

  Located locate(int x) {
    Shift acc{};
    int r = x;
    while (parent_[r] != r) {
      acc = acc + disp_[r];
      r = parent_[r];
    }
    // Second pass: point every node on the path straight at the root.
    Shift rest = acc;
    while (parent_[x] != r) {
      const int next = parent_[x];
      const Shift step = disp_[x];
      parent_[x] = r;
      disp_[x] = rest;
      rest = rest - step;
      x = next;
    }
    return {r, acc};
  }

  int find(int x) { return locate(x).root; }

  /// Joins a and the image of b displaced by `shift` (in system periods) from a.
  Merge unite(int a, int b, Shift shift = {}) {
    const Located la = locate(a);
    const Located lb = locate(b);
    if (la.root == lb.root) {
      const Shift winding = la.offset + shift - lb.offset;
      const bool before = wraps(la.root);
      if (winding.x != 0) wrap_x_[la.root] = 1;
      if (winding.y != 0) wrap_y_[la.root] = 1;
      return {la.root, false, !before && wraps(la.root)};
    }
    int big = la.root;
    int small = lb.root;
    // Displacement of rb relative to ra.
    Shift rel = la.offset + shift - lb.offset;
    if (size_[big] < size_[small]) {
      std::swap(big, small);
      rel = -rel;
    }
    const bool before = wraps(big) || wraps(small);
    parent_[small] = big;
    disp_[small] = rel;
    size_[big] += size_[small];
    wrap_x_[big] |= wrap_x_[small];
    wrap_y_[big] |= wrap_y_[small];
    --roots_;
    return {big, true, !before && wraps(big)};
  }

  bool connected(int a, int b) { return find(a) == find(b); }
  int cluster_size(int x) { return size_[find(x)]; }

  bool wraps(int root) const { return wrap_x_[root] || wrap_y_[root]; }
  bool wraps_x(int root) const { return wrap_x_[root] != 0; }
  bool wraps_y(int root) const { return wrap_y_[root] != 0; }

  /// Size of the cluster whose root is `root`.
  int root_size(int root) const { return size_[root]; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<Shift> disp_;
  std::vector<std::uint8_t> wrap_x_;
  std::vector<std::uint8_t> wrap_y_;
  int roots_ = 0;
};

}  // namespace perconet
