#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "projective.hpp"

namespace kok {

/// Closed arc of angles phi in [start, start + length] (mod 2 pi); length 2 pi is the full circle.
struct Arc {
  double start = -pi;
  double length = 2 * pi;

  bool full() const { return length >= 2 * pi; }
  double end() const { return wrap_angle(start + length); }
  double mid() const { return wrap_angle(start + length / 2); }
  bool contains(double phi, double tol = 0.0) const {
    if (full()) return true;
    double d = phi - start;
    d -= 2 * pi * std::floor(d / (2 * pi));
    return d <= length + tol || d >= 2 * pi - tol;
  }
};

/**
 * Subset of the real projective line in the angle chart x = tan(phi/2), phi in (-pi, pi].
 * Arcs are disjoint and sorted by start.
 */
class RealIntervalSet {
 public:
  RealIntervalSet() = default;
  static RealIntervalSet full_line() {
    RealIntervalSet s;
    s.arcs_.push_back(Arc{});
    return s;
  }
  static RealIntervalSet from_arcs(std::vector<Arc> arcs) {
    RealIntervalSet s;
    s.arcs_ = std::move(arcs);
    s.normalize();
    return s;
  }

  const std::vector<Arc>& arcs() const { return arcs_; }
  bool empty() const { return arcs_.empty(); }
  bool is_full() const { return arcs_.size() == 1 && arcs_[0].full(); }

  bool contains(double phi, double tol = 0.0) const {
    for (const auto& a : arcs_)
      if (a.contains(phi, tol)) return true;
    return false;
  }
  bool contains(const ProjectiveReal& x, double tol = 0.0) const { return contains(x.to_angle(), tol); }

  double measure() const {
    double m = 0;
    for (const auto& a : arcs_) m += a.length;
    return std::min(m, 2 * pi);
  }

  std::vector<double> endpoints() const {
    std::vector<double> e;
    for (const auto& a : arcs_)
      if (!a.full()) {
        e.push_back(wrap_angle(a.start));
        e.push_back(a.end());
      }
    return e;
  }

  /// Index of the longest arc, or -1.
  int longest() const {
    int best = -1;
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i)
      if (best < 0 || arcs_[i].length > arcs_[best].length) best = i;
    return best;
  }

 private:
  static constexpr double merge_tol = 1e-12;

  void normalize() {
    std::vector<Arc> in;
    for (auto a : arcs_) {
      if (!(a.length > 0)) continue;
      if (a.length >= 2 * pi) {
        arcs_ = {Arc{}};
        return;
      }
      a.start = wrap_angle(a.start);
      in.push_back(a);
    }
    std::sort(in.begin(), in.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });
    std::vector<Arc> out;
    for (const auto& a : in) {
      // arcs meeting at a shared cut point differ by rounding only
      if (!out.empty() && a.start <= out.back().start + out.back().length + merge_tol) {
        out.back().length = std::max(out.back().length, a.start + a.length - out.back().start);
      } else {
        out.push_back(a);
      }
    }
    // wrap-around merge of the last arc into the first
    if (out.size() > 1 && out.back().start + out.back().length + merge_tol >= out.front().start + 2 * pi) {
      Arc& last = out.back();
      const double new_end = std::max(last.start + last.length, out.front().start + 2 * pi + out.front().length);
      last.length = new_end - last.start;
      out.erase(out.begin());
    }
    for (auto& a : out)
      if (a.length >= 2 * pi) {
        out = {Arc{}};
        break;
      }
    arcs_ = std::move(out);
  }

  std::vector<Arc> arcs_;
};

/// Largest distance from an endpoint of one set to the nearest endpoint of the other (angles).
inline double endpoint_distance(const RealIntervalSet& a, const RealIntervalSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() != b.empty() || a.is_full() != b.is_full()) return std::numeric_limits<double>::infinity();
  const auto ea = a.endpoints(), eb = b.endpoints();
  if (ea.size() != eb.size()) return std::numeric_limits<double>::infinity();
  auto one_way = [](const std::vector<double>& u, const std::vector<double>& v) {
    double worst = 0;
    for (double x : u) {
      double best = std::numeric_limits<double>::infinity();
      for (double y : v) best = std::min(best, std::abs(wrap_angle(x - y)));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(ea, eb), one_way(eb, ea));
}

/**
 * Feasible set of a predicate on phi by a uniform scan with bisection of every sign change.
 * Features narrower than the scan step can be missed.
 */
inline RealIntervalSet scan_interval_set(const std::function<bool(double)>& feasible, int n,
                                         double tol = 1e-12) {
  std::vector<double> phi(n);
  std::vector<char> ok(n);
  for (int k = 0; k < n; ++k) {
    phi[k] = -pi + 2 * pi * (k + 0.5) / n;
    ok[k] = feasible(phi[k]);
  }
  if (std::all_of(ok.begin(), ok.end(), [](char c) { return c; })) return RealIntervalSet::full_line();
  if (std::none_of(ok.begin(), ok.end(), [](char c) { return c; })) return {};
  auto refine = [&](double a, double b, bool a_ok) {
    // returns the switch point between a and b (b > a, going forward)
    while (b - a > tol) {
      const double m = 0.5 * (a + b);
      if (static_cast<bool>(feasible(m)) == a_ok)
        a = m;
      else
        b = m;
    }
    return 0.5 * (a + b);
  };
  std::vector<Arc> arcs;
  // start from an infeasible sample so every arc has both ends inside the loop
  int k0 = 0;
  while (ok[k0]) ++k0;
  double open = 0;
  bool inside = false;
  for (int j = 1; j <= n; ++j) {
    const int prev = (k0 + j - 1) % n, cur = (k0 + j) % n;
    double a = phi[prev], b = phi[cur];
    if (b <= a) b += 2 * pi;
    if (ok[prev] != ok[cur]) {
      const double s = refine(a, b, ok[prev]);
      if (ok[cur]) {
        open = s;
        inside = true;
      } else if (inside) {
        double len = s - open;
        len -= 2 * pi * std::floor(len / (2 * pi));
        arcs.push_back(Arc{open, len});
        inside = false;
      }
    }
  }
  return RealIntervalSet::from_arcs(arcs);
}

}  // namespace kok
