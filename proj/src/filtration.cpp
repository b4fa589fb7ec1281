#include "plectic/filtration.hpp"

#include <stdexcept>

namespace plectic {

namespace {

Vec coords_in(const Subspace& space, const Vec& v) { return space.coordinates_of(v); }

}  // namespace

AscFiltration AscFiltration::single_jump(int ambient, int n) {
  AscFiltration f(ambient);
  f.set_step(n, Subspace::full(ambient));
  return f;
}

void AscFiltration::set_step(int n, Subspace s) {
  if (s.ambient() != ambient_)
    throw std::invalid_argument("filtration step has wrong ambient dimension");
  steps_[n] = std::move(s);
}

Subspace AscFiltration::at(int n) const {
  auto it = steps_.upper_bound(n);
  if (it == steps_.begin()) return Subspace::zero(ambient_);
  return std::prev(it)->second;
}

void AscFiltration::normalize() {
  std::map<int, Subspace> out;
  Subspace prev = Subspace::zero(ambient_);
  for (auto& [n, s] : steps_) {
    if (s != prev) {
      prev = s;
      out.emplace(n, std::move(s));
    }
  }
  steps_ = std::move(out);
}

std::vector<int> AscFiltration::jumps() const {
  std::vector<int> out;
  Subspace prev = Subspace::zero(ambient_);
  for (const auto& [n, s] : steps_) {
    if (s != prev) out.push_back(n);
    prev = s;
  }
  return out;
}

std::pair<int, int> AscFiltration::support() const {
  std::vector<int> j = jumps();
  if (j.empty()) return {0, 0};
  return {j.front(), j.back()};
}

FiltrationReport AscFiltration::validate() const {
  FiltrationReport rep;
  auto [lo, hi] = support();
  rep.support_lo = lo;
  rep.support_hi = hi;
  const Subspace* prev = nullptr;
  int prev_n = 0;
  for (const auto& [n, s] : steps_) {
    if (prev && !s.contains(*prev)) {
      rep.ok = false;
      rep.violations.push_back({prev_n, n, "ascending filtration not monotone"});
    }
    prev = &s;
    prev_n = n;
  }
  if (ambient_ > 0) {
    if (steps_.empty() || !std::prev(steps_.end())->second.is_full()) {
      rep.ok = false;
      rep.violations.push_back(
          {prev_n, prev_n, "ascending filtration is not exhaustive (top step not full)"});
    }
  }
  return rep;
}

bool operator==(const AscFiltration& a, const AscFiltration& b) {
  if (a.ambient_ != b.ambient_) return false;
  AscFiltration x = a, y = b;
  x.normalize();
  y.normalize();
  return x.steps_ == y.steps_;
}

DescFiltration DescFiltration::single_jump(int ambient, int n) {
  DescFiltration f(ambient);
  f.set_step(n, Subspace::full(ambient));
  return f;
}

void DescFiltration::set_step(int n, Subspace s) {
  if (s.ambient() != ambient_)
    throw std::invalid_argument("filtration step has wrong ambient dimension");
  steps_[n] = std::move(s);
}

Subspace DescFiltration::at(int n) const {
  auto it = steps_.lower_bound(n);
  if (it == steps_.end()) return Subspace::zero(ambient_);
  return it->second;
}

void DescFiltration::normalize() {
  std::map<int, Subspace> out;
  Subspace prev = Subspace::zero(ambient_);
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    if (it->second != prev) {
      prev = it->second;
      out.emplace(it->first, std::move(it->second));
    }
  }
  steps_ = std::move(out);
}

std::vector<int> DescFiltration::jumps() const {
  std::vector<int> out;
  Subspace prev = Subspace::zero(ambient_);
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    if (it->second != prev) out.push_back(it->first);
    prev = it->second;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::pair<int, int> DescFiltration::support() const {
  std::vector<int> j = jumps();
  if (j.empty()) return {0, 0};
  return {j.front(), j.back()};
}

FiltrationReport DescFiltration::validate() const {
  FiltrationReport rep;
  auto [lo, hi] = support();
  rep.support_lo = lo;
  rep.support_hi = hi;
  const Subspace* prev = nullptr;
  int prev_n = 0;
  for (const auto& [n, s] : steps_) {
    if (prev && !prev->contains(s)) {
      rep.ok = false;
      rep.violations.push_back({prev_n, n, "descending filtration not monotone"});
    }
    prev = &s;
    prev_n = n;
  }
  if (ambient_ > 0) {
    if (steps_.empty() || !steps_.begin()->second.is_full()) {
      rep.ok = false;
      rep.violations.push_back(
          {prev_n, prev_n, "descending filtration is not exhaustive (bottom step not full)"});
    }
  }
  return rep;
}

bool operator==(const DescFiltration& a, const DescFiltration& b) {
  if (a.ambient_ != b.ambient_) return false;
  DescFiltration x = a, y = b;
  x.normalize();
  y.normalize();
  return x.steps_ == y.steps_;
}

AscFiltration induced_on(const AscFiltration& f, const Subspace& s) {
  AscFiltration out(f.ambient());
  for (const auto& [n, step] : f.steps()) out.set_step(n, intersect(step, s));
  out.normalize();
  return out;
}

DescFiltration induced_on(const DescFiltration& f, const Subspace& s) {
  DescFiltration out(f.ambient());
  for (const auto& [n, step] : f.steps()) out.set_step(n, intersect(step, s));
  out.normalize();
  return out;
}

AscFiltration image_filtration(const AscFiltration& f, const Mat& m, int target_dim) {
  AscFiltration out(target_dim);
  for (const auto& [n, step] : f.steps()) out.set_step(n, step.image_under(m));
  out.normalize();
  return out;
}

DescFiltration image_filtration(const DescFiltration& f, const Mat& m, int target_dim) {
  DescFiltration out(target_dim);
  for (const auto& [n, step] : f.steps()) out.set_step(n, step.image_under(m));
  out.normalize();
  return out;
}

AscFiltration restrict_to(const AscFiltration& f, const Subspace& r) {
  AscFiltration out(r.dim());
  for (const auto& [n, step] : f.steps()) {
    Subspace cut = intersect(step, r);
    std::vector<Vec> rows;
    for (const Vec& v : cut.basis()) rows.push_back(coords_in(r, v));
    out.set_step(n, Subspace::span(r.dim(), rows));
  }
  out.normalize();
  return out;
}

DescFiltration restrict_to(const DescFiltration& f, const Subspace& r) {
  DescFiltration out(r.dim());
  for (const auto& [n, step] : f.steps()) {
    Subspace cut = intersect(step, r);
    std::vector<Vec> rows;
    for (const Vec& v : cut.basis()) rows.push_back(coords_in(r, v));
    out.set_step(n, Subspace::span(r.dim(), rows));
  }
  out.normalize();
  return out;
}

}  // namespace plectic
