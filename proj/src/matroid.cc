// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "parbasis/matroid.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace parbasis {

std::string KindName(MatroidKind kind) {
  switch (kind) {
    case MatroidKind::kUniform:
      return "uniform";
    case MatroidKind::kPartition:
      return "partition";
    case MatroidKind::kGraphic:
      return "graphic";
    case MatroidKind::kLinear:
      return "linear";
    case MatroidKind::kDirectSum:
      return "direct-sum";
  }
  return "unknown";
}

bool IndependenceState::CanExtend(std::span<const ElementId> extra) const {
  if (!independent()) return false;
  auto copy = Clone();
  for (ElementId e : extra) {
    if (!copy->Add(e)) return false;
  }
  return true;
}

bool MatroidInstance::IsIndependent(std::span<const ElementId> s) const {
  auto state = NewState();
  for (ElementId e : s) {
    if (!state->Add(e)) return false;
  }
  return true;
}

bool MatroidInstance::IsIndependent(const ElementSet& s) const {
  auto state = NewState();
  for (ElementId e : s) {
    if (!state->Add(e)) return false;
  }
  return true;
}

std::vector<bool> MatroidInstance::SwapAnswers(
    std::span<const ElementId> base, ElementId x,
    std::span<const ElementId> removals) const {
  return SwapAnswersGeneric(base, x, removals);
}

std::vector<bool> MatroidInstance::SwapAnswersGeneric(
    std::span<const ElementId> base, ElementId x,
    std::span<const ElementId> removals) const {
  std::vector<bool> out(removals.size());
  for (std::size_t i = 0; i < removals.size(); ++i) {
    auto state = NewState();
    bool ok = true;
    for (ElementId e : base) {
      if (e == removals[i] || e == x) continue;
      if (!state->Add(e)) {
        ok = false;
        break;
      }
    }
    if (ok) ok = state->Add(x);
    out[i] = ok;
  }
  return out;
}

namespace {

ElementSet Membership(std::size_t universe, std::span<const ElementId> s) {
  return ElementSet::Of(universe, s);
}

// ---------------------------------------------------------------- uniform

class UniformState final : public IndependenceState {
 public:
  explicit UniformState(std::size_t rank) : rank_(rank) {}
  std::unique_ptr<IndependenceState> Clone() const override {
    return std::make_unique<UniformState>(*this);
  }
  bool CanAdd(ElementId) const override {
    return independent() && count_ + 1 <= rank_;
  }
  bool CanExtend(std::span<const ElementId> extra) const override {
    return independent() && count_ + extra.size() <= rank_;
  }

 protected:
  void Commit(ElementId) override { ++count_; }

 private:
  std::size_t rank_;
  std::size_t count_ = 0;
};

// -------------------------------------------------------------- partition

class PartitionState final : public IndependenceState {
 public:
  explicit PartitionState(const PartitionMatroid& m)
      : m_(&m), counts_(m.parts().size(), 0) {}
  std::unique_ptr<IndependenceState> Clone() const override {
    return std::make_unique<PartitionState>(*this);
  }
  bool CanAdd(ElementId e) const override {
    std::size_t p = m_->part_of(e);
    return independent() && counts_[p] + 1 <= m_->budgets()[p];
  }
  bool CanExtend(std::span<const ElementId> extra) const override {
    if (!independent()) return false;
    if (extra.size() > 8) return IndependenceState::CanExtend(extra);
    for (std::size_t i = 0; i < extra.size(); ++i) {
      std::size_t p = m_->part_of(extra[i]);
      std::size_t same = 0;
      for (std::size_t j = 0; j < extra.size(); ++j) {
        if (m_->part_of(extra[j]) == p) ++same;
      }
      if (counts_[p] + same > m_->budgets()[p]) return false;
    }
    return true;
  }

 protected:
  void Commit(ElementId e) override { ++counts_[m_->part_of(e)]; }

 private:
  const PartitionMatroid* m_;
  std::vector<std::uint32_t> counts_;
};

// ---------------------------------------------------------------- graphic

class GraphicState final : public IndependenceState {
 public:
  explicit GraphicState(const GraphicMatroid& m)
      : m_(&m), parent_(m.vertices()) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  std::unique_ptr<IndependenceState> Clone() const override {
    return std::make_unique<GraphicState>(*this);
  }
  bool CanAdd(ElementId e) const override {
    if (!independent()) return false;
    auto [u, v] = m_->edges()[e];
    return Find(u) != Find(v);
  }
  bool CanExtend(std::span<const ElementId> extra) const override {
    if (!independent()) return false;
    if (extra.size() > 8) return IndependenceState::CanExtend(extra);
    // Union-find over the (few) roots touched by `extra`.
    std::vector<std::uint32_t> roots;
    std::vector<std::uint32_t> local;
    auto local_find = [&](std::uint32_t r) {
      std::size_t i = std::find(roots.begin(), roots.end(), r) - roots.begin();
      if (i == roots.size()) {
        roots.push_back(r);
        local.push_back(static_cast<std::uint32_t>(i));
      }
      while (local[i] != i) i = local[i];
      return i;
    };
    for (ElementId e : extra) {
      auto [u, v] = m_->edges()[e];
      std::size_t a = local_find(Find(u));
      std::size_t b = local_find(Find(v));
      if (a == b) return false;
      local[a] = static_cast<std::uint32_t>(b);
    }
    return true;
  }

 protected:
  void Commit(ElementId e) override {
    auto [u, v] = m_->edges()[e];
    parent_[Find(u)] = Find(v);
  }

 private:
  std::uint32_t Find(std::uint32_t v) const {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  const GraphicMatroid* m_;
  mutable std::vector<std::uint32_t> parent_;
};

// ----------------------------------------------------------------- linear

std::uint32_t PowMod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t InvMod(std::uint32_t a, std::uint32_t p) {
  return PowMod(a, p - 2, p);
}

// Row-echelon basis: every stored vector is zero at the pivots of the vectors
// stored before it and 1 at its own pivot.
class EchelonBasis {
 public:
  EchelonBasis(std::uint32_t prime, std::size_t rows)
      : prime_(prime), rows_(rows) {}

  void Reduce(std::vector<std::uint32_t>& v) const {
    for (std::size_t k = 0; k < vectors_.size(); ++k) {
      std::uint32_t c = v[pivots_[k]];
      if (c == 0) continue;
      const auto& b = vectors_[k];
      std::uint64_t neg = prime_ - c;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (b[r] != 0) v[r] = static_cast<std::uint32_t>((v[r] + neg * b[r]) % prime_);
      }
    }
  }

  // Inserts an already-reduced vector; returns false if it is zero.
  bool InsertReduced(std::vector<std::uint32_t> v) {
    std::size_t pivot = 0;
    while (pivot < rows_ && v[pivot] == 0) ++pivot;
    if (pivot == rows_) return false;
    std::uint64_t inv = InvMod(v[pivot], prime_);
    for (auto& x : v) x = static_cast<std::uint32_t>(x * inv % prime_);
    vectors_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }

  std::size_t size() const { return vectors_.size(); }

 private:
  std::uint32_t prime_;
  std::size_t rows_;
  std::vector<std::vector<std::uint32_t>> vectors_;
  std::vector<std::size_t> pivots_;
};

class LinearState final : public IndependenceState {
 public:
  explicit LinearState(const LinearMatroid& m)
      : m_(&m), basis_(m.prime(), m.rows()) {}
  std::unique_ptr<IndependenceState> Clone() const override {
    return std::make_unique<LinearState>(*this);
  }
  bool CanAdd(ElementId e) const override {
    if (!independent()) return false;
    if (basis_.size() >= m_->rows()) return false;
    auto v = m_->columns()[e];
    basis_.Reduce(v);
    return std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; });
  }
  bool CanExtend(std::span<const ElementId> extra) const override {
    if (!independent()) return false;
    if (basis_.size() + extra.size() > m_->rows()) return false;
    EchelonBasis local(m_->prime(), m_->rows());
    for (ElementId e : extra) {
      auto v = m_->columns()[e];
      basis_.Reduce(v);
      local.Reduce(v);
      if (!local.InsertReduced(std::move(v))) return false;
    }
    return true;
  }

 protected:
  void Commit(ElementId e) override {
    auto v = m_->columns()[e];
    basis_.Reduce(v);
    basis_.InsertReduced(std::move(v));
  }

 private:
  const LinearMatroid* m_;
  EchelonBasis basis_;
};

// ------------------------------------------------------------- direct sum

class DirectSumState final : public IndependenceState {
 public:
  explicit DirectSumState(const DirectSumMatroid& m) : m_(&m) {
    for (const auto& child : m.children()) states_.push_back(child->NewState());
  }
  DirectSumState(const DirectSumState& other)
      : IndependenceState(other), m_(other.m_) {
    for (const auto& s : other.states_) states_.push_back(s->Clone());
  }
  std::unique_ptr<IndependenceState> Clone() const override {
    return std::make_unique<DirectSumState>(*this);
  }
  bool CanAdd(ElementId e) const override {
    if (!independent()) return false;
    std::size_t c = m_->child_of(e);
    return states_[c]->CanAdd(static_cast<ElementId>(e - m_->offsets()[c]));
  }
  bool CanExtend(std::span<const ElementId> extra) const override {
    if (!independent()) return false;
    std::vector<std::vector<ElementId>> grouped(states_.size());
    for (ElementId e : extra) {
      std::size_t c = m_->child_of(e);
      grouped[c].push_back(static_cast<ElementId>(e - m_->offsets()[c]));
    }
    for (std::size_t c = 0; c < states_.size(); ++c) {
      if (!grouped[c].empty() && !states_[c]->CanExtend(grouped[c])) return false;
    }
    return true;
  }

 protected:
  void Commit(ElementId e) override {
    std::size_t c = m_->child_of(e);
    states_[c]->Add(static_cast<ElementId>(e - m_->offsets()[c]));
  }

 private:
  const DirectSumMatroid* m_;
  std::vector<std::unique_ptr<IndependenceState>> states_;
};

}  // namespace

// ------------------------------------------------------------------ uniform

UniformMatroid::UniformMatroid(std::size_t n, std::size_t rank)
    : MatroidInstance(n), rank_(rank) {
  if (rank > n) throw std::invalid_argument("uniform rank exceeds ground size");
}

std::unique_ptr<IndependenceState> UniformMatroid::NewState() const {
  return std::make_unique<UniformState>(rank_);
}

std::vector<bool> UniformMatroid::SwapAnswers(
    std::span<const ElementId> base, ElementId x,
    std::span<const ElementId> removals) const {
  ElementSet members = Membership(ground_size(), base);
  std::size_t size = members.size() + (members.contains(x) ? 0 : 1);
  std::vector<bool> out(removals.size());
  for (std::size_t i = 0; i < removals.size(); ++i) {
    ElementId y = removals[i];
    std::size_t s = size - ((y != x && members.contains(y)) ? 1 : 0);
    out[i] = s <= rank_;
  }
  return out;
}

// ---------------------------------------------------------------- partition

PartitionMatroid::PartitionMatroid(std::size_t n,
                                   std::vector<std::vector<ElementId>> parts,
                                   std::vector<std::size_t> budgets)
    : MatroidInstance(n),
      parts_(std::move(parts)),
      budgets_(std::move(budgets)),
      part_of_(n, UINT32_MAX) {
  if (parts_.size() != budgets_.size()) {
    throw std::invalid_argument("partition: parts and budgets differ in count");
  }
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (budgets_[i] > parts_[i].size()) {
      throw std::invalid_argument("partition: budget of part " +
                                  std::to_string(i) + " exceeds its size");
    }
    for (ElementId e : parts_[i]) {
      if (e >= n) throw std::invalid_argument("partition: element out of range");
      if (part_of_[e] != UINT32_MAX) {
        throw std::invalid_argument("partition: element " + std::to_string(e) +
                                    " in two parts");
      }
      part_of_[e] = static_cast<std::uint32_t>(i);
    }
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (part_of_[e] == UINT32_MAX) {
      throw std::invalid_argument("partition: element " + std::to_string(e) +
                                  " in no part");
    }
  }
}

std::size_t PartitionMatroid::RankOf(const ElementSet& s) const {
  std::vector<std::size_t> counts(parts_.size(), 0);
  for (ElementId e : s) ++counts[part_of_[e]];
  std::size_t rank = 0;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    rank += std::min(counts[i], budgets_[i]);
  }
  return rank;
}

std::unique_ptr<IndependenceState> PartitionMatroid::NewState() const {
  return std::make_unique<PartitionState>(*this);
}

std::vector<bool> PartitionMatroid::SwapAnswers(
    std::span<const ElementId> base, ElementId x,
    std::span<const ElementId> removals) const {
  ElementSet members = Membership(ground_size(), base);
  std::vector<std::int64_t> counts(parts_.size(), 0);
  for (ElementId e : members) ++counts[part_of_[e]];
  if (!members.contains(x)) ++counts[part_of_[x]];
  std::size_t over = 0;
  for (std::size_t p = 0; p < parts_.size(); ++p) {
    if (counts[p] > static_cast<std::int64_t>(budgets_[p])) ++over;
  }
  std::vector<bool> out(removals.size());
  for (std::size_t i = 0; i < removals.size(); ++i) {
    ElementId y = removals[i];
    bool removed = y != x && members.contains(y);
    if (!removed) {
      out[i] = over == 0;
      continue;
    }
    std::size_t p = part_of_[y];
    std::size_t o = over;
    if (counts[p] > static_cast<std::int64_t>(budgets_[p]) &&
        counts[p] - 1 <= static_cast<std::int64_t>(budgets_[p])) {
      --o;
    }
    out[i] = o == 0;
  }
  return out;
}

// ------------------------------------------------------------------ graphic

GraphicMatroid::GraphicMatroid(
    std::size_t vertices,
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges)
    : MatroidInstance(edges.size()), vertices_(vertices), edges_(std::move(edges)) {
  for (auto [u, v] : edges_) {
    if (u >= vertices_ || v >= vertices_) {
      throw std::invalid_argument("graphic: edge endpoint out of range");
    }
  }
}

std::unique_ptr<IndependenceState> GraphicMatroid::NewState() const {
  return std::make_unique<GraphicState>(*this);
}

std::vector<bool> GraphicMatroid::SwapAnswers(
    std::span<const ElementId> base, ElementId x,
    std::span<const ElementId> removals) const {
  ElementSet members = Membership(ground_size(), base);
  if (members.contains(x) || members.size() != base.size() ||
      !IsIndependent(base)) {
    return SwapAnswersGeneric(base, x, removals);
  }
  std::vector<bool> out(removals.size(), false);
  auto [source, target] = edges_[x];
  if (source == target) return out;  // a loop is never independent

  // BFS through the forest formed by `base` looking for source -> target.
  std::vector<std::vector<std::pair<std::uint32_t, ElementId>>> adj(vertices_);
  for (ElementId e : base) {
    auto [u, v] = edges_[e];
    adj[u].push_back({v, e});
    adj[v].push_back({u, e});
  }
  std::vector<std::int64_t> via(vertices_, -1);
  std::vector<std::uint32_t> from(vertices_, 0);
  std::vector<bool> seen(vertices_, false);
  std::vector<std::uint32_t> queue{source};
  seen[source] = true;
  for (std::size_t head = 0; head < queue.size() && !seen[target]; ++head) {
    std::uint32_t u = queue[head];
    for (auto [w, e] : adj[u]) {
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = e;
      from[w] = u;
      queue.push_back(w);
    }
  }
  if (!seen[target]) {
    // base + x is independent, so every base - y + x is too.
    return std::vector<bool>(removals.size(), true);
  }
  ElementSet path(ground_size());
  for (std::uint32_t v = target; v != source; v = from[v]) {
    path.insert(static_cast<ElementId>(via[v]));
  }
  for (std::size_t i = 0; i < removals.size(); ++i) {
    out[i] = path.contains(removals[i]);
  }
  return out;
}

// ------------------------------------------------------------------- linear

bool IsPrime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

LinearMatroid::LinearMatroid(std::uint32_t prime, std::size_t rows,
                             std::vector<std::vector<std::uint32_t>> columns)
    : MatroidInstance(columns.size()),
      prime_(prime),
      rows_(rows),
      columns_(std::move(columns)) {
  if (!IsPrime(prime_) || prime_ > (1u << 16)) {
    throw std::invalid_argument("linear: field modulus must be a prime <= 65536");
  }
  for (auto& col : columns_) {
    if (col.size() != rows_) {
      throw std::invalid_argument("linear: column has wrong number of entries");
    }
    for (auto& x : col) x %= prime_;
  }
}

std::unique_ptr<IndependenceState> LinearMatroid::NewState() const {
  return std::make_unique<LinearState>(*this);
}

std::vector<bool> LinearMatroid::SwapAnswers(
    std::span<const ElementId> base, ElementId x,
    std::span<const ElementId> removals) const {
  const std::size_t t = base.size();
  ElementSet members = Membership(ground_size(), base);
  if (members.contains(x) || members.size() != t || t > rows_) {
    return SwapAnswersGeneric(base, x, removals);
  }
  // Reduce [base | x] to reduced row echelon form.
  const std::size_t cols = t + 1;
  std::vector<std::vector<std::uint64_t>> mat(rows_,
                                               std::vector<std::uint64_t>(cols));
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t r = 0; r < rows_; ++r) mat[r][j] = columns_[base[j]][r];
  }
  for (std::size_t r = 0; r < rows_; ++r) mat[r][t] = columns_[x][r];
  std::vector<std::int64_t> pivot_row(cols, -1);
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows_; ++c) {
    std::size_t sel = row;
    while (sel < rows_ && mat[sel][c] == 0) ++sel;
    if (sel == rows_) continue;
    std::swap(mat[sel], mat[row]);
    std::uint64_t inv = InvMod(static_cast<std::uint32_t>(mat[row][c]), prime_);
    for (auto& v : mat[row]) v = v * inv % prime_;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || mat[r][c] == 0) continue;
      std::uint64_t f = prime_ - mat[r][c];
      for (std::size_t k = c; k < cols; ++k) {
        mat[r][k] = (mat[r][k] + f * mat[row][k]) % prime_;
      }
    }
    pivot_row[c] = static_cast<std::int64_t>(row);
    ++row;
  }
  for (std::size_t j = 0; j < t; ++j) {
    if (pivot_row[j] < 0) return SwapAnswersGeneric(base, x, removals);
  }
  if (pivot_row[t] >= 0) return std::vector<bool>(removals.size(), true);
  // x = sum_j coeff_j * base_j; base - y + x is independent iff coeff_y != 0.
  std::vector<bool> out(removals.size(), false);
  for (std::size_t i = 0; i < removals.size(); ++i) {
    auto it = std::find(base.begin(), base.end(), removals[i]);
    if (it == base.end()) {
      out[i] = false;
      continue;
    }
    std::size_t j = static_cast<std::size_t>(it - base.begin());
    out[i] = mat[static_cast<std::size_t>(pivot_row[j])][t] != 0;
  }
  return out;
}

// --------------------------------------------------------------- direct sum

DirectSumMatroid::DirectSumMatroid(
    std::vector<std::shared_ptr<const MatroidInstance>> children)
    : MatroidInstance([&] {
        std::size_t n = 0;
        for (const auto& c : children) n += c->ground_size();
        return n;
      }()),
      children_(std::move(children)) {
  std::size_t offset = 0;
  for (const auto& c : children_) {
    offsets_.push_back(offset);
    offset += c->ground_size();
  }
}

std::size_t DirectSumMatroid::child_of(ElementId e) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(),
                             static_cast<std::size_t>(e));
  return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

std::unique_ptr<IndependenceState> DirectSumMatroid::NewState() const {
  return std::make_unique<DirectSumState>(*this);
}

std::vector<bool> DirectSumMatroid::SwapAnswers(
    std::span<const ElementId> base, ElementId x,
    std::span<const ElementId> removals) const {
  const std::size_t cx = child_of(x);
  std::vector<std::vector<ElementId>> local(children_.size());
  for (ElementId e : base) {
    std::size_t c = child_of(e);
    local[c].push_back(static_cast<ElementId>(e - offsets_[c]));
  }
  for (std::size_t c = 0; c < children_.size(); ++c) {
    if (c != cx && !children_[c]->IsIndependent(local[c])) {
      return SwapAnswersGeneric(base, x, removals);
    }
  }
  const ElementId lx = static_cast<ElementId>(x - offsets_[cx]);
  std::vector<ElementId> local_removals;
  for (ElementId y : removals) {
    if (child_of(y) == cx) {
      local_removals.push_back(static_cast<ElementId>(y - offsets_[cx]));
    }
  }
  std::vector<bool> inner =
      children_[cx]->SwapAnswers(local[cx], lx, local_removals);
  std::vector<ElementId> with_x = local[cx];
  if (std::find(with_x.begin(), with_x.end(), lx) == with_x.end()) {
    with_x.push_back(lx);
  }
  const bool untouched = children_[cx]->IsIndependent(with_x);
  std::vector<bool> out(removals.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < removals.size(); ++i) {
    out[i] = child_of(removals[i]) == cx ? inner[k++] : untouched;
  }
  return out;
}

}  // namespace parbasis
