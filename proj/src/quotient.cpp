// Copyright 2026 The opalg Authors
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

#include "opalg/quotient.hpp"

#include "opalg/error.hpp"
#include "opalg/kernels.hpp"

namespace opalg {

WeakEffectAlgebra::WeakEffectAlgebra(PhenoTheory theory, std::vector<Effect> effects,
                                     PartialTable oplus,
                                     std::vector<std::size_t> orthosupplement,
                                     std::size_t unit, std::size_t zero)
    : theory_(std::move(theory)),
      effects_(std::move(effects)),
      oplus_(std::move(oplus)),
      ortho_(std::move(orthosupplement)),
      unit_(unit),
      zero_(zero) {
  for (const auto& e : effects_) by_signature_.emplace(e.signature, e.id);
}

std::size_t WeakEffectAlgebra::effect_of(const Event& e) const {
  if (e.measurement >= theory_.num_measurements()) {
    throw Error(ErrorCode::UnknownEvent, "event measurement out of range");
  }
  QVec sig(theory_.num_states());
  for (std::size_t s = 0; s < sig.size(); ++s) sig[s] = event_probability(theory_, s, e);
  auto id = find_signature(sig);
  if (!id) throw Error(ErrorCode::UnknownEvent, "event " + theory_.describe(e) + " has no class");
  return *id;
}

std::optional<std::size_t> WeakEffectAlgebra::find_signature(const QVec& signature) const {
  auto it = by_signature_.find(signature);
  if (it == by_signature_.end()) return std::nullopt;
  return it->second;
}

QVec WeakEffectAlgebra::induced_state(std::size_t s) const {
  if (s >= theory_.num_states()) throw Error(ErrorCode::UnknownState, std::to_string(s));
  QVec v(effects_.size());
  for (std::size_t i = 0; i < effects_.size(); ++i) v[i] = effects_[i].signature[s];
  return v;
}

bool WeakEffectAlgebra::is_orthoalgebra() const {
  for (std::size_t x = 0; x < size(); ++x) {
    if (x != zero_ && oplus_.defined(x, x)) return false;
  }
  return true;
}

WeakEffectAlgebra build_wea(const PhenoTheory& theory, std::size_t effect_cap) {
  const std::size_t num_states = theory.num_states();
  std::vector<Effect> effects;
  std::map<QVec, std::size_t> by_sig;
  // classes[m][mask] = effect id of that event
  std::vector<std::vector<std::size_t>> classes(theory.num_measurements());

  for (std::size_t m = 0; m < theory.num_measurements(); ++m) {
    const std::size_t n = theory.measurement_size(m);
    const std::uint32_t full = theory.full_event(m).outcomes;
    std::vector<QVec> sigs(std::size_t{full} + 1, zeros(num_states));
    classes[m].resize(std::size_t{full} + 1);
    for (std::uint32_t mask = 0;; ++mask) {
      if (mask != 0) {
        const auto low = static_cast<std::size_t>(__builtin_ctz(mask));
        const auto& prev = sigs[mask & (mask - 1)];
        for (std::size_t s = 0; s < num_states; ++s)
          sigs[mask][s] = prev[s] + theory.value(s, m, low);
      }
      auto [it, inserted] = by_sig.emplace(sigs[mask], effects.size());
      if (inserted) {
        if (effects.size() >= effect_cap) {
          throw Error(ErrorCode::SizeCapExceeded,
                      "more than " + std::to_string(effect_cap) + " effect classes");
        }
        effects.push_back(Effect{effects.size(), sigs[mask], {}});
      }
      effects[it->second].witnesses.push_back(Event{m, mask});
      classes[m][mask] = it->second;
      if (mask == full) break;
    }
    (void)n;
  }

  const std::size_t count = effects.size();
  PartialTable oplus(count);
  std::vector<std::size_t> ortho(count, count);
  const std::size_t zero = classes[0][0];
  const std::size_t unit = classes[0][theory.full_event(0).outcomes];

  for (std::size_t m = 0; m < theory.num_measurements(); ++m) {
    const std::uint32_t full = theory.full_event(m).outcomes;
    const auto& cls = classes[m];
    if (cls[0] != zero || cls[full] != unit) {
      throw Error(ErrorCode::InternalInconsistency,
                  "empty or full events of different measurements fell into different classes");
    }
    // Every ordered pair of disjoint events (a, b) with a | b = u.
    for (std::uint32_t u = 0;; ++u) {
      for (std::uint32_t a = u;; a = (a - 1) & u) {
        const std::uint32_t b = u ^ a;
        const auto x = cls[a], y = cls[b], r = cls[u];
        const auto existing = oplus.at(x, y);
        if (existing == PartialTable::kUndefined) {
          oplus.set_symmetric(x, y, static_cast<std::int32_t>(r));
        } else if (static_cast<std::size_t>(existing) != r) {
          throw Error(ErrorCode::InternalInconsistency,
                      "sum of effects " + std::to_string(x) + " and " + std::to_string(y) +
                          " depends on the witnessing events");
        }
        if (a == 0) break;
      }
      const auto x = cls[u], c = cls[full ^ u];
      if (ortho[x] == count) {
        ortho[x] = c;
      } else if (ortho[x] != c) {
        throw Error(ErrorCode::InternalInconsistency,
                    "orthosupplement of effect " + std::to_string(x) + " is not well defined");
      }
      if (u == full) break;
    }
  }
  return WeakEffectAlgebra(theory, std::move(effects), std::move(oplus), std::move(ortho), unit,
                           zero);
}

StrongAssociativity check_strong_associativity(const WeakEffectAlgebra& wea) {
  StrongAssociativity result;
  if (auto t = kernels::strong_assoc_scan_parallel(wea.oplus())) {
    result.holds = false;
    result.counterexample = EffectTriple{(*t)[0], (*t)[1], (*t)[2]};
  }
  return result;
}

std::vector<EffectTriple> strong_associativity_violations(const WeakEffectAlgebra& wea) {
  const auto& t = wea.oplus();
  auto hits = kernels::all_triples_parallel(t.size(), [&](auto x, auto y, auto z) {
    return kernels::strong_assoc_fails(t, x, y, z);
  });
  std::vector<EffectTriple> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back({h[0], h[1], h[2]});
  return out;
}

namespace {

class Saturation {
 public:
  Saturation(const WeakEffectAlgebra& wea, std::size_t cap)
      : effects_(wea.effects()),
        table_(wea.oplus()),
        ortho_(wea.orthosupplements()),
        unit_(wea.unit()),
        zero_(wea.zero()),
        cap_(cap) {
    for (const auto& e : effects_) by_sig_.emplace(e.signature, e.id);
  }

  void run() {
    bool changed = true;
    while (changed) {
      changed = false;
      const std::size_t n = effects_.size();
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          const auto xy = table_.at(x, y);
          if (xy == PartialTable::kUndefined) continue;
          for (std::size_t z = 0; z < n; ++z) {
            const auto lhs = table_.at(static_cast<std::size_t>(xy), z);
            if (lhs == PartialTable::kUndefined) continue;
            auto yz = table_.at(y, z);
            if (yz == PartialTable::kUndefined) {
              auto [w, fresh] = find_or_adjoin(add(effects_[y].signature, effects_[z].signature));
              impose(y, z, w, fresh, triple_reason(x, y, z, "imposed y+z"));
              yz = static_cast<std::int32_t>(w);
              changed = true;
            }
            if (!table_.defined(x, static_cast<std::size_t>(yz))) {
              impose(x, static_cast<std::size_t>(yz), static_cast<std::size_t>(lhs), false,
                     triple_reason(x, y, z, "imposed x+(y+z)"));
              changed = true;
            }
          }
        }
      for (std::size_t e = 0; e < effects_.size(); ++e) {
        if (ortho_[e] < effects_.size()) continue;
        QVec complement = sub(effects_[unit_].signature, effects_[e].signature);
        auto [c, fresh] = find_or_adjoin(complement);
        impose(e, c, unit_, fresh, "orthosupplement of adjoined element " + std::to_string(e));
        ortho_[e] = c;
        ortho_[c] = e;
        changed = true;
      }
    }
  }

  CompletionResult finish(const PhenoTheory& theory, std::size_t original_size) {
    std::vector<Effect> adjoined(effects_.begin() + static_cast<std::ptrdiff_t>(original_size),
                                 effects_.end());
    WeakEffectAlgebra algebra(theory, effects_, table_, ortho_, unit_, zero_);
    CompletionResult result{std::move(algebra), std::move(adjoined), false, std::move(trace_),
                            std::nullopt};
    auto scan = check_strong_associativity(result.algebra);
    if (!scan.holds) {
      result.failure_trace = scan.counterexample;
    }
    result.is_effect_algebra = scan.holds && unique_complements() && unit_only_with_zero();
    return result;
  }

 private:
  std::pair<std::size_t, bool> find_or_adjoin(const QVec& sig) {
    auto it = by_sig_.find(sig);
    if (it != by_sig_.end()) return {it->second, false};
    for (const auto& v : sig) {
      if (v < 0 || v > 1) {
        throw Error(ErrorCode::InternalInconsistency, "forced signature leaves [0,1]");
      }
    }
    if (effects_.size() >= cap_) {
      throw Error(ErrorCode::SizeCapExceeded,
                  "completion exceeded " + std::to_string(cap_) + " elements");
    }
    const std::size_t id = effects_.size();
    effects_.push_back(Effect{id, sig, {}});
    by_sig_.emplace(sig, id);
    table_.resize(id + 1);
    ortho_.push_back(kNoOrtho);
    return {id, true};
  }

  void impose(std::size_t x, std::size_t y, std::size_t r, bool adjoined, std::string reason) {
    if (add(effects_[x].signature, effects_[y].signature) != effects_[r].signature) {
      throw Error(ErrorCode::NonSeparatingCollision,
                  "forced sum " + std::to_string(x) + "+" + std::to_string(y) + "=" +
                      std::to_string(r) + " is not additive on signatures");
    }
    const auto existing = table_.at(x, y);
    if (existing != PartialTable::kUndefined && static_cast<std::size_t>(existing) != r) {
      throw Error(ErrorCode::NonSeparatingCollision,
                  "forced sum " + std::to_string(x) + "+" + std::to_string(y) +
                      " collides with existing entry " + std::to_string(existing));
    }
    table_.set_symmetric(x, y, static_cast<std::int32_t>(r));
    trace_.push_back(ForcedSum{x, y, r, adjoined, std::move(reason)});
  }

  static std::string triple_reason(std::size_t x, std::size_t y, std::size_t z,
                                   const char* what) {
    return "(" + std::to_string(x) + "+" + std::to_string(y) + ")+" + std::to_string(z) +
           " defined; " + what;
  }

  bool unique_complements() const {
    for (std::size_t x = 0; x < effects_.size(); ++x) {
      std::size_t count = 0;
      for (std::size_t y = 0; y < effects_.size(); ++y)
        if (table_.at(x, y) == static_cast<std::int32_t>(unit_)) ++count;
      if (count != 1) return false;
    }
    return true;
  }

  bool unit_only_with_zero() const {
    for (std::size_t x = 0; x < effects_.size(); ++x)
      if (x != zero_ && table_.defined(x, unit_)) return false;
    return true;
  }

  static constexpr std::size_t kNoOrtho = static_cast<std::size_t>(-1);

  std::vector<Effect> effects_;
  PartialTable table_;
  std::vector<std::size_t> ortho_;
  std::size_t unit_;
  std::size_t zero_;
  std::size_t cap_;
  std::map<QVec, std::size_t> by_sig_;
  std::vector<ForcedSum> trace_;
};

}  // namespace

CompletionResult complete_wea(const WeakEffectAlgebra& wea, std::size_t element_cap) {
  Saturation sat(wea, element_cap);
  sat.run();
  return sat.finish(wea.theory(), wea.size());
}

}  // namespace opalg
