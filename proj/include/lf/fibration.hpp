#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lf/surface.hpp"

namespace lf {

/// Word-order convention recorded in every serialized artifact: letters act
/// left to right, i.e. the global monodromy is the matrix product
/// T(w1) T(w2) ... T(wl) acting on row vectors from the right.
inline const char* composition_convention() { return "left-to-right"; }

/// Ground-truth hypotheses the tool cannot decide; consumed by the check
/// suite. Absent optionals mean "unknown" and gate applicability.
struct GroundTruthFlags {
  std::optional<bool> rational_or_ruled;
  std::optional<int> ruled_base_genus;  // only meaningful when rational_or_ruled = true
  std::optional<bool> blowup_of_sphere_bundle;
  std::optional<std::string> known_manifold;

  bool operator==(const GroundTruthFlags&) const = default;
};

inline void validate_flags(const GroundTruthFlags& f) {
  if (f.ruled_base_genus && !(f.rational_or_ruled && *f.rational_or_ruled))
    throw error(errc::invalid_input,
                "ruled base genus may only be given together with rational_or_ruled = true");
  if (f.ruled_base_genus && *f.ruled_base_genus < 0)
    throw error(errc::invalid_input, "ruled base genus must be >= 0");
}

enum class ClosureVerdict { closed, closed_up_to_commutators, unverified, violated };

inline const char* closure_name(ClosureVerdict v) {
  switch (v) {
    case ClosureVerdict::closed: return "closed";
    case ClosureVerdict::closed_up_to_commutators: return "closed_up_to_commutators";
    case ClosureVerdict::unverified: return "unverified";
    case ClosureVerdict::violated: return "violated";
  }
  return "?";
}

struct FiberCounts {
  std::int64_t l = 0;  // singular fibers = word length
  std::int64_t n = 0;  // irreducible = non-separating twists
  std::int64_t s = 0;  // reducible = separating twists

  bool operator==(const FiberCounts&) const = default;
};

/// A positive Dehn-twist factorization: named curves on a genus-g fiber and a
/// nonempty word of them, over a base of genus h. For h > 0 the images of the
/// 2h base handles may be supplied to make closure checkable.
class Factorization {
 public:
  Factorization(std::string name, int fiber_genus, int base_genus,
                std::vector<std::pair<std::string, Curve>> curves, std::vector<std::string> word,
                std::optional<std::vector<SymplecticMatrix>> handle_monodromies = std::nullopt,
                GroundTruthFlags flags = {}, std::optional<bool> relatively_minimal = std::nullopt)
      : name_(std::move(name)),
        fiber_genus_(fiber_genus),
        base_genus_(base_genus),
        curves_(std::move(curves)),
        word_(std::move(word)),
        handles_(std::move(handle_monodromies)),
        flags_(std::move(flags)),
        relatively_minimal_(relatively_minimal) {
    if (fiber_genus_ < 0) throw error(errc::invalid_input, "fiber genus must be >= 0");
    if (base_genus_ < 0) throw error(errc::invalid_input, "base genus must be >= 0");
    if (word_.empty()) throw error(errc::invalid_input, "the twist word must be nonempty");
    for (std::size_t i = 0; i < curves_.size(); ++i) {
      validate_curve(curves_[i].second, fiber_genus_, curves_[i].first);
      for (std::size_t j = i + 1; j < curves_.size(); ++j)
        if (curves_[i].first == curves_[j].first)
          throw error(errc::invalid_input, "duplicate curve name '" + curves_[i].first + "'");
    }
    for (const std::string& w : word_)
      if (!find(w)) throw error(errc::invalid_input, "undeclared curve '" + w + "' in word");
    if (handles_) {
      if (base_genus_ == 0)
        throw error(errc::invalid_input, "handle monodromies require base genus > 0");
      if (static_cast<int>(handles_->size()) != 2 * base_genus_)
        throw error(errc::invalid_input, "expected 2h handle monodromies");
      for (const SymplecticMatrix& m : *handles_)
        if (m.genus() != fiber_genus_)
          throw error(errc::genus_mismatch, "handle monodromy genus differs from fiber genus");
    }
    validate_flags(flags_);
  }

  const std::string& name() const { return name_; }
  int fiber_genus() const { return fiber_genus_; }
  int base_genus() const { return base_genus_; }
  const std::vector<std::pair<std::string, Curve>>& curves() const { return curves_; }
  const std::vector<std::string>& word() const { return word_; }
  const std::optional<std::vector<SymplecticMatrix>>& handle_monodromies() const { return handles_; }
  const GroundTruthFlags& flags() const { return flags_; }
  std::optional<bool> relatively_minimal() const { return relatively_minimal_; }

  const Curve* find(const std::string& name) const {
    for (const auto& [n, c] : curves_)
      if (n == name) return &c;
    return nullptr;
  }

  const Curve& curve_at(std::size_t word_index) const { return *find(word_[word_index]); }

  bool operator==(const Factorization&) const = default;

 private:
  std::string name_;
  int fiber_genus_;
  int base_genus_;
  std::vector<std::pair<std::string, Curve>> curves_;
  std::vector<std::string> word_;
  std::optional<std::vector<SymplecticMatrix>> handles_;
  GroundTruthFlags flags_;
  std::optional<bool> relatively_minimal_;
};

inline FiberCounts counts(const Factorization& f) {
  FiberCounts c;
  c.l = static_cast<std::int64_t>(f.word().size());
  for (std::size_t i = 0; i < f.word().size(); ++i) {
    if (f.curve_at(i).separating())
      ++c.s;
    else
      ++c.n;
  }
  return c;
}

/// Product of the twist matrices in word order (leftmost letter first).
inline SymplecticMatrix monodromy_product(const Factorization& f) {
  const int g = f.fiber_genus();
  SymplecticMatrix p = SymplecticMatrix::identity(g);
  for (std::size_t i = 0; i < f.word().size(); ++i) p = p * transvection(f.curve_at(i), g);
  return p;
}

/// Homology-level closure test. Over the sphere the word must multiply to the
/// identity. Over a genus-h base with handle monodromies C1,D1,...,Ch,Dh the
/// word must equal the commutator product [C1,D1]...[Ch,Dh]; without handle
/// data the condition cannot be decided. These verdicts are necessary
/// conditions only: mapping-class-group triviality is not decided here.
inline ClosureVerdict verify_closure(const Factorization& f) {
  SymplecticMatrix p = monodromy_product(f);
  if (f.base_genus() == 0)
    return p.is_identity() ? ClosureVerdict::closed : ClosureVerdict::violated;
  if (!f.handle_monodromies()) return ClosureVerdict::unverified;
  SymplecticMatrix target = SymplecticMatrix::identity(f.fiber_genus());
  const auto& hs = *f.handle_monodromies();
  for (int i = 0; i < f.base_genus(); ++i) {
    const SymplecticMatrix& c = hs[2 * i];
    const SymplecticMatrix& d = hs[2 * i + 1];
    target = target * (c * d * c.inverse() * d.inverse());
  }
  return p == target ? ClosureVerdict::closed : ClosureVerdict::violated;
}

}  // namespace lf
