#pragma once

// Uniform pre-B-system interface over explicit tables and term systems.
//
// Operation names follow their role: weaken = T, weaken_judgement = T~,
// substitute = S, substitute_judgement = S~, unit = delta.

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "bsys/carrier.hpp"
#include "bsys/termsys.hpp"

namespace bsys {

/// Backend of a pre-B-system. The raw_* operations may assume their side
/// conditions hold; the checked free functions below verify them first.
class BSysView : public Carrier {
 public:
  virtual bool unital() const = 0;
  virtual std::string name() const = 0;

  virtual Elt raw_weaken(const Elt& y, const Elt& x) const = 0;
  virtual TElt raw_weaken_judgement(const Elt& y, const TElt& r) const = 0;
  virtual Elt raw_substitute(const TElt& s, const Elt& x) const = 0;
  virtual TElt raw_substitute_judgement(const TElt& s, const TElt& r) const = 0;
  virtual TElt raw_unit(const Elt& x) const = 0;
};

/// View over an explicit level-truncated system. Outputs above the cutoff
/// raise OutsideCutoff.
class FinView final : public BSysView {
 public:
  explicit FinView(std::shared_ptr<const FinBSys> sys, std::string name = "finite");
  explicit FinView(FinBSys sys, std::string name = "finite");

  const FinBSys& system() const { return *sys_; }
  std::shared_ptr<const FinBSys> shared() const { return sys_; }

  std::optional<std::size_t> capacity() const override { return sys_->capacity(); }
  std::vector<Elt> elements(std::size_t level) const override { return sys_->elements(level); }
  std::vector<TElt> telements(std::size_t level) const override { return sys_->telements(level); }
  Elt ft(const Elt& x) const override { return sys_->ft(x); }
  Elt boundary(const TElt& r) const override { return sys_->boundary(r); }
  Elt pt() const override { return sys_->pt(); }
  bool contains(const Elt& x) const override { return sys_->contains(x); }
  bool contains(const TElt& r) const override { return sys_->contains(r); }
  std::vector<TElt> telements_over(const Elt& x) const override { return sys_->telements_over(x); }

  bool unital() const override { return sys_->unital(); }
  std::string name() const override { return name_; }

  Elt raw_weaken(const Elt& y, const Elt& x) const override;
  TElt raw_weaken_judgement(const Elt& y, const TElt& r) const override;
  Elt raw_substitute(const TElt& s, const Elt& x) const override;
  TElt raw_substitute_judgement(const TElt& s, const TElt& r) const override;
  TElt raw_unit(const Elt& x) const override;

 private:
  std::shared_ptr<const FinBSys> sys_;
  std::string name_;
};

/// View over B(R, LM). Unbounded: any level can be produced; enumeration of
/// B_n and B~_n uses normal forms of terms up to `depth`.
class TermView final : public BSysView {
 public:
  TermView(std::shared_ptr<const TermBSys> sys, std::size_t depth = 6, bool unital = true,
           std::string name = "term");
  explicit TermView(const TermBSysDescription& desc, std::string name = "term");

  const TermBSys& system() const { return *sys_; }
  std::size_t depth() const { return depth_; }

  std::optional<std::size_t> capacity() const override { return std::nullopt; }
  std::vector<Elt> elements(std::size_t level) const override;
  std::vector<TElt> telements(std::size_t level) const override;
  Elt ft(const Elt& x) const override;
  Elt boundary(const TElt& r) const override;
  Elt pt() const override { return {"pt", 0}; }
  bool contains(const Elt& x) const override;
  bool contains(const TElt& r) const override;
  std::vector<Elt> fiber(const Elt& base, std::size_t j) const override;
  std::vector<TElt> telements_over(const Elt& x) const override;

  bool unital() const override { return unital_; }
  std::string name() const override { return name_; }

  Elt raw_weaken(const Elt& y, const Elt& x) const override;
  TElt raw_weaken_judgement(const Elt& y, const TElt& r) const override;
  Elt raw_substitute(const TElt& s, const Elt& x) const override;
  TElt raw_substitute_judgement(const TElt& s, const TElt& r) const override;
  TElt raw_unit(const Elt& x) const override;

  Elt elt(const Context& c) const;
  TElt telt(const Judgement& r) const;
  Context context(const Elt& x) const;
  Judgement judgement(const TElt& r) const;

 private:
  std::shared_ptr<const TermBSys> sys_;
  std::size_t depth_;
  bool unital_;
  std::string name_;
};

/// Substitute for the backend's unit; used by law checkers and unit search.
using UnitFn = std::function<TElt(const Elt&)>;

// Checked operations: side conditions verified eagerly, output level
// asserted, OutsideCutoff when the output exceeds the backend capacity.
Elt weaken(const BSysView& v, const Elt& y, const Elt& x);
TElt weaken_judgement(const BSysView& v, const Elt& y, const TElt& r);
Elt substitute(const BSysView& v, const TElt& s, const Elt& x);
TElt substitute_judgement(const BSysView& v, const TElt& s, const TElt& r);
TElt unit(const BSysView& v, const Elt& x);

/// T as the carrier function B(ft Y) -> B(Y): additionally sends ft(Y) to Y.
Elt weaken_slice(const BSysView& v, const Elt& y, const Elt& x);
/// S as the carrier function B(del s) -> B(ft del s): additionally sends
/// del(s) to ft(del(s)).
Elt substitute_slice(const BSysView& v, const TElt& s, const Elt& x);

/// T_j(Y, X) = X if j = 0, T(Y, T_{j-1}(ft Y, X)) otherwise.
Elt weaken_iter(const BSysView& v, const Elt& y, std::size_t j, const Elt& x);
/// T~_j(Y, s) = s if j = 0, T~(Y, T~_{j-1}(ft Y, s)) otherwise.
TElt weaken_judgement_iter(const BSysView& v, const Elt& y, std::size_t j, const TElt& s);

/// T recovered from T~ and delta: Y if l(X) = l(Y) - 1, else ft(del(T~(Y, delta X))).
Elt derived_weaken(const BSysView& v, const Elt& y, const Elt& x);
/// S recovered from S~ and delta: ft(del s) if l(X) = l(del s), else ft(del(S~(s, delta X))).
Elt derived_substitute(const BSysView& v, const TElt& s, const Elt& x);

/// Side-condition predicates (no evaluation).
bool weaken_defined(const BSysView& v, const Elt& y, const Elt& x);
bool weaken_judgement_defined(const BSysView& v, const Elt& y, const TElt& r);
bool substitute_defined(const BSysView& v, const TElt& s, const Elt& x);
bool substitute_judgement_defined(const BSysView& v, const TElt& s, const TElt& r);

/// Tabulates every operation of the view with output level <= cutoff.
/// With `keep_unit` false the result is non-unital.
FinBSys materialize(const BSysView& v, std::size_t cutoff, bool keep_unit = true);

}  // namespace bsys
