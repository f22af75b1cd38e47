#pragma once

// Carriers of B-systems: the level-indexed families B_n and B~_{n+1} with
// their father (ft) and boundary maps, plus the explicit level-truncated
// representation used for hand-built, enumerated and reconstructed systems.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsys/error.hpp"

namespace bsys {

/// Member of B_n. Elements are opaque: all structure lives in the tables.
struct Elt {
  std::string id;
  std::size_t level = 0;

  auto operator<=>(const Elt& other) const {
    if (auto c = level <=> other.level; c != 0) return c;
    return id <=> other.id;
  }
  bool operator==(const Elt&) const = default;
};

/// Member of B~_{n+1}; `level` is the level of its boundary, so always >= 1.
struct TElt {
  std::string id;
  std::size_t level = 1;

  auto operator<=>(const TElt& other) const {
    if (auto c = level <=> other.level; c != 0) return c;
    return id <=> other.id;
  }
  bool operator==(const TElt&) const = default;
};

std::string describe(const Elt& x);
std::string describe(const TElt& r);

/// Read-only access to the sets B_n, B~_n and the maps ft, boundary, pt.
///
/// `capacity()` is the highest level for which data exists; an empty
/// optional means the backend can produce any level on demand.
class Carrier {
 public:
  virtual ~Carrier() = default;

  virtual std::optional<std::size_t> capacity() const = 0;
  virtual std::vector<Elt> elements(std::size_t level) const = 0;
  /// B~_level, for level >= 1.
  virtual std::vector<TElt> telements(std::size_t level) const = 0;
  virtual Elt ft(const Elt& x) const = 0;
  virtual Elt boundary(const TElt& r) const = 0;
  virtual Elt pt() const = 0;

  virtual bool contains(const Elt& x) const;
  virtual bool contains(const TElt& r) const;

  /// B(G)_j: elements X of level l(G)+j with ft^j(X) = G.
  virtual std::vector<Elt> fiber(const Elt& base, std::size_t j) const;
  /// Elements r of B~ with boundary(r) = x.
  virtual std::vector<TElt> telements_over(const Elt& x) const;

  bool within(std::size_t level) const {
    auto cap = capacity();
    return !cap || level <= *cap;
  }
};

/// j-fold iterate of ft. Throws LevelUnderflow when level(x) < j.
Elt ft_pow(const Carrier& sys, const Elt& x, std::size_t j);

/// Tilde part of a fiber: r in B~ with ft^{j-1}(boundary(r)) = G, i.e. the
/// elements of B~(G)_j for j >= 1.
std::vector<TElt> tilde_fiber(const Carrier& sys, const Elt& base, std::size_t j);

/// A sequence of sets with level-lowering maps p_i : T_{i+1} -> T_i.
class Tower {
 public:
  Tower() = default;
  Tower(std::vector<std::vector<std::string>> sets, std::map<std::string, std::string> p);

  std::size_t height() const { return sets_.empty() ? 0 : sets_.size() - 1; }
  const std::vector<std::string>& at(std::size_t level) const;
  const std::string& p(const std::string& x) const;
  std::size_t level_of(const std::string& x) const;
  bool contains(const std::string& x) const { return level_.contains(x); }
  /// ft_i^j as the composite of the p's.
  std::string ft_pow(const std::string& x, std::size_t j) const;

  bool operator==(const Tower&) const = default;

 private:
  std::vector<std::vector<std::string>> sets_;
  std::map<std::string, std::string> p_;
  std::map<std::string, std::size_t> level_;
};

/// The slice B(G): B(G)_j = {X in B_{i+j} | ft^j(X) = G} and
/// B~(G)_j = {r in B~_{i+j} | ft^j(boundary(r)) = G} for j >= 1.
struct SliceCarrier {
  Elt base;
  std::vector<std::vector<Elt>> levels;   // levels[0] == {base}
  std::vector<std::vector<TElt>> tilde;   // tilde[0] is always empty

  bool contains(const Elt& x) const;
  bool contains(const TElt& r) const;
};

/// Fibers over G at every j with l(G)+j <= max_level (defaults to the
/// carrier capacity). Throws UnknownElement if G is not in the carrier.
SliceCarrier slice(const Carrier& sys, const Elt& base, std::optional<std::size_t> max_level = {});

/// Raw tables of an explicit system. Element ids are unique across all
/// levels and across B / B~.
struct FinBSysData {
  using Key = std::pair<std::string, std::string>;

  std::size_t cutoff = 0;
  std::vector<std::vector<std::string>> B;    // B[n], 0 <= n <= cutoff
  std::vector<std::vector<std::string>> Bt;   // Bt[n], 1 <= n <= cutoff; Bt[0] unused
  std::map<std::string, std::string> ft;
  std::map<std::string, std::string> del;
  std::string pt;
  std::map<Key, std::string> weaken;                // T(Y, X)
  std::map<Key, std::string> weaken_judgement;      // T~(Y, r)
  std::map<Key, std::string> substitute;            // S(s, X)
  std::map<Key, std::string> substitute_judgement;  // S~(s, r)
  std::optional<std::map<std::string, std::string>> unit;  // delta(X)

  bool operator==(const FinBSysData&) const = default;
};

/// A validated level-truncated B-system. Immutable after construction.
///
/// Every table entry satisfies the typing side condition of its operation,
/// and every table is total for inputs whose output level is <= cutoff.
class FinBSys final : public Carrier {
 public:
  /// Validates and throws InvariantViolation naming the first failure.
  explicit FinBSys(FinBSysData data);

  const FinBSysData& data() const { return data_; }
  std::size_t cutoff() const { return data_.cutoff; }
  bool unital() const { return data_.unit.has_value(); }

  std::optional<std::size_t> capacity() const override { return data_.cutoff; }
  std::vector<Elt> elements(std::size_t level) const override;
  std::vector<TElt> telements(std::size_t level) const override;
  Elt ft(const Elt& x) const override;
  Elt boundary(const TElt& r) const override;
  Elt pt() const override { return {data_.pt, 0}; }
  bool contains(const Elt& x) const override;
  bool contains(const TElt& r) const override;
  std::vector<TElt> telements_over(const Elt& x) const override;

  Elt elt(const std::string& id) const;
  TElt telt(const std::string& id) const;
  bool is_elt(const std::string& id) const;
  bool is_telt(const std::string& id) const;

  std::optional<Elt> lookup_weaken(const Elt& y, const Elt& x) const;
  std::optional<TElt> lookup_weaken_judgement(const Elt& y, const TElt& r) const;
  std::optional<Elt> lookup_substitute(const TElt& s, const Elt& x) const;
  std::optional<TElt> lookup_substitute_judgement(const TElt& s, const TElt& r) const;
  std::optional<TElt> lookup_unit(const Elt& x) const;

  bool operator==(const FinBSys& other) const { return data_ == other.data_; }

 private:
  void index();
  void validate() const;

  FinBSysData data_;
  std::map<std::string, std::size_t> elt_level_;
  std::map<std::string, std::size_t> telt_level_;
  std::map<std::string, std::vector<std::string>> over_;
};

/// Human-readable list of differing table entries (empty when equal).
std::vector<std::string> diff_tables(const FinBSysData& a, const FinBSysData& b);

/// The terminal B-system truncated at `cutoff`: one element per level in
/// B and in B~, all operations forced.
FinBSys make_terminal(std::size_t cutoff);

}  // namespace bsys
