#pragma once

// Function-level presentation of a non-unital B-system: for each Y a map of
// slices T_Y : B(ft Y) -> B(Y), for each s a map S_s : B(del s) -> B(ft del s),
// and the laws as commuting pentagons of such maps.

#include <map>
#include <string>
#include <vector>

#include "bsys/laws.hpp"

namespace bsys {

/// B-carrier: the tower (B_n, ft) with judgements B~_n and their boundaries.
struct BCarrier {
  Tower B;
  std::vector<std::vector<std::string>> Bt;  // Bt[n], n >= 1
  std::map<std::string, std::string> del;
  std::string pt;

  std::size_t height() const { return B.height(); }
  std::size_t tilde_level(const std::string& r) const;
  bool operator==(const BCarrier&) const = default;
};

/// Map of slices B(src_base) -> B(dst_base), on elements and judgements.
/// Level 0 of the slice is included (src_base maps to dst_base).
struct CarrierFn {
  std::string src_base;
  std::string dst_base;
  std::map<std::string, std::string> b;
  std::map<std::string, std::string> bt;

  bool operator==(const CarrierFn&) const = default;
};

struct BData {
  BCarrier carrier;
  std::map<std::string, CarrierFn> weaken_fns;  // keyed by Y
  std::map<std::string, CarrierFn> subst_fns;   // keyed by s
  std::size_t cutoff = 0;

  bool operator==(const BData&) const = default;
};

/// Extracts the data of a view within the cutoff. Throws InvariantViolation
/// when some T_Y or S_s leaves its target slice or fails to commute with ft
/// and del.
BData to_bdata(const BSysView& v, std::size_t cutoff);

/// Rebuilds the (non-unital) operation tables.
FinBSys from_bdata(const BData& bd);

/// The induced data on the slice over G; levels count from G.
BData slice_data(const BData& bd, const std::string& g);

/// Pentagon forms of TT, SS, TS, ST and STid: ids TTax, SSax, TSax, STax,
/// STidax. A witness uses the same argument roles as the element-level law.
std::vector<LawReport> check_pentagons(const BData& bd, std::size_t cutoff);

/// Element-level law ids covered by a pentagon id.
std::vector<std::string> element_laws_of(const std::string& pentagon_id);

}  // namespace bsys
